// Copyright 2026 The qdqn Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <random>

#include <benchmark/benchmark.h>

#include "qdqn/harness.hpp"
#include "qdqn/qmodel.hpp"
#include "qdqn/statevec.hpp"

namespace {

using namespace qdqn;

qmodel::ModelConfig cartPoleModel() {
    return std::get<qmodel::ModelConfig>(harness::preset("cp-full").config.model);
}

struct Fixture {
    std::vector<double> state{0.02, -0.3, 0.05, 0.4};
    qmodel::ModelConfig config;
    qmodel::ParameterSet params;
    statevec::Circuit circuit;

    explicit Fixture(std::size_t layers)
        : config(withLayers(layers)), params(initial(config)),
          circuit(qmodel::buildCircuit(config.ansatz, config.encoder, state,
                                       params.input_weights)) {}

    static qmodel::ModelConfig withLayers(std::size_t layers) {
        auto c = cartPoleModel();
        c.ansatz.num_layers = layers;
        return c;
    }
    static qmodel::ParameterSet initial(const qmodel::ModelConfig &c) {
        std::mt19937_64 rng(1);
        return qmodel::initParameters(c, rng);
    }
};

void BM_RunCircuit(benchmark::State &st) {
    const Fixture f(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) {
        benchmark::DoNotOptimize(statevec::run(f.circuit, f.params.theta));
    }
}
BENCHMARK(BM_RunCircuit)->Arg(1)->Arg(5)->Arg(15);

void BM_AdjointGradients(benchmark::State &st) {
    const Fixture f(static_cast<std::size_t>(st.range(0)));
    const auto obs = statevec::Observable::zz(0, 1);
    for (auto _ : st) {
        benchmark::DoNotOptimize(statevec::adjointGradients(f.circuit, f.params.theta, obs));
    }
}
BENCHMARK(BM_AdjointGradients)->Arg(1)->Arg(5)->Arg(15);

void BM_ParamShiftAllSlots(benchmark::State &st) {
    const Fixture f(static_cast<std::size_t>(st.range(0)));
    const auto obs = statevec::Observable::zz(0, 1);
    for (auto _ : st) {
        double total = 0.0;
        for (std::size_t s = 0; s < f.circuit.numSlots(); ++s) {
            total += statevec::paramShiftGradient(f.circuit, f.params.theta, obs, s);
        }
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_ParamShiftAllSlots)->Arg(1)->Arg(5)->Arg(15);

void BM_QValues(benchmark::State &st) {
    const Fixture f(5);
    for (auto _ : st) {
        benchmark::DoNotOptimize(qmodel::qValues(f.config, f.params, f.state));
    }
}
BENCHMARK(BM_QValues);

void BM_QGradients(benchmark::State &st) {
    const Fixture f(5);
    for (auto _ : st) {
        benchmark::DoNotOptimize(qmodel::qGradients(f.config, f.params, f.state, 1));
    }
}
BENCHMARK(BM_QGradients);

} // namespace
