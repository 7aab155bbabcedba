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
#include <string>

#include <benchmark/benchmark.h>

#include "qdqn/dqn.hpp"
#include "qdqn/harness.hpp"

namespace {

using namespace qdqn;

const char *kPresets[] = {"fl-depth-5", "cp-full", "nn-57", "nn-167"};

std::vector<Transition> randomBatch(dqn::EnvironmentId env, std::size_t size,
                                    std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    std::uniform_int_distribution<int> cell(0, 14);
    std::vector<Transition> batch(size);
    for (auto &t : batch) {
        if (env == dqn::EnvironmentId::FrozenLake) {
            t.state = {static_cast<double>(cell(rng))};
            t.next_state = {static_cast<double>(cell(rng))};
        } else {
            t.state = {u(rng), u(rng), u(rng), u(rng)};
            t.next_state = {u(rng), u(rng), u(rng), u(rng)};
        }
        t.action = 1;
        t.reward = 1.0;
    }
    return batch;
}

void BM_TrainerUpdate(benchmark::State &st) {
    const auto config = harness::preset(kPresets[st.range(0)]).config;
    st.SetLabel(kPresets[st.range(0)]);
    dqn::Trainer trainer(config);
    std::mt19937_64 rng(2);
    const auto batch = randomBatch(config.environment, config.batch_size, rng);
    for (auto _ : st) {
        benchmark::DoNotOptimize(trainer.update(batch));
    }
}
BENCHMARK(BM_TrainerUpdate)->DenseRange(0, 3);

void BM_Episode(benchmark::State &st) {
    auto config = harness::preset(kPresets[st.range(0)]).config;
    config.track_mae = false;
    st.SetLabel(kPresets[st.range(0)]);
    dqn::Trainer trainer(config);
    std::size_t steps = 0;
    for (auto _ : st) {
        steps += trainer.runEpisode().steps;
    }
    st.counters["steps/s"] = benchmark::Counter(static_cast<double>(steps),
                                                benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Episode)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_FrozenLakeMae(benchmark::State &st) {
    const auto config = harness::preset("fl-depth-15").config;
    const auto model = dqn::makeQFunction(config.model);
    std::mt19937_64 rng(3);
    const auto params = model->initParams(rng);
    for (auto _ : st) {
        benchmark::DoNotOptimize(dqn::frozenLakeMae(*model, params, 0.8));
    }
}
BENCHMARK(BM_FrozenLakeMae);

} // namespace
