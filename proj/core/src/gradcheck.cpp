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
#include "qdqn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdqn/error.hpp"

namespace qdqn::qmodel {

namespace {

using statevec::Circuit;
using statevec::Gate;
using statevec::Slot;

double multiplier(const ModelConfig &config, const ParameterSet &params,
                  std::size_t action) {
    switch (config.observables.scaling) {
    case OutputScaling::FixedUnit:
        return 1.0;
    case OutputScaling::FixedFactor:
        return config.observables.factor;
    case OutputScaling::TrainableOutputWeight:
        return params.output_weights[action];
    }
    return 1.0;
}

/// Copy of `circuit` with gate `index` rebound to a fresh slot.
Circuit freeGate(const Circuit &circuit, std::size_t index, std::size_t slot) {
    Circuit out(circuit.numQubits());
    for (std::size_t g = 0; g < circuit.size(); ++g) {
        Gate gate = circuit.gates()[g];
        if (g == index) {
            gate.angle = Slot{slot};
        }
        out.add(gate);
    }
    return out;
}

double qValue(const ModelConfig &config, const ParameterSet &params,
              std::span<const double> state, std::size_t action) {
    return qValues(config, params, state)[action];
}

void central(std::vector<double> &values, std::vector<double> &grad, double h,
             const auto &evaluate) {
    grad.assign(values.size(), 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double saved = values[i];
        values[i] = saved + h;
        const double plus = evaluate();
        values[i] = saved - h;
        const double minus = evaluate();
        values[i] = saved;
        grad[i] = (plus - minus) / (2.0 * h);
    }
}

double maxDiff(const ParameterSet &a, const ParameterSet &b) {
    double worst = 0.0;
    auto scan = [&](const std::vector<double> &x, const std::vector<double> &y) {
        QDQN_ABORT_IF(x.size() != y.size(), "gradient groups differ in size");
        for (std::size_t i = 0; i < x.size(); ++i) {
            worst = std::max(worst, std::abs(x[i] - y[i]));
        }
    };
    scan(a.theta, b.theta);
    scan(a.input_weights, b.input_weights);
    scan(a.output_weights, b.output_weights);
    return worst;
}

} // namespace

ParameterSet paramShiftGradients(const ModelConfig &config, const ParameterSet &params,
                                 std::span<const double> state, std::size_t action) {
    validate(config, params);
    const auto built =
        buildCircuitWithSites(config.ansatz, config.encoder, state, params.input_weights);
    const auto &obs = config.observables.per_action.at(action);
    const double dq_dev = multiplier(config, params, action) / 2.0;

    ParameterSet grad;
    grad.theta.resize(params.theta.size());
    for (std::size_t k = 0; k < params.theta.size(); ++k) {
        grad.theta[k] =
            statevec::paramShiftGradient(built.circuit, params.theta, obs, k) * dq_dev;
    }

    grad.input_weights.assign(params.input_weights.size(), 0.0);
    if (!params.input_weights.empty()) {
        const std::size_t extra = params.theta.size();
        std::vector<double> angles = params.theta;
        angles.push_back(0.0);
        for (const auto &site : built.encoding_sites) {
            const double x = state[site.feature];
            const double w = params.input_weights[site.weight_index];
            angles[extra] = std::atan(x * w);
            const auto freed = freeGate(built.circuit, site.gate_index, extra);
            const double d_angle = statevec::paramShiftGradient(freed, angles, obs, extra);
            grad.input_weights[site.weight_index] +=
                d_angle * x / (1.0 + (x * w) * (x * w)) * dq_dev;
        }
    }

    grad.output_weights.assign(params.output_weights.size(), 0.0);
    if (!params.output_weights.empty()) {
        ParameterSet shifted = params;
        shifted.output_weights[action] += 1.0;
        const double plus = qValue(config, shifted, state, action);
        shifted.output_weights[action] -= 2.0;
        const double minus = qValue(config, shifted, state, action);
        grad.output_weights[action] = (plus - minus) / 2.0;
    }
    return grad;
}

ParameterSet finiteDifferenceGradients(const ModelConfig &config, const ParameterSet &params,
                                       std::span<const double> state, std::size_t action,
                                       double h) {
    ParameterSet work = params;
    ParameterSet grad;
    auto evaluate = [&] { return qValue(config, work, state, action); };
    central(work.theta, grad.theta, h, evaluate);
    central(work.input_weights, grad.input_weights, h, evaluate);
    central(work.output_weights, grad.output_weights, h, evaluate);
    return grad;
}

RandomCase randomCase(std::mt19937_64 &rng) {
    auto pick = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    RandomCase c;
    auto &cfg = c.config;
    cfg.ansatz.num_qubits = pick(1, 4);
    cfg.ansatz.num_layers = pick(1, 5);
    const std::size_t n = cfg.ansatz.num_qubits;

    if (pick(0, 3) == 0) {
        cfg.encoder.mode = Encoding::Basis;
        c.state = {static_cast<double>(pick(0, (std::size_t{1} << n) - 1))};
    } else {
        cfg.encoder.mode = Encoding::ContinuousArctan;
        cfg.ansatz.data_reuploading = pick(0, 1) == 1;
        cfg.encoder.input_weights = static_cast<InputWeights>(pick(0, 2));
        for (std::size_t q = 0; q < n; ++q) {
            c.state.push_back(2.5 * unit(rng));
        }
    }

    const auto scaling = static_cast<OutputScaling>(pick(0, 2));
    const double factor = 1.0 + 99.0 * (unit(rng) + 1.0) / 2.0;
    if (n == 4 && pick(0, 1) == 1) {
        cfg.observables = ObservableSet::pairedZZ(scaling, factor);
    } else {
        cfg.observables = ObservableSet::singleZ(pick(1, n), scaling, factor);
    }
    validate(cfg);

    c.params = initParameters(cfg, rng);
    for (auto &w : c.params.input_weights) {
        w = 1.5 * unit(rng);
    }
    for (auto &w : c.params.output_weights) {
        w = 5.0 * unit(rng);
    }
    c.action = pick(0, cfg.observables.numActions() - 1);
    return c;
}

GradcheckReport runGradcheck(std::size_t cases, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GradcheckReport report;
    for (std::size_t i = 0; i < cases; ++i) {
        const auto c = randomCase(rng);
        const auto adjoint = qGradients(c.config, c.params, c.state, c.action).gradient;
        const auto shift = paramShiftGradients(c.config, c.params, c.state, c.action);
        const auto fd = finiteDifferenceGradients(c.config, c.params, c.state, c.action);
        report.cases += 1;
        report.theta_entries += adjoint.theta.size();
        report.input_weight_entries += adjoint.input_weights.size();
        report.output_weight_entries += adjoint.output_weights.size();
        report.adjoint_vs_shift = std::max(report.adjoint_vs_shift, maxDiff(adjoint, shift));
        report.adjoint_vs_fd = std::max(report.adjoint_vs_fd, maxDiff(adjoint, fd));
        report.shift_vs_fd = std::max(report.shift_vs_fd, maxDiff(shift, fd));
    }
    return report;
}

} // namespace qdqn::qmodel
