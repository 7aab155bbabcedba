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
#include "qdqn/qmodel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qdqn/error.hpp"

namespace qdqn::qmodel {

using statevec::Circuit;
using statevec::Constant;
using statevec::Gate;
using statevec::Observable;
using statevec::Slot;

ObservableSet ObservableSet::singleZ(std::size_t num_actions,
                                     OutputScaling scaling, double factor) {
    ObservableSet set;
    set.scaling = scaling;
    set.factor = factor;
    for (std::size_t a = 0; a < num_actions; ++a) {
        set.per_action.push_back(Observable::z(a));
    }
    return set;
}

ObservableSet ObservableSet::pairedZZ(OutputScaling scaling, double factor) {
    ObservableSet set;
    set.scaling = scaling;
    set.factor = factor;
    set.per_action = {Observable::zz(0, 1), Observable::zz(2, 3)};
    return set;
}

std::size_t thetaCount(const AnsatzConfig &ansatz) noexcept {
    return 2 * ansatz.num_qubits * ansatz.num_layers;
}

std::size_t inputWeightCount(const AnsatzConfig &ansatz,
                             const EncoderConfig &encoder) noexcept {
    if (encoder.mode != Encoding::ContinuousArctan) {
        return 0;
    }
    switch (encoder.input_weights) {
    case InputWeights::None:
        return 0;
    case InputWeights::Shared:
        return ansatz.num_qubits;
    case InputWeights::PerLayer:
        return ansatz.num_qubits *
               (ansatz.data_reuploading ? ansatz.num_layers : 1);
    }
    return 0;
}

std::size_t outputWeightCount(const ObservableSet &observables) noexcept {
    return observables.scaling == OutputScaling::TrainableOutputWeight
               ? observables.numActions()
               : 0;
}

std::size_t paramCount(const ModelConfig &config) noexcept {
    return thetaCount(config.ansatz) +
           inputWeightCount(config.ansatz, config.encoder) +
           outputWeightCount(config.observables);
}

void validate(const ModelConfig &config) {
    const auto &ansatz = config.ansatz;
    QDQN_ABORT_IF(ansatz.num_qubits < 1 || ansatz.num_qubits > statevec::kMaxQubits,
                  "ansatz qubit count out of range");
    QDQN_ABORT_IF(ansatz.num_layers < 1, "ansatz needs at least one layer");
    QDQN_ABORT_IF(config.encoder.mode == Encoding::Basis &&
                      config.encoder.input_weights != InputWeights::None,
                  "input weights apply to continuous encoding only");
    QDQN_ABORT_IF(config.observables.per_action.empty(),
                  "observable set needs at least one action");
    for (const auto &obs : config.observables.per_action) {
        QDQN_ABORT_IF(obs.minQubits() > ansatz.num_qubits,
                      "observable acts outside the register");
    }
    QDQN_ABORT_IF(config.observables.scaling == OutputScaling::FixedFactor &&
                      !(config.observables.factor > 0.0),
                  "fixed output factor must be positive");
}

void validate(const ModelConfig &config, const ParameterSet &params) {
    validate(config);
    QDQN_ABORT_IF(params.theta.size() != thetaCount(config.ansatz),
                  "theta has " + std::to_string(params.theta.size()) +
                      " entries, expected " +
                      std::to_string(thetaCount(config.ansatz)));
    QDQN_ABORT_IF(params.input_weights.size() !=
                      inputWeightCount(config.ansatz, config.encoder),
                  "input weight count does not match the encoder");
    QDQN_ABORT_IF(params.output_weights.size() !=
                      outputWeightCount(config.observables),
                  "output weight count does not match the observable set");
}

ParameterSet initParameters(const ModelConfig &config, std::mt19937_64 &rng) {
    validate(config);
    ParameterSet params;
    std::uniform_real_distribution<double> angle(-std::numbers::pi,
                                                 std::numbers::pi);
    params.theta.resize(thetaCount(config.ansatz));
    for (auto &t : params.theta) {
        t = angle(rng);
    }
    params.input_weights.assign(inputWeightCount(config.ansatz, config.encoder),
                                1.0);
    params.output_weights.assign(outputWeightCount(config.observables), 1.0);
    return params;
}

BuiltCircuit buildCircuitWithSites(const AnsatzConfig &ansatz,
                                   const EncoderConfig &encoder,
                                   std::span<const double> state,
                                   std::span<const double> input_weights) {
    const std::size_t n = ansatz.num_qubits;
    BuiltCircuit built{Circuit(n), {}};
    auto &circuit = built.circuit;

    std::size_t basis_index = 0;
    if (encoder.mode == Encoding::Basis) {
        QDQN_ABORT_IF(state.size() != 1,
                      "basis encoding expects a single state index");
        const double raw = state[0];
        QDQN_ABORT_IF(raw < 0 || std::floor(raw) != raw ||
                          raw >= static_cast<double>(std::size_t{1} << n),
                      "basis state index out of range for the register");
        basis_index = static_cast<std::size_t>(raw);
    } else {
        QDQN_ABORT_IF(state.size() != n,
                      "state has " + std::to_string(state.size()) +
                          " features, the register has " + std::to_string(n) +
                          " qubits");
        QDQN_ABORT_IF(!input_weights.empty() &&
                          input_weights.size() != inputWeightCount(ansatz, encoder),
                      "input weight vector does not match the encoder");
    }

    for (std::size_t layer = 0; layer < ansatz.num_layers; ++layer) {
        if (encoder.mode == Encoding::Basis) {
            if (layer == 0) {
                for (std::size_t q = 0; q < n; ++q) {
                    if ((basis_index >> (n - 1 - q)) & 1U) {
                        circuit.add(Gate::x(q));
                    }
                }
            }
        } else if (layer == 0 || ansatz.data_reuploading) {
            for (std::size_t q = 0; q < n; ++q) {
                std::size_t w_index = q;
                if (encoder.input_weights == InputWeights::PerLayer) {
                    w_index = layer * n + q;
                }
                const double w = input_weights.empty() ? 1.0 : input_weights[w_index];
                built.encoding_sites.push_back({circuit.size(), q, w_index});
                circuit.add(Gate::rx(q, Constant{std::atan(state[q] * w)}));
            }
        }
        const std::size_t base = 2 * n * layer;
        for (std::size_t q = 0; q < n; ++q) {
            circuit.add(Gate::ry(q, Slot{base + q}));
        }
        for (std::size_t q = 0; q < n; ++q) {
            circuit.add(Gate::rz(q, Slot{base + n + q}));
        }
        for (std::size_t q = 0; q + 1 < n; ++q) {
            circuit.add(Gate::cz(q, q + 1));
        }
    }
    return built;
}

Circuit buildCircuit(const AnsatzConfig &ansatz, const EncoderConfig &encoder,
                     std::span<const double> state,
                     std::span<const double> input_weights) {
    return buildCircuitWithSites(ansatz, encoder, state, input_weights).circuit;
}

namespace {

/// Q = scale(e) = multiplier * (e + 1) / 2.
double outputMultiplier(const ObservableSet &obs, const ParameterSet &params,
                        std::size_t action) {
    switch (obs.scaling) {
    case OutputScaling::FixedUnit:
        return 1.0;
    case OutputScaling::FixedFactor:
        return obs.factor;
    case OutputScaling::TrainableOutputWeight:
        return params.output_weights[action];
    }
    return 1.0;
}

} // namespace

std::vector<double> expectations(const ModelConfig &config,
                                 const ParameterSet &params,
                                 std::span<const double> state) {
    validate(config, params);
    const auto circuit = buildCircuit(config.ansatz, config.encoder, state,
                                      params.input_weights);
    const auto psi = statevec::run(circuit, params.theta);
    std::vector<double> out;
    out.reserve(config.observables.numActions());
    for (const auto &obs : config.observables.per_action) {
        out.push_back(statevec::expectation(psi, obs));
    }
    return out;
}

std::vector<double> qValues(const ModelConfig &config, const ParameterSet &params,
                            std::span<const double> state) {
    auto q = expectations(config, params, state);
    for (std::size_t a = 0; a < q.size(); ++a) {
        q[a] = outputMultiplier(config.observables, params, a) * (q[a] + 1.0) / 2.0;
    }
    return q;
}

QGradient qGradients(const ModelConfig &config, const ParameterSet &params,
                     std::span<const double> state, std::size_t action) {
    validate(config, params);
    QDQN_ABORT_IF(action >= config.observables.numActions(),
                  "action index out of range");
    const auto built = buildCircuitWithSites(config.ansatz, config.encoder, state,
                                             params.input_weights);
    double ev = 0.0;
    const auto gate_grads = statevec::adjointGateGradients(
        built.circuit, params.theta, config.observables.per_action[action], &ev);

    const double multiplier = outputMultiplier(config.observables, params, action);
    const double dq_dev = multiplier / 2.0;

    QGradient result;
    result.q_value = multiplier * (ev + 1.0) / 2.0;
    auto &grad = result.gradient;

    grad.theta = statevec::accumulateSlotGradients(built.circuit, gate_grads);
    grad.theta.resize(params.theta.size(), 0.0);
    for (auto &g : grad.theta) {
        g *= dq_dev;
    }

    grad.input_weights.assign(params.input_weights.size(), 0.0);
    if (!params.input_weights.empty()) {
        // angle = atan(x w)  =>  d angle / d w = x / (1 + (x w)^2)
        for (const auto &site : built.encoding_sites) {
            const double x = state[site.feature];
            const double w = params.input_weights[site.weight_index];
            const double xw = x * w;
            grad.input_weights[site.weight_index] +=
                gate_grads[site.gate_index] * x / (1.0 + xw * xw) * dq_dev;
        }
    }

    grad.output_weights.assign(params.output_weights.size(), 0.0);
    if (!grad.output_weights.empty()) {
        grad.output_weights[action] = (ev + 1.0) / 2.0;
    }
    return result;
}

} // namespace qdqn::qmodel
