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
#include "qdqn/approximator.hpp"

#include <string>

#include "qdqn/error.hpp"

namespace qdqn::dqn {

CircuitQFunction::CircuitQFunction(qmodel::ModelConfig config)
    : config_{std::move(config)} {
    qmodel::validate(config_);
}

std::size_t CircuitQFunction::numActions() const noexcept {
    return config_.observables.numActions();
}

std::size_t CircuitQFunction::numParams() const noexcept {
    return qmodel::paramCount(config_);
}

std::vector<GroupLayout> CircuitQFunction::layout() const {
    const std::size_t n_theta = qmodel::thetaCount(config_.ansatz);
    const std::size_t n_in = qmodel::inputWeightCount(config_.ansatz, config_.encoder);
    const std::size_t n_out = qmodel::outputWeightCount(config_.observables);
    std::vector<GroupLayout> out{{ParamGroup::Theta, 0, n_theta}};
    if (n_in > 0) {
        out.push_back({ParamGroup::InputWeights, n_theta, n_in});
    }
    if (n_out > 0) {
        out.push_back({ParamGroup::OutputWeights, n_theta + n_in, n_out});
    }
    return out;
}

qmodel::ParameterSet CircuitQFunction::unpack(std::span<const double> flat) const {
    QDQN_ABORT_IF(flat.size() != numParams(),
                  "flat parameter vector has " + std::to_string(flat.size()) +
                      " entries, expected " + std::to_string(numParams()));
    const std::size_t n_theta = qmodel::thetaCount(config_.ansatz);
    const std::size_t n_in = qmodel::inputWeightCount(config_.ansatz, config_.encoder);
    qmodel::ParameterSet p;
    p.theta.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(n_theta));
    p.input_weights.assign(flat.begin() + static_cast<std::ptrdiff_t>(n_theta),
                           flat.begin() + static_cast<std::ptrdiff_t>(n_theta + n_in));
    p.output_weights.assign(flat.begin() + static_cast<std::ptrdiff_t>(n_theta + n_in),
                            flat.end());
    return p;
}

std::vector<double> CircuitQFunction::pack(const qmodel::ParameterSet &params) const {
    qmodel::validate(config_, params);
    std::vector<double> flat;
    flat.reserve(params.size());
    flat.insert(flat.end(), params.theta.begin(), params.theta.end());
    flat.insert(flat.end(), params.input_weights.begin(), params.input_weights.end());
    flat.insert(flat.end(), params.output_weights.begin(), params.output_weights.end());
    return flat;
}

std::vector<double> CircuitQFunction::initParams(std::mt19937_64 &rng) const {
    return pack(qmodel::initParameters(config_, rng));
}

std::vector<double> CircuitQFunction::qValues(std::span<const double> params,
                                              const Observation &state) const {
    return qmodel::qValues(config_, unpack(params), state);
}

double CircuitQFunction::accumulateGradient(std::span<const double> params,
                                            const Observation &state,
                                            std::size_t action, double scale,
                                            std::span<double> grad) const {
    QDQN_ABORT_IF(grad.size() != numParams(), "gradient buffer size mismatch");
    const auto result = qmodel::qGradients(config_, unpack(params), state, action);
    std::size_t k = 0;
    for (double g : result.gradient.theta) {
        grad[k++] += scale * g;
    }
    for (double g : result.gradient.input_weights) {
        grad[k++] += scale * g;
    }
    for (double g : result.gradient.output_weights) {
        grad[k++] += scale * g;
    }
    return result.q_value;
}

MlpQFunction::MlpQFunction(baseline::MlpConfig config) : config_{std::move(config)} {
    baseline::validate(config_);
}

std::size_t MlpQFunction::numActions() const noexcept { return config_.outputSize(); }

std::size_t MlpQFunction::numParams() const noexcept {
    return baseline::paramCount(config_);
}

std::vector<GroupLayout> MlpQFunction::layout() const {
    return {{ParamGroup::Theta, 0, numParams()}};
}

std::vector<double> MlpQFunction::initParams(std::mt19937_64 &rng) const {
    return baseline::initWeights(config_, rng);
}

std::vector<double> MlpQFunction::qValues(std::span<const double> params,
                                          const Observation &state) const {
    return baseline::forward(config_, params, state);
}

double MlpQFunction::accumulateGradient(std::span<const double> params,
                                        const Observation &state, std::size_t action,
                                        double scale, std::span<double> grad) const {
    QDQN_ABORT_IF(grad.size() != numParams(), "gradient buffer size mismatch");
    QDQN_ABORT_IF(action >= numActions(), "action index out of range");
    std::vector<double> upstream(numActions(), 0.0);
    upstream[action] = 1.0;
    const auto bp = baseline::backward(config_, params, state, upstream);
    for (std::size_t k = 0; k < grad.size(); ++k) {
        grad[k] += scale * bp.gradient[k];
    }
    return bp.outputs[action];
}

std::unique_ptr<QFunction> makeQFunction(const ModelSpec &spec) {
    if (const auto *q = std::get_if<qmodel::ModelConfig>(&spec)) {
        return std::make_unique<CircuitQFunction>(*q);
    }
    return std::make_unique<MlpQFunction>(std::get<baseline::MlpConfig>(spec));
}

std::size_t paramCount(const ModelSpec &spec) {
    if (const auto *q = std::get_if<qmodel::ModelConfig>(&spec)) {
        return qmodel::paramCount(*q);
    }
    return baseline::paramCount(std::get<baseline::MlpConfig>(spec));
}

} // namespace qdqn::dqn
