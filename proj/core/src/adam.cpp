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
#include "qdqn/adam.hpp"

#include <cmath>

#include "qdqn/error.hpp"

namespace qdqn::dqn {

void adamUpdate(std::span<double> params, std::span<const double> grads,
                AdamState &state, std::span<const GroupLayout> layout,
                const GroupRates &rates) {
    QDQN_ABORT_IF(grads.size() != params.size(), "gradient/parameter size mismatch");
    if (state.first_moment.empty() && state.second_moment.empty()) {
        state.first_moment.assign(params.size(), 0.0);
        state.second_moment.assign(params.size(), 0.0);
    }
    QDQN_ABORT_IF(state.first_moment.size() != params.size() ||
                      state.second_moment.size() != params.size(),
                  "Adam moment vectors do not match the parameters");

    ++state.step;
    const double t = static_cast<double>(state.step);
    const double correction1 = 1.0 - std::pow(state.beta1, t);
    const double correction2 = 1.0 - std::pow(state.beta2, t);

    for (const auto &segment : layout) {
        QDQN_ABORT_IF(segment.offset + segment.size > params.size(),
                      "parameter group extends past the parameter vector");
        const double lr = rates.of(segment.group);
        for (std::size_t k = segment.offset; k < segment.offset + segment.size; ++k) {
            const double g = grads[k];
            auto &m = state.first_moment[k];
            auto &v = state.second_moment[k];
            m = state.beta1 * m + (1.0 - state.beta1) * g;
            v = state.beta2 * v + (1.0 - state.beta2) * g * g;
            const double m_hat = m / correction1;
            const double v_hat = v / correction2;
            params[k] -= lr * m_hat / (std::sqrt(v_hat) + state.epsilon);
        }
    }
}

void adamUpdate(qmodel::ParameterSet &params, const qmodel::ParameterSet &grads,
                AdamState &state, const GroupRates &rates) {
    QDQN_ABORT_IF(grads.theta.size() != params.theta.size() ||
                      grads.input_weights.size() != params.input_weights.size() ||
                      grads.output_weights.size() != params.output_weights.size(),
                  "gradient groups do not match the parameter groups");
    auto flatten = [](const qmodel::ParameterSet &p) {
        std::vector<double> flat(p.theta);
        flat.insert(flat.end(), p.input_weights.begin(), p.input_weights.end());
        flat.insert(flat.end(), p.output_weights.begin(), p.output_weights.end());
        return flat;
    };
    auto flat = flatten(params);
    const auto flat_grads = flatten(grads);
    const std::size_t n_theta = params.theta.size();
    const std::size_t n_in = params.input_weights.size();
    const std::vector<GroupLayout> layout{
        {ParamGroup::Theta, 0, n_theta},
        {ParamGroup::InputWeights, n_theta, n_in},
        {ParamGroup::OutputWeights, n_theta + n_in, params.output_weights.size()}};
    adamUpdate(flat, flat_grads, state, layout, rates);

    auto it = flat.begin();
    for (auto &v : params.theta) {
        v = *it++;
    }
    for (auto &v : params.input_weights) {
        v = *it++;
    }
    for (auto &v : params.output_weights) {
        v = *it++;
    }
}

} // namespace qdqn::dqn
