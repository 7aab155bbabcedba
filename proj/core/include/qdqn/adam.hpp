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
/**
 * @file adam.hpp
 * Adam with bias correction and an independent learning rate per parameter
 * group.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qdqn/approximator.hpp"

namespace qdqn::dqn {

struct AdamState {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-7;
    std::size_t step = 0;
    std::vector<double> first_moment;
    std::vector<double> second_moment;

    explicit AdamState(std::size_t num_params = 0)
        : first_moment(num_params, 0.0), second_moment(num_params, 0.0) {}
};

struct GroupRates {
    double theta = 0.001;
    double input_weights = 0.001;
    double output_weights = 0.1;

    [[nodiscard]] double of(ParamGroup group) const noexcept {
        switch (group) {
        case ParamGroup::Theta:
            return theta;
        case ParamGroup::InputWeights:
            return input_weights;
        case ParamGroup::OutputWeights:
            return output_weights;
        }
        return theta;
    }
};

/// One Adam step on every segment of `layout`, each with its group's rate.
void adamUpdate(std::span<double> params, std::span<const double> grads,
                AdamState &state, std::span<const GroupLayout> layout,
                const GroupRates &rates);

/// Group-structured overload: flattens as theta | w_d | w_o.
void adamUpdate(qmodel::ParameterSet &params, const qmodel::ParameterSet &grads,
                AdamState &state, const GroupRates &rates);

} // namespace qdqn::dqn
