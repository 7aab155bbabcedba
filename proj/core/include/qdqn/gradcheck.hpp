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
 * @file gradcheck.hpp
 * Cross-checks of the adjoint model gradient against parameter-shift and
 * central finite differences on random circuit models.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "qdqn/qmodel.hpp"

namespace qdqn::qmodel {

/// dQ/d{theta, w_d, w_o} with every circuit derivative taken by parameter
/// shift. Encoding angles are shifted gate by gate and chained through
/// arctan; Q is linear in w_o.
[[nodiscard]] ParameterSet paramShiftGradients(const ModelConfig &config,
                                               const ParameterSet &params,
                                               std::span<const double> state,
                                               std::size_t action);

/// Central differences of Q(state, action) with step `h` in every parameter.
[[nodiscard]] ParameterSet finiteDifferenceGradients(const ModelConfig &config,
                                                     const ParameterSet &params,
                                                     std::span<const double> state,
                                                     std::size_t action, double h = 1e-5);

struct RandomCase {
    ModelConfig config;
    ParameterSet params;
    std::vector<double> state;
    std::size_t action;
};

/// A model with 1-4 qubits and 1-5 layers, random encoding, weight and
/// scaling options, random parameters, state and action.
[[nodiscard]] RandomCase randomCase(std::mt19937_64 &rng);

struct GradcheckReport {
    std::size_t cases = 0;
    std::size_t theta_entries = 0;
    std::size_t input_weight_entries = 0;
    std::size_t output_weight_entries = 0;
    double adjoint_vs_shift = 0.0; // max abs difference
    double adjoint_vs_fd = 0.0;
    double shift_vs_fd = 0.0;
};

[[nodiscard]] GradcheckReport runGradcheck(std::size_t cases, std::uint64_t seed);

} // namespace qdqn::qmodel
