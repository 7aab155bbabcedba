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
 * @file mlp.hpp
 * Small dense feed-forward network (ReLU hidden layers, linear or softmax
 * head) with exact reverse-mode gradients. Classical Q-function baseline.
 *
 * Weights are one flat vector; layer l stores W_l row-major (out x in)
 * followed by its bias b_l.
 */
#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace qdqn::baseline {

enum class Activation { ReLU };
enum class OutputHead { Linear, Softmax };

struct MlpConfig {
    /// Input size, hidden sizes..., output size.
    std::vector<std::size_t> layer_sizes{4, 4, 5, 2};
    Activation hidden = Activation::ReLU;
    OutputHead head = OutputHead::Linear;

    [[nodiscard]] std::size_t inputSize() const { return layer_sizes.front(); }
    [[nodiscard]] std::size_t outputSize() const { return layer_sizes.back(); }
};

/// sum over layers of (in * out + out).
[[nodiscard]] std::size_t paramCount(const MlpConfig &config);

void validate(const MlpConfig &config);

/// Uniform He init, U(-sqrt(6 / fan_in), +sqrt(6 / fan_in)); zero biases.
[[nodiscard]] std::vector<double> initWeights(const MlpConfig &config,
                                              std::mt19937_64 &rng);

[[nodiscard]] std::vector<double> forward(const MlpConfig &config,
                                          std::span<const double> weights,
                                          std::span<const double> input);

struct Backprop {
    std::vector<double> outputs;
    std::vector<double> gradient; // d(upstream . outputs)/d weights
};

/**
 * @brief Gradient of sum_a upstream[a] * output[a] with respect to every
 * weight and bias. Pass a one-hot `upstream` for a single output.
 */
[[nodiscard]] Backprop backward(const MlpConfig &config,
                                std::span<const double> weights,
                                std::span<const double> input,
                                std::span<const double> upstream);

} // namespace qdqn::baseline
