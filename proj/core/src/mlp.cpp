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
#include "qdqn/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdqn/error.hpp"

namespace qdqn::baseline {

std::size_t paramCount(const MlpConfig &config) {
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < config.layer_sizes.size(); ++l) {
        total += config.layer_sizes[l] * config.layer_sizes[l + 1] +
                 config.layer_sizes[l + 1];
    }
    return total;
}

void validate(const MlpConfig &config) {
    QDQN_ABORT_IF(config.layer_sizes.size() < 2,
                  "MLP needs at least an input and an output layer");
    for (auto n : config.layer_sizes) {
        QDQN_ABORT_IF(n == 0, "MLP layer with zero units");
    }
}

std::vector<double> initWeights(const MlpConfig &config, std::mt19937_64 &rng) {
    validate(config);
    std::vector<double> w;
    w.reserve(paramCount(config));
    for (std::size_t l = 0; l + 1 < config.layer_sizes.size(); ++l) {
        const std::size_t in = config.layer_sizes[l];
        const std::size_t out = config.layer_sizes[l + 1];
        const double limit = std::sqrt(6.0 / static_cast<double>(in));
        std::uniform_real_distribution<double> dist(-limit, limit);
        for (std::size_t k = 0; k < in * out; ++k) {
            w.push_back(dist(rng));
        }
        w.insert(w.end(), out, 0.0);
    }
    return w;
}

namespace {

void checkShapes(const MlpConfig &config, std::span<const double> weights,
                 std::span<const double> input) {
    validate(config);
    QDQN_ABORT_IF(weights.size() != paramCount(config),
                  "MLP expects " + std::to_string(paramCount(config)) +
                      " weights, got " + std::to_string(weights.size()));
    QDQN_ABORT_IF(input.size() != config.inputSize(),
                  "MLP expects " + std::to_string(config.inputSize()) +
                      " inputs, got " + std::to_string(input.size()));
}

struct Trace {
    // activations[0] is the input; activations[l + 1] the output of layer l
    // after its nonlinearity (pre-head for the last layer).
    std::vector<std::vector<double>> activations;
    std::vector<double> outputs;
};

Trace forwardTrace(const MlpConfig &config, std::span<const double> weights,
                   std::span<const double> input) {
    const std::size_t num_layers = config.layer_sizes.size() - 1;
    Trace trace;
    trace.activations.emplace_back(input.begin(), input.end());
    std::size_t offset = 0;
    for (std::size_t l = 0; l < num_layers; ++l) {
        const std::size_t in = config.layer_sizes[l];
        const std::size_t out = config.layer_sizes[l + 1];
        const auto &x = trace.activations.back();
        std::vector<double> z(out);
        for (std::size_t o = 0; o < out; ++o) {
            double acc = weights[offset + in * out + o];
            for (std::size_t i = 0; i < in; ++i) {
                acc += weights[offset + o * in + i] * x[i];
            }
            z[o] = l + 1 < num_layers ? std::max(acc, 0.0) : acc;
        }
        offset += in * out + out;
        trace.activations.push_back(std::move(z));
    }
    trace.outputs = trace.activations.back();
    if (config.head == OutputHead::Softmax) {
        auto &y = trace.outputs;
        const double peak = *std::max_element(y.begin(), y.end());
        double sum = 0.0;
        for (auto &v : y) {
            v = std::exp(v - peak);
            sum += v;
        }
        for (auto &v : y) {
            v /= sum;
        }
    }
    return trace;
}

} // namespace

std::vector<double> forward(const MlpConfig &config, std::span<const double> weights,
                            std::span<const double> input) {
    checkShapes(config, weights, input);
    return forwardTrace(config, weights, input).outputs;
}

Backprop backward(const MlpConfig &config, std::span<const double> weights,
                  std::span<const double> input, std::span<const double> upstream) {
    checkShapes(config, weights, input);
    QDQN_ABORT_IF(upstream.size() != config.outputSize(),
                  "upstream gradient does not match the output size");
    Trace trace = forwardTrace(config, weights, input);
    const std::size_t num_layers = config.layer_sizes.size() - 1;

    // delta = dL/dz for the last affine layer
    std::vector<double> delta(upstream.begin(), upstream.end());
    if (config.head == OutputHead::Softmax) {
        const auto &y = trace.outputs;
        double dot = 0.0;
        for (std::size_t a = 0; a < y.size(); ++a) {
            dot += upstream[a] * y[a];
        }
        for (std::size_t j = 0; j < y.size(); ++j) {
            delta[j] = y[j] * (upstream[j] - dot);
        }
    }

    Backprop result;
    result.outputs = trace.outputs;
    result.gradient.assign(weights.size(), 0.0);

    std::vector<std::size_t> offsets(num_layers);
    for (std::size_t l = 0, off = 0; l < num_layers; ++l) {
        offsets[l] = off;
        off += config.layer_sizes[l] * config.layer_sizes[l + 1] + config.layer_sizes[l + 1];
    }

    for (std::size_t l = num_layers; l-- > 0;) {
        const std::size_t in = config.layer_sizes[l];
        const std::size_t out = config.layer_sizes[l + 1];
        const std::size_t off = offsets[l];
        const auto &x = trace.activations[l];
        for (std::size_t o = 0; o < out; ++o) {
            for (std::size_t i = 0; i < in; ++i) {
                result.gradient[off + o * in + i] = delta[o] * x[i];
            }
            result.gradient[off + in * out + o] = delta[o];
        }
        if (l == 0) {
            break;
        }
        std::vector<double> prev(in, 0.0);
        for (std::size_t i = 0; i < in; ++i) {
            // x is post-ReLU; the unit was active iff x > 0.
            if (x[i] <= 0.0) {
                continue;
            }
            double acc = 0.0;
            for (std::size_t o = 0; o < out; ++o) {
                acc += weights[off + o * in + i] * delta[o];
            }
            prev[i] = acc;
        }
        delta = std::move(prev);
    }
    return result;
}

} // namespace qdqn::baseline
