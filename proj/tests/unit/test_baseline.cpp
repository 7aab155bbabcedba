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
#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdqn/error.hpp"
#include "qdqn/mlp.hpp"

namespace qdqn::baseline {
namespace {

MlpConfig net(std::vector<std::size_t> sizes, OutputHead head = OutputHead::Linear) {
    MlpConfig c;
    c.layer_sizes = std::move(sizes);
    c.head = head;
    return c;
}

std::vector<double> randomVector(std::size_t n, std::mt19937_64 &rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> v(n);
    for (auto &x : v) {
        x = u(rng);
    }
    return v;
}

TEST(MlpParamCount, Examples) {
    EXPECT_EQ(paramCount(net({4, 4, 5, 2})), 57U);
    EXPECT_EQ(paramCount(net({4, 9, 10, 2})), 167U);
    EXPECT_EQ(paramCount(net({4, 2})), 10U);
    EXPECT_THROW(validate(net({4})), Error);
    EXPECT_THROW(validate(net({4, 0, 2})), Error);
}

TEST(MlpForward, ZeroWeightsGiveZeroOutput) {
    const auto c = net({4, 4, 5, 2});
    const std::vector<double> w(paramCount(c), 0.0);
    const auto q = forward(c, w, std::vector<double>{0.3, -1.0, 2.0, 0.5});
    EXPECT_EQ(q, (std::vector<double>{0.0, 0.0}));
}

TEST(MlpForward, SoftmaxHeadIsADistribution) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const auto c = net({4, 9, 10, 2}, OutputHead::Softmax);
        const auto w = randomVector(paramCount(c), rng, 3.0);
        const auto q = forward(c, w, randomVector(4, rng, 5.0));
        EXPECT_NEAR(q[0] + q[1], 1.0, 1e-12);
        for (double v : q) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
}

TEST(MlpForward, SingleHiddenUnitByHand) {
    // 2 -> 1 -> 2; layout W1(1x2) b1 | W2(2x1) b2
    const auto c = net({2, 1, 2});
    const std::vector<double> w{0.5, -1.0, 0.25, 2.0, -3.0, 0.1, 0.2};
    const std::vector<double> x{3.0, 1.0};
    const double h = std::max(0.0, 0.5 * 3.0 - 1.0 * 1.0 + 0.25); // 0.75
    const auto q = forward(c, w, x);
    EXPECT_DOUBLE_EQ(q[0], 2.0 * h + 0.1);
    EXPECT_DOUBLE_EQ(q[1], -3.0 * h + 0.2);

    const auto s = forward(net({2, 1, 2}, OutputHead::Softmax), w, x);
    const double z = std::exp(2.0 * h + 0.1) + std::exp(-3.0 * h + 0.2);
    EXPECT_NEAR(s[0], std::exp(2.0 * h + 0.1) / z, 1e-15);

    // negative pre-activation clamps the hidden unit
    const auto dead = forward(c, w, std::vector<double>{-3.0, 1.0});
    EXPECT_DOUBLE_EQ(dead[0], 0.1);
    EXPECT_DOUBLE_EQ(dead[1], 0.2);
}

TEST(MlpForward, ShapeMismatchIsAnError) {
    const auto c = net({4, 4, 5, 2});
    const std::vector<double> w(56, 0.0);
    EXPECT_THROW((void)forward(c, w, std::vector<double>(4, 0.0)), Error);
    const std::vector<double> ok(57, 0.0);
    EXPECT_THROW((void)forward(c, ok, std::vector<double>(3, 0.0)), Error);
    EXPECT_THROW((void)backward(c, ok, std::vector<double>(4, 0.0), std::vector<double>(3, 1.0)),
                 Error);
}

TEST(MlpForward, LinearHeadScalesWithFinalLayer) {
    std::mt19937_64 rng(2);
    const auto c = net({4, 9, 10, 2});
    auto w = randomVector(paramCount(c), rng);
    const auto x = randomVector(4, rng);
    const auto base = forward(c, w, x);
    const std::size_t final_start = paramCount(c) - (10 * 2 + 2);
    for (std::size_t i = final_start; i < w.size(); ++i) {
        w[i] *= 7.5;
    }
    const auto scaled = forward(c, w, x);
    EXPECT_NEAR(scaled[0], 7.5 * base[0], 1e-12);
    EXPECT_NEAR(scaled[1], 7.5 * base[1], 1e-12);
}

TEST(MlpInit, HeUniformWithZeroBiases) {
    std::mt19937_64 rng(3);
    const auto c = net({4, 9, 10, 2});
    const auto w = initWeights(c, rng);
    ASSERT_EQ(w.size(), 167U);
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < c.layer_sizes.size(); ++l) {
        const auto in = c.layer_sizes[l];
        const auto out = c.layer_sizes[l + 1];
        const double bound = std::sqrt(6.0 / static_cast<double>(in));
        for (std::size_t i = 0; i < in * out; ++i) {
            EXPECT_LE(std::abs(w[offset + i]), bound);
        }
        for (std::size_t i = 0; i < out; ++i) {
            EXPECT_EQ(w[offset + in * out + i], 0.0);
        }
        offset += in * out + out;
    }
}

TEST(MlpBackward, MatchesFiniteDifferences) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> width(1, 8);
    std::uniform_int_distribution<int> depth(0, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::size_t> sizes{width(rng)};
        for (int h = depth(rng); h > 0; --h) {
            sizes.push_back(width(rng));
        }
        sizes.push_back(1 + width(rng) % 3);
        const auto c = net(sizes, coin(rng) ? OutputHead::Softmax : OutputHead::Linear);
        const auto w = randomVector(paramCount(c), rng);
        const auto x = randomVector(c.inputSize(), rng, 2.0);
        const auto up = randomVector(c.outputSize(), rng);
        const auto result = backward(c, w, x, up);
        EXPECT_EQ(result.outputs, forward(c, w, x));
        const auto fd = oracle::centralDifference(w, [&](const std::vector<double> &v) {
            const auto out = forward(c, v, x);
            double s = 0.0;
            for (std::size_t a = 0; a < out.size(); ++a) {
                s += up[a] * out[a];
            }
            return s;
        });
        ASSERT_EQ(fd.size(), result.gradient.size());
        for (std::size_t i = 0; i < fd.size(); ++i) {
            EXPECT_NEAR(result.gradient[i], fd[i], 1e-6) << "trial " << trial << " weight " << i;
        }
    }
}

TEST(MlpBackward, ZeroInputLeavesFirstLayerWeightsUntouched) {
    std::mt19937_64 rng(5);
    const auto c = net({4, 4, 5, 2});
    auto w = randomVector(paramCount(c), rng);
    // positive hidden biases keep every unit active
    for (std::size_t i = 16; i < 20; ++i) {
        w[i] = 0.5;
    }
    for (std::size_t i = 40; i < 45; ++i) {
        w[i] = 0.5;
    }
    const std::vector<double> one_hot{1.0, 0.0};
    const auto g = backward(c, w, std::vector<double>(4, 0.0), one_hot).gradient;
    for (std::size_t i = 0; i < 16; ++i) {
        EXPECT_EQ(g[i], 0.0);
    }
    bool bias_moves = false;
    for (std::size_t i = 16; i < 20; ++i) {
        bias_moves = bias_moves || g[i] != 0.0;
    }
    EXPECT_TRUE(bias_moves);
}

TEST(MlpBackward, DeadUnitHasNoGradient) {
    // 2 -> 2 -> 1, hidden unit 1 has a negative pre-activation
    const auto c = net({2, 2, 1});
    const std::vector<double> w{1.0, 0.5, -1.0, -1.0, 0.1, -0.2, 0.7, 0.3, 0.0};
    const std::vector<double> x{1.0, 1.0};
    const auto g = backward(c, w, x, std::vector<double>{1.0}).gradient;
    // W1 row 1, b1[1], and W2 entry for unit 1 (its activation is 0)
    EXPECT_EQ(g[2], 0.0);
    EXPECT_EQ(g[3], 0.0);
    EXPECT_EQ(g[5], 0.0);
    EXPECT_EQ(g[7], 0.0);
    EXPECT_DOUBLE_EQ(g[6], 1.0 + 0.5 + 0.1);
    EXPECT_DOUBLE_EQ(g[0], 0.7);
    EXPECT_DOUBLE_EQ(g[8], 1.0);
}

} // namespace
} // namespace qdqn::baseline
