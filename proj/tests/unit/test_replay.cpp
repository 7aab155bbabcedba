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
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "qdqn/error.hpp"
#include "qdqn/replay.hpp"

namespace qdqn::replay {
namespace {

Transition tagged(double tag) {
    Transition t;
    t.state = {tag};
    t.next_state = {tag + 1.0};
    return t;
}

TEST(ReplayMemory, EvictsOldestWhenFull) {
    ReplayMemory memory(2);
    memory.push(tagged(1)); // a
    memory.push(tagged(2)); // b
    memory.push(tagged(3)); // c
    ASSERT_EQ(memory.size(), 2U);
    EXPECT_EQ(memory.at(0).state[0], 2.0);
    EXPECT_EQ(memory.at(1).state[0], 3.0);
}

TEST(ReplayMemory, SizeCountsPushesUntilCapacity) {
    ReplayMemory memory(10);
    EXPECT_TRUE(memory.empty());
    for (std::size_t k = 1; k <= 25; ++k) {
        memory.push(tagged(static_cast<double>(k)));
        EXPECT_EQ(memory.size(), std::min<std::size_t>(k, 10));
    }
    EXPECT_EQ(memory.capacity(), 10U);
    for (std::size_t i = 0; i < 10; ++i) {
        EXPECT_EQ(memory.at(i).state[0], static_cast<double>(16 + i));
    }
    EXPECT_THROW((void)memory.at(10), Error);
    EXPECT_THROW(ReplayMemory(0), Error);
}

TEST(ReplayMemory, NotReadyBelowBatchSize) {
    ReplayMemory memory(100);
    for (int i = 0; i < 5; ++i) {
        memory.push(tagged(i));
    }
    std::mt19937_64 rng(0);
    EXPECT_FALSE(memory.sample(11, rng).has_value());
    EXPECT_TRUE(memory.sample(5, rng).has_value());
}

TEST(ReplayMemory, BatchesHoldDistinctPositions) {
    ReplayMemory memory(1000);
    for (int i = 0; i < 100; ++i) {
        memory.push(tagged(i));
    }
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        const auto idx = memory.sampleIndices(16, rng);
        ASSERT_TRUE(idx.has_value());
        ASSERT_EQ(idx->size(), 16U);
        const std::set<std::size_t> unique(idx->begin(), idx->end());
        EXPECT_EQ(unique.size(), 16U);
        for (auto i : *idx) {
            EXPECT_LT(i, 100U);
        }
    }
    const auto batch = memory.sample(16, rng);
    std::set<double> tags;
    for (const auto &t : *batch) {
        tags.insert(t.state[0]);
    }
    EXPECT_EQ(tags.size(), 16U);
}

TEST(ReplayMemory, SingleDrawsAreUniform) {
    ReplayMemory memory(10);
    for (int i = 0; i < 10; ++i) {
        memory.push(tagged(i));
    }
    std::mt19937_64 rng(11);
    const int draws = 100000;
    std::vector<int> counts(10, 0);
    for (int i = 0; i < draws; ++i) {
        ++counts[(*memory.sampleIndices(1, rng))[0]];
    }
    const double mean = draws / 10.0;
    const double sigma = std::sqrt(draws * 0.1 * 0.9);
    for (int c : counts) {
        EXPECT_NEAR(c, mean, 3.0 * sigma);
    }
}

TEST(ReplayMemory, PairsInBatchesAreUniform) {
    // every unordered pair of a size-5 memory is equally likely in batches of 2
    ReplayMemory memory(5);
    for (int i = 0; i < 5; ++i) {
        memory.push(tagged(i));
    }
    std::mt19937_64 rng(12);
    const int draws = 50000;
    std::vector<int> counts(25, 0);
    for (int i = 0; i < draws; ++i) {
        auto idx = *memory.sampleIndices(2, rng);
        ++counts[std::min(idx[0], idx[1]) * 5 + std::max(idx[0], idx[1])];
    }
    const double p = 0.1;
    const double sigma = std::sqrt(draws * p * (1 - p));
    for (std::size_t a = 0; a < 5; ++a) {
        for (std::size_t b = a + 1; b < 5; ++b) {
            EXPECT_NEAR(counts[a * 5 + b], draws * p, 3.0 * sigma) << a << "," << b;
        }
    }
}

TEST(SelectAction, GreedyExamples) {
    std::mt19937_64 rng(0);
    const std::vector<double> q{0.2, 0.9};
    const std::vector<double> tie{0.5, 0.5};
    EXPECT_EQ(selectAction(q, 0.0, rng), 1U);
    EXPECT_EQ(selectAction(tie, 0.0, rng), 0U);
    EXPECT_THROW((void)selectAction(std::vector<double>{}, 0.0, rng), Error);
}

TEST(SelectAction, FullExplorationIsUniform) {
    std::mt19937_64 rng(5);
    const std::vector<double> q{0.0, 1.0, 2.0, 3.0};
    const int draws = 10000;
    std::vector<int> counts(4, 0);
    for (int i = 0; i < draws; ++i) {
        ++counts[selectAction(q, 1.0, rng)];
    }
    const double sigma = std::sqrt(draws * 0.25 * 0.75);
    for (int c : counts) {
        EXPECT_NEAR(c, 2500.0, 3.0 * sigma);
    }
}

TEST(SelectAction, PartialExplorationRate) {
    // greedy action probability is 1 - eps + eps / |A|
    std::mt19937_64 rng(6);
    const std::vector<double> q{0.0, 5.0};
    const int draws = 20000;
    int greedy = 0;
    for (int i = 0; i < draws; ++i) {
        greedy += selectAction(q, 0.3, rng) == 1 ? 1 : 0;
    }
    const double p = 0.85;
    EXPECT_NEAR(greedy, draws * p, 3.0 * std::sqrt(draws * p * (1 - p)));
}

TEST(SelectAction, ArgmaxIgnoresShiftAndPositiveScale) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> scale(0.01, 100.0);
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> q(4);
        for (auto &v : q) {
            v = n(rng);
        }
        const double c = 10.0 * n(rng);
        const double k = scale(rng);
        auto shifted = q;
        auto scaled = q;
        for (std::size_t a = 0; a < 4; ++a) {
            shifted[a] += c;
            scaled[a] *= k;
        }
        EXPECT_EQ(argmax(shifted), argmax(q));
        EXPECT_EQ(argmax(scaled), argmax(q));
    }
}

TEST(EpsilonSchedule, DecayExamples) {
    EpsilonSchedule eps{1.0, 0.99, 0.01};
    eps.step();
    EXPECT_DOUBLE_EQ(eps.value, 0.99);

    EpsilonSchedule low{0.01, 0.99, 0.01};
    low.step();
    EXPECT_EQ(low.value, 0.01);

    EpsilonSchedule long_run{1.0, 0.99, 0.01};
    for (int i = 0; i < 459; ++i) {
        long_run.step();
        EXPECT_GE(long_run.value, long_run.floor);
        EXPECT_LE(long_run.value, 1.0);
    }
    EXPECT_LT(459 * std::log(0.99), std::log(0.01));
    EXPECT_EQ(long_run.value, 0.01);
}

TEST(EpsilonSchedule, ReachesTheFloorAtTheLogarithmicBound) {
    EpsilonSchedule eps{1.0, 0.99, 0.01};
    const auto bound = static_cast<int>(std::ceil(std::log(0.01) / std::log(0.99)));
    for (int i = 0; i < bound - 1; ++i) {
        eps.step();
    }
    EXPECT_GT(eps.value, 0.01);
    eps.step();
    EXPECT_EQ(eps.value, 0.01);
}

} // namespace
} // namespace qdqn::replay
