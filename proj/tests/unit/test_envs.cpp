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
#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdqn/envs.hpp"
#include "qdqn/error.hpp"

namespace qdqn::envs {
namespace {

using lake::Down;
using lake::Left;
using lake::Right;
using lake::Up;

Transition stepFrom(std::size_t cell, std::size_t action) {
    FrozenLake env;
    env.setCell(cell);
    return env.step(action);
}

TEST(FrozenLakeStep, Examples) {
    const auto goal = stepFrom(14, Right);
    EXPECT_EQ(goal.next_state[0], 15.0);
    EXPECT_EQ(goal.reward, 1.0);
    EXPECT_TRUE(goal.done);
    EXPECT_FALSE(goal.truncated);

    const auto wall = stepFrom(0, Up);
    EXPECT_EQ(wall.next_state[0], 0.0);
    EXPECT_EQ(wall.reward, 0.0);
    EXPECT_FALSE(wall.done);

    const auto hole = stepFrom(1, Down);
    EXPECT_EQ(hole.next_state[0], 5.0);
    EXPECT_EQ(hole.reward, 0.0);
    EXPECT_TRUE(hole.done);
}

TEST(FrozenLakeStep, MapLayout) {
    for (std::size_t c = 0; c < 16; ++c) {
        const bool hole = c == 5 || c == 7 || c == 11 || c == 12;
        EXPECT_EQ(lake::isHole(c), hole) << c;
        EXPECT_EQ(lake::isTerminal(c), hole || c == 15) << c;
    }
    EXPECT_EQ(lake::move(6, Left), 5U);
    EXPECT_EQ(lake::move(6, Down), 10U);
    EXPECT_EQ(lake::move(6, Right), 7U);
    EXPECT_EQ(lake::move(6, Up), 2U);
    EXPECT_EQ(lake::move(3, Right), 3U);
    EXPECT_EQ(lake::move(12, Down), 12U);
    EXPECT_EQ(lake::move(8, Left), 8U);
}

TEST(FrozenLakeStep, ExhaustiveRewardAndTermination) {
    for (std::size_t s = 0; s < 16; ++s) {
        if (lake::isTerminal(s)) {
            continue;
        }
        for (std::size_t a = 0; a < 4; ++a) {
            const auto t = stepFrom(s, a);
            EXPECT_TRUE(t.reward == 0.0 || t.reward == 1.0);
            EXPECT_EQ(t.reward == 1.0, s == 14 && a == Right) << s << "," << a;
            EXPECT_EQ(t.done, lake::isTerminal(static_cast<std::size_t>(t.next_state[0])));
            // deterministic
            const auto again = stepFrom(s, a);
            EXPECT_EQ(again.next_state, t.next_state);
            EXPECT_EQ(again.reward, t.reward);
        }
    }
}

TEST(FrozenLakeStep, TerminalStepIsAnError) {
    FrozenLake env;
    env.setCell(14);
    (void)env.step(Right);
    EXPECT_THROW((void)env.step(Left), Error);
    EXPECT_THROW((void)stepFrom(0, 4), Error);
}

TEST(FrozenLakeStep, StepCapTruncatesAt200) {
    FrozenLake env;
    std::mt19937_64 rng(0);
    (void)env.reset(rng);
    std::size_t steps = 0;
    Transition last;
    while (!env.done()) {
        last = env.step(Up);
        ++steps;
    }
    EXPECT_EQ(steps, kMaxEpisodeSteps);
    EXPECT_TRUE(last.done);
    EXPECT_TRUE(last.truncated);
}

TEST(FrozenLakeStep, RandomEpisodesStayWithinBounds) {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> action(0, 3);
    FrozenLake env;
    for (int episode = 0; episode < 2000; ++episode) {
        const auto start = env.reset(rng);
        EXPECT_EQ(start[0], 0.0);
        double score = 0.0;
        while (!env.done()) {
            score += env.step(action(rng)).reward;
        }
        EXPECT_LE(env.stepsTaken(), kMaxEpisodeSteps);
        EXPECT_TRUE(score == 0.0 || score == 1.0);
    }
}

TEST(OptimalQ, ShortestPathExamples) {
    const auto q = lake::optimalQ(0.8);
    EXPECT_NEAR(q[0][Down], std::pow(0.8, 5), 1e-15);
    EXPECT_NEAR(q[0][Down], 0.32768, 1e-15);
    EXPECT_NEAR(q[13][Right], 0.8, 1e-15);
    EXPECT_NEAR(q[10][Down], 0.8, 1e-15);
    EXPECT_DOUBLE_EQ(q[14][Right], 1.0);
    const auto d = lake::distancesToGoal();
    EXPECT_EQ(d[0], 6);
    EXPECT_EQ(d[14], 1);
    EXPECT_EQ(d[15], 0);
    EXPECT_EQ(d[5], -1);
}

TEST(OptimalQ, TransitionsIntoHolesAreWorthless) {
    for (double gamma : {0.5, 0.8, 0.99, 1.0}) {
        const auto q = lake::optimalQ(gamma);
        for (std::size_t s = 0; s < 16; ++s) {
            for (std::size_t a = 0; a < 4; ++a) {
                if (lake::isHole(lake::move(s, a)) || lake::isTerminal(s)) {
                    EXPECT_EQ(q[s][a], 0.0);
                }
            }
        }
    }
}

TEST(OptimalQ, GreedyActionMovesCloserToTheGoal) {
    const auto q = lake::optimalQ(0.8);
    const auto d = lake::distancesToGoal();
    for (std::size_t s = 0; s < 16; ++s) {
        if (lake::isTerminal(s)) {
            continue;
        }
        std::size_t best = 0;
        for (std::size_t a = 1; a < 4; ++a) {
            if (q[s][a] > q[s][best]) {
                best = a;
            }
        }
        EXPECT_EQ(d[lake::move(s, best)], d[s] - 1) << s;
    }
}

TEST(OptimalQ, RejectsBadDiscount) {
    EXPECT_THROW((void)lake::optimalQ(0.0), Error);
    EXPECT_THROW((void)lake::optimalQ(1.5), Error);
}

TEST(TabularQLearning, ZeroEpisodesIsAllZero) {
    lake::TabularConfig c;
    c.episodes = 0;
    for (const auto &row : lake::tabularQLearning(c)) {
        for (double v : row) {
            EXPECT_EQ(v, 0.0);
        }
    }
}

TEST(TabularQLearning, NoDiscountLearnsTheImmediateReward) {
    lake::TabularConfig c;
    c.episodes = 20000;
    c.gamma = 0.0;
    c.epsilon = {1.0, 1.0, 1.0};
    const auto q = lake::tabularQLearning(c);
    for (std::size_t s = 0; s < 16; ++s) {
        for (std::size_t a = 0; a < 4; ++a) {
            if (s == 14 && a == Right) {
                EXPECT_NEAR(q[s][a], 1.0, 1e-6);
            } else {
                EXPECT_EQ(q[s][a], 0.0);
            }
        }
    }
}

TEST(TabularQLearning, ConvergesToTheShortestPathTable) {
    lake::TabularConfig c; // 50k episodes, alpha 0.1, gamma 0.8, epsilon 0.1
    const auto q = lake::tabularQLearning(c);
    const auto star = lake::optimalQ(0.8);
    double sup = 0.0;
    for (std::size_t s = 0; s < 16; ++s) {
        for (std::size_t a = 0; a < 4; ++a) {
            sup = std::max(sup, std::abs(q[s][a] - star[s][a]));
        }
    }
    EXPECT_LT(sup, 0.01);
}

TEST(TabularQLearning, ConvergesWithWiderExploration) {
    for (std::uint64_t seed : {0U, 1U, 2U}) {
        lake::TabularConfig c;
        c.epsilon = {0.5, 1.0, 0.5};
        c.seed = seed;
        const auto q = lake::tabularQLearning(c);
        const auto star = lake::optimalQ(0.8);
        for (std::size_t s = 0; s < 16; ++s) {
            for (std::size_t a = 0; a < 4; ++a) {
                EXPECT_NEAR(q[s][a], star[s][a], 0.01) << seed << ": " << s << "," << a;
            }
        }
    }
}

void expectStateNear(const cartpole::State &a, const cartpole::State &b, double tol) {
    EXPECT_NEAR(a.x, b.x, tol);
    EXPECT_NEAR(a.x_dot, b.x_dot, tol);
    EXPECT_NEAR(a.phi, b.phi, tol);
    EXPECT_NEAR(a.phi_dot, b.phi_dot, tol);
}

TEST(CartPoleStep, RestStatePushedRight) {
    const auto next = cartpole::dynamics({0, 0, 0, 0}, cartpole::Right);
    const double phi_acc = -(10.0 / 1.1) / (0.5 * (4.0 / 3.0 - 0.1 / 1.1));
    const double x_acc = 10.0 / 1.1 - 0.05 * phi_acc / 1.1;
    EXPECT_NEAR(next.x, 0.0, 1e-15);
    EXPECT_NEAR(next.x_dot, 0.02 * x_acc, 1e-12);
    EXPECT_NEAR(next.x_dot, 0.195122, 1e-6);
    EXPECT_NEAR(next.phi, 0.0, 1e-15);
    EXPECT_NEAR(next.phi_dot, 0.02 * phi_acc, 1e-12);
}

TEST(CartPoleStep, MatchesHandEulerOnRandomStates) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const cartpole::State s{2.4 * u(rng), 2.0 * u(rng), 0.2 * u(rng), 2.0 * u(rng)};
        expectStateNear(cartpole::dynamics(s, cartpole::Right), oracle::cartPoleEuler(s, 10.0), 1e-12);
        expectStateNear(cartpole::dynamics(s, cartpole::Left), oracle::cartPoleEuler(s, -10.0), 1e-12);
    }
}

TEST(CartPoleStep, MirrorSymmetry) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const cartpole::State s{2.4 * u(rng), 3.0 * u(rng), 0.21 * u(rng), 3.0 * u(rng)};
        const cartpole::State m{-s.x, -s.x_dot, -s.phi, -s.phi_dot};
        const auto a = cartpole::dynamics(s, cartpole::Right);
        const auto b = cartpole::dynamics(m, cartpole::Left);
        expectStateNear(b, {-a.x, -a.x_dot, -a.phi, -a.phi_dot}, 1e-15);
    }
}

TEST(CartPoleStep, LeavingTheTrackEndsTheEpisodeWithReward) {
    CartPole env;
    env.setState({2.39, 5.0, 0.0, 0.0});
    const auto t = env.step(cartpole::Right);
    EXPECT_GT(t.next_state[0], 2.4);
    EXPECT_TRUE(t.done);
    EXPECT_FALSE(t.truncated);
    EXPECT_EQ(t.reward, 1.0);
    EXPECT_THROW((void)env.step(cartpole::Left), Error);
}

TEST(CartPoleStep, EpisodesAreCappedAndAlwaysRewarded) {
    std::mt19937_64 rng(1);
    CartPole env;
    for (int episode = 0; episode < 200; ++episode) {
        (void)env.reset(rng);
        std::size_t t = 0;
        while (!env.done()) {
            // a balancing controller that keeps most episodes to the cap
            const auto &s = env.state();
            const auto tr = env.step(s.phi + 0.5 * s.phi_dot > 0 ? cartpole::Right
                                                                  : cartpole::Left);
            EXPECT_EQ(tr.reward, 1.0);
            ++t;
        }
        EXPECT_LE(t, kMaxEpisodeSteps);
    }
}

TEST(CartPoleStep, AngleLimitIsTwelveDegrees) {
    EXPECT_FALSE(cartpole::outOfBounds({0, 0, 0.2094, 0}));
    EXPECT_TRUE(cartpole::outOfBounds({0, 0, 0.2095, 0}));
    EXPECT_TRUE(cartpole::outOfBounds({-2.41, 0, 0, 0}));
}

TEST(CartPoleReset, UniformInTheStableBox) {
    std::mt19937_64 rng(123);
    double sums[4] = {};
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const auto s = cartpole::randomInitialState(rng);
        for (double v : s.observation()) {
            EXPECT_GE(v, -0.05);
            EXPECT_LE(v, 0.05);
        }
        sums[0] += s.x;
        sums[1] += s.x_dot;
        sums[2] += s.phi;
        sums[3] += s.phi_dot;
    }
    for (double sum : sums) {
        EXPECT_NEAR(sum / n, 0.0, 0.002);
    }
    std::mt19937_64 a(5), b(5);
    EXPECT_EQ(cartpole::randomInitialState(a), cartpole::randomInitialState(b));
}

} // namespace
} // namespace qdqn::envs
