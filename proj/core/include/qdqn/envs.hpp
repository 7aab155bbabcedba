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
 * @file envs.hpp
 * Deterministic 4x4 Frozen Lake and Cart Pole (200-step variant), plus the
 * exact optimal Q-table of Frozen Lake and a tabular Q-learning check.
 */
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>

#include "qdqn/replay.hpp"
#include "qdqn/transition.hpp"

namespace qdqn::envs {

class Environment {
  public:
    virtual ~Environment() = default;

    virtual Observation reset(std::mt19937_64 &rng) = 0;
    /// Throws qdqn::Error when the episode has already ended.
    virtual Transition step(std::size_t action) = 0;

    [[nodiscard]] virtual std::size_t numActions() const noexcept = 0;
    [[nodiscard]] virtual std::size_t observationSize() const noexcept = 0;
    [[nodiscard]] virtual bool done() const noexcept = 0;
    [[nodiscard]] virtual std::size_t stepsTaken() const noexcept = 0;
};

inline constexpr std::size_t kMaxEpisodeSteps = 200;

// ---------------------------------------------------------------- Frozen Lake
//
//   S F F F        cells are numbered row-major, 0..15
//   F H F H        holes: 5, 7, 11, 12
//   F F F H        goal: 15
//   H F F G

namespace lake {
inline constexpr std::size_t kSide = 4;
inline constexpr std::size_t kCells = 16;
inline constexpr std::size_t kActions = 4;
inline constexpr std::size_t kStart = 0;
inline constexpr std::size_t kGoal = 15;

enum Action : std::size_t { Left = 0, Down = 1, Right = 2, Up = 3 };

[[nodiscard]] bool isHole(std::size_t cell) noexcept;
[[nodiscard]] bool isTerminal(std::size_t cell) noexcept;

/// Grid move; moves off the edge leave the cell unchanged.
[[nodiscard]] std::size_t move(std::size_t cell, std::size_t action);

using QTable = std::array<std::array<double, kActions>, kCells>;

/// Shortest-path length (non-hole cells) from each cell to the goal; -1 if
/// the goal is unreachable or the cell is a hole.
[[nodiscard]] std::array<int, kCells> distancesToGoal();

/**
 * @brief Optimal Q-values of the deterministic lake.
 *
 * Q*(s, a) = gamma^beta where beta is the shortest-path length from the
 * successor s' to the goal. Transitions into holes, and every row of a
 * terminal cell, are 0.
 */
[[nodiscard]] QTable optimalQ(double gamma);

struct TabularConfig {
    std::size_t episodes = 50000;
    double alpha = 0.1;
    double gamma = 0.8;
    replay::EpsilonSchedule epsilon{0.1, 1.0, 0.1};
    std::uint64_t seed = 0;
};

/// Watkins Q-learning with epsilon-greedy behaviour, zero-initialised.
[[nodiscard]] QTable tabularQLearning(const TabularConfig &config);
} // namespace lake

class FrozenLake final : public Environment {
  public:
    FrozenLake() = default;

    Observation reset(std::mt19937_64 &rng) override;
    Transition step(std::size_t action) override;

    /// Place the agent on `cell` with a fresh step counter.
    void setCell(std::size_t cell, std::size_t steps_taken = 0);

    [[nodiscard]] std::size_t cell() const noexcept { return cell_; }
    [[nodiscard]] std::size_t numActions() const noexcept override {
        return lake::kActions;
    }
    [[nodiscard]] std::size_t observationSize() const noexcept override { return 1; }
    [[nodiscard]] bool done() const noexcept override { return done_; }
    [[nodiscard]] std::size_t stepsTaken() const noexcept override { return steps_; }

  private:
    std::size_t cell_ = lake::kStart;
    std::size_t steps_ = 0;
    bool done_ = false;
};

// ----------------------------------------------------------------- Cart Pole

namespace cartpole {
inline constexpr double kGravity = 9.8;
inline constexpr double kCartMass = 1.0;
inline constexpr double kPoleMass = 0.1;
inline constexpr double kTotalMass = kCartMass + kPoleMass;
inline constexpr double kHalfLength = 0.5;
inline constexpr double kPoleMassLength = kPoleMass * kHalfLength;
inline constexpr double kForce = 10.0;
inline constexpr double kTau = 0.02;
inline constexpr double kPositionLimit = 2.4;
inline constexpr double kAngleLimit = 12.0 * 3.14159265358979323846 / 180.0;
inline constexpr double kResetRange = 0.05;

enum Action : std::size_t { Left = 0, Right = 1 };

struct State {
    double x = 0.0;       // m
    double x_dot = 0.0;   // m/s
    double phi = 0.0;     // rad
    double phi_dot = 0.0; // rad/s

    [[nodiscard]] Observation observation() const { return {x, x_dot, phi, phi_dot}; }
    bool operator==(const State &) const = default;
};

/// One explicit-Euler step of the frictionless cart-pole under force +-10 N.
[[nodiscard]] State dynamics(const State &state, std::size_t action);

[[nodiscard]] bool outOfBounds(const State &state) noexcept;

/// Each component iid uniform on [-0.05, 0.05].
[[nodiscard]] State randomInitialState(std::mt19937_64 &rng);
} // namespace cartpole

class CartPole final : public Environment {
  public:
    CartPole() = default;

    Observation reset(std::mt19937_64 &rng) override;
    Transition step(std::size_t action) override;

    void setState(const cartpole::State &state, std::size_t steps_taken = 0);

    [[nodiscard]] const cartpole::State &state() const noexcept { return state_; }
    [[nodiscard]] std::size_t numActions() const noexcept override { return 2; }
    [[nodiscard]] std::size_t observationSize() const noexcept override { return 4; }
    [[nodiscard]] bool done() const noexcept override { return done_; }
    [[nodiscard]] std::size_t stepsTaken() const noexcept override { return steps_; }

  private:
    cartpole::State state_{};
    std::size_t steps_ = 0;
    bool done_ = false;
};

} // namespace qdqn::envs
