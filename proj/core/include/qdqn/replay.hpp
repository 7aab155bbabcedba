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
 * @file replay.hpp
 * Experience replay ring buffer and epsilon-greedy action selection.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qdqn/transition.hpp"

namespace qdqn::replay {

/// Fixed-capacity FIFO of transitions; pushing into a full memory evicts
/// the oldest entry.
class ReplayMemory {
  public:
    explicit ReplayMemory(std::size_t capacity);

    void push(Transition transition);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t capacity() const noexcept { return buffer_.size(); }
    [[nodiscard]] bool empty() const noexcept { return size_ == 0; }

    /// i-th oldest stored transition, 0 <= i < size().
    [[nodiscard]] const Transition &at(std::size_t i) const;

    /// `batch_size` distinct stored transitions chosen uniformly at random,
    /// or nullopt while fewer than `batch_size` are stored.
    [[nodiscard]] std::optional<std::vector<Transition>>
    sample(std::size_t batch_size, std::mt19937_64 &rng) const;

    /// Same draw as sample(), returned as positions accepted by at().
    [[nodiscard]] std::optional<std::vector<std::size_t>>
    sampleIndices(std::size_t batch_size, std::mt19937_64 &rng) const;

  private:
    std::vector<Transition> buffer_;
    std::size_t head_ = 0; // next write position
    std::size_t size_ = 0;
};

/// Multiplicative epsilon decay with a floor.
struct EpsilonSchedule {
    double value = 1.0;
    double decay = 0.99;
    double floor = 0.01;

    /// value <- max(floor, value * decay)
    void step() noexcept;
};

/// Lowest index among the maximal entries.
[[nodiscard]] std::size_t argmax(std::span<const double> q);

/// Uniform random action with probability `epsilon`, otherwise argmax.
[[nodiscard]] std::size_t selectAction(std::span<const double> q, double epsilon,
                                       std::mt19937_64 &rng);

} // namespace qdqn::replay
