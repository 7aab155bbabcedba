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
#include "qdqn/replay.hpp"

#include <algorithm>
#include <string>

#include "qdqn/error.hpp"

namespace qdqn::replay {

ReplayMemory::ReplayMemory(std::size_t capacity) {
    QDQN_ABORT_IF(capacity == 0, "replay memory capacity must be positive");
    buffer_.resize(capacity);
}

void ReplayMemory::push(Transition transition) {
    buffer_[head_] = std::move(transition);
    head_ = (head_ + 1) % buffer_.size();
    size_ = std::min(size_ + 1, buffer_.size());
}

const Transition &ReplayMemory::at(std::size_t i) const {
    QDQN_ABORT_IF(i >= size_, "replay index " + std::to_string(i) +
                                  " out of range (size " +
                                  std::to_string(size_) + ")");
    const std::size_t oldest = (head_ + buffer_.size() - size_) % buffer_.size();
    return buffer_[(oldest + i) % buffer_.size()];
}

std::optional<std::vector<std::size_t>>
ReplayMemory::sampleIndices(std::size_t batch_size, std::mt19937_64 &rng) const {
    if (batch_size == 0 || size_ < batch_size) {
        return std::nullopt;
    }
    // Floyd's algorithm: batch_size distinct draws in O(batch_size) time.
    std::vector<std::size_t> picked;
    picked.reserve(batch_size);
    for (std::size_t j = size_ - batch_size; j < size_; ++j) {
        std::uniform_int_distribution<std::size_t> dist(0, j);
        const std::size_t t = dist(rng);
        if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
            picked.push_back(t);
        } else {
            picked.push_back(j);
        }
    }
    return picked;
}

std::optional<std::vector<Transition>>
ReplayMemory::sample(std::size_t batch_size, std::mt19937_64 &rng) const {
    auto indices = sampleIndices(batch_size, rng);
    if (!indices) {
        return std::nullopt;
    }
    std::vector<Transition> batch;
    batch.reserve(batch_size);
    for (auto i : *indices) {
        batch.push_back(at(i));
    }
    return batch;
}

void EpsilonSchedule::step() noexcept { value = std::max(floor, value * decay); }

std::size_t argmax(std::span<const double> q) {
    QDQN_ABORT_IF(q.empty(), "argmax of an empty Q-vector");
    return static_cast<std::size_t>(std::max_element(q.begin(), q.end()) - q.begin());
}

std::size_t selectAction(std::span<const double> q, double epsilon,
                         std::mt19937_64 &rng) {
    QDQN_ABORT_IF(q.empty(), "cannot select from an empty Q-vector");
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
        std::uniform_int_distribution<std::size_t> pick(0, q.size() - 1);
        return pick(rng);
    }
    return argmax(q);
}

} // namespace qdqn::replay
