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
#include <deque>
#include <string>

#include "qdqn/envs.hpp"
#include "qdqn/error.hpp"

namespace qdqn::envs {

namespace lake {

bool isHole(std::size_t cell) noexcept {
    return cell == 5 || cell == 7 || cell == 11 || cell == 12;
}

bool isTerminal(std::size_t cell) noexcept { return cell == kGoal || isHole(cell); }

std::size_t move(std::size_t cell, std::size_t action) {
    QDQN_ABORT_IF(cell >= kCells, "lake cell out of range");
    const std::size_t row = cell / kSide;
    const std::size_t col = cell % kSide;
    switch (action) {
    case Left:
        return col > 0 ? cell - 1 : cell;
    case Down:
        return row + 1 < kSide ? cell + kSide : cell;
    case Right:
        return col + 1 < kSide ? cell + 1 : cell;
    case Up:
        return row > 0 ? cell - kSide : cell;
    default:
        abort("lake action " + std::to_string(action) + " out of range");
    }
}

std::array<int, kCells> distancesToGoal() {
    std::array<int, kCells> dist;
    dist.fill(-1);
    dist[kGoal] = 0;
    std::deque<std::size_t> frontier{kGoal};
    // Moves are reversible on the open grid, so a BFS outward from the goal
    // over non-hole cells gives every cell's distance to it.
    while (!frontier.empty()) {
        const std::size_t cell = frontier.front();
        frontier.pop_front();
        for (std::size_t a = 0; a < kActions; ++a) {
            const std::size_t next = move(cell, a);
            if (isHole(next) || dist[next] >= 0) {
                continue;
            }
            dist[next] = dist[cell] + 1;
            frontier.push_back(next);
        }
    }
    return dist;
}

QTable optimalQ(double gamma) {
    QDQN_ABORT_IF(!(gamma > 0.0 && gamma <= 1.0), "gamma must be in (0, 1]");
    const auto dist = distancesToGoal();
    QTable table{};
    for (std::size_t s = 0; s < kCells; ++s) {
        if (isTerminal(s)) {
            continue;
        }
        for (std::size_t a = 0; a < kActions; ++a) {
            const std::size_t next = move(s, a);
            if (isHole(next) || dist[next] < 0) {
                continue;
            }
            double q = 1.0;
            for (int k = 0; k < dist[next]; ++k) {
                q *= gamma;
            }
            table[s][a] = q;
        }
    }
    return table;
}

QTable tabularQLearning(const TabularConfig &config) {
    QDQN_ABORT_IF(!(config.alpha > 0.0 && config.alpha <= 1.0),
                  "alpha must be in (0, 1]");
    QTable q{};
    std::mt19937_64 rng(config.seed);
    replay::EpsilonSchedule epsilon = config.epsilon;
    FrozenLake env;
    for (std::size_t episode = 0; episode < config.episodes; ++episode) {
        env.reset(rng);
        while (!env.done()) {
            const std::size_t s = env.cell();
            const std::size_t a = replay::selectAction(q[s], epsilon.value, rng);
            const Transition t = env.step(a);
            const std::size_t next = env.cell();
            double target = t.reward;
            // A step-cap cut is not a true terminal: keep bootstrapping.
            if (!t.done || t.truncated) {
                double best = q[next][0];
                for (double v : q[next]) {
                    best = std::max(best, v);
                }
                target += config.gamma * best;
            }
            q[s][a] += config.alpha * (target - q[s][a]);
        }
        epsilon.step();
    }
    return q;
}

} // namespace lake

Observation FrozenLake::reset(std::mt19937_64 & /*rng*/) {
    setCell(lake::kStart);
    return {static_cast<double>(cell_)};
}

void FrozenLake::setCell(std::size_t cell, std::size_t steps_taken) {
    QDQN_ABORT_IF(cell >= lake::kCells, "lake cell out of range");
    cell_ = cell;
    steps_ = steps_taken;
    done_ = lake::isTerminal(cell) || steps_ >= kMaxEpisodeSteps;
}

Transition FrozenLake::step(std::size_t action) {
    QDQN_ABORT_IF(done_, "FrozenLake::step on a finished episode");
    Transition t;
    t.state = {static_cast<double>(cell_)};
    t.action = action;
    cell_ = lake::move(cell_, action);
    ++steps_;
    t.next_state = {static_cast<double>(cell_)};
    t.reward = cell_ == lake::kGoal ? 1.0 : 0.0;
    const bool terminal = lake::isTerminal(cell_);
    t.done = terminal || steps_ >= kMaxEpisodeSteps;
    t.truncated = t.done && !terminal;
    done_ = t.done;
    return t;
}

} // namespace qdqn::envs
