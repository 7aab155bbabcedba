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
#include <string>

#include "qdqn/envs.hpp"
#include "qdqn/error.hpp"

namespace qdqn::envs {

namespace cartpole {

State dynamics(const State &s, std::size_t action) {
    QDQN_ABORT_IF(action > Right, "cart-pole action " + std::to_string(action) +
                                      " out of range");
    const double force = action == Right ? kForce : -kForce;
    const double cos_phi = std::cos(s.phi);
    const double sin_phi = std::sin(s.phi);
    const double temp =
        (force + kPoleMassLength * s.phi_dot * s.phi_dot * sin_phi) / kTotalMass;
    const double phi_acc =
        (kGravity * sin_phi - cos_phi * temp) /
        (kHalfLength * (4.0 / 3.0 - kPoleMass * cos_phi * cos_phi / kTotalMass));
    const double x_acc = temp - kPoleMassLength * phi_acc * cos_phi / kTotalMass;

    // Euler update with derivatives taken before the step.
    return {s.x + kTau * s.x_dot, s.x_dot + kTau * x_acc, s.phi + kTau * s.phi_dot,
            s.phi_dot + kTau * phi_acc};
}

bool outOfBounds(const State &s) noexcept {
    return s.x < -kPositionLimit || s.x > kPositionLimit || s.phi < -kAngleLimit ||
           s.phi > kAngleLimit;
}

State randomInitialState(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> dist(-kResetRange, kResetRange);
    State s;
    s.x = dist(rng);
    s.x_dot = dist(rng);
    s.phi = dist(rng);
    s.phi_dot = dist(rng);
    return s;
}

} // namespace cartpole

Observation CartPole::reset(std::mt19937_64 &rng) {
    setState(cartpole::randomInitialState(rng));
    return state_.observation();
}

void CartPole::setState(const cartpole::State &state, std::size_t steps_taken) {
    state_ = state;
    steps_ = steps_taken;
    done_ = cartpole::outOfBounds(state) || steps_ >= kMaxEpisodeSteps;
}

Transition CartPole::step(std::size_t action) {
    QDQN_ABORT_IF(done_, "CartPole::step on a finished episode");
    Transition t;
    t.state = state_.observation();
    t.action = action;
    state_ = cartpole::dynamics(state_, action);
    ++steps_;
    t.next_state = state_.observation();
    t.reward = 1.0;
    const bool failed = cartpole::outOfBounds(state_);
    t.done = failed || steps_ >= kMaxEpisodeSteps;
    t.truncated = t.done && !failed;
    done_ = t.done;
    return t;
}

} // namespace qdqn::envs
