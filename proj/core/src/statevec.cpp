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
#include "qdqn/statevec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "qdqn/error.hpp"

namespace qdqn::statevec {

namespace {

constexpr Complex kI{0.0, 1.0};

// Visit every index pair (i0, i1) that differs only in the bit `mask`.
template <class F> inline void forEachPair(std::size_t dim, std::size_t mask, F &&f) {
    const std::size_t low = mask - 1;
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::size_t i0 = ((k & ~low) << 1U) | (k & low);
        f(i0, i0 | mask);
    }
}

} // namespace

StateVector::StateVector(std::size_t num_qubits) : num_qubits_{num_qubits} {
    QDQN_ABORT_IF(num_qubits == 0 || num_qubits > kMaxQubits,
                  "StateVector: qubit count must be in 1.." +
                      std::to_string(kMaxQubits));
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

std::size_t StateVector::wireMask(std::size_t wire) const {
    QDQN_ABORT_IF(wire >= num_qubits_,
                  "qubit index " + std::to_string(wire) + " out of range for " +
                      std::to_string(num_qubits_) + " qubits");
    return std::size_t{1} << (num_qubits_ - 1 - wire);
}

double StateVector::squaredNorm() const noexcept {
    double total = 0.0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::apply2x2(std::size_t wire, Complex m00, Complex m01,
                           Complex m10, Complex m11) {
    const std::size_t mask = wireMask(wire);
    auto *data = amplitudes_.data();
    forEachPair(amplitudes_.size(), mask, [&](std::size_t i0, std::size_t i1) {
        const Complex a0 = data[i0];
        const Complex a1 = data[i1];
        data[i0] = m00 * a0 + m01 * a1;
        data[i1] = m10 * a0 + m11 * a1;
    });
}

void StateVector::applyRX(std::size_t wire, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    apply2x2(wire, c, -kI * s, -kI * s, c);
}

void StateVector::applyRY(std::size_t wire, double angle) {
    const double c = std::cos(angle / 2);
    const double s = std::sin(angle / 2);
    apply2x2(wire, c, -s, s, c);
}

void StateVector::applyRZ(std::size_t wire, double angle) {
    const std::size_t mask = wireMask(wire);
    const Complex p0 = std::polar(1.0, -angle / 2);
    const Complex p1 = std::polar(1.0, angle / 2);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        amplitudes_[i] *= (i & mask) ? p1 : p0;
    }
}

void StateVector::applyX(std::size_t wire) { applyPauliX(wire); }

void StateVector::applyCZ(std::size_t control, std::size_t target) {
    QDQN_ABORT_IF(control == target, "CZ: control and target must differ");
    const std::size_t both = wireMask(control) | wireMask(target);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if ((i & both) == both) {
            amplitudes_[i] = -amplitudes_[i];
        }
    }
}

void StateVector::applyPauliX(std::size_t wire) {
    const std::size_t mask = wireMask(wire);
    auto *data = amplitudes_.data();
    forEachPair(amplitudes_.size(), mask,
                [&](std::size_t i0, std::size_t i1) { std::swap(data[i0], data[i1]); });
}

void StateVector::applyPauliY(std::size_t wire) {
    const std::size_t mask = wireMask(wire);
    auto *data = amplitudes_.data();
    forEachPair(amplitudes_.size(), mask, [&](std::size_t i0, std::size_t i1) {
        const Complex a0 = data[i0];
        data[i0] = -kI * data[i1];
        data[i1] = kI * a0;
    });
}

void StateVector::applyPauliZ(std::size_t wire) {
    const std::size_t mask = wireMask(wire);
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (i & mask) {
            amplitudes_[i] = -amplitudes_[i];
        }
    }
}

Circuit::Circuit(std::size_t num_qubits) : num_qubits_{num_qubits} {
    QDQN_ABORT_IF(num_qubits == 0 || num_qubits > kMaxQubits,
                  "Circuit: qubit count must be in 1.." +
                      std::to_string(kMaxQubits));
}

Circuit &Circuit::add(const Gate &gate) {
    QDQN_ABORT_IF(gate.target >= num_qubits_,
                  "gate target " + std::to_string(gate.target) +
                      " out of range");
    const bool has_angle = !std::holds_alternative<std::monostate>(gate.angle);
    if (gate.isRotation()) {
        QDQN_ABORT_IF(!has_angle, "rotation gate without an angle binding");
    } else {
        QDQN_ABORT_IF(has_angle, "X/CZ gates take no angle");
    }
    if (gate.kind == GateKind::CZ) {
        QDQN_ABORT_IF(gate.control >= num_qubits_,
                      "CZ control " + std::to_string(gate.control) +
                          " out of range");
        QDQN_ABORT_IF(gate.control == gate.target,
                      "CZ: control and target must differ");
    }
    if (const auto *slot = std::get_if<Slot>(&gate.angle)) {
        num_slots_ = std::max(num_slots_, slot->index + 1);
    }
    gates_.push_back(gate);
    return *this;
}

Observable::Observable(std::vector<ZTerm> terms) : terms_{std::move(terms)} {
    for (auto &term : terms_) {
        std::sort(term.qubits.begin(), term.qubits.end());
        QDQN_ABORT_IF(std::adjacent_find(term.qubits.begin(),
                                         term.qubits.end()) != term.qubits.end(),
                      "Observable: repeated qubit in a Z-string");
    }
}

Observable Observable::identity(double coefficient) {
    return Observable({ZTerm{coefficient, {}}});
}

Observable Observable::z(std::size_t qubit, double coefficient) {
    return Observable({ZTerm{coefficient, {qubit}}});
}

Observable Observable::zz(std::size_t a, std::size_t b, double coefficient) {
    return Observable({ZTerm{coefficient, {a, b}}});
}

std::size_t Observable::minQubits() const noexcept {
    std::size_t n = 0;
    for (const auto &term : terms_) {
        for (auto q : term.qubits) {
            n = std::max(n, q + 1);
        }
    }
    return n;
}

double Observable::maxMagnitude() const noexcept {
    double total = 0.0;
    for (const auto &term : terms_) {
        total += std::abs(term.coefficient);
    }
    return total;
}

double Observable::diagonal(std::size_t basis_index,
                            std::size_t num_qubits) const {
    double value = 0.0;
    for (const auto &term : terms_) {
        std::size_t mask = 0;
        for (auto q : term.qubits) {
            QDQN_ABORT_IF(q >= num_qubits, "observable qubit " +
                                               std::to_string(q) +
                                               " out of range");
            mask |= std::size_t{1} << (num_qubits - 1 - q);
        }
        const bool odd = (std::popcount(basis_index & mask) & 1) != 0;
        value += odd ? -term.coefficient : term.coefficient;
    }
    return value;
}

double resolveAngle(const Gate &gate, std::span<const double> angles) {
    if (const auto *c = std::get_if<Constant>(&gate.angle)) {
        return c->radians;
    }
    if (const auto *s = std::get_if<Slot>(&gate.angle)) {
        QDQN_ABORT_IF(s->index >= angles.size(),
                      "slot " + std::to_string(s->index) +
                          " not resolvable in an angle vector of size " +
                          std::to_string(angles.size()));
        return angles[s->index];
    }
    abort("gate has no angle binding");
}

namespace {

void applyWithAngle(StateVector &state, const Gate &gate, double angle) {
    switch (gate.kind) {
    case GateKind::RX:
        state.applyRX(gate.target, angle);
        break;
    case GateKind::RY:
        state.applyRY(gate.target, angle);
        break;
    case GateKind::RZ:
        state.applyRZ(gate.target, angle);
        break;
    case GateKind::X:
        state.applyX(gate.target);
        break;
    case GateKind::CZ:
        state.applyCZ(gate.control, gate.target);
        break;
    }
}

} // namespace

void applyGate(StateVector &state, const Gate &gate,
               std::span<const double> angles) {
    QDQN_ABORT_IF(gate.target >= state.numQubits() ||
                      (gate.kind == GateKind::CZ &&
                       gate.control >= state.numQubits()),
                  "gate index out of range for the state");
    const double angle = gate.isRotation() ? resolveAngle(gate, angles) : 0.0;
    applyWithAngle(state, gate, angle);
}

StateVector applyGate(const StateVector &state, const Gate &gate,
                      std::span<const double> angles) {
    StateVector out = state;
    applyGate(out, gate, angles);
    return out;
}

void applyGateAdjoint(StateVector &state, const Gate &gate,
                      std::span<const double> angles) {
    const double angle = gate.isRotation() ? -resolveAngle(gate, angles) : 0.0;
    applyWithAngle(state, gate, angle);
}

StateVector run(const Circuit &circuit, std::span<const double> angles) {
    StateVector state(circuit.numQubits());
    for (const auto &gate : circuit.gates()) {
        applyGate(state, gate, angles);
    }
    return state;
}

double expectation(const StateVector &state, const Observable &observable) {
    const std::size_t n = state.numQubits();
    QDQN_ABORT_IF(observable.minQubits() > n,
                  "observable acts on more qubits than the state has");
    double total = 0.0;
    for (const auto &term : observable.terms()) {
        std::size_t mask = 0;
        for (auto q : term.qubits) {
            mask |= state.wireMask(q);
        }
        double parity_sum = 0.0;
        const auto amps = state.amplitudes();
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const double p = std::norm(amps[i]);
            parity_sum += (std::popcount(i & mask) & 1) ? -p : p;
        }
        total += term.coefficient * parity_sum;
    }
    return total;
}

void applyObservable(StateVector &state, const Observable &observable) {
    const std::size_t n = state.numQubits();
    QDQN_ABORT_IF(observable.minQubits() > n,
                  "observable acts on more qubits than the state has");
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] *= observable.diagonal(i, n);
    }
}

} // namespace qdqn::statevec
