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
#include <numbers>
#include <string>

#include "qdqn/error.hpp"
#include "qdqn/statevec.hpp"

namespace qdqn::statevec {

namespace {

void applyGenerator(StateVector &state, const Gate &gate) {
    switch (gate.kind) {
    case GateKind::RX:
        state.applyPauliX(gate.target);
        break;
    case GateKind::RY:
        state.applyPauliY(gate.target);
        break;
    case GateKind::RZ:
        state.applyPauliZ(gate.target);
        break;
    default:
        break;
    }
}

/// <a|b>
Complex innerProduct(std::span<const Complex> a, std::span<const Complex> b) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

} // namespace

std::vector<double> adjointGateGradients(const Circuit &circuit,
                                         std::span<const double> angles,
                                         const Observable &observable,
                                         double *expectation_out) {
    StateVector psi = run(circuit, angles);
    if (expectation_out != nullptr) {
        *expectation_out = expectation(psi, observable);
    }
    StateVector lambda = psi;
    applyObservable(lambda, observable);
    StateVector mu(circuit.numQubits());

    const auto gates = circuit.gates();
    std::vector<double> grads(gates.size(), 0.0);
    for (std::size_t k = gates.size(); k-- > 0;) {
        const Gate &gate = gates[k];
        if (gate.isRotation()) {
            // R(t) = exp(-i t P / 2): d<O>/dt = 2 Re<lambda|(-i/2) P psi>
            //                                 = Im<lambda|P psi>.
            mu = psi;
            applyGenerator(mu, gate);
            grads[k] = innerProduct(lambda.amplitudes(), mu.amplitudes()).imag();
        }
        applyGateAdjoint(psi, gate, angles);
        applyGateAdjoint(lambda, gate, angles);
    }
    return grads;
}

std::vector<double> accumulateSlotGradients(const Circuit &circuit,
                                            std::span<const double> gate_gradients) {
    QDQN_ABORT_IF(gate_gradients.size() != circuit.size(),
                  "gate gradient vector does not match the circuit");
    std::vector<double> slots(circuit.numSlots(), 0.0);
    const auto gates = circuit.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        if (const auto *slot = std::get_if<Slot>(&gates[k].angle)) {
            slots[slot->index] += gate_gradients[k];
        }
    }
    return slots;
}

std::vector<double> adjointGradients(const Circuit &circuit,
                                     std::span<const double> angles,
                                     const Observable &observable) {
    const auto per_gate = adjointGateGradients(circuit, angles, observable);
    return accumulateSlotGradients(circuit, per_gate);
}

namespace {

double shiftedExpectation(const Circuit &circuit, std::span<const double> angles,
                          const Observable &observable, std::size_t shifted_gate,
                          double shift) {
    StateVector state(circuit.numQubits());
    const auto gates = circuit.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
        if (k == shifted_gate) {
            Gate g = gates[k];
            g.angle = Constant{resolveAngle(gates[k], angles) + shift};
            applyGate(state, g, angles);
        } else {
            applyGate(state, gates[k], angles);
        }
    }
    return expectation(state, observable);
}

} // namespace

double paramShiftGradient(const Circuit &circuit, std::span<const double> angles,
                          const Observable &observable, std::size_t slot) {
    constexpr double kShift = std::numbers::pi / 2;
    const auto gates = circuit.gates();
    bool found = false;
    double total = 0.0;
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const auto *bound = std::get_if<Slot>(&gates[k].angle);
        if (bound == nullptr || bound->index != slot) {
            continue;
        }
        found = true;
        total += 0.5 * (shiftedExpectation(circuit, angles, observable, k, kShift) -
                        shiftedExpectation(circuit, angles, observable, k, -kShift));
    }
    QDQN_ABORT_IF(!found, "slot " + std::to_string(slot) +
                              " is not bound to any rotation gate");
    return total;
}

} // namespace qdqn::statevec
