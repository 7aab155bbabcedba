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
 * @file statevec.hpp
 * Dense state-vector simulator for the gate set {RX, RY, RZ, X, CZ}, with
 * Pauli-Z-string observables and exact (adjoint) circuit gradients.
 *
 * Wire convention: qubit 0 is the most significant bit of the basis-state
 * index, so on 4 qubits the basis state |1010> has index 10 and carries
 * ones on qubits 0 and 2.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

namespace qdqn::statevec {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 12;

/**
 * @brief 2^n complex amplitudes, initialised to |0...0>.
 *
 * Gate kernels mutate in place; every rotation is unitary so the norm is
 * preserved up to rounding.
 */
class StateVector {
  public:
    explicit StateVector(std::size_t num_qubits);

    [[nodiscard]] std::size_t numQubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amplitudes_; }

    /// Bit mask of `wire` inside a basis-state index.
    [[nodiscard]] std::size_t wireMask(std::size_t wire) const;

    [[nodiscard]] double squaredNorm() const noexcept;

    void applyRX(std::size_t wire, double angle);
    void applyRY(std::size_t wire, double angle);
    void applyRZ(std::size_t wire, double angle);
    void applyX(std::size_t wire);
    void applyCZ(std::size_t control, std::size_t target);

    /// Multiply in place by the Pauli generator (X, Y or Z) of `wire`.
    void applyPauliX(std::size_t wire);
    void applyPauliY(std::size_t wire);
    void applyPauliZ(std::size_t wire);

  private:
    void apply2x2(std::size_t wire, Complex m00, Complex m01, Complex m10,
                  Complex m11);

    std::size_t num_qubits_;
    std::vector<Complex> amplitudes_;
};

enum class GateKind : std::uint8_t { RX, RY, RZ, X, CZ };

/// Angle fixed at circuit-construction time (radians).
struct Constant {
    double radians;
};

/// Angle read from position `index` of the angle vector passed to `run`.
struct Slot {
    std::size_t index;
};

using AngleBinding = std::variant<std::monostate, Constant, Slot>;

struct Gate {
    GateKind kind;
    std::size_t target;
    std::size_t control = 0; // CZ only
    AngleBinding angle{};

    static Gate rx(std::size_t wire, AngleBinding angle) {
        return {GateKind::RX, wire, 0, angle};
    }
    static Gate ry(std::size_t wire, AngleBinding angle) {
        return {GateKind::RY, wire, 0, angle};
    }
    static Gate rz(std::size_t wire, AngleBinding angle) {
        return {GateKind::RZ, wire, 0, angle};
    }
    static Gate x(std::size_t wire) { return {GateKind::X, wire, 0, {}}; }
    static Gate cz(std::size_t control, std::size_t target) {
        return {GateKind::CZ, target, control, {}};
    }

    [[nodiscard]] bool isRotation() const noexcept {
        return kind == GateKind::RX || kind == GateKind::RY ||
               kind == GateKind::RZ;
    }
};

/**
 * @brief Ordered gate list on a fixed register size.
 *
 * `add` validates every gate, so a constructed Circuit is always
 * well-formed: indices are in range, CZ wires differ, rotations carry an
 * angle binding and X/CZ carry none.
 */
class Circuit {
  public:
    explicit Circuit(std::size_t num_qubits);

    Circuit &add(const Gate &gate);

    [[nodiscard]] std::size_t numQubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::span<const Gate> gates() const noexcept { return gates_; }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }

    /// One past the largest slot index referenced, 0 if none.
    [[nodiscard]] std::size_t numSlots() const noexcept { return num_slots_; }

  private:
    std::size_t num_qubits_;
    std::size_t num_slots_ = 0;
    std::vector<Gate> gates_;
};

/// coefficient * prod_{q in qubits} Z_q. An empty qubit list is the identity.
struct ZTerm {
    double coefficient;
    std::vector<std::size_t> qubits;
};

class Observable {
  public:
    Observable() = default;
    explicit Observable(std::vector<ZTerm> terms);

    static Observable identity(double coefficient = 1.0);
    static Observable z(std::size_t qubit, double coefficient = 1.0);
    static Observable zz(std::size_t a, std::size_t b,
                         double coefficient = 1.0);

    [[nodiscard]] std::span<const ZTerm> terms() const noexcept { return terms_; }

    /// Largest referenced qubit + 1 (0 for identity-only observables).
    [[nodiscard]] std::size_t minQubits() const noexcept;

    /// Sum of |coefficient|: bound on |<O>| for any state.
    [[nodiscard]] double maxMagnitude() const noexcept;

    /// Diagonal entry <i|O|i> for basis state i on an n-qubit register.
    [[nodiscard]] double diagonal(std::size_t basis_index,
                                  std::size_t num_qubits) const;

  private:
    std::vector<ZTerm> terms_;
};

/// Resolve the angle of a rotation gate against `angles`.
[[nodiscard]] double resolveAngle(const Gate &gate,
                                  std::span<const double> angles);

void applyGate(StateVector &state, const Gate &gate,
               std::span<const double> angles);
[[nodiscard]] StateVector applyGate(const StateVector &state, const Gate &gate,
                                    std::span<const double> angles);

/// Apply the inverse of `gate`.
void applyGateAdjoint(StateVector &state, const Gate &gate,
                      std::span<const double> angles);

/// Product of the circuit's gate unitaries applied to |0...0> in order.
[[nodiscard]] StateVector run(const Circuit &circuit,
                              std::span<const double> angles);

[[nodiscard]] double expectation(const StateVector &state,
                                 const Observable &observable);

/// In-place O|psi> (unnormalised) for a diagonal Z-string observable.
void applyObservable(StateVector &state, const Observable &observable);

/**
 * @brief d<O>/d(angle of gate k) for every gate, by one reverse sweep.
 *
 * Entry k is zero for X and CZ. Constant-bound rotations get an entry too;
 * callers that encode data through constant angles use it for chain rules.
 *
 * @param expectation_out If non-null, receives <O> of the forward state.
 */
[[nodiscard]] std::vector<double>
adjointGateGradients(const Circuit &circuit, std::span<const double> angles,
                     const Observable &observable,
                     double *expectation_out = nullptr);

/**
 * @brief d<O>/d(angles[s]) for every slot s < circuit.numSlots().
 *
 * Gradients of gates sharing a slot are summed; constant-bound gates do
 * not contribute.
 */
[[nodiscard]] std::vector<double>
adjointGradients(const Circuit &circuit, std::span<const double> angles,
                 const Observable &observable);

/// Sum of gate-level gradients into slot gradients.
[[nodiscard]] std::vector<double>
accumulateSlotGradients(const Circuit &circuit,
                        std::span<const double> gate_gradients);

/**
 * @brief Parameter-shift derivative with respect to one slot.
 *
 * Each occurrence of the slot is shifted by +-pi/2 on its own and the
 * half-differences are summed. Exact for the RX/RY/RZ generators.
 */
[[nodiscard]] double paramShiftGradient(const Circuit &circuit,
                                        std::span<const double> angles,
                                        const Observable &observable,
                                        std::size_t slot);

} // namespace qdqn::statevec
