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
 * @file qmodel.hpp
 * Parametrized-circuit Q-function: hardware-efficient ansatz of alternating
 * RY/RZ rotation layers and an open CZ chain, with basis or arctan data
 * encoding, optional data re-uploading, and per-action Z-string readout.
 */
#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "qdqn/statevec.hpp"

namespace qdqn::qmodel {

struct AnsatzConfig {
    std::size_t num_qubits = 4;
    std::size_t num_layers = 5;
    /// Repeat the encoding block before every variational layer.
    bool data_reuploading = false;
};

enum class Encoding {
    /// Discrete state index -> X gates on the qubits whose bit is 1.
    Basis,
    /// Real features x_i -> RX(arctan(x_i * w_d_i)) on qubit i.
    ContinuousArctan,
};

enum class InputWeights {
    /// w_d fixed to 1, not trained.
    None,
    /// One trainable weight per feature, shared by all re-uploads.
    Shared,
    /// One trainable weight per (layer, feature) encoding gate.
    PerLayer,
};

struct EncoderConfig {
    Encoding mode = Encoding::Basis;
    InputWeights input_weights = InputWeights::None;
};

enum class OutputScaling {
    /// (<O>+1)/2, range [0, 1].
    FixedUnit,
    /// (<O>+1)/2 * c, range [0, c].
    FixedFactor,
    /// (<O>+1)/2 * w_o[a] with trainable w_o.
    TrainableOutputWeight,
};

struct ObservableSet {
    std::vector<statevec::Observable> per_action;
    OutputScaling scaling = OutputScaling::FixedUnit;
    double factor = 1.0; // FixedFactor only

    [[nodiscard]] std::size_t numActions() const noexcept {
        return per_action.size();
    }

    /// Z_a on qubit a for each of `num_actions` actions.
    static ObservableSet singleZ(std::size_t num_actions,
                                 OutputScaling scaling = OutputScaling::FixedUnit,
                                 double factor = 1.0);
    /// Left: Z0 Z1, Right: Z2 Z3.
    static ObservableSet pairedZZ(OutputScaling scaling, double factor = 1.0);
};

struct ModelConfig {
    AnsatzConfig ansatz;
    EncoderConfig encoder;
    ObservableSet observables;
};

/// The three trainable groups. Unused groups are empty.
struct ParameterSet {
    std::vector<double> theta;
    std::vector<double> input_weights;
    std::vector<double> output_weights;

    [[nodiscard]] std::size_t size() const noexcept {
        return theta.size() + input_weights.size() + output_weights.size();
    }
};

[[nodiscard]] std::size_t thetaCount(const AnsatzConfig &ansatz) noexcept;
[[nodiscard]] std::size_t inputWeightCount(const AnsatzConfig &ansatz,
                                           const EncoderConfig &encoder) noexcept;
[[nodiscard]] std::size_t outputWeightCount(const ObservableSet &observables) noexcept;

/// theta + trainable input weights + trainable output weights.
[[nodiscard]] std::size_t paramCount(const ModelConfig &config) noexcept;

/// Throws if the config is inconsistent (qubit counts, observables).
void validate(const ModelConfig &config);
/// Throws unless the parameter group sizes match `config` exactly.
void validate(const ModelConfig &config, const ParameterSet &params);

/// theta ~ U[-pi, pi], w_d = 1, w_o = 1.
[[nodiscard]] ParameterSet initParameters(const ModelConfig &config,
                                          std::mt19937_64 &rng);

/// Location of one data-encoding RX gate inside a built circuit.
struct EncodingSite {
    std::size_t gate_index;
    std::size_t feature;
    std::size_t weight_index; // into ParameterSet::input_weights
};

struct BuiltCircuit {
    statevec::Circuit circuit;
    std::vector<EncodingSite> encoding_sites;
};

/**
 * @brief Emit the circuit for one environment state.
 *
 * Per layer: encoding block (layer 0 only, or every layer with
 * re-uploading; basis encoding never repeats), RY on every qubit, RZ on
 * every qubit, then CZ(0,1), CZ(1,2), ... CZ(n-2,n-1). Variational angles
 * bind to slots 2*n*layer + q (RY) and 2*n*layer + n + q (RZ); encoding
 * angles are constants.
 *
 * @param input_weights Empty means w_d = 1.
 */
[[nodiscard]] BuiltCircuit buildCircuitWithSites(const AnsatzConfig &ansatz,
                                                 const EncoderConfig &encoder,
                                                 std::span<const double> state,
                                                 std::span<const double> input_weights = {});

[[nodiscard]] statevec::Circuit buildCircuit(const AnsatzConfig &ansatz,
                                             const EncoderConfig &encoder,
                                             std::span<const double> state,
                                             std::span<const double> input_weights = {});

/// Raw expectations <O_a> for every action.
[[nodiscard]] std::vector<double> expectations(const ModelConfig &config,
                                               const ParameterSet &params,
                                               std::span<const double> state);

[[nodiscard]] std::vector<double> qValues(const ModelConfig &config,
                                          const ParameterSet &params,
                                          std::span<const double> state);

struct QGradient {
    double q_value;
    ParameterSet gradient;
};

/// Q(s, a) and dQ(s, a)/d{theta, w_d, w_o}.
[[nodiscard]] QGradient qGradients(const ModelConfig &config,
                                   const ParameterSet &params,
                                   std::span<const double> state,
                                   std::size_t action);

} // namespace qdqn::qmodel
