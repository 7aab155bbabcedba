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
 * @file approximator.hpp
 * Type-erased Q-function over a flat parameter vector, so the training loop
 * drives the circuit model and the MLP baseline identically.
 */
#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qdqn/mlp.hpp"
#include "qdqn/qmodel.hpp"
#include "qdqn/transition.hpp"

namespace qdqn::dqn {

/// Learning-rate group a parameter belongs to.
enum class ParamGroup { Theta, InputWeights, OutputWeights };

struct GroupLayout {
    ParamGroup group;
    std::size_t offset;
    std::size_t size;
};

class QFunction {
  public:
    virtual ~QFunction() = default;

    [[nodiscard]] virtual std::size_t numActions() const noexcept = 0;
    [[nodiscard]] virtual std::size_t numParams() const noexcept = 0;
    /// Contiguous, non-overlapping segments covering [0, numParams()).
    [[nodiscard]] virtual std::vector<GroupLayout> layout() const = 0;

    [[nodiscard]] virtual std::vector<double> initParams(std::mt19937_64 &rng) const = 0;

    [[nodiscard]] virtual std::vector<double>
    qValues(std::span<const double> params, const Observation &state) const = 0;

    /**
     * @brief grad += scale * dQ(state, action)/dparams.
     * @return Q(state, action).
     */
    virtual double accumulateGradient(std::span<const double> params,
                                      const Observation &state, std::size_t action,
                                      double scale, std::span<double> grad) const = 0;
};

/// Flat layout: theta | input weights | output weights.
class CircuitQFunction final : public QFunction {
  public:
    explicit CircuitQFunction(qmodel::ModelConfig config);

    [[nodiscard]] const qmodel::ModelConfig &config() const noexcept { return config_; }

    [[nodiscard]] std::size_t numActions() const noexcept override;
    [[nodiscard]] std::size_t numParams() const noexcept override;
    [[nodiscard]] std::vector<GroupLayout> layout() const override;
    [[nodiscard]] std::vector<double> initParams(std::mt19937_64 &rng) const override;
    [[nodiscard]] std::vector<double> qValues(std::span<const double> params,
                                              const Observation &state) const override;
    double accumulateGradient(std::span<const double> params, const Observation &state,
                              std::size_t action, double scale,
                              std::span<double> grad) const override;

    [[nodiscard]] qmodel::ParameterSet unpack(std::span<const double> flat) const;
    [[nodiscard]] std::vector<double> pack(const qmodel::ParameterSet &params) const;

  private:
    qmodel::ModelConfig config_;
};

class MlpQFunction final : public QFunction {
  public:
    explicit MlpQFunction(baseline::MlpConfig config);

    [[nodiscard]] const baseline::MlpConfig &config() const noexcept { return config_; }

    [[nodiscard]] std::size_t numActions() const noexcept override;
    [[nodiscard]] std::size_t numParams() const noexcept override;
    [[nodiscard]] std::vector<GroupLayout> layout() const override;
    [[nodiscard]] std::vector<double> initParams(std::mt19937_64 &rng) const override;
    [[nodiscard]] std::vector<double> qValues(std::span<const double> params,
                                              const Observation &state) const override;
    double accumulateGradient(std::span<const double> params, const Observation &state,
                              std::size_t action, double scale,
                              std::span<double> grad) const override;

  private:
    baseline::MlpConfig config_;
};

using ModelSpec = std::variant<qmodel::ModelConfig, baseline::MlpConfig>;

[[nodiscard]] std::unique_ptr<QFunction> makeQFunction(const ModelSpec &spec);

/// Trainable parameter count of either model family.
[[nodiscard]] std::size_t paramCount(const ModelSpec &spec);

} // namespace qdqn::dqn
