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
 * @file dqn.hpp
 * Deep Q-learning with experience replay and a periodically synchronised
 * target network, for either the circuit model or the MLP baseline.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qdqn/adam.hpp"
#include "qdqn/approximator.hpp"
#include "qdqn/envs.hpp"
#include "qdqn/replay.hpp"

namespace qdqn::dqn {

enum class EnvironmentId { FrozenLake, CartPole };

enum class LossMode {
    /// mean_b (Q(s_b, a_b) - y_b)^2
    Squared,
    /// mean_b |Q(s_b, a_b) - y_b|, the per-sample Euclidean norm of q - q_target
    Literal,
};

enum class DecayGranularity { PerEpisode, PerStep };

struct DqnConfig {
    EnvironmentId environment = EnvironmentId::FrozenLake;
    ModelSpec model = qmodel::ModelConfig{};

    double gamma = 0.8;
    std::size_t batch_size = 11;
    std::size_t update_model_every = 5;   // global environment steps
    std::size_t update_target_every = 10; // global environment steps
    GroupRates learning_rates{0.001, 0.001, 0.1};
    std::size_t max_episodes = 1000;
    replay::EpsilonSchedule epsilon{1.0, 0.99, 0.01};
    DecayGranularity epsilon_decay = DecayGranularity::PerEpisode;
    std::size_t memory_capacity = 10000;
    LossMode loss = LossMode::Squared;
    /// Bootstrap through step-cap truncations instead of treating them as
    /// terminal.
    bool bootstrap_on_truncation = false;
    std::uint64_t seed = 0;
    /// Record the Frozen Lake MAE against the optimal table after every step.
    bool track_mae = false;
};

/// Independent generator streams derived from one run seed.
enum class RngStream : std::uint64_t { Environment = 1, Policy = 2, Init = 3, Replay = 4 };

[[nodiscard]] std::mt19937_64 makeStream(std::uint64_t seed, RngStream stream);

struct EpisodeRecord {
    double score = 0.0;
    double epsilon = 0.0; // value used during the episode
    std::size_t steps = 0;
    std::vector<double> losses;
    double max_q = 0.0; // largest Q seen by the policy this episode
    bool padded = false; // filled in after the run was solved
};

struct TrainLog {
    std::vector<EpisodeRecord> episodes;
    /// 0-based index of the episode on which the solve criterion first held.
    std::optional<std::size_t> solved_episode;
    /// Frozen Lake MAE after each environment step (track_mae only).
    std::vector<double> mae_per_step;
    std::vector<double> final_params;
    std::size_t total_steps = 0;

    [[nodiscard]] bool solved() const noexcept { return solved_episode.has_value(); }
    [[nodiscard]] std::vector<double> scores() const;
    /// Mean score of the last `window` (or fewer) episodes up to `end`.
    [[nodiscard]] double trailingMean(std::size_t end, std::size_t window = 100) const;
};

struct Target {
    std::size_t action;
    double value;
};

/**
 * @brief y = r for terminal transitions, else r + gamma max_a Q_target(s', a).
 *
 * Only the taken action's entry is trained, so the result pairs each
 * sample with its action.
 */
[[nodiscard]] std::vector<Target> computeTargets(std::span<const Transition> batch,
                                                 const QFunction &model,
                                                 std::span<const double> target_params,
                                                 double gamma,
                                                 bool bootstrap_on_truncation = false);

[[nodiscard]] double loss(std::span<const double> predictions,
                          std::span<const double> targets,
                          LossMode mode = LossMode::Squared);

/// dL/dQ_b for each prediction.
[[nodiscard]] std::vector<double> lossGradient(std::span<const double> predictions,
                                               std::span<const double> targets,
                                               LossMode mode = LossMode::Squared);

/// Mean |Q(s, a) - Q*(s, a)| over all 64 Frozen Lake pairs.
[[nodiscard]] double frozenLakeMae(const QFunction &model, std::span<const double> params,
                                   double gamma);
[[nodiscard]] double frozenLakeMae(const envs::lake::QTable &table, double gamma);

[[nodiscard]] std::unique_ptr<envs::Environment> makeEnvironment(EnvironmentId id);

/// 1 for Frozen Lake (goal reached), 200 for Cart Pole.
[[nodiscard]] double maxEpisodeScore(EnvironmentId id) noexcept;

/// Frozen Lake: the last 100 episodes all reached the goal.
/// Cart Pole: the last 100 episodes average at least 195.
[[nodiscard]] bool isSolved(EnvironmentId id, std::span<const double> scores);

/**
 * @brief Owns one agent's state and runs the training loop.
 *
 * Exposed as a class so tests can drive single steps and updates; train()
 * is the usual entry point.
 */
class Trainer {
  public:
    explicit Trainer(DqnConfig config);

    [[nodiscard]] const DqnConfig &config() const noexcept { return config_; }
    [[nodiscard]] const QFunction &model() const noexcept { return *model_; }
    [[nodiscard]] std::span<const double> params() const noexcept { return params_; }
    [[nodiscard]] std::span<const double> targetParams() const noexcept {
        return target_params_;
    }
    [[nodiscard]] const replay::ReplayMemory &memory() const noexcept { return memory_; }
    [[nodiscard]] std::size_t globalStep() const noexcept { return global_step_; }

    /// Gradient step on `batch` against the current target network; returns
    /// the batch loss before the step.
    double update(std::span<const Transition> batch);

    void syncTarget();

    /// Play one episode with the configured schedules; returns its record.
    EpisodeRecord runEpisode();

    TrainLog run();

  private:
    DqnConfig config_;
    std::unique_ptr<QFunction> model_;
    std::vector<GroupLayout> layout_;
    std::unique_ptr<envs::Environment> env_;
    replay::ReplayMemory memory_;
    std::mt19937_64 env_rng_;
    std::mt19937_64 policy_rng_;
    std::mt19937_64 replay_rng_;
    std::vector<double> params_;
    std::vector<double> target_params_;
    AdamState adam_;
    replay::EpsilonSchedule epsilon_;
    std::size_t global_step_ = 0;
    std::vector<double> mae_trace_;
};

[[nodiscard]] TrainLog train(const DqnConfig &config);

} // namespace qdqn::dqn
