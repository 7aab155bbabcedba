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
#include "qdqn/dqn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qdqn/error.hpp"

namespace qdqn::dqn {

std::mt19937_64 makeStream(std::uint64_t seed, RngStream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

std::vector<double> TrainLog::scores() const {
    std::vector<double> out;
    out.reserve(episodes.size());
    for (const auto &e : episodes) {
        out.push_back(e.score);
    }
    return out;
}

double TrainLog::trailingMean(std::size_t end, std::size_t window) const {
    end = std::min(end, episodes.size());
    const std::size_t begin = end > window ? end - window : 0;
    if (end == begin) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        total += episodes[i].score;
    }
    return total / static_cast<double>(end - begin);
}

std::vector<Target> computeTargets(std::span<const Transition> batch,
                                   const QFunction &model,
                                   std::span<const double> target_params, double gamma,
                                   bool bootstrap_on_truncation) {
    QDQN_ABORT_IF(batch.empty(), "computeTargets on an empty batch");
    std::vector<Target> targets;
    targets.reserve(batch.size());
    for (const auto &t : batch) {
        double y = t.reward;
        const bool terminal = t.done && !(bootstrap_on_truncation && t.truncated);
        if (!terminal && gamma != 0.0) {
            const auto q_next = model.qValues(target_params, t.next_state);
            y += gamma * *std::max_element(q_next.begin(), q_next.end());
        }
        targets.push_back({t.action, y});
    }
    return targets;
}

double loss(std::span<const double> predictions, std::span<const double> targets,
            LossMode mode) {
    QDQN_ABORT_IF(predictions.size() != targets.size() || predictions.empty(),
                  "loss: prediction and target sizes differ");
    double total = 0.0;
    for (std::size_t b = 0; b < predictions.size(); ++b) {
        const double diff = predictions[b] - targets[b];
        total += mode == LossMode::Squared ? diff * diff : std::abs(diff);
    }
    return total / static_cast<double>(predictions.size());
}

std::vector<double> lossGradient(std::span<const double> predictions,
                                 std::span<const double> targets, LossMode mode) {
    QDQN_ABORT_IF(predictions.size() != targets.size() || predictions.empty(),
                  "lossGradient: prediction and target sizes differ");
    const double inv_b = 1.0 / static_cast<double>(predictions.size());
    std::vector<double> grad(predictions.size());
    for (std::size_t b = 0; b < predictions.size(); ++b) {
        const double diff = predictions[b] - targets[b];
        if (mode == LossMode::Squared) {
            grad[b] = 2.0 * diff * inv_b;
        } else {
            grad[b] = (diff > 0.0 ? 1.0 : diff < 0.0 ? -1.0 : 0.0) * inv_b;
        }
    }
    return grad;
}

double frozenLakeMae(const envs::lake::QTable &table, double gamma) {
    const auto optimal = envs::lake::optimalQ(gamma);
    double total = 0.0;
    for (std::size_t s = 0; s < envs::lake::kCells; ++s) {
        for (std::size_t a = 0; a < envs::lake::kActions; ++a) {
            total += std::abs(table[s][a] - optimal[s][a]);
        }
    }
    return total / static_cast<double>(envs::lake::kCells * envs::lake::kActions);
}

double frozenLakeMae(const QFunction &model, std::span<const double> params,
                     double gamma) {
    QDQN_ABORT_IF(model.numActions() != envs::lake::kActions,
                  "Frozen Lake MAE needs a 4-action model");
    envs::lake::QTable table{};
    for (std::size_t s = 0; s < envs::lake::kCells; ++s) {
        const auto q = model.qValues(params, {static_cast<double>(s)});
        std::copy(q.begin(), q.end(), table[s].begin());
    }
    return frozenLakeMae(table, gamma);
}

std::unique_ptr<envs::Environment> makeEnvironment(EnvironmentId id) {
    if (id == EnvironmentId::FrozenLake) {
        return std::make_unique<envs::FrozenLake>();
    }
    return std::make_unique<envs::CartPole>();
}

double maxEpisodeScore(EnvironmentId id) noexcept {
    return id == EnvironmentId::FrozenLake ? 1.0
                                           : static_cast<double>(envs::kMaxEpisodeSteps);
}

bool isSolved(EnvironmentId id, std::span<const double> scores) {
    constexpr std::size_t kWindow = 100;
    if (scores.size() < kWindow) {
        return false;
    }
    const auto tail = scores.last(kWindow);
    if (id == EnvironmentId::FrozenLake) {
        return std::all_of(tail.begin(), tail.end(), [](double s) { return s >= 1.0; });
    }
    const double mean = std::accumulate(tail.begin(), tail.end(), 0.0) / kWindow;
    return mean >= 195.0;
}

Trainer::Trainer(DqnConfig config)
    : config_{std::move(config)}, model_{makeQFunction(config_.model)},
      layout_{model_->layout()}, env_{makeEnvironment(config_.environment)},
      memory_{config_.memory_capacity},
      env_rng_{makeStream(config_.seed, RngStream::Environment)},
      policy_rng_{makeStream(config_.seed, RngStream::Policy)},
      replay_rng_{makeStream(config_.seed, RngStream::Replay)},
      adam_{model_->numParams()}, epsilon_{config_.epsilon} {
    QDQN_ABORT_IF(config_.batch_size == 0, "batch size must be positive");
    QDQN_ABORT_IF(config_.update_model_every == 0 || config_.update_target_every == 0,
                  "update intervals must be positive");
    QDQN_ABORT_IF(model_->numActions() != env_->numActions(),
                  "model has " + std::to_string(model_->numActions()) +
                      " outputs, environment has " +
                      std::to_string(env_->numActions()) + " actions");
    QDQN_ABORT_IF(!(config_.epsilon.floor <= config_.epsilon.value &&
                    config_.epsilon.value <= 1.0),
                  "epsilon must satisfy floor <= value <= 1");
    auto init_rng = makeStream(config_.seed, RngStream::Init);
    params_ = model_->initParams(init_rng);
    target_params_ = params_;
}

double Trainer::update(std::span<const Transition> batch) {
    const auto targets = computeTargets(batch, *model_, target_params_, config_.gamma,
                                        config_.bootstrap_on_truncation);
    std::vector<double> predictions(batch.size());
    std::vector<double> target_values(batch.size());
    // dL/dtheta = sum_b dL/dQ_b * dQ_b/dtheta, with dL/dQ_b computed from
    // Q_b itself; evaluate Q_b once, then accumulate the scaled gradients.
    std::vector<std::vector<double>> per_sample(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
        per_sample[b].assign(model_->numParams(), 0.0);
        predictions[b] = model_->accumulateGradient(params_, batch[b].state,
                                                    targets[b].action, 1.0, per_sample[b]);
        target_values[b] = targets[b].value;
    }
    const double batch_loss = loss(predictions, target_values, config_.loss);
    const auto dl_dq = lossGradient(predictions, target_values, config_.loss);
    std::vector<double> grad(model_->numParams(), 0.0);
    for (std::size_t b = 0; b < batch.size(); ++b) {
        for (std::size_t k = 0; k < grad.size(); ++k) {
            grad[k] += dl_dq[b] * per_sample[b][k];
        }
    }
    adamUpdate(params_, grad, adam_, layout_, config_.learning_rates);
    return batch_loss;
}

void Trainer::syncTarget() { target_params_ = params_; }

EpisodeRecord Trainer::runEpisode() {
    EpisodeRecord record;
    record.epsilon = epsilon_.value;
    record.max_q = -std::numeric_limits<double>::infinity();
    Observation state = env_->reset(env_rng_);
    while (!env_->done()) {
        const auto q = model_->qValues(params_, state);
        record.max_q = std::max(record.max_q, *std::max_element(q.begin(), q.end()));
        const std::size_t action = replay::selectAction(q, epsilon_.value, policy_rng_);
        Transition t = env_->step(action);
        record.score += t.reward;
        ++record.steps;
        state = t.next_state;
        memory_.push(std::move(t));
        ++global_step_;

        if (global_step_ % config_.update_model_every == 0) {
            if (auto batch = memory_.sample(config_.batch_size, replay_rng_)) {
                record.losses.push_back(update(*batch));
            }
        }
        if (global_step_ % config_.update_target_every == 0) {
            syncTarget();
        }
        if (config_.epsilon_decay == DecayGranularity::PerStep) {
            epsilon_.step();
        }
        if (config_.track_mae) {
            mae_trace_.push_back(frozenLakeMae(*model_, params_, config_.gamma));
        }
    }
    if (config_.epsilon_decay == DecayGranularity::PerEpisode) {
        epsilon_.step();
    }
    return record;
}

TrainLog Trainer::run() {
    QDQN_ABORT_IF(config_.track_mae && config_.environment != EnvironmentId::FrozenLake,
                  "MAE tracking is defined for Frozen Lake only");
    TrainLog log;
    std::vector<double> scores;
    while (log.episodes.size() < config_.max_episodes) {
        log.episodes.push_back(runEpisode());
        scores.push_back(log.episodes.back().score);
        if (isSolved(config_.environment, scores)) {
            log.solved_episode = log.episodes.size() - 1;
            break;
        }
    }
    while (log.episodes.size() < config_.max_episodes) {
        EpisodeRecord pad;
        pad.score = maxEpisodeScore(config_.environment);
        pad.epsilon = epsilon_.value;
        pad.padded = true;
        log.episodes.push_back(std::move(pad));
    }
    log.mae_per_step = std::move(mae_trace_);
    mae_trace_.clear();
    log.final_params = params_;
    log.total_steps = global_step_;
    return log;
}

TrainLog train(const DqnConfig &config) {
    Trainer trainer(config);
    return trainer.run();
}

} // namespace qdqn::dqn
