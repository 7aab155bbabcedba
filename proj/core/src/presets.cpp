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
#include <string>

#include "qdqn/error.hpp"
#include "qdqn/harness.hpp"

namespace qdqn::harness {

namespace {

using dqn::DqnConfig;
using dqn::EnvironmentId;
using qmodel::Encoding;
using qmodel::InputWeights;
using qmodel::ObservableSet;
using qmodel::OutputScaling;

ExperimentSpec frozenLake(std::size_t layers) {
    ExperimentSpec spec;
    spec.name = "fl-depth-" + std::to_string(layers);
    DqnConfig &c = spec.config;
    c.environment = EnvironmentId::FrozenLake;
    qmodel::ModelConfig model;
    model.ansatz = {4, layers, false};
    model.encoder = {Encoding::Basis, InputWeights::None};
    model.observables = ObservableSet::singleZ(4, OutputScaling::FixedUnit);
    c.model = model;
    c.gamma = 0.8;
    c.batch_size = 11;
    c.update_model_every = 5;
    c.update_target_every = 10;
    c.learning_rates = {0.001, 0.001, 0.1};
    c.max_episodes = 1000;
    c.epsilon = {1.0, 0.99, 0.01};
    c.memory_capacity = 10000;
    c.track_mae = true;
    spec.emit.mae = true;
    spec.expect.min_solved = 9;
    return spec;
}

ExperimentSpec cartPole(std::string name, bool reupload, InputWeights input_weights,
                        OutputScaling scaling, double factor = 1.0) {
    ExperimentSpec spec;
    spec.name = std::move(name);
    DqnConfig &c = spec.config;
    c.environment = EnvironmentId::CartPole;
    qmodel::ModelConfig model;
    model.ansatz = {4, 5, reupload};
    model.encoder = {Encoding::ContinuousArctan, input_weights};
    model.observables = ObservableSet::pairedZZ(scaling, factor);
    c.model = model;
    c.gamma = 0.99;
    c.batch_size = 16;
    c.update_model_every = 10;
    c.update_target_every = 30;
    c.learning_rates = {0.001, 0.001, 0.1};
    c.max_episodes = 5000;
    c.epsilon = {1.0, 0.99, 0.01};
    c.memory_capacity = 10000;
    return spec;
}

ExperimentSpec network(std::string name, std::vector<std::size_t> sizes,
                       baseline::OutputHead head) {
    ExperimentSpec spec;
    spec.name = std::move(name);
    DqnConfig &c = spec.config;
    c.environment = EnvironmentId::CartPole;
    c.model = baseline::MlpConfig{std::move(sizes), baseline::Activation::ReLU, head};
    c.gamma = 0.99;
    c.batch_size = 16;
    c.update_model_every = 5;
    c.update_target_every = 10;
    c.learning_rates = {0.01, 0.01, 0.01};
    c.max_episodes = 3000;
    c.epsilon = {1.0, 0.99, 0.01};
    c.memory_capacity = 10000;
    return spec;
}

} // namespace

std::vector<std::string> presetNames() {
    return {"fl-depth-5",         "fl-depth-10",        "fl-depth-15",
            "cp-full",            "cp-no-reupload",     "cp-input-only-unit",
            "cp-input-only-90",   "cp-input-only-180",  "cp-output-only",
            "nn-57",              "nn-167",             "nn-167-softmax"};
}

ExperimentSpec preset(std::string_view name) {
    if (name == "fl-depth-5") {
        return frozenLake(5);
    }
    if (name == "fl-depth-10") {
        return frozenLake(10);
    }
    if (name == "fl-depth-15") {
        return frozenLake(15);
    }
    if (name == "cp-full") {
        auto spec = cartPole("cp-full", true, InputWeights::Shared,
                             OutputScaling::TrainableOutputWeight);
        spec.config.max_episodes = 3000;
        spec.expect.min_solved = 8;
        return spec;
    }
    if (name == "cp-no-reupload") {
        return cartPole("cp-no-reupload", false, InputWeights::Shared,
                        OutputScaling::TrainableOutputWeight);
    }
    if (name == "cp-input-only-unit") {
        auto spec = cartPole("cp-input-only-unit", true, InputWeights::Shared,
                             OutputScaling::FixedUnit);
        spec.expect.max_solved = 0;
        spec.expect.max_final_mean = 50.0;
        return spec;
    }
    if (name == "cp-input-only-90") {
        return cartPole("cp-input-only-90", true, InputWeights::Shared,
                        OutputScaling::FixedFactor, 90.0);
    }
    if (name == "cp-input-only-180") {
        auto spec = cartPole("cp-input-only-180", true, InputWeights::Shared,
                             OutputScaling::FixedFactor, 180.0);
        spec.expect.max_final_mean = 50.0;
        return spec;
    }
    if (name == "cp-output-only") {
        return cartPole("cp-output-only", true, InputWeights::None,
                        OutputScaling::TrainableOutputWeight);
    }
    if (name == "nn-57") {
        return network("nn-57", {4, 4, 5, 2}, baseline::OutputHead::Linear);
    }
    if (name == "nn-167") {
        return network("nn-167", {4, 9, 10, 2}, baseline::OutputHead::Linear);
    }
    if (name == "nn-167-softmax") {
        auto spec = network("nn-167-softmax", {4, 9, 10, 2}, baseline::OutputHead::Softmax);
        spec.expect.max_solved = 0;
        return spec;
    }
    abort("unknown preset '" + std::string(name) + "'");
}

} // namespace qdqn::harness
