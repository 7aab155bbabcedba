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
#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>

#include "qdqn/error.hpp"
#include "qdqn/harness.hpp"

namespace qdqn::harness {

namespace {

using IntList = std::vector<std::uint64_t>;
using Value = std::variant<std::int64_t, double, bool, std::string, IntList>;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string formatDouble(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

template <class T> T parseNumber(std::string_view text, std::string_view key) {
    T value{};
    const auto *begin = text.data();
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    QDQN_ABORT_IF(ec != std::errc{} || ptr != end,
                  "config: bad numeric value '" + std::string(text) + "' for key '" +
                      std::string(key) + "'");
    return value;
}

IntList parseIntList(std::string_view text, std::string_view key) {
    IntList out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        QDQN_ABORT_IF(item.empty(), "config: empty list item for key '" +
                                        std::string(key) + "'");
        out.push_back(parseNumber<std::uint64_t>(item, key));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

Value parseValue(std::string_view type, std::string_view text, std::string_view key) {
    if (type == "int") {
        return parseNumber<std::int64_t>(text, key);
    }
    if (type == "float") {
        return parseNumber<double>(text, key);
    }
    if (type == "bool") {
        if (text == "yes" || text == "true") {
            return true;
        }
        if (text == "no" || text == "false") {
            return false;
        }
        abort("config: bad bool '" + std::string(text) + "' for key '" +
              std::string(key) + "'");
    }
    if (type == "string") {
        return std::string(text);
    }
    if (type == "ints") {
        return parseIntList(text, key);
    }
    abort("config: unknown type '" + std::string(type) + "' for key '" +
          std::string(key) + "'");
}

class Table {
  public:
    explicit Table(std::map<std::string, Value> entries) : entries_{std::move(entries)} {}

    template <class T> std::optional<T> take(const std::string &key) {
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            return std::nullopt;
        }
        const T *v = std::get_if<T>(&it->second);
        QDQN_ABORT_IF(v == nullptr, "config: key '" + key + "' has the wrong type");
        T out = *v;
        entries_.erase(it);
        return out;
    }

    template <class T> T require(const std::string &key) {
        auto v = take<T>(key);
        QDQN_ABORT_IF(!v, "config: missing key '" + key + "'");
        return *v;
    }

    std::size_t size(const std::string &key) {
        auto v = take<std::int64_t>(key);
        QDQN_ABORT_IF(v && *v < 0, "config: key '" + key + "' must be non-negative");
        return v ? static_cast<std::size_t>(*v) : 0;
    }

    void expectEmpty() const {
        if (!entries_.empty()) {
            abort("config: unknown key '" + entries_.begin()->first + "'");
        }
    }

  private:
    std::map<std::string, Value> entries_;
};

class Writer {
  public:
    void line(const std::string &key, const std::string &type, const std::string &value) {
        out_ << key << ": " << type << " = " << value << '\n';
    }
    void integer(const std::string &key, std::size_t v) { line(key, "int", std::to_string(v)); }
    void real(const std::string &key, double v) { line(key, "float", formatDouble(v)); }
    void boolean(const std::string &key, bool v) { line(key, "bool", v ? "yes" : "no"); }
    void text(const std::string &key, const std::string &v) { line(key, "string", v); }
    void ints(const std::string &key, std::span<const std::uint64_t> v) {
        std::string joined;
        for (std::size_t i = 0; i < v.size(); ++i) {
            joined += (i ? ", " : "") + std::to_string(v[i]);
        }
        line(key, "ints", joined);
    }
    void comment(const std::string &text) { out_ << "# " << text << '\n'; }
    std::string str() const { return out_.str(); }

  private:
    std::ostringstream out_;
};

} // namespace

std::vector<std::uint64_t> parseSeedList(std::string_view text) {
    std::vector<std::uint64_t> seeds;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        const auto dash = item.find('-');
        if (dash == std::string_view::npos) {
            seeds.push_back(parseNumber<std::uint64_t>(item, "seeds"));
        } else {
            const auto lo = parseNumber<std::uint64_t>(trim(item.substr(0, dash)), "seeds");
            const auto hi = parseNumber<std::uint64_t>(trim(item.substr(dash + 1)), "seeds");
            QDQN_ABORT_IF(hi < lo, "seed range '" + std::string(item) + "' is reversed");
            for (auto s = lo; s <= hi; ++s) {
                seeds.push_back(s);
            }
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    QDQN_ABORT_IF(seeds.empty(), "empty seed list");
    return seeds;
}

std::string serializeConfig(const ExperimentSpec &spec) {
    const auto &c = spec.config;
    Writer w;
    w.comment("qdqn experiment configuration");
    w.integer("schema_version", kSchemaVersion);
    w.text("name", spec.name);
    w.text("environment",
           c.environment == dqn::EnvironmentId::FrozenLake ? "frozen_lake" : "cart_pole");
    w.ints("seeds", spec.seeds);
    w.integer("episodes", c.max_episodes);

    if (const auto *q = std::get_if<qmodel::ModelConfig>(&c.model)) {
        w.text("model", "pqc");
        w.integer("qubits", q->ansatz.num_qubits);
        w.integer("layers", q->ansatz.num_layers);
        w.boolean("data_reuploading", q->ansatz.data_reuploading);
        w.text("encoding", q->encoder.mode == qmodel::Encoding::Basis ? "basis" : "arctan");
        const bool train_wd = q->encoder.input_weights != qmodel::InputWeights::None;
        w.boolean("train_w_d", train_wd);
        if (train_wd) {
            w.text("input_weight_sharing",
                   q->encoder.input_weights == qmodel::InputWeights::Shared ? "shared"
                                                                           : "per_layer");
        }
        const bool paired = q->observables.numActions() == 2 &&
                            q->observables.per_action[0].terms().size() == 1 &&
                            q->observables.per_action[0].terms()[0].qubits.size() == 2;
        w.text("observables", paired ? "zz_pairs" : "z_per_qubit");
        w.integer("actions", q->observables.numActions());
        const bool train_wo =
            q->observables.scaling == qmodel::OutputScaling::TrainableOutputWeight;
        w.boolean("train_w_o", train_wo);
        if (!train_wo) {
            w.real("output_factor", q->observables.scaling == qmodel::OutputScaling::FixedFactor
                                        ? q->observables.factor
                                        : 1.0);
        }
    } else {
        const auto &m = std::get<baseline::MlpConfig>(c.model);
        w.text("model", "nn");
        const std::vector<std::uint64_t> hidden(m.layer_sizes.begin() + 1,
                                                m.layer_sizes.end() - 1);
        w.ints("units_per_layer", hidden);
        w.text("output_head", m.head == baseline::OutputHead::Softmax ? "softmax" : "linear");
    }

    w.real("gamma", c.gamma);
    w.real("eta", c.learning_rates.theta);
    if (std::holds_alternative<qmodel::ModelConfig>(c.model)) {
        w.real("eta_w_d", c.learning_rates.input_weights);
        w.real("eta_w_o", c.learning_rates.output_weights);
    }
    w.integer("batch_size", c.batch_size);
    w.real("epsilon_init", c.epsilon.value);
    w.real("epsilon_dec", c.epsilon.decay);
    w.real("epsilon_min", c.epsilon.floor);
    w.text("epsilon_decay_per",
           c.epsilon_decay == dqn::DecayGranularity::PerEpisode ? "episode" : "step");
    w.integer("update_model", c.update_model_every);
    w.integer("update_target_model", c.update_target_every);
    w.integer("size_of_replay_memory", c.memory_capacity);
    w.text("loss", c.loss == dqn::LossMode::Squared ? "squared" : "literal");
    w.boolean("bootstrap_on_truncation", c.bootstrap_on_truncation);
    w.boolean("track_mae", c.track_mae);
    w.boolean("emit_scores", spec.emit.scores);
    w.boolean("emit_mae", spec.emit.mae);
    w.boolean("emit_q_surface", spec.emit.q_surface);
    if (spec.expect.min_solved) {
        w.integer("expect_min_solved", *spec.expect.min_solved);
    }
    if (spec.expect.max_solved) {
        w.integer("expect_max_solved", *spec.expect.max_solved);
    }
    if (spec.expect.max_final_mean) {
        w.real("expect_max_final_mean", *spec.expect.max_final_mean);
    }
    return w.str();
}

ExperimentSpec parseConfig(std::string_view text) {
    std::map<std::string, Value> entries;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = trim(text.substr(0, nl));
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto colon = line.find(':');
        const auto eq = line.find('=');
        QDQN_ABORT_IF(colon == std::string_view::npos || eq == std::string_view::npos ||
                          eq < colon,
                      "config line " + std::to_string(line_no) +
                          ": expected 'key: type = value'");
        const std::string key(trim(line.substr(0, colon)));
        const auto type = trim(line.substr(colon + 1, eq - colon - 1));
        const auto value = trim(line.substr(eq + 1));
        QDQN_ABORT_IF(entries.contains(key), "config: duplicate key '" + key + "'");
        entries.emplace(key, parseValue(type, value, key));
    }

    Table t(std::move(entries));
    const auto version = t.require<std::int64_t>("schema_version");
    QDQN_ABORT_IF(version != kSchemaVersion,
                  "config: unsupported schema_version " + std::to_string(version));

    ExperimentSpec spec;
    spec.name = t.require<std::string>("name");
    auto &c = spec.config;
    const auto env = t.require<std::string>("environment");
    if (env == "frozen_lake") {
        c.environment = dqn::EnvironmentId::FrozenLake;
    } else if (env == "cart_pole") {
        c.environment = dqn::EnvironmentId::CartPole;
    } else {
        abort("config: unknown environment '" + env + "'");
    }
    if (auto seeds = t.take<IntList>("seeds")) {
        spec.seeds = *seeds;
    }
    c.max_episodes = t.size("episodes");

    const auto model = t.require<std::string>("model");
    const std::size_t obs_size = c.environment == dqn::EnvironmentId::FrozenLake ? 1 : 4;
    const std::size_t env_actions = c.environment == dqn::EnvironmentId::FrozenLake ? 4 : 2;
    if (model == "pqc") {
        qmodel::ModelConfig q;
        q.ansatz.num_qubits = t.size("qubits");
        q.ansatz.num_layers = t.size("layers");
        q.ansatz.data_reuploading = t.require<bool>("data_reuploading");
        const auto encoding = t.require<std::string>("encoding");
        QDQN_ABORT_IF(encoding != "basis" && encoding != "arctan",
                      "config: unknown encoding '" + encoding + "'");
        q.encoder.mode = encoding == "basis" ? qmodel::Encoding::Basis
                                             : qmodel::Encoding::ContinuousArctan;
        if (t.require<bool>("train_w_d")) {
            const auto sharing = t.take<std::string>("input_weight_sharing").value_or("shared");
            QDQN_ABORT_IF(sharing != "shared" && sharing != "per_layer",
                          "config: unknown input_weight_sharing '" + sharing + "'");
            q.encoder.input_weights = sharing == "shared" ? qmodel::InputWeights::Shared
                                                          : qmodel::InputWeights::PerLayer;
        }
        const auto observables = t.require<std::string>("observables");
        const std::size_t actions = t.size("actions");
        QDQN_ABORT_IF(actions != env_actions,
                      "config: actions does not match the environment");
        const bool train_wo = t.require<bool>("train_w_o");
        qmodel::OutputScaling scaling = qmodel::OutputScaling::TrainableOutputWeight;
        double factor = 1.0;
        if (!train_wo) {
            factor = t.take<double>("output_factor").value_or(1.0);
            scaling = factor == 1.0 ? qmodel::OutputScaling::FixedUnit
                                    : qmodel::OutputScaling::FixedFactor;
        }
        if (observables == "zz_pairs") {
            QDQN_ABORT_IF(actions != 2, "config: zz_pairs readout needs 2 actions");
            q.observables = qmodel::ObservableSet::pairedZZ(scaling, factor);
        } else if (observables == "z_per_qubit") {
            q.observables = qmodel::ObservableSet::singleZ(actions, scaling, factor);
        } else {
            abort("config: unknown observables '" + observables + "'");
        }
        qmodel::validate(q);
        c.model = q;
    } else if (model == "nn") {
        baseline::MlpConfig m;
        m.layer_sizes = {obs_size};
        for (auto u : t.require<IntList>("units_per_layer")) {
            m.layer_sizes.push_back(static_cast<std::size_t>(u));
        }
        m.layer_sizes.push_back(env_actions);
        const auto head = t.require<std::string>("output_head");
        QDQN_ABORT_IF(head != "linear" && head != "softmax",
                      "config: unknown output_head '" + head + "'");
        m.head = head == "softmax" ? baseline::OutputHead::Softmax
                                   : baseline::OutputHead::Linear;
        baseline::validate(m);
        c.model = m;
    } else {
        abort("config: unknown model '" + model + "'");
    }

    c.gamma = t.require<double>("gamma");
    c.learning_rates.theta = t.require<double>("eta");
    c.learning_rates.input_weights = t.take<double>("eta_w_d").value_or(c.learning_rates.theta);
    c.learning_rates.output_weights =
        t.take<double>("eta_w_o").value_or(c.learning_rates.theta);
    c.batch_size = t.size("batch_size");
    c.epsilon.value = t.require<double>("epsilon_init");
    c.epsilon.decay = t.require<double>("epsilon_dec");
    c.epsilon.floor = t.require<double>("epsilon_min");
    const auto per = t.take<std::string>("epsilon_decay_per").value_or("episode");
    QDQN_ABORT_IF(per != "episode" && per != "step",
                  "config: epsilon_decay_per must be episode or step");
    c.epsilon_decay = per == "episode" ? dqn::DecayGranularity::PerEpisode
                                       : dqn::DecayGranularity::PerStep;
    c.update_model_every = t.size("update_model");
    c.update_target_every = t.size("update_target_model");
    c.memory_capacity = t.size("size_of_replay_memory");
    const auto loss = t.take<std::string>("loss").value_or("squared");
    QDQN_ABORT_IF(loss != "squared" && loss != "literal",
                  "config: loss must be squared or literal");
    c.loss = loss == "squared" ? dqn::LossMode::Squared : dqn::LossMode::Literal;
    c.bootstrap_on_truncation = t.take<bool>("bootstrap_on_truncation").value_or(false);
    c.track_mae = t.take<bool>("track_mae").value_or(false);
    spec.emit.scores = t.take<bool>("emit_scores").value_or(true);
    spec.emit.mae = t.take<bool>("emit_mae").value_or(false);
    spec.emit.q_surface = t.take<bool>("emit_q_surface").value_or(false);
    if (auto v = t.take<std::int64_t>("expect_min_solved")) {
        spec.expect.min_solved = static_cast<std::size_t>(*v);
    }
    if (auto v = t.take<std::int64_t>("expect_max_solved")) {
        spec.expect.max_solved = static_cast<std::size_t>(*v);
    }
    spec.expect.max_final_mean = t.take<double>("expect_max_final_mean");
    t.expectEmpty();

    QDQN_ABORT_IF(c.batch_size == 0 || c.update_model_every == 0 ||
                      c.update_target_every == 0 || c.memory_capacity == 0,
                  "config: batch size, update intervals and memory size must be positive");
    return spec;
}

ExperimentSpec loadConfig(const std::filesystem::path &path) {
    std::ifstream in(path);
    QDQN_ABORT_IF(!in, "cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parseConfig(buffer.str());
}

void saveConfig(const ExperimentSpec &spec, const std::filesystem::path &path) {
    std::ofstream out(path);
    QDQN_ABORT_IF(!out, "cannot write config file " + path.string());
    out << serializeConfig(spec);
    QDQN_ABORT_IF(!out, "write failed for " + path.string());
}

} // namespace qdqn::harness
