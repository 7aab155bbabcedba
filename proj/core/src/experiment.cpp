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
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "qdqn/error.hpp"
#include "qdqn/harness.hpp"

namespace qdqn::harness {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string num(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

double parseDouble(std::string_view text, const fs::path &file) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    QDQN_ABORT_IF(ec != std::errc{} || ptr != text.data() + text.size(),
                  "bad number '" + std::string(text) + "' in " + file.string());
    return v;
}

void writeText(const fs::path &file, const std::string &text) {
    std::ofstream out(file, std::ios::binary);
    QDQN_ABORT_IF(!out, "cannot write " + file.string());
    out << text;
    QDQN_ABORT_IF(!out, "write failed for " + file.string());
}

std::string readText(const fs::path &file) {
    std::ifstream in(file, std::ios::binary);
    QDQN_ABORT_IF(!in, "cannot open " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector<std::string_view> splitCsv(std::string_view line) {
    std::vector<std::string_view> cells;
    while (true) {
        const auto comma = line.find(',');
        cells.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) {
            return cells;
        }
        line.remove_prefix(comma + 1);
    }
}

std::vector<std::string_view> lines(std::string_view text) {
    std::vector<std::string_view> out;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        out.push_back(text.substr(0, nl));
        if (nl == std::string_view::npos) {
            break;
        }
        text.remove_prefix(nl + 1);
    }
    return out;
}

double meanOfWindow(std::span<const double> row, std::size_t end, std::size_t window) {
    end = std::min(end, row.size());
    const std::size_t begin = end > window ? end - window : 0;
    if (end == begin) {
        return 0.0;
    }
    const double sum = std::accumulate(row.begin() + static_cast<std::ptrdiff_t>(begin),
                                       row.begin() + static_cast<std::ptrdiff_t>(end), 0.0);
    return sum / static_cast<double>(end - begin);
}

std::string curveCsv(std::string_view index_name, std::string_view prefix,
                     std::span<const std::uint64_t> seeds,
                     std::span<const std::vector<double>> rows,
                     std::span<const double> mean, std::span<const double> stddev) {
    std::string out;
    out += index_name;
    out += ',';
    out += prefix;
    out += "_mean,";
    out += prefix;
    out += "_std";
    for (auto s : seeds) {
        out += ',';
        out += prefix;
        out += "_seed_" + std::to_string(s);
    }
    out += '\n';
    for (std::size_t i = 0; i < mean.size(); ++i) {
        out += std::to_string(i) + ',' + num(mean[i]) + ',' + num(stddev[i]);
        for (const auto &row : rows) {
            out += ',' + num(row[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace

std::size_t CurveBundle::solvedCount() const {
    return static_cast<std::size_t>(
        std::count_if(episodes_to_solve.begin(), episodes_to_solve.end(),
                      [](const auto &e) { return e.has_value(); }));
}

double CurveBundle::finalMeanScore(std::size_t window) const {
    const std::size_t end = scores.empty() ? 0 : scores.front().size();
    return trailingMeanScore(end, window);
}

double CurveBundle::trailingMeanScore(std::size_t end, std::size_t window) const {
    if (scores.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (const auto &row : scores) {
        total += meanOfWindow(row, end, window);
    }
    return total / static_cast<double>(scores.size());
}

double CurveBundle::finalMae() const {
    if (mae.empty() || mae.front().empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double total = 0.0;
    for (const auto &row : mae) {
        total += row.back();
    }
    return total / static_cast<double>(mae.size());
}

void meanAndStd(std::span<const std::vector<double>> rows, std::vector<double> &mean,
                std::vector<double> &stddev) {
    mean.clear();
    stddev.clear();
    if (rows.empty()) {
        return;
    }
    const std::size_t len = rows.front().size();
    for (const auto &row : rows) {
        QDQN_ABORT_IF(row.size() != len, "curves of unequal length cannot be aggregated");
    }
    const auto n = static_cast<double>(rows.size());
    mean.assign(len, 0.0);
    stddev.assign(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        double sum = 0.0;
        for (const auto &row : rows) {
            sum += row[i];
        }
        const double m = sum / n;
        double sq = 0.0;
        for (const auto &row : rows) {
            sq += (row[i] - m) * (row[i] - m);
        }
        mean[i] = m;
        stddev[i] = std::sqrt(sq / n);
    }
}

CurveBundle aggregate(std::string name, std::size_t param_count,
                      std::span<const std::uint64_t> seeds,
                      std::span<const dqn::TrainLog> logs) {
    QDQN_ABORT_IF(seeds.size() != logs.size(), "one log per seed is required");
    QDQN_ABORT_IF(logs.empty(), "nothing to aggregate");
    CurveBundle b;
    b.name = std::move(name);
    b.param_count = param_count;
    b.seeds.assign(seeds.begin(), seeds.end());
    std::size_t mae_len = 0;
    for (const auto &log : logs) {
        b.scores.push_back(log.scores());
        if (log.solved_episode) {
            b.episodes_to_solve.emplace_back(*log.solved_episode + 1);
        } else {
            b.episodes_to_solve.emplace_back(std::nullopt);
        }
        mae_len = std::max(mae_len, log.mae_per_step.size());
    }
    meanAndStd(b.scores, b.score_mean, b.score_std);
    if (mae_len > 0) {
        for (const auto &log : logs) {
            QDQN_ABORT_IF(log.mae_per_step.empty(), "MAE missing for some seeds");
            auto row = log.mae_per_step;
            row.resize(mae_len, row.back());
            b.mae.push_back(std::move(row));
        }
        meanAndStd(b.mae, b.mae_mean, b.mae_std);
    }
    return b;
}

std::string scoresCsv(const CurveBundle &bundle) {
    return curveCsv("episode", "score", bundle.seeds, bundle.scores, bundle.score_mean,
                    bundle.score_std);
}

std::string maeCsv(const CurveBundle &bundle) {
    return curveCsv("step", "mae", bundle.seeds, bundle.mae, bundle.mae_mean,
                    bundle.mae_std);
}

std::string bundleJson(const CurveBundle &bundle) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = bundle.name;
    j["param_count"] = bundle.param_count;
    j["seeds"] = bundle.seeds;
    j["scores"] = bundle.scores;
    j["score_mean"] = bundle.score_mean;
    j["score_std"] = bundle.score_std;
    json solve = json::array();
    for (const auto &e : bundle.episodes_to_solve) {
        solve.push_back(e ? json(*e) : json(nullptr));
    }
    j["episodes_to_solve"] = std::move(solve);
    j["mae"] = bundle.mae;
    j["mae_mean"] = bundle.mae_mean;
    j["mae_std"] = bundle.mae_std;
    return j.dump(1) + "\n";
}

CurveBundle parseBundleJson(std::string_view text) {
    CurveBundle b;
    try {
        const json j = json::parse(text);
        QDQN_ABORT_IF(j.at("schema_version").get<int>() != kSchemaVersion,
                      "unsupported bundle schema_version");
        b.name = j.at("name").get<std::string>();
        b.param_count = j.at("param_count").get<std::size_t>();
        b.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        b.scores = j.at("scores").get<std::vector<std::vector<double>>>();
        b.score_mean = j.at("score_mean").get<std::vector<double>>();
        b.score_std = j.at("score_std").get<std::vector<double>>();
        for (const auto &e : j.at("episodes_to_solve")) {
            if (e.is_null()) {
                b.episodes_to_solve.emplace_back(std::nullopt);
            } else {
                b.episodes_to_solve.emplace_back(e.get<std::size_t>());
            }
        }
        b.mae = j.at("mae").get<std::vector<std::vector<double>>>();
        b.mae_mean = j.at("mae_mean").get<std::vector<double>>();
        b.mae_std = j.at("mae_std").get<std::vector<double>>();
    } catch (const json::exception &e) {
        abort(std::string("malformed bundle JSON: ") + e.what());
    }
    return b;
}

void writeBundle(const CurveBundle &bundle, const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    QDQN_ABORT_IF(ec, "cannot create " + dir.string() + ": " + ec.message());
    writeText(dir / "bundle.json", bundleJson(bundle));
    writeText(dir / "scores.csv", scoresCsv(bundle));
    if (!bundle.mae.empty()) {
        writeText(dir / "mae.csv", maeCsv(bundle));
    }
}

CurveBundle readBundle(const fs::path &json_file) {
    return parseBundleJson(readText(json_file));
}

void writeTrainLog(const dqn::TrainLog &log, const fs::path &csv_file) {
    std::string out = "episode,score,epsilon,steps,mean_loss,max_q,padded,solved\n";
    for (std::size_t i = 0; i < log.episodes.size(); ++i) {
        const auto &e = log.episodes[i];
        const double mean_loss =
            e.losses.empty() ? 0.0
                             : std::accumulate(e.losses.begin(), e.losses.end(), 0.0) /
                                   static_cast<double>(e.losses.size());
        out += std::to_string(i) + ',' + num(e.score) + ',' + num(e.epsilon) + ',' +
               std::to_string(e.steps) + ',' + num(mean_loss) + ',' + num(e.max_q) + ',' +
               (e.padded ? "1" : "0") + ',' +
               (log.solved_episode == i ? "1" : "0") + '\n';
    }
    writeText(csv_file, out);
    if (!log.mae_per_step.empty()) {
        std::string mae = "step,mae\n";
        for (std::size_t i = 0; i < log.mae_per_step.size(); ++i) {
            mae += std::to_string(i) + ',' + num(log.mae_per_step[i]) + '\n';
        }
        auto mae_file = csv_file;
        mae_file.replace_filename(csv_file.stem().string() + "_mae.csv");
        writeText(mae_file, mae);
    }
}

dqn::TrainLog readTrainLog(const fs::path &csv_file) {
    dqn::TrainLog log;
    const std::string text = readText(csv_file);
    const auto rows = lines(text);
    QDQN_ABORT_IF(rows.empty(), "empty train log " + csv_file.string());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto cells = splitCsv(rows[r]);
        QDQN_ABORT_IF(cells.size() != 8, "bad row in " + csv_file.string());
        dqn::EpisodeRecord e;
        e.score = parseDouble(cells[1], csv_file);
        e.epsilon = parseDouble(cells[2], csv_file);
        e.steps = static_cast<std::size_t>(parseDouble(cells[3], csv_file));
        e.max_q = parseDouble(cells[5], csv_file);
        e.padded = cells[6] == "1";
        if (cells[7] == "1") {
            log.solved_episode = r - 1;
        }
        log.episodes.push_back(std::move(e));
    }
    auto mae_file = csv_file;
    mae_file.replace_filename(csv_file.stem().string() + "_mae.csv");
    if (fs::exists(mae_file)) {
        const std::string mae_text = readText(mae_file);
        const auto mae_rows = lines(mae_text);
        for (std::size_t r = 1; r < mae_rows.size(); ++r) {
            const auto cells = splitCsv(mae_rows[r]);
            QDQN_ABORT_IF(cells.size() != 2, "bad row in " + mae_file.string());
            log.mae_per_step.push_back(parseDouble(cells[1], mae_file));
        }
    }
    return log;
}

void writeParams(std::span<const double> params, const fs::path &json_file) {
    json j;
    j["params"] = std::vector<double>(params.begin(), params.end());
    writeText(json_file, j.dump() + "\n");
}

std::vector<double> readParams(const fs::path &json_file) {
    try {
        return json::parse(readText(json_file)).at("params").get<std::vector<double>>();
    } catch (const json::exception &e) {
        abort("malformed parameter file " + json_file.string() + ": " + e.what());
    }
}

std::vector<std::string> checkExpectation(const CurveBundle &bundle,
                                          const Expectation &expect) {
    std::vector<std::string> failures;
    const auto solved = bundle.solvedCount();
    const auto total = std::to_string(bundle.seeds.size());
    if (expect.min_solved && solved < *expect.min_solved) {
        failures.push_back(bundle.name + ": " + std::to_string(solved) + "/" + total +
                           " seeds solved, expected at least " +
                           std::to_string(*expect.min_solved));
    }
    if (expect.max_solved && solved > *expect.max_solved) {
        failures.push_back(bundle.name + ": " + std::to_string(solved) + "/" + total +
                           " seeds solved, expected at most " +
                           std::to_string(*expect.max_solved));
    }
    if (expect.max_final_mean) {
        const double mean = bundle.finalMeanScore();
        if (!(mean < *expect.max_final_mean)) {
            failures.push_back(bundle.name + ": final mean score " + num(mean) +
                               ", expected below " + num(*expect.max_final_mean));
        }
    }
    return failures;
}

ExperimentResult runExperiment(const ExperimentSpec &spec, std::size_t threads) {
    QDQN_ABORT_IF(spec.seeds.empty(), "experiment '" + spec.name + "' has no seeds");
    const std::size_t n = spec.seeds.size();
    if (threads == 0) {
        threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, n);

    std::vector<dqn::TrainLog> logs(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                auto config = spec.config;
                config.seed = spec.seeds[i];
                config.track_mae =
                    config.track_mae || (spec.emit.mae && config.environment ==
                                                            dqn::EnvironmentId::FrozenLake);
                logs[i] = dqn::train(config);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    ExperimentResult result;
    result.bundle =
        aggregate(spec.name, dqn::paramCount(spec.config.model), spec.seeds, logs);
    if (!spec.emit.mae) {
        result.bundle.mae.clear();
        result.bundle.mae_mean.clear();
        result.bundle.mae_std.clear();
    }
    result.logs = std::move(logs);

    if (!spec.output_dir.empty()) {
        const fs::path dir = spec.output_dir / spec.name;
        writeBundle(result.bundle, dir);
        saveConfig(spec, dir / "config.txt");
        for (std::size_t i = 0; i < n; ++i) {
            const std::string stem = "seed_" + std::to_string(spec.seeds[i]);
            auto log = result.logs[i];
            if (!spec.emit.mae) {
                log.mae_per_step.clear();
            }
            writeTrainLog(log, dir / (stem + "_log.csv"));
            writeParams(result.logs[i].final_params, dir / (stem + "_params.json"));
            if (spec.emit.q_surface &&
                spec.config.environment == dqn::EnvironmentId::CartPole) {
                const auto model = dqn::makeQFunction(spec.config.model);
                const auto slices = qSurface(*model, result.logs[i].final_params, 41);
                const fs::path surface_dir = dir / (stem + "_q_surface");
                fs::create_directories(surface_dir);
                writeQSurface(slices, surface_dir);
            }
        }
    }
    return result;
}

} // namespace qdqn::harness
