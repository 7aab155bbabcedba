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
 * @file harness.hpp
 * Experiment presets, the key-value config format, multi-seed runs,
 * curve aggregation, comparison reports and Q-surface dumps.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdqn/dqn.hpp"

namespace qdqn::harness {

inline constexpr int kSchemaVersion = 1;

struct EmitOptions {
    bool scores = true;
    bool mae = false;
    bool q_surface = false;
};

/// Population-level outcome a preset is expected to reproduce; checked by
/// `qdqn run --assert`.
struct Expectation {
    std::optional<std::size_t> min_solved;
    std::optional<std::size_t> max_solved;
    /// Upper bound on the seed-averaged mean of the final 100 episodes.
    std::optional<double> max_final_mean;
};

struct ExperimentSpec {
    std::string name;
    dqn::DqnConfig config;
    std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::filesystem::path output_dir;
    EmitOptions emit;
    Expectation expect;
};

[[nodiscard]] std::vector<std::string> presetNames();
/// Throws qdqn::Error for an unknown name.
[[nodiscard]] ExperimentSpec preset(std::string_view name);

// ------------------------------------------------------------ config format
//
//   # comment
//   schema_version: int = 1
//   name: string = cp-full
//   gamma: float = 0.99
//   train_w_d: bool = yes
//   units_per_layer: ints = 9, 10
//
// One `key: type = value` per line. Types are int, float, bool, string and
// ints (comma-separated unsigned integers).

[[nodiscard]] std::string serializeConfig(const ExperimentSpec &spec);
[[nodiscard]] ExperimentSpec parseConfig(std::string_view text);
[[nodiscard]] ExperimentSpec loadConfig(const std::filesystem::path &path);
void saveConfig(const ExperimentSpec &spec, const std::filesystem::path &path);

/// Parse "0-9", "1,4,7" or "0-2,5".
[[nodiscard]] std::vector<std::uint64_t> parseSeedList(std::string_view text);

// -------------------------------------------------------------- aggregation

struct CurveBundle {
    std::string name;
    std::size_t param_count = 0;
    std::vector<std::uint64_t> seeds;
    /// Per-seed episode scores, padded at the maximum score after a solve.
    std::vector<std::vector<double>> scores;
    std::vector<double> score_mean;
    std::vector<double> score_std;
    /// Episodes played up to and including the solving one, per seed.
    std::vector<std::optional<std::size_t>> episodes_to_solve;
    /// Per-seed Frozen Lake MAE per step, padded with the final value.
    std::vector<std::vector<double>> mae;
    std::vector<double> mae_mean;
    std::vector<double> mae_std;

    [[nodiscard]] std::size_t solvedCount() const;
    /// Mean over seeds of each seed's mean score over its last `window` episodes.
    [[nodiscard]] double finalMeanScore(std::size_t window = 100) const;
    /// Same, for the window ending at episode `end` (exclusive).
    [[nodiscard]] double trailingMeanScore(std::size_t end, std::size_t window = 100) const;
    /// Seed-averaged final MAE, NaN without MAE data.
    [[nodiscard]] double finalMae() const;

    bool operator==(const CurveBundle &) const = default;
};

/// Pointwise mean and population standard deviation over rows of equal length.
void meanAndStd(std::span<const std::vector<double>> rows, std::vector<double> &mean,
                std::vector<double> &stddev);

[[nodiscard]] CurveBundle aggregate(std::string name, std::size_t param_count,
                                    std::span<const std::uint64_t> seeds,
                                    std::span<const dqn::TrainLog> logs);

struct ExperimentResult {
    CurveBundle bundle;
    std::vector<dqn::TrainLog> logs;
};

/**
 * @brief One training run per seed on a worker pool, then aggregation.
 *
 * Artifacts are written under `spec.output_dir / spec.name` when
 * `output_dir` is non-empty. `threads == 0` uses the hardware concurrency.
 */
[[nodiscard]] ExperimentResult runExperiment(const ExperimentSpec &spec,
                                             std::size_t threads = 0);

void writeBundle(const CurveBundle &bundle, const std::filesystem::path &dir);
[[nodiscard]] CurveBundle readBundle(const std::filesystem::path &json_file);

/// episode,score_mean,score_std,score_seed_<k>...
[[nodiscard]] std::string scoresCsv(const CurveBundle &bundle);
/// step,mae_mean,mae_std,mae_seed_<k>...
[[nodiscard]] std::string maeCsv(const CurveBundle &bundle);
[[nodiscard]] std::string bundleJson(const CurveBundle &bundle);
[[nodiscard]] CurveBundle parseBundleJson(std::string_view text);

/// Episode table as CSV; a non-empty MAE trace goes to `<stem>_mae.csv` beside it.
void writeTrainLog(const dqn::TrainLog &log, const std::filesystem::path &csv_file);
/// Inverse of writeTrainLog for the fields aggregation uses (scores, solve
/// episode, MAE trace). Losses and parameters are not stored there.
[[nodiscard]] dqn::TrainLog readTrainLog(const std::filesystem::path &csv_file);
void writeParams(std::span<const double> params, const std::filesystem::path &json_file);
[[nodiscard]] std::vector<double> readParams(const std::filesystem::path &json_file);

/// Check `bundle` against a preset's expectation; returns failure messages.
[[nodiscard]] std::vector<std::string> checkExpectation(const CurveBundle &bundle,
                                                        const Expectation &expect);

// ------------------------------------------------------------------ reports

struct ReportRow {
    std::string name;
    std::size_t param_count = 0;
    std::size_t seeds = 0;
    std::size_t solved = 0;
    std::optional<double> median_episodes_to_solve;
    double final_mean_score = 0.0;

    bool operator==(const ReportRow &) const = default;
};

[[nodiscard]] std::vector<ReportRow> compareReport(std::span<const CurveBundle> bundles);
[[nodiscard]] std::string reportCsv(std::span<const ReportRow> rows);
[[nodiscard]] std::string reportTable(std::span<const ReportRow> rows);

// ---------------------------------------------------------------- Q surface

struct SurfacePoint {
    double a;
    double b;
    double q_left;
    double q_right;
};

struct SurfaceSlice {
    std::size_t dim_a; // index into (x, x_dot, phi, phi_dot)
    std::size_t dim_b;
    std::vector<SurfacePoint> points; // resolution^2 rows, dim_a major
};

/// Half-width of the grid along each Cart Pole state dimension.
[[nodiscard]] double surfaceHalfRange(std::size_t dim);

/**
 * @brief Q-values on the (x, x_dot), (phi, phi_dot) and (x, phi) planes
 * with the remaining two coordinates pinned to 0.
 *
 * Axes are symmetric grids of `resolution` points; an odd resolution puts
 * an exact 0 on every axis.
 */
[[nodiscard]] std::vector<SurfaceSlice> qSurface(const dqn::QFunction &model,
                                                 std::span<const double> params,
                                                 std::size_t resolution);

[[nodiscard]] std::string surfaceCsv(const SurfaceSlice &slice);
/// Writes q_surface_<name_a>_<name_b>.csv for each slice.
void writeQSurface(std::span<const SurfaceSlice> slices, const std::filesystem::path &dir);

} // namespace qdqn::harness
