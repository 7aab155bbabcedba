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
#include <iomanip>
#include <sstream>

#include "qdqn/error.hpp"
#include "qdqn/harness.hpp"

namespace qdqn::harness {

namespace {

std::string num(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::optional<double> median(std::vector<double> values) {
    if (values.empty()) {
        return std::nullopt;
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return (values[mid - 1] + values[mid]) / 2.0;
}

std::vector<std::string> cells(const ReportRow &row) {
    std::ostringstream mean;
    mean << std::fixed << std::setprecision(2) << row.final_mean_score;
    std::string median_text = "-";
    if (row.median_episodes_to_solve) {
        std::ostringstream m;
        m << std::fixed << std::setprecision(1) << *row.median_episodes_to_solve;
        median_text = m.str();
    }
    return {row.name, std::to_string(row.param_count),
            std::to_string(row.solved) + "/" + std::to_string(row.seeds), median_text,
            mean.str()};
}

} // namespace

std::vector<ReportRow> compareReport(std::span<const CurveBundle> bundles) {
    QDQN_ABORT_IF(bundles.size() < 2, "a comparison report needs at least two bundles");
    std::vector<ReportRow> rows;
    for (const auto &b : bundles) {
        ReportRow row;
        row.name = b.name;
        row.param_count = b.param_count;
        row.seeds = b.seeds.size();
        row.solved = b.solvedCount();
        std::vector<double> solve;
        for (const auto &e : b.episodes_to_solve) {
            if (e) {
                solve.push_back(static_cast<double>(*e));
            }
        }
        row.median_episodes_to_solve = median(std::move(solve));
        row.final_mean_score = b.finalMeanScore();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string reportCsv(std::span<const ReportRow> rows) {
    std::string out =
        "name,param_count,seeds,solved,median_episodes_to_solve,final_mean_score\n";
    for (const auto &r : rows) {
        out += r.name + ',' + std::to_string(r.param_count) + ',' +
               std::to_string(r.seeds) + ',' + std::to_string(r.solved) + ',' +
               (r.median_episodes_to_solve ? num(*r.median_episodes_to_solve) : "") + ',' +
               num(r.final_mean_score) + '\n';
    }
    return out;
}

std::string reportTable(std::span<const ReportRow> rows) {
    const std::vector<std::string> header{"config", "params", "solved", "median solve",
                                          "final-100 mean"};
    std::vector<std::vector<std::string>> table{header};
    for (const auto &r : rows) {
        table.push_back(cells(r));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto &line : table) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            width[c] = std::max(width[c], line[c].size());
        }
    }
    std::ostringstream out;
    for (std::size_t r = 0; r < table.size(); ++r) {
        for (std::size_t c = 0; c < table[r].size(); ++c) {
            if (c == 0) {
                out << std::left << std::setw(static_cast<int>(width[c])) << table[r][c];
            } else {
                out << "  " << std::right << std::setw(static_cast<int>(width[c]))
                    << table[r][c];
            }
        }
        out << '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (auto w : width) {
                total += w;
            }
            out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
        }
    }
    return out.str();
}

} // namespace qdqn::harness
