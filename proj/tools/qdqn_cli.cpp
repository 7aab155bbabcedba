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
// Command-line front end: run presets or config files, compare bundles,
// dump Q surfaces and check gradients.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qdqn/error.hpp"
#include "qdqn/gradcheck.hpp"
#include "qdqn/harness.hpp"

namespace fs = std::filesystem;
using namespace qdqn;

namespace {

harness::ExperimentSpec loadSpec(const std::string &preset, const std::string &config) {
    return preset.empty() ? harness::loadConfig(config) : harness::preset(preset);
}

fs::path bundleFile(const fs::path &p) {
    return fs::is_directory(p) ? p / "bundle.json" : p;
}

int runCommand(const std::string &preset, const std::string &config,
               const std::string &seeds, const std::string &out,
               std::optional<std::size_t> episodes, std::size_t threads, bool q_surface,
               bool check) {
    auto spec = loadSpec(preset, config);
    if (!seeds.empty()) {
        spec.seeds = harness::parseSeedList(seeds);
    }
    if (episodes && *episodes != spec.config.max_episodes) {
        spec.config.max_episodes = *episodes;
        // expectations are stated for the configured cap
        if (spec.expect.min_solved || spec.expect.max_solved || spec.expect.max_final_mean) {
            std::cerr << "episode cap overridden; expectations not checked\n";
        }
        spec.expect = {};
    }
    spec.output_dir = out;
    spec.emit.q_surface = spec.emit.q_surface || q_surface;

    std::cerr << "running " << spec.name << " on " << spec.seeds.size() << " seed(s), "
              << spec.config.max_episodes << " episodes max\n";
    const auto result = harness::runExperiment(spec, threads);
    const auto &b = result.bundle;
    for (std::size_t i = 0; i < b.seeds.size(); ++i) {
        std::cout << "seed " << b.seeds[i] << ": ";
        if (b.episodes_to_solve[i]) {
            std::cout << "solved after " << *b.episodes_to_solve[i] << " episodes\n";
        } else {
            std::cout << "not solved\n";
        }
    }
    std::cout << b.name << ": " << b.solvedCount() << "/" << b.seeds.size()
              << " solved, final-100 mean score " << b.finalMeanScore() << "\n";
    if (!b.mae.empty()) {
        std::cout << b.name << ": final MAE " << b.finalMae() << "\n";
    }
    if (!out.empty()) {
        std::cout << "artifacts in " << (fs::path(out) / spec.name).string() << "\n";
    }

    const auto failures = harness::checkExpectation(b, spec.expect);
    for (const auto &f : failures) {
        std::cout << "expectation failed: " << f << "\n";
    }
    return check && !failures.empty() ? 1 : 0;
}

int reportCommand(const std::vector<std::string> &paths, const std::string &out) {
    std::vector<harness::CurveBundle> bundles;
    for (const auto &p : paths) {
        bundles.push_back(harness::readBundle(bundleFile(p)));
    }
    const auto rows = harness::compareReport(bundles);
    std::cout << harness::reportTable(rows);
    if (!out.empty()) {
        std::ofstream file(out);
        QDQN_ABORT_IF(!file, "cannot write " + out);
        file << harness::reportCsv(rows);
    }
    return 0;
}

int surfaceCommand(const std::string &preset, const std::string &config,
                   const std::string &params_file, std::size_t resolution,
                   const std::string &out) {
    const auto spec = loadSpec(preset, config);
    QDQN_ABORT_IF(spec.config.environment != dqn::EnvironmentId::CartPole,
                  "Q surfaces are defined for Cart Pole models");
    const auto model = dqn::makeQFunction(spec.config.model);
    const auto params = harness::readParams(params_file);
    QDQN_ABORT_IF(params.size() != model->numParams(),
                  params_file + " does not match the model's parameter count");
    const auto slices = harness::qSurface(*model, params, resolution);
    fs::create_directories(out);
    harness::writeQSurface(slices, out);
    double max_q = -1e300;
    for (const auto &s : slices) {
        for (const auto &p : s.points) {
            max_q = std::max({max_q, p.q_left, p.q_right});
        }
    }
    std::cout << "wrote " << slices.size() << " slices of " << resolution * resolution
              << " points to " << out << "; max Q " << max_q << "\n";
    return 0;
}

int gradcheckCommand(std::size_t cases, std::uint64_t seed, double shift_tol, double fd_tol,
                     bool check) {
    const auto r = qmodel::runGradcheck(cases, seed);
    std::cout << r.cases << " random models; entries theta " << r.theta_entries << ", w_d "
              << r.input_weight_entries << ", w_o " << r.output_weight_entries << "\n";
    std::printf("max |adjoint - shift| = %.3e (tol %.0e)\n", r.adjoint_vs_shift, shift_tol);
    std::printf("max |adjoint - fd|    = %.3e (tol %.0e)\n", r.adjoint_vs_fd, fd_tol);
    std::printf("max |shift - fd|      = %.3e (tol %.0e)\n", r.shift_vs_fd, fd_tol);
    const bool ok = r.adjoint_vs_shift <= shift_tol && r.adjoint_vs_fd <= fd_tol &&
                    r.shift_vs_fd <= fd_tol;
    std::cout << (ok ? "gradients agree" : "gradient mismatch") << "\n";
    return check && !ok ? 1 : 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Variational-circuit deep Q-learning experiments"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "Train every seed of a preset or config file");
    std::string preset;
    std::string config;
    std::string seeds;
    std::string out;
    std::optional<std::size_t> episodes;
    std::size_t threads = 0;
    bool q_surface = false;
    bool check = false;
    auto *preset_opt = run->add_option("--preset", preset, "Preset name");
    auto *config_opt = run->add_option("--config", config, "Config file")->check(CLI::ExistingFile);
    preset_opt->excludes(config_opt);
    run->add_option("--seeds", seeds, "Seed list, e.g. 0-9 or 1,3,5");
    run->add_option("--out", out, "Output directory");
    run->add_option("--episodes", episodes, "Override the episode cap");
    run->add_option("--threads", threads, "Worker threads (0: all cores)");
    run->add_flag("--q-surface", q_surface, "Also dump Cart Pole Q surfaces per seed");
    run->add_flag("--assert", check, "Exit nonzero if the preset's expectation fails");

    auto *presets = app.add_subcommand("presets", "List presets or print one as a config file");
    std::string dump;
    presets->add_option("name", dump, "Preset to print");

    auto *report = app.add_subcommand("report", "Compare saved bundles");
    std::vector<std::string> bundles;
    std::string report_out;
    report->add_option("bundles", bundles, "Bundle directories or bundle.json files")
        ->required()
        ->check(CLI::ExistingPath);
    report->add_option("--out", report_out, "Write the comparison as CSV");

    auto *surface = app.add_subcommand("q-surface", "Dump Q-value slices of a trained model");
    std::string s_preset;
    std::string s_config;
    std::string params_file;
    std::size_t resolution = 41;
    std::string s_out = ".";
    auto *sp = surface->add_option("--preset", s_preset, "Preset name");
    auto *sc = surface->add_option("--config", s_config, "Config file")->check(CLI::ExistingFile);
    sp->excludes(sc);
    surface->add_option("--params", params_file, "Parameter JSON written by run")
        ->required()
        ->check(CLI::ExistingFile);
    surface->add_option("--resolution", resolution, "Grid points per axis")
        ->check(CLI::PositiveNumber);
    surface->add_option("--out", s_out, "Output directory");

    auto *grad = app.add_subcommand("gradcheck", "Adjoint vs parameter-shift vs finite differences");
    std::size_t cases = 50;
    std::uint64_t grad_seed = 0;
    double shift_tol = 1e-10;
    double fd_tol = 1e-6;
    bool grad_check = false;
    grad->add_option("--cases", cases, "Random models to check");
    grad->add_option("--seed", grad_seed, "Generator seed");
    grad->add_option("--shift-tol", shift_tol, "Adjoint vs parameter-shift tolerance");
    grad->add_option("--fd-tol", fd_tol, "Tolerance against finite differences");
    grad->add_flag("--assert", grad_check, "Exit nonzero on a mismatch");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            if (preset.empty() && config.empty()) {
                std::cerr << "run: one of --preset or --config is required\n";
                return 2;
            }
            return runCommand(preset, config, seeds, out, episodes, threads, q_surface, check);
        }
        if (presets->parsed()) {
            if (dump.empty()) {
                for (const auto &name : harness::presetNames()) {
                    std::cout << name << "\n";
                }
            } else {
                std::cout << harness::serializeConfig(harness::preset(dump));
            }
            return 0;
        }
        if (report->parsed()) {
            return reportCommand(bundles, report_out);
        }
        if (surface->parsed()) {
            if (s_preset.empty() && s_config.empty()) {
                std::cerr << "q-surface: one of --preset or --config is required\n";
                return 2;
            }
            return surfaceCommand(s_preset, s_config, params_file, resolution, s_out);
        }
        if (grad->parsed()) {
            return gradcheckCommand(cases, grad_seed, shift_tol, fd_tol, grad_check);
        }
    } catch (const qdqn::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
