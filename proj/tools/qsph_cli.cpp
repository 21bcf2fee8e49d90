// Copyright 2026 The QSPH Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qsph: sweep, comparison and invariant runner.
//
// Exit codes: 0 success, 1 tolerance breach, 2 usage, config or IO error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qsph/experiments.hpp"
#include "qsph/svg_plot.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_breach = 1;
constexpr int exit_usage = 2;

int run_experiment(const qsph::ExperimentConfig &cfg) {
    using qsph::Experiment;
    qsph::RunSummary summary;
    switch (cfg.experiment) {
    case Experiment::Fig5:
        summary = qsph::run_fig5(cfg);
        break;
    case Experiment::Fig6:
        summary = qsph::run_fig6(cfg);
        break;
    case Experiment::Fig7:
        summary = qsph::run_fig7(cfg);
        break;
    case Experiment::Compare:
        summary = qsph::run_compare(cfg, std::cout);
        break;
    case Experiment::Invariants:
        summary = qsph::run_invariants(cfg, std::cout);
        break;
    }

    const bool is_sweep = cfg.experiment == Experiment::Fig5 ||
                          cfg.experiment == Experiment::Fig6 ||
                          cfg.experiment == Experiment::Fig7;
    if (is_sweep) {
        std::cout << "wrote " << summary.rows << " rows to " << summary.csv.string()
                  << " (max |quantum - classical| = " << summary.max_abs_error << ")\n";
        if (cfg.emit_plots) {
            auto svg = summary.csv;
            svg.replace_extension(".svg");
            try {
                qsph::emit_plot(summary.csv, svg);
                std::cout << "wrote " << svg.string() << '\n';
            } catch (const qsph::PlotError &e) {
                // Plots are a convenience and never change the exit status.
                std::cerr << "warning: plot not written: " << e.what() << '\n';
            }
        }
    } else {
        std::cout << "wrote " << summary.csv.string() << '\n';
    }
    if (!summary.passed) {
        std::cerr << "tolerance breach in " << qsph::to_string(cfg.experiment) << '\n';
        return exit_breach;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum SPH advection experiments"};
    app.set_version_flag("--version", "qsph 1.0.0");

    std::string experiment_name;
    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    bool plots = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<double> coin_offset;

    app.add_option("experiment", experiment_name, "fig5, fig6, fig7, compare or invariants")
        ->required()
        ->check(CLI::IsMember({"fig5", "fig6", "fig7", "compare", "invariants"}));
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--plots", plots, "also write SVG plots for sweep experiments");
    app.add_option("--seed", seed, "seed for the randomized suites");
    app.add_option("--tol", tol, "tolerance on |quantum - classical|")
        ->check(CLI::PositiveNumber);
    app.add_option("--coin-offset", coin_offset,
                   "add this to the coin's alpha00 (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        const auto experiment = qsph::parse_experiment(experiment_name).value();
        auto cfg = qsph::ExperimentConfig::defaults(experiment);
        if (config_path) {
            cfg = qsph::load_config(*config_path, cfg);
            if (cfg.experiment != experiment) {
                throw qsph::ConfigError(*config_path + ": experiment key names '" +
                                        qsph::to_string(cfg.experiment) +
                                        "' but the command is '" + experiment_name + "'");
            }
        }
        if (out_dir) {
            cfg.output_dir = *out_dir;
        }
        if (plots) {
            cfg.emit_plots = true;
        }
        if (seed) {
            cfg.seed = *seed;
        }
        if (tol) {
            cfg.tol = *tol;
        }
        if (coin_offset) {
            cfg.coin_alpha_offset = *coin_offset;
        }
        cfg.validate();
        return run_experiment(cfg);
    } catch (const qsph::ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
