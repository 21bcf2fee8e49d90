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
/**
 * @file
 * Parameter sweeps comparing the two-particle circuit with the classical
 * solver, written as CSV.
 *
 * CSV schema (one header line, comma separated, doubles at 17 significant
 * digits, empty crossover cell when the crossover is undefined):
 *
 *   sweep_param,sweep_value,c,dx,h,dt,T,u0_init,u1_init,quantum_u0,
 *   quantum_u1,classical_u0,classical_u1,abs_error,crossover,unstable,
 *   success_probability
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "encoding.hpp"
#include "sph.hpp"

namespace qsph {

enum class Experiment { Fig5, Fig6, Fig7, Compare, Invariants };

inline const char *to_string(Experiment e) {
    switch (e) {
    case Experiment::Fig5:
        return "fig5";
    case Experiment::Fig6:
        return "fig6";
    case Experiment::Fig7:
        return "fig7";
    case Experiment::Compare:
        return "compare";
    case Experiment::Invariants:
        return "invariants";
    }
    return "?";
}

inline std::optional<Experiment> parse_experiment(const std::string &name) {
    for (auto e : {Experiment::Fig5, Experiment::Fig6, Experiment::Fig7, Experiment::Compare,
                   Experiment::Invariants}) {
        if (name == to_string(e)) {
            return e;
        }
    }
    return std::nullopt;
}

/// Bad configuration values or unknown keys.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Sweep {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 2;
    bool logarithmic = false;

    /// Sampled values; the first and last equal min and max exactly.
    [[nodiscard]] std::vector<double> values() const {
        std::vector<double> out(points);
        const double span = static_cast<double>(points - 1);
        for (std::size_t i = 0; i < points; ++i) {
            const double f = static_cast<double>(i) / span;
            out[i] = logarithmic ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                                 : min + f * (max - min);
        }
        out.front() = min;
        out.back() = max;
        return out;
    }

    void validate(const char *name) const {
        if (!(min > 0) || !(max > min) || points < 2) {
            throw ConfigError(std::string(name) +
                              ": sweep needs 0 < min < max and at least 2 points");
        }
    }
};

struct InitialCondition {
    double u0;
    double u1;
};

struct Geometry {
    double dx;
    double h;
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Fig5;
    Sweep c_range{1e-4, 2.0, 60, true};
    Sweep dx_range{0.01, 1.6, 160, false};
    std::vector<double> c_values;  ///< fixed speeds, one block each (fig6)
    double dx = 0.5;
    double h = 1.2;
    double dt = 1.0;
    std::vector<InitialCondition> initial_conditions;
    std::vector<std::size_t> timesteps{1};
    std::vector<Geometry> geometries;  ///< extra fixed (dx, h) pairs (compare)
    std::filesystem::path output_dir = "qsph_out";
    bool emit_plots = false;
    std::uint64_t seed = 20240917;
    double tol = 1e-10;
    double coin_alpha_offset = 0.0;
    std::size_t random_cases = 200;

    /// Default parameters for each experiment.
    static ExperimentConfig defaults(Experiment e) {
        ExperimentConfig cfg;
        cfg.experiment = e;
        switch (e) {
        case Experiment::Fig5:
            cfg.dx = 0.5;
            cfg.h = 1.2;
            cfg.c_range = {1e-4, 2.0, 60, true};
            cfg.initial_conditions = {{1.0, 0.0}, {0.8, 0.2}, {0.6, 0.4}, {0.5, 0.5}};
            break;
        case Experiment::Fig6:
            cfg.h = 1.4;
            cfg.dx_range = {0.01, 1.6, 160, false};
            cfg.c_values = {0.5, 1.0, 2.0};
            cfg.initial_conditions = {{0.2, 0.0}, {0.0, 0.2}, {0.5, 0.5}, {0.8, 0.4}};
            break;
        case Experiment::Fig7:
            cfg.dx = 0.2;
            cfg.h = 1.2;
            cfg.c_range = {1e-4, 1.0, 60, true};
            cfg.initial_conditions = {{0.8, 0.4}};
            cfg.timesteps = {1, 2, 3};
            break;
        case Experiment::Compare:
        case Experiment::Invariants:
            cfg.h = 1.4;
            cfg.c_range = {1e-4, 2.0, 20, true};
            cfg.dx_range = {0.05, 1.6, 32, false};
            cfg.geometries = {{0.5, 1.2}, {0.2, 1.2}, {0.5, 1.4}, {0.2, 1.4}};
            cfg.initial_conditions = {{1.0, 0.0}, {0.8, 0.2}, {0.6, 0.4}, {0.5, 0.5},
                                      {0.8, 0.4}, {0.2, 0.0}, {0.0, 0.2}};
            cfg.timesteps = {1, 2, 3};
            break;
        }
        return cfg;
    }

    void validate() const {
        c_range.validate("c_range");
        dx_range.validate("dx_range");
        if (!(dx > 0) || !(h > 0) || !(dt > 0)) {
            throw ConfigError("dx, h and dt must be positive");
        }
        for (double c : c_values) {
            if (!(c > 0)) {
                throw ConfigError("c_values must be positive");
            }
        }
        for (const auto &g : geometries) {
            if (!(g.dx > 0) || !(g.h > 0)) {
                throw ConfigError("geometries must have positive dx and h");
            }
        }
        if (initial_conditions.empty()) {
            throw ConfigError("at least one initial condition is required");
        }
        for (const auto &ic : initial_conditions) {
            if (ic.u0 == 0.0 && ic.u1 == 0.0) {
                throw ConfigError("initial condition (0, 0) cannot be amplitude-encoded");
            }
        }
        if (timesteps.empty()) {
            throw ConfigError("at least one timestep count is required");
        }
        for (std::size_t t : timesteps) {
            if (t < 1 || t > max_circuit_timesteps) {
                throw ConfigError("timesteps must be between 1 and 3");
            }
        }
        if (!(tol > 0)) {
            throw ConfigError("tol must be positive");
        }
    }
};

namespace detail {

inline std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

inline double parse_double(const std::string &key, const std::string &text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size() || !std::isfinite(v)) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(key + ": expected a number, got '" + text + "'");
    }
}

inline std::uint64_t parse_count(const std::string &key, const std::string &text) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(text, &used);
        if (used != text.size() || text.front() == '-') {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + text + "'");
    }
}

inline bool parse_bool(const std::string &key, const std::string &text) {
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError(key + ": expected true/false, got '" + text + "'");
}

/// "a:b; c:d" or "a,b; c,d"
inline std::vector<std::pair<double, double>> parse_pairs(const std::string &key,
                                                          const std::string &text) {
    std::vector<std::pair<double, double>> out;
    for (const auto &item : split(text, ';')) {
        const char sep = item.find(':') != std::string::npos ? ':' : ',';
        const auto parts = split(item, sep);
        if (parts.size() != 2) {
            throw ConfigError(key + ": expected pairs like '0.8:0.4', got '" + item + "'");
        }
        out.emplace_back(parse_double(key, parts[0]), parse_double(key, parts[1]));
    }
    return out;
}

} // namespace detail

/// Applies one key = value setting to cfg.
inline void apply_config_value(ExperimentConfig &cfg, const std::string &key,
                               const std::string &value) {
    using namespace detail;
    if (key == "experiment") {
        const auto e = parse_experiment(value);
        if (!e) {
            throw ConfigError("experiment: unknown experiment '" + value + "'");
        }
        cfg.experiment = *e;
    } else if (key == "c_min") {
        cfg.c_range.min = parse_double(key, value);
    } else if (key == "c_max") {
        cfg.c_range.max = parse_double(key, value);
    } else if (key == "c_points") {
        cfg.c_range.points = parse_count(key, value);
    } else if (key == "c_log") {
        cfg.c_range.logarithmic = parse_bool(key, value);
    } else if (key == "dx_min") {
        cfg.dx_range.min = parse_double(key, value);
    } else if (key == "dx_max") {
        cfg.dx_range.max = parse_double(key, value);
    } else if (key == "dx_points") {
        cfg.dx_range.points = parse_count(key, value);
    } else if (key == "c_values") {
        cfg.c_values.clear();
        for (const auto &item : split(value, ',')) {
            cfg.c_values.push_back(parse_double(key, item));
        }
    } else if (key == "dx") {
        cfg.dx = parse_double(key, value);
    } else if (key == "h") {
        cfg.h = parse_double(key, value);
    } else if (key == "dt") {
        cfg.dt = parse_double(key, value);
    } else if (key == "initial_conditions") {
        cfg.initial_conditions.clear();
        for (const auto &[a, b] : parse_pairs(key, value)) {
            cfg.initial_conditions.push_back({a, b});
        }
    } else if (key == "T" || key == "timesteps") {
        cfg.timesteps.clear();
        for (const auto &item : split(value, ',')) {
            cfg.timesteps.push_back(parse_count(key, item));
        }
    } else if (key == "geometries") {
        cfg.geometries.clear();
        for (const auto &[a, b] : parse_pairs(key, value)) {
            cfg.geometries.push_back({a, b});
        }
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "emit_plots") {
        cfg.emit_plots = parse_bool(key, value);
    } else if (key == "seed") {
        cfg.seed = parse_count(key, value);
    } else if (key == "tol") {
        cfg.tol = parse_double(key, value);
    } else if (key == "coin_alpha_offset") {
        cfg.coin_alpha_offset = parse_double(key, value);
    } else if (key == "random_cases") {
        cfg.random_cases = parse_count(key, value);
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

/// Reads flat "key = value" lines; '#' starts a comment.
inline ExperimentConfig parse_config(std::istream &in, ExperimentConfig base) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = detail::trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            apply_config_value(base, detail::trim(line.substr(0, eq)),
                               detail::trim(line.substr(eq + 1)));
        } catch (const ConfigError &e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

inline ExperimentConfig load_config(const std::filesystem::path &path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    try {
        return parse_config(in, std::move(base));
    } catch (const ConfigError &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

struct SweepRow {
    std::string sweep_param; ///< "c" or "dx"
    double sweep_value = 0.0;
    double c = 0.0;
    double dx = 0.0;
    double h = 0.0;
    double dt = 1.0;
    std::size_t timesteps = 1;
    InitialCondition initial{};
    TwoParticleSolution quantum{};
    TwoParticleSolution classical{};
    double abs_error = 0.0;
    std::optional<double> crossover;
    bool unstable = false;
    double success_probability = 0.0;
};

/// Runs both solvers for one parameter cell.
inline SweepRow evaluate_cell(const std::string &sweep_param, double c, double dx, double h,
                              double dt, std::size_t timesteps, InitialCondition ic,
                              double coin_alpha_offset = 0.0) {
    const auto line = ParticleLine::uniform(dx, {ic.u0, ic.u1});
    const AdvectionParams params(c, KernelSpec(h), dt);
    const auto circuit = build_circuit(line, params, timesteps, {coin_alpha_offset});
    const auto final_state = run(circuit);
    const auto classical = classical_evolve(line, params, timesteps)[timesteps];

    SweepRow row;
    row.sweep_param = sweep_param;
    row.sweep_value = sweep_param == "c" ? c : dx;
    row.c = c;
    row.dx = dx;
    row.h = h;
    row.dt = dt;
    row.timesteps = timesteps;
    row.initial = ic;
    row.quantum = extract_solutions(final_state, circuit);
    row.classical = {classical.u()[0], classical.u()[1]};
    row.abs_error = std::max(std::abs(row.quantum.u0 - row.classical.u0),
                             std::abs(row.quantum.u1 - row.classical.u1));
    row.crossover = sweep_param == "c" ? crossover_c(h, dx, dt) : crossover_dx(h, c, dt);
    row.unstable = row.quantum.u0 < 0.0 || row.quantum.u1 < 0.0;
    row.success_probability = success_probability(final_state, circuit);
    return row;
}

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Adds value to a sorted sweep if it lies strictly inside and is absent.
inline std::vector<double> with_point(std::vector<double> values, std::optional<double> value) {
    if (!value || *value <= values.front() || *value >= values.back()) {
        return values;
    }
    if (std::find(values.begin(), values.end(), *value) == values.end()) {
        values.insert(std::upper_bound(values.begin(), values.end(), *value), *value);
    }
    return values;
}

} // namespace detail

inline const char *sweep_csv_header() {
    return "sweep_param,sweep_value,c,dx,h,dt,T,u0_init,u1_init,quantum_u0,quantum_u1,"
           "classical_u0,classical_u1,abs_error,crossover,unstable,success_probability";
}

inline void write_sweep_csv(std::ostream &out, const std::vector<SweepRow> &rows) {
    using detail::format_double;
    out << sweep_csv_header() << '\n';
    for (const auto &r : rows) {
        out << r.sweep_param << ',' << format_double(r.sweep_value) << ',' << format_double(r.c)
            << ',' << format_double(r.dx) << ',' << format_double(r.h) << ','
            << format_double(r.dt) << ',' << r.timesteps << ',' << format_double(r.initial.u0)
            << ',' << format_double(r.initial.u1) << ',' << format_double(r.quantum.u0) << ','
            << format_double(r.quantum.u1) << ',' << format_double(r.classical.u0) << ','
            << format_double(r.classical.u1) << ',' << format_double(r.abs_error) << ','
            << (r.crossover ? format_double(*r.crossover) : std::string{}) << ','
            << (r.unstable ? 1 : 0) << ',' << format_double(r.success_probability) << '\n';
    }
}

/// Varying c at fixed dx and h; the crossover speed is added to the sweep.
inline std::vector<SweepRow> sweep_fig5(const ExperimentConfig &cfg) {
    cfg.validate();
    const auto cs = detail::with_point(cfg.c_range.values(), crossover_c(cfg.h, cfg.dx, cfg.dt));
    std::vector<SweepRow> rows;
    for (std::size_t steps : cfg.timesteps) {
        for (const auto &ic : cfg.initial_conditions) {
            for (double c : cs) {
                rows.push_back(evaluate_cell("c", c, cfg.dx, cfg.h, cfg.dt, steps, ic,
                                             cfg.coin_alpha_offset));
            }
        }
    }
    return rows;
}

/// Varying dx at fixed h, one block per speed in c_values.
inline std::vector<SweepRow> sweep_fig6(const ExperimentConfig &cfg) {
    cfg.validate();
    if (cfg.c_values.empty()) {
        throw ConfigError("fig6 needs at least one entry in c_values");
    }
    std::vector<SweepRow> rows;
    for (double c : cfg.c_values) {
        const auto dxs = detail::with_point(cfg.dx_range.values(), crossover_dx(cfg.h, c, cfg.dt));
        for (std::size_t steps : cfg.timesteps) {
            for (const auto &ic : cfg.initial_conditions) {
                for (double dx : dxs) {
                    rows.push_back(evaluate_cell("dx", c, dx, cfg.h, cfg.dt, steps, ic,
                                                 cfg.coin_alpha_offset));
                }
            }
        }
    }
    return rows;
}

/// Varying c for each timestep count; no extra points are inserted.
inline std::vector<SweepRow> sweep_fig7(const ExperimentConfig &cfg) {
    cfg.validate();
    const auto cs = cfg.c_range.values();
    std::vector<SweepRow> rows;
    for (std::size_t steps : cfg.timesteps) {
        for (const auto &ic : cfg.initial_conditions) {
            for (double c : cs) {
                rows.push_back(evaluate_cell("c", c, cfg.dx, cfg.h, cfg.dt, steps, ic,
                                             cfg.coin_alpha_offset));
            }
        }
    }
    return rows;
}

struct RunSummary {
    std::filesystem::path csv;
    std::size_t rows = 0;
    double max_abs_error = 0.0;
    bool passed = true;
};

namespace detail {
inline std::ofstream open_output(const std::filesystem::path &path) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
        throw std::runtime_error("cannot create directory " + path.parent_path().string() +
                                 ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    return out;
}

inline RunSummary write_rows(const std::filesystem::path &path, const std::vector<SweepRow> &rows,
                             double tol) {
    auto out = open_output(path);
    write_sweep_csv(out, rows);
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
    RunSummary summary{path, rows.size(), 0.0, true};
    for (const auto &r : rows) {
        summary.max_abs_error = std::max(summary.max_abs_error, r.abs_error);
    }
    summary.passed = summary.max_abs_error <= tol;
    return summary;
}
} // namespace detail

inline RunSummary run_fig5(const ExperimentConfig &cfg) {
    return detail::write_rows(cfg.output_dir / "fig5.csv", sweep_fig5(cfg), cfg.tol);
}

inline RunSummary run_fig6(const ExperimentConfig &cfg) {
    return detail::write_rows(cfg.output_dir / "fig6.csv", sweep_fig6(cfg), cfg.tol);
}

inline RunSummary run_fig7(const ExperimentConfig &cfg) {
    return detail::write_rows(cfg.output_dir / "fig7.csv", sweep_fig7(cfg), cfg.tol);
}

struct CompareResult {
    std::size_t timesteps = 0;
    std::size_t cases = 0;
    double max_abs_error = 0.0;
    double max_sum_drift = 0.0;
    SweepRow worst;
};

/**
 * @brief Quantum-vs-classical error over the full comparison grid.
 *
 * Grid: initial_conditions x c_range x (geometries + dx_range at h), one
 * result per timestep count.
 */
inline std::vector<CompareResult> compare_grid(const ExperimentConfig &cfg) {
    cfg.validate();
    std::vector<Geometry> geometries = cfg.geometries;
    for (double dx : cfg.dx_range.values()) {
        geometries.push_back({dx, cfg.h});
    }
    const auto cs = cfg.c_range.values();

    std::vector<CompareResult> results;
    for (std::size_t steps : cfg.timesteps) {
        CompareResult res;
        res.timesteps = steps;
        bool first = true;
        for (const auto &ic : cfg.initial_conditions) {
            for (double c : cs) {
                for (const auto &g : geometries) {
                    auto row = evaluate_cell("c", c, g.dx, g.h, cfg.dt, steps, ic,
                                             cfg.coin_alpha_offset);
                    ++res.cases;
                    res.max_sum_drift = std::max(
                        res.max_sum_drift, std::abs(row.quantum.u0 + row.quantum.u1 - ic.u0 - ic.u1));
                    if (first || row.abs_error > res.max_abs_error) {
                        res.max_abs_error = row.abs_error;
                        res.worst = std::move(row);
                        first = false;
                    }
                }
            }
        }
        results.push_back(std::move(res));
    }
    return results;
}

/// Prints a per-T report; writes compare.csv. Fails when any error > tol.
inline RunSummary run_compare(const ExperimentConfig &cfg, std::ostream &report) {
    using detail::format_double;
    const auto results = compare_grid(cfg);
    const auto path = cfg.output_dir / "compare.csv";
    auto out = detail::open_output(path);
    out << "T,cases,max_abs_error,max_sum_drift,worst_u0_init,worst_u1_init,worst_c,worst_dx,"
           "worst_h,passed\n";

    RunSummary summary{path, results.size(), 0.0, true};
    for (const auto &r : results) {
        const bool ok = r.max_abs_error <= cfg.tol;
        summary.passed = summary.passed && ok;
        summary.max_abs_error = std::max(summary.max_abs_error, r.max_abs_error);
        out << r.timesteps << ',' << r.cases << ',' << format_double(r.max_abs_error) << ','
            << format_double(r.max_sum_drift) << ',' << format_double(r.worst.initial.u0) << ','
            << format_double(r.worst.initial.u1) << ',' << format_double(r.worst.c) << ','
            << format_double(r.worst.dx) << ',' << format_double(r.worst.h) << ','
            << (ok ? 1 : 0) << '\n';

        char line[512];
        std::snprintf(line, sizeof line,
                      "T=%zu  cases=%zu  max_abs_error=%.3e  max_sum_drift=%.3e  %s", r.timesteps,
                      r.cases, r.max_abs_error, r.max_sum_drift, ok ? "PASS" : "FAIL");
        report << line << '\n';
        if (!ok) {
            std::snprintf(line, sizeof line,
                          "  worst case: u(0)=(%.17g, %.17g) c=%.17g dx=%.17g h=%.17g "
                          "quantum=(%.17g, %.17g) classical=(%.17g, %.17g)",
                          r.worst.initial.u0, r.worst.initial.u1, r.worst.c, r.worst.dx, r.worst.h,
                          r.worst.quantum.u0, r.worst.quantum.u1, r.worst.classical.u0,
                          r.worst.classical.u1);
            report << line << '\n';
        }
    }
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
    return summary;
}

struct InvariantResult {
    std::string name;
    std::size_t cases = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;

    [[nodiscard]] bool passed() const { return max_deviation <= tolerance; }
};

/**
 * @brief Randomized property suites seeded from cfg.seed.
 *
 * Each suite draws cfg.random_cases samples (the coin suite at least 1000).
 */
inline std::vector<InvariantResult> invariant_suites(const ExperimentConfig &cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t cases = std::max<std::size_t>(cfg.random_cases, 1);

    InvariantResult inner{"encoding_inner_product", 0, 0.0, 1e-10};
    InvariantResult alpha{"encoding_alpha", 0, 0.0, 1e-10};
    InvariantResult modulus{"kernel_state_modulus", 0, 0.0, 1e-12};
    for (std::size_t trial = 0; trial < cases; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(unit(rng) * 15.0) % 15;
        std::vector<double> u(m);
        for (auto &v : u) {
            v = 2.0 * unit(rng) - 1.0;
        }
        const auto line = ParticleLine::uniform(0.05 + unit(rng), u);
        const AdvectionParams params(3.0 * unit(rng), KernelSpec(0.3 + 1.7 * unit(rng)),
                                     0.1 + unit(rng));
        const auto classical = classical_step(line, params);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<std::size_t> nb;
            for (std::size_t k = 0; k < m; ++k) {
                if (k != j) {
                    nb.push_back(k);
                }
            }
            ++inner.cases;
            inner.max_deviation =
                std::max(inner.max_deviation,
                         std::abs(inner_product_update(line, j, nb, params) - classical.u()[j]));

            const auto a = alpha_amplitudes(line, j, nb, params);
            double rebuilt = a.self * line.u()[j];
            for (std::size_t i = 0; i < nb.size(); ++i) {
                rebuilt += a.neighbor[i] * line.u()[nb[i]];
            }
            ++alpha.cases;
            alpha.max_deviation = std::max(alpha.max_deviation, std::abs(rebuilt - classical.u()[j]));

            try {
                const auto k = build_kernel_state(line, j, nb, params.kernel);
                const double inv_n = 1.0 / static_cast<double>(k.n_neighbors);
                for (const auto &v : k.components) {
                    modulus.max_deviation =
                        std::max(modulus.max_deviation, std::abs(std::norm(v) - inv_n));
                }
                ++modulus.cases;
            } catch (const NoInteractionError &) {
            }
        }
    }

    InvariantResult coin{"coin_unitarity", 0, 0.0, 1e-12};
    const auto unitarity_defect = [](const Operator &op) {
        return max_abs_diff(op.adjoint() * op, Operator::identity(op.dim()));
    };
    for (std::size_t i = 0; i < std::max<std::size_t>(cases, 1000); ++i) {
        const auto cp = CoinParams::from_alpha00(4.0 * unit(rng) - 2.0);
        coin.max_deviation = std::max({coin.max_deviation, unitarity_defect(coin_operator_2q(cp)),
                                       unitarity_defect(coin_operator_3q(cp))});
        ++coin.cases;
    }

    InvariantResult norm{"circuit_norm", 0, 0.0, 1e-12};
    InvariantResult equivalence{"circuit_equivalence", 0, 0.0, 1e-10};
    InvariantResult sum{"sum_conservation", 0, 0.0, 1e-10};
    for (std::size_t trial = 0; trial < cases; ++trial) {
        double u0 = unit(rng);
        const double u1 = unit(rng);
        if (u0 == 0.0 && u1 == 0.0) {
            u0 = 1.0;
        }
        const auto line = ParticleLine::uniform(0.05 + 1.5 * unit(rng), {u0, u1});
        const AdvectionParams params(2.0 * unit(rng), KernelSpec(0.5 + unit(rng)));
        const std::size_t steps = 1 + trial % max_circuit_timesteps;
        const auto circuit = build_circuit(line, params, steps);
        const auto final_state = run(circuit, [&](const GateStep &, const StateVector &s) {
            norm.max_deviation = std::max(norm.max_deviation, std::abs(s.norm() - 1.0));
        });
        ++norm.cases;
        const auto q = extract_solutions(final_state, circuit);
        const auto c = classical_evolve(line, params, steps)[steps];
        equivalence.max_deviation =
            std::max({equivalence.max_deviation, std::abs(q.u0 - c.u()[0]), std::abs(q.u1 - c.u()[1])});
        ++equivalence.cases;
        sum.max_deviation = std::max(sum.max_deviation, std::abs(q.u0 + q.u1 - u0 - u1));
        ++sum.cases;
    }
    return {inner, alpha, modulus, coin, norm, equivalence, sum};
}

/// Prints one line per suite and writes invariants.csv.
inline RunSummary run_invariants(const ExperimentConfig &cfg, std::ostream &report) {
    using detail::format_double;
    const auto results = invariant_suites(cfg);
    const auto path = cfg.output_dir / "invariants.csv";
    auto out = detail::open_output(path);
    out << "check,cases,max_deviation,tolerance,passed\n";
    RunSummary summary{path, results.size(), 0.0, true};
    for (const auto &r : results) {
        summary.passed = summary.passed && r.passed();
        out << r.name << ',' << r.cases << ',' << format_double(r.max_deviation) << ','
            << format_double(r.tolerance) << ',' << (r.passed() ? 1 : 0) << '\n';
        char line[200];
        std::snprintf(line, sizeof line, "%-24s cases=%-6zu max_deviation=%.3e  tol=%.0e  %s",
                      r.name.c_str(), r.cases, r.max_deviation, r.tolerance,
                      r.passed() ? "PASS" : "FAIL");
        report << line << '\n';
    }
    out.close();
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
    return summary;
}

} // namespace qsph
