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
 * Static SVG rendering of sweep CSV files.
 *
 * One panel per timestep count (and per advection speed for dx sweeps).
 * Quantum results are drawn as lines, classical results as open circles and
 * the crossover as a dashed vertical line.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "experiments.hpp"

namespace qsph {

class PlotError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PlotRow {
    std::string sweep_param;
    double sweep_value = 0.0;
    double c = 0.0;
    std::size_t timesteps = 1;
    double u0_init = 0.0;
    double u1_init = 0.0;
    double quantum_u0 = 0.0;
    double quantum_u1 = 0.0;
    double classical_u0 = 0.0;
    double classical_u1 = 0.0;
    std::optional<double> crossover;
};

/// Parses a sweep CSV. Errors carry the 1-based line number.
inline std::vector<PlotRow> read_sweep_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw PlotError("line 1: missing header");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != sweep_csv_header()) {
        throw PlotError("line 1: header does not match the sweep schema");
    }

    std::vector<PlotRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream fields(line);
        while (std::getline(fields, cell, ',')) {
            cells.push_back(cell);
        }
        if (line.back() == ',') {
            cells.emplace_back();
        }
        const auto fail = [&](const std::string &what) {
            return PlotError("line " + std::to_string(line_no) + ": " + what);
        };
        if (cells.size() != 17) {
            throw fail("expected 17 columns, got " + std::to_string(cells.size()));
        }
        const auto num = [&](std::size_t col) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cells[col], &used);
                if (used != cells[col].size()) {
                    throw std::invalid_argument(cells[col]);
                }
                return v;
            } catch (const std::exception &) {
                throw fail("column " + std::to_string(col + 1) + ": bad number '" + cells[col] +
                           "'");
            }
        };
        PlotRow r;
        r.sweep_param = cells[0];
        if (r.sweep_param != "c" && r.sweep_param != "dx") {
            throw fail("sweep_param must be c or dx");
        }
        r.sweep_value = num(1);
        r.c = num(2);
        const double t = num(6);
        if (t < 1 || t != std::floor(t)) {
            throw fail("T must be a positive integer");
        }
        r.timesteps = static_cast<std::size_t>(t);
        r.u0_init = num(7);
        r.u1_init = num(8);
        r.quantum_u0 = num(9);
        r.quantum_u1 = num(10);
        r.classical_u0 = num(11);
        r.classical_u1 = num(12);
        if (!cells[14].empty()) {
            r.crossover = num(14);
        }
        if (!rows.empty() && rows.front().sweep_param != r.sweep_param) {
            throw fail("mixed sweep parameters in one file");
        }
        rows.push_back(r);
    }
    if (rows.empty()) {
        throw PlotError("no data rows");
    }
    return rows;
}

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline const char *series_color(std::size_t i) {
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return palette[i % (sizeof palette / sizeof palette[0])];
}

} // namespace detail

/// Renders rows as an SVG document.
inline std::string render_svg(const std::vector<PlotRow> &rows) {
    using detail::svg_num;
    if (rows.empty()) {
        throw PlotError("no data rows");
    }
    const bool log_x = rows.front().sweep_param == "c";
    const std::string x_name = log_x ? "advection speed c" : "particle separation dx";

    // Panel key: (T, c for dx sweeps). Series key: initial condition.
    using PanelKey = std::pair<std::size_t, double>;
    using SeriesKey = std::pair<double, double>;
    std::map<PanelKey, std::map<SeriesKey, std::vector<const PlotRow *>>> panels;
    std::vector<SeriesKey> series_order;
    double x_min = rows.front().sweep_value;
    double x_max = x_min;
    double y_min = 0.0;
    double y_max = 0.0;
    for (const auto &r : rows) {
        panels[{r.timesteps, log_x ? 0.0 : r.c}][{r.u0_init, r.u1_init}].push_back(&r);
        const SeriesKey key{r.u0_init, r.u1_init};
        if (std::find(series_order.begin(), series_order.end(), key) == series_order.end()) {
            series_order.push_back(key);
        }
        x_min = std::min(x_min, r.sweep_value);
        x_max = std::max(x_max, r.sweep_value);
        y_min = std::min({y_min, r.quantum_u0, r.quantum_u1, r.classical_u0, r.classical_u1});
        y_max = std::max({y_max, r.quantum_u0, r.quantum_u1, r.classical_u0, r.classical_u1});
    }
    if (log_x && x_min <= 0.0) {
        throw PlotError("logarithmic axis needs positive sweep values");
    }
    if (x_max == x_min) {
        x_max = x_min + 1.0;
    }
    if (y_max == y_min) {
        y_max = y_min + 1.0;
    }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const double panel_w = 420;
    const double panel_h = 300;
    const double margin_l = 70;
    const double margin_t = 40;
    const double gap = 80;
    const double legend_h = 22.0 * static_cast<double>(series_order.size()) + 30;
    const double width = margin_l + static_cast<double>(panels.size()) * (panel_w + gap) + 20;
    const double height = margin_t + panel_h + 60 + legend_h;

    const auto to_x = [&](double v) {
        const double f = log_x ? (std::log10(v) - std::log10(x_min)) /
                                     (std::log10(x_max) - std::log10(x_min))
                               : (v - x_min) / (x_max - x_min);
        return f * panel_w;
    };
    const auto to_y = [&](double v) { return panel_h - (v - y_min) / (y_max - y_min) * panel_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << svg_num(width)
        << "\" height=\"" << svg_num(height) << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    std::size_t panel_index = 0;
    for (const auto &[key, series] : panels) {
        const double ox = margin_l + static_cast<double>(panel_index) * (panel_w + gap);
        svg << "<g transform=\"translate(" << svg_num(ox) << ',' << svg_num(margin_t) << ")\">\n";
        std::string title = "T = " + std::to_string(key.first);
        if (!log_x) {
            title += ", c = " + detail::tick_label(key.second);
        }
        svg << "<text x=\"" << svg_num(panel_w / 2) << "\" y=\"-12\" text-anchor=\"middle\">"
            << title << "</text>\n";
        svg << "<rect width=\"" << svg_num(panel_w) << "\" height=\"" << svg_num(panel_h)
            << "\" fill=\"none\" stroke=\"black\"/>\n";

        // Ticks.
        std::vector<double> x_ticks;
        if (log_x) {
            for (int e = static_cast<int>(std::ceil(std::log10(x_min) - 1e-9));
                 e <= static_cast<int>(std::floor(std::log10(x_max) + 1e-9)); ++e) {
                x_ticks.push_back(std::pow(10.0, e));
            }
        } else {
            for (int i = 0; i <= 4; ++i) {
                x_ticks.push_back(x_min + (x_max - x_min) * i / 4.0);
            }
        }
        for (double t : x_ticks) {
            svg << "<line x1=\"" << svg_num(to_x(t)) << "\" y1=\"" << svg_num(panel_h)
                << "\" x2=\"" << svg_num(to_x(t)) << "\" y2=\"" << svg_num(panel_h + 5)
                << "\" stroke=\"black\"/>\n<text x=\"" << svg_num(to_x(t)) << "\" y=\""
                << svg_num(panel_h + 18) << "\" text-anchor=\"middle\">" << detail::tick_label(t)
                << "</text>\n";
        }
        for (int i = 0; i <= 4; ++i) {
            const double v = y_min + (y_max - y_min) * i / 4.0;
            svg << "<line x1=\"-5\" y1=\"" << svg_num(to_y(v)) << "\" x2=\"0\" y2=\""
                << svg_num(to_y(v)) << "\" stroke=\"black\"/>\n<text x=\"-8\" y=\""
                << svg_num(to_y(v) + 4) << "\" text-anchor=\"end\">" << detail::tick_label(
                                                                            std::round(v * 1000) / 1000)
                << "</text>\n";
        }
        svg << "<text x=\"" << svg_num(panel_w / 2) << "\" y=\"" << svg_num(panel_h + 36)
            << "\" text-anchor=\"middle\">" << x_name << (log_x ? " (log scale)" : "")
            << "</text>\n";
        svg << "<text transform=\"translate(-50," << svg_num(panel_h / 2)
            << ") rotate(-90)\" text-anchor=\"middle\">u(T)</text>\n";
        if (y_min < 0.0 && y_max > 0.0) {
            svg << "<line x1=\"0\" y1=\"" << svg_num(to_y(0)) << "\" x2=\"" << svg_num(panel_w)
                << "\" y2=\"" << svg_num(to_y(0)) << "\" stroke=\"#bbbbbb\"/>\n";
        }

        // Crossover marker.
        std::optional<double> crossover;
        for (const auto &[ic, pts] : series) {
            for (const auto *p : pts) {
                if (p->crossover) {
                    crossover = p->crossover;
                }
            }
        }
        if (crossover && *crossover >= x_min && *crossover <= x_max) {
            svg << "<line class=\"crossover\" x1=\"" << svg_num(to_x(*crossover))
                << "\" y1=\"0\" x2=\"" << svg_num(to_x(*crossover)) << "\" y2=\""
                << svg_num(panel_h) << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
        }

        for (const auto &[ic, pts] : series) {
            const std::size_t idx = static_cast<std::size_t>(
                std::find(series_order.begin(), series_order.end(), ic) - series_order.begin());
            const char *color = detail::series_color(idx);
            for (int which = 0; which < 2; ++which) {
                svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
                    << (which == 1 ? " stroke-dasharray=\"2,2\"" : "") << " points=\"";
                for (const auto *p : pts) {
                    svg << svg_num(to_x(p->sweep_value)) << ','
                        << svg_num(to_y(which == 0 ? p->quantum_u0 : p->quantum_u1)) << ' ';
                }
                svg << "\"/>\n";
                const std::size_t stride = std::max<std::size_t>(1, pts.size() / 15);
                for (std::size_t i = 0; i < pts.size(); i += stride) {
                    const auto *p = pts[i];
                    svg << "<circle cx=\"" << svg_num(to_x(p->sweep_value)) << "\" cy=\""
                        << svg_num(to_y(which == 0 ? p->classical_u0 : p->classical_u1))
                        << "\" r=\"3\" fill=\"none\" stroke=\"" << color << "\"/>\n";
                }
            }
        }
        svg << "</g>\n";
        ++panel_index;
    }

    // Legend.
    double ly = margin_t + panel_h + 60;
    svg << "<text x=\"" << svg_num(margin_l) << "\" y=\"" << svg_num(ly)
        << "\">solid: quantum u0, dotted: quantum u1, circles: classical, dashed gray: "
           "crossover</text>\n";
    for (std::size_t i = 0; i < series_order.size(); ++i) {
        ly += 22;
        svg << "<line x1=\"" << svg_num(margin_l) << "\" y1=\"" << svg_num(ly - 4) << "\" x2=\""
            << svg_num(margin_l + 30) << "\" y2=\"" << svg_num(ly - 4) << "\" stroke=\""
            << detail::series_color(i) << "\" stroke-width=\"2\"/>\n<text x=\""
            << svg_num(margin_l + 38) << "\" y=\"" << svg_num(ly) << "\">(u0(0), u1(0)) = ("
            << detail::tick_label(series_order[i].first) << ", "
            << detail::tick_label(series_order[i].second) << ")</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

/// Reads csv and writes an SVG to out. Nothing is written on error.
inline void emit_plot(const std::filesystem::path &csv, const std::filesystem::path &out) {
    std::ifstream in(csv);
    if (!in) {
        throw PlotError("cannot open " + csv.string());
    }
    std::string svg;
    try {
        svg = render_svg(read_sweep_csv(in));
    } catch (const PlotError &e) {
        throw PlotError(csv.string() + ": " + e.what());
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) {
        throw PlotError("cannot open " + out.string() + " for writing");
    }
    file << svg;
    file.close();
    if (!file) {
        throw PlotError("failed writing " + out.string());
    }
}

} // namespace qsph
