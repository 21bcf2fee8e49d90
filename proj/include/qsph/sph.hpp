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
 * Eulerian SPH solver for the 1-D linear advection equation on a line of
 * uniformly spaced particles. Particle positions never move; only the
 * advected quantity u is updated.
 */
#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsph {

enum class KernelKind { Triangular };

/// Smoothing kernel with support radius equal to the smoothing length h.
struct KernelSpec {
    KernelKind kind = KernelKind::Triangular;
    double h = 1.0;

    explicit KernelSpec(double smoothing_length, KernelKind k = KernelKind::Triangular)
        : kind(k), h(smoothing_length) {
        if (!(h > 0) || !std::isfinite(h)) {
            throw std::invalid_argument("KernelSpec: smoothing length must be positive");
        }
    }
};

struct AdvectionParams {
    double c;
    double dt;
    KernelSpec kernel;

    AdvectionParams(double speed, KernelSpec k, double timestep = 1.0)
        : c(speed), dt(timestep), kernel(k) {
        if (!(c >= 0) || !std::isfinite(c)) {
            throw std::invalid_argument("AdvectionParams: advection speed must be >= 0");
        }
        if (!(dt > 0) || !std::isfinite(dt)) {
            throw std::invalid_argument("AdvectionParams: timestep must be positive");
        }
    }
};

/**
 * @brief Fixed particle positions with uniform spacing and the advected
 * quantity carried by each particle.
 */
class ParticleLine {
  public:
    static constexpr double spacing_tol = 1e-12;

    ParticleLine(std::vector<double> positions, std::vector<double> u, double spacing)
        : positions_(std::move(positions)), u_(std::move(u)), spacing_(spacing) {
        if (positions_.empty() || positions_.size() != u_.size()) {
            throw std::invalid_argument(
                "ParticleLine: positions and u must be nonempty and equally long");
        }
        if (!(spacing_ > 0) || !std::isfinite(spacing_)) {
            throw std::invalid_argument("ParticleLine: spacing must be positive");
        }
        for (std::size_t j = 0; j + 1 < positions_.size(); ++j) {
            const double gap = positions_[j + 1] - positions_[j];
            if (!(gap > 0)) {
                throw std::invalid_argument("ParticleLine: positions must be strictly increasing");
            }
            if (std::abs(gap - spacing_) > spacing_tol) {
                throw std::invalid_argument("ParticleLine: non-uniform spacing at index " +
                                            std::to_string(j));
            }
        }
        for (double v : u_) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("ParticleLine: u must be finite");
            }
        }
    }

    /// Particles at origin, origin + spacing, ...
    static ParticleLine uniform(double spacing, std::vector<double> u, double origin = 0.0) {
        std::vector<double> positions(u.size());
        for (std::size_t j = 0; j < u.size(); ++j) {
            positions[j] = origin + static_cast<double>(j) * spacing;
        }
        return ParticleLine(std::move(positions), std::move(u), spacing);
    }

    [[nodiscard]] std::size_t size() const noexcept { return u_.size(); }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }
    [[nodiscard]] const std::vector<double> &positions() const noexcept { return positions_; }
    [[nodiscard]] const std::vector<double> &u() const noexcept { return u_; }

    [[nodiscard]] ParticleLine with_u(std::vector<double> u) const {
        return ParticleLine(positions_, std::move(u), spacing_);
    }

  private:
    std::vector<double> positions_;
    std::vector<double> u_;
    double spacing_;
};

namespace detail {
inline void require_positive_h(double h, const char *who) {
    if (!(h > 0)) {
        throw std::invalid_argument(std::string(who) + ": smoothing length must be positive");
    }
}
} // namespace detail

/// Triangular kernel 1/h - |r|/h^2 inside |r| < h.
inline double kernel_w(double r, double h) {
    detail::require_positive_h(h, "kernel_w");
    const double a = std::abs(r);
    return a < h ? 1.0 / h - a / (h * h) : 0.0;
}

/// dW/dr of the triangular kernel. Zero at r = 0 and for |r| >= h.
inline double kernel_dw(double r, double h) {
    detail::require_positive_h(h, "kernel_dw");
    const double a = std::abs(r);
    if (r == 0.0 || !(a < h)) {
        return 0.0;
    }
    return r > 0 ? -1.0 / (h * h) : 1.0 / (h * h);
}

/**
 * @brief Kernel gradient between particles j and k.
 *
 * Evaluates dW/dr at the pair separation |x_k - x_j|, so every pair inside
 * the support gets -1/h^2 regardless of ordering. This is the value
 * that makes the two-particle coin symmetric (alpha_11 == alpha_00).
 */
inline double grad_w(std::size_t j, std::size_t k, const ParticleLine &line,
                     const KernelSpec &kernel) {
    if (j >= line.size() || k >= line.size()) {
        throw std::invalid_argument("grad_w: particle index out of range");
    }
    if (j == k) {
        throw std::invalid_argument("grad_w: j and k must differ");
    }
    const auto &x = line.positions();
    return kernel_dw(std::abs(x[k] - x[j]), kernel.h);
}

/// Indices k != j with |x_k - x_j| < h, in increasing order.
inline std::vector<std::size_t> neighbors_in_support(const ParticleLine &line, std::size_t j,
                                                     const KernelSpec &kernel) {
    std::vector<std::size_t> out;
    const auto &x = line.positions();
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (k != j && std::abs(x[k] - x[j]) < kernel.h) {
            out.push_back(k);
        }
    }
    return out;
}

/// One explicit step u_j -= c dt sum_k (u_k - u_j) dx gradW_jk. Open ends.
inline ParticleLine classical_step(const ParticleLine &line, const AdvectionParams &params) {
    const auto &u = line.u();
    const double dx = line.spacing();
    std::vector<double> next(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        double sum = 0.0;
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (k == j) {
                continue;
            }
            sum += (u[k] - u[j]) * dx * grad_w(j, k, line, params.kernel);
        }
        next[j] = u[j] - params.c * params.dt * sum;
    }
    return line.with_u(std::move(next));
}

/// Snapshots t = 0..steps, snapshot 0 being the input.
inline std::vector<ParticleLine> classical_evolve(const ParticleLine &line,
                                                  const AdvectionParams &params,
                                                  std::size_t steps) {
    if (steps < 1) {
        throw std::invalid_argument("classical_evolve: need at least one step");
    }
    std::vector<ParticleLine> snapshots;
    snapshots.reserve(steps + 1);
    snapshots.push_back(line);
    for (std::size_t t = 0; t < steps; ++t) {
        snapshots.push_back(classical_step(snapshots.back(), params));
    }
    return snapshots;
}

/// Largest stable advection speed dx/dt.
inline double cfl_max_c(double dx, double dt) {
    if (!(dx > 0) || !(dt > 0)) {
        throw std::invalid_argument("cfl_max_c: dx and dt must be positive");
    }
    return dx / dt;
}

/// Advection speed at which both particles reach the mean after one step.
inline std::optional<double> crossover_c(double h, double dx, double dt) {
    if (!(h > 0) || !(dx > 0) || !(dt > 0)) {
        throw std::invalid_argument("crossover_c: h, dx and dt must be positive");
    }
    if (dx >= h) {
        return std::nullopt;
    }
    return h * h / (2.0 * dt * dx);
}

/// Spacing at which both particles reach the mean; none if outside support.
inline std::optional<double> crossover_dx(double h, double c, double dt) {
    if (!(h > 0) || !(c > 0) || !(dt > 0)) {
        throw std::invalid_argument("crossover_dx: h, c and dt must be positive");
    }
    const double dx = h * h / (2.0 * c * dt);
    if (dx >= h) {
        return std::nullopt;
    }
    return dx;
}

} // namespace qsph
