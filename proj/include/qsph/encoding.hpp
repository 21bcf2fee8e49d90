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
 * Quantum reformulation of the SPH advection update.
 *
 * The neighbor sum is rewritten as u_j - c dt nu N |a| Re<a|gradW>, where
 * |a> holds the normalized differences (u_k - u_j) dx and |gradW> holds
 * gradW_jk/(nu N) + i b_jk with b chosen so every entry has modulus^2 = 1/N.
 * The same sum also gives the walk amplitudes alpha used to build the
 * reversible two-particle coin.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sph.hpp"
#include "statevector.hpp"

namespace qsph {

/// The difference vector is identically zero, so |a> cannot be normalized.
class DegenerateStateError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// No neighbor lies inside the kernel support (nu == 0).
class NoInteractionError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

struct EncodedDifferenceState {
    std::vector<double> components; ///< (u_k - u_j) dx, unnormalized
    double norm_a = 0.0;            ///< Euclidean norm of components

    /// <a| as a unit vector.
    [[nodiscard]] std::vector<double> normalized() const {
        std::vector<double> out(components);
        for (auto &v : out) {
            v /= norm_a;
        }
        return out;
    }
};

struct EncodedKernelState {
    std::vector<std::complex<double>> components;
    std::vector<double> b;
    double nu = 0.0;
    std::size_t n_neighbors = 0;
};

/**
 * @brief Coin amplitudes for the two-particle walk.
 *
 * Only alpha00 is free: alpha11 = alpha00 and alpha01 = alpha10 = 1 - alpha00.
 */
class CoinParams {
  public:
    static CoinParams from_alpha00(double alpha00) {
        if (!std::isfinite(alpha00)) {
            throw std::invalid_argument("CoinParams: alpha00 must be finite");
        }
        return CoinParams(alpha00);
    }

    [[nodiscard]] double alpha00() const noexcept { return alpha00_; }
    [[nodiscard]] double alpha01() const noexcept { return 1.0 - alpha00_; }
    [[nodiscard]] double alpha10() const noexcept { return 1.0 - alpha00_; }
    [[nodiscard]] double alpha11() const noexcept { return alpha00_; }
    /// (alpha00^2 + (1 - alpha00)^2)^(-1/2)
    [[nodiscard]] double normalizer() const noexcept { return normalizer_; }

  private:
    explicit CoinParams(double alpha00)
        : alpha00_(alpha00),
          normalizer_(1.0 / std::sqrt(alpha00 * alpha00 + (1.0 - alpha00) * (1.0 - alpha00))) {}

    double alpha00_;
    double normalizer_;
};

/// Self and neighbor weights of u_j(t+1) = alpha_jj u_j + sum_k alpha_kj u_k.
struct AlphaAmplitudes {
    double self = 1.0;
    std::vector<std::size_t> neighbors;
    std::vector<double> neighbor; ///< alpha_kj aligned with neighbors
};

namespace detail {
inline void check_neighbors(const ParticleLine &line, std::size_t j,
                            std::span<const std::size_t> neighbors) {
    if (j >= line.size()) {
        throw std::invalid_argument("particle index out of range");
    }
    for (std::size_t k : neighbors) {
        if (k >= line.size()) {
            throw std::invalid_argument("neighbor index out of range");
        }
        if (k == j) {
            throw std::invalid_argument("a particle cannot be its own neighbor");
        }
    }
}

inline std::vector<std::size_t> in_support(const ParticleLine &line, std::size_t j,
                                           std::span<const std::size_t> neighbors,
                                           const KernelSpec &kernel) {
    std::vector<std::size_t> out;
    const auto &x = line.positions();
    for (std::size_t k : neighbors) {
        if (std::abs(x[k] - x[j]) < kernel.h) {
            out.push_back(k);
        }
    }
    return out;
}
} // namespace detail

/// Difference vector a* with entries (u_k - u_j) dx over the given neighbors.
inline EncodedDifferenceState build_difference_state(const ParticleLine &line, std::size_t j,
                                                     std::span<const std::size_t> neighbors) {
    detail::check_neighbors(line, j, neighbors);
    if (neighbors.empty()) {
        throw std::invalid_argument("build_difference_state: neighbor list is empty");
    }
    EncodedDifferenceState state;
    state.components.reserve(neighbors.size());
    double sum_sq = 0.0;
    for (std::size_t k : neighbors) {
        const double v = (line.u()[k] - line.u()[j]) * line.spacing();
        state.components.push_back(v);
        sum_sq += v * v;
    }
    state.norm_a = std::sqrt(sum_sq);
    if (state.norm_a == 0.0) {
        throw DegenerateStateError("build_difference_state: all differences are zero");
    }
    return state;
}

/**
 * @brief Kernel state from raw gradient values.
 *
 * nu = max |g|, N = gradients.size(); entry m is g_m/(nu N) + i b_m with
 * b_m = sqrt(1/N - (g_m/(nu N))^2).
 */
inline EncodedKernelState build_kernel_state(std::span<const double> gradients) {
    if (gradients.empty()) {
        throw NoInteractionError("build_kernel_state: no neighbors");
    }
    EncodedKernelState state;
    state.n_neighbors = gradients.size();
    for (double g : gradients) {
        state.nu = std::max(state.nu, std::abs(g));
    }
    if (state.nu == 0.0) {
        throw NoInteractionError("build_kernel_state: all gradients vanish");
    }
    const double n = static_cast<double>(state.n_neighbors);
    state.components.reserve(gradients.size());
    state.b.reserve(gradients.size());
    for (double g : gradients) {
        const double re = g / (state.nu * n);
        // Radicand is >= 0 up to rounding since |re| <= 1/N <= 1/sqrt(N).
        const double b = std::sqrt(std::max(0.0, 1.0 / n - re * re));
        state.b.push_back(b);
        state.components.emplace_back(re, b);
    }
    return state;
}

/// Kernel state for particle j. Neighbors outside the support are dropped
/// before counting N.
inline EncodedKernelState build_kernel_state(const ParticleLine &line, std::size_t j,
                                             std::span<const std::size_t> neighbors,
                                             const KernelSpec &kernel) {
    detail::check_neighbors(line, j, neighbors);
    const auto active = detail::in_support(line, j, neighbors, kernel);
    std::vector<double> gradients;
    gradients.reserve(active.size());
    for (std::size_t k : active) {
        gradients.push_back(grad_w(j, k, line, kernel));
    }
    return build_kernel_state(gradients);
}

/**
 * @brief u_j(t + dt) through the inner-product form of the update.
 *
 * Matches classical_step for particle j. Degenerate (all differences zero)
 * and non-interacting particles are returned unchanged.
 */
inline double inner_product_update(const ParticleLine &line, std::size_t j,
                                   std::span<const std::size_t> neighbors,
                                   const AdvectionParams &params) {
    detail::check_neighbors(line, j, neighbors);
    const double u_j = line.u()[j];
    const auto active = detail::in_support(line, j, neighbors, params.kernel);
    if (active.empty()) {
        return u_j;
    }

    EncodedKernelState kernel_state;
    try {
        kernel_state = build_kernel_state(line, j, active, params.kernel);
    } catch (const NoInteractionError &) {
        return u_j;
    }

    EncodedDifferenceState diff;
    try {
        diff = build_difference_state(line, j, active);
    } catch (const DegenerateStateError &) {
        return u_j;
    }

    // <a| is real, so Re<a|gradW> only picks up the real part of |gradW>.
    const auto bra = diff.normalized();
    double overlap = 0.0;
    for (std::size_t m = 0; m < bra.size(); ++m) {
        overlap += bra[m] * kernel_state.components[m].real();
    }
    const double n = static_cast<double>(kernel_state.n_neighbors);
    return u_j - params.c * params.dt * kernel_state.nu * n * diff.norm_a * overlap;
}

/// Walk amplitudes for particle j over the given neighbors.
inline AlphaAmplitudes alpha_amplitudes(const ParticleLine &line, std::size_t j,
                                        std::span<const std::size_t> neighbors,
                                        const AdvectionParams &params) {
    detail::check_neighbors(line, j, neighbors);
    AlphaAmplitudes out;
    out.neighbors.assign(neighbors.begin(), neighbors.end());
    out.neighbor.assign(neighbors.size(), 0.0);

    const auto active = detail::in_support(line, j, neighbors, params.kernel);
    if (active.empty()) {
        return out;
    }
    const auto kernel_state = build_kernel_state(line, j, active, params.kernel);
    const double scale = params.c * params.dt * kernel_state.nu *
                         static_cast<double>(kernel_state.n_neighbors) * line.spacing();

    double re_sum = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
        if (m < active.size() && neighbors[i] == active[m]) {
            const double re_v = kernel_state.components[m].real();
            out.neighbor[i] = -scale * re_v;
            re_sum += re_v;
            ++m;
        }
    }
    out.self = 1.0 + scale * re_sum;
    return out;
}

/// Coin parameters for a two-particle line, from particle 0's amplitudes.
inline CoinParams two_particle_coin_params(const ParticleLine &line,
                                           const AdvectionParams &params) {
    if (line.size() != 2) {
        throw std::invalid_argument("two_particle_coin_params: line must hold two particles");
    }
    const std::size_t neighbor[] = {1};
    return CoinParams::from_alpha00(alpha_amplitudes(line, 0, neighbor, params).self);
}

/// N * blockdiag(H0, H1) with H0 = [[a, 1-a], [1-a, -a]], H1 = [[-a, 1-a], [1-a, a]].
inline Operator coin_operator_2q(const CoinParams &cp) {
    const double a = cp.alpha00();
    const double b = 1.0 - a;
    return Operator{{a, b, 0, 0}, {b, -a, 0, 0}, {0, 0, -a, b}, {0, 0, b, a}}.scaled(
        cp.normalizer());
}

/// The two-particle coin acting on qubits 0 and 2 of a three-qubit register,
/// identity on qubit 1.
inline Operator coin_operator_3q(const CoinParams &cp) {
    const double a = cp.alpha00();
    const double b = 1.0 - a;
    return Operator{
        {a, b, 0, 0, 0, 0, 0, 0},   {b, -a, 0, 0, 0, 0, 0, 0},
        {0, 0, a, b, 0, 0, 0, 0},   {0, 0, b, -a, 0, 0, 0, 0},
        {0, 0, 0, 0, -a, b, 0, 0},  {0, 0, 0, 0, b, a, 0, 0},
        {0, 0, 0, 0, 0, 0, -a, b},  {0, 0, 0, 0, 0, 0, b, a},
    }
        .scaled(cp.normalizer());
}

/// Three-qubit shift exchanging qubits 0 and 2.
inline Operator shift_operator_3q() {
    return Operator{
        {1, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 0},
        {0, 0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 1},
    };
}

} // namespace qsph
