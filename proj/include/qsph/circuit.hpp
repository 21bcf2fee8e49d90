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
 * Two-particle QSPH circuit over one to three timesteps.
 *
 * Qubit 0 is the velocity register (amplitude-encoded u0, u1). Qubit t,
 * t = 1..T, is the neighbor register added for timestep t. Each timestep
 * puts the fresh neighbor into |+>, entangles it with the velocity
 * register, shifts (SWAP) and applies the reversible coin. The velocity
 * solution is read back from fixed linear combinations of the final
 * amplitudes, which undo the junk terms left by earlier coins.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "encoding.hpp"
#include "sph.hpp"
#include "statevector.hpp"

namespace qsph {

inline constexpr std::size_t max_circuit_timesteps = 3;

struct VelocityEncoding {
    StateVector state;
    Operator rotation;  ///< RY taking |0> to state
    double normalizer;  ///< (u0^2 + u1^2)^(-1/2)
};

/// Amplitude-encodes (u0, u1) on one qubit with a single RY rotation.
inline VelocityEncoding encode_velocity(double u0, double u1) {
    if (!std::isfinite(u0) || !std::isfinite(u1)) {
        throw std::invalid_argument("encode_velocity: inputs must be finite");
    }
    const double radius = std::hypot(u0, u1);
    if (radius == 0.0) {
        throw std::invalid_argument("encode_velocity: (u0, u1) must not be zero");
    }
    const Operator rotation = ry(2.0 * std::atan2(u1, u0));
    const std::size_t target[] = {0};
    StateVector state = apply_operator(zero_state(1), rotation, target);
    return VelocityEncoding{std::move(state), rotation, 1.0 / radius};
}

enum class GateKind { Encode, Hadamard, Entangle, Shift, Coin };

inline const char *to_string(GateKind kind) {
    switch (kind) {
    case GateKind::Encode:
        return "encode";
    case GateKind::Hadamard:
        return "hadamard";
    case GateKind::Entangle:
        return "entangle";
    case GateKind::Shift:
        return "shift";
    case GateKind::Coin:
        return "coin";
    }
    return "?";
}

struct GateStep {
    GateKind kind;
    std::size_t timestep; ///< 0 for the encoding, else 1..T
    Operator op;
    std::vector<std::size_t> targets;
};

struct ExtractionTerm {
    std::size_t index;
    double weight;
};

/**
 * @brief Linear read-out of u0(T), u1(T) from the final amplitudes.
 *
 * u_i(T) = sum(weight * Re amp[index]) / (C * N^T * 2^(-T/2)).
 */
struct ExtractionPlan {
    std::size_t timesteps;
    std::vector<ExtractionTerm> u0_terms;
    std::vector<ExtractionTerm> u1_terms;
};

/// Frozen read-out tables for T = 1, 2, 3.
inline ExtractionPlan extraction_plan(std::size_t timesteps) {
    constexpr double q = 0.25;
    switch (timesteps) {
    case 1:
        return {1, {{0, 1.0}}, {{3, 1.0}}};
    case 2:
        // (chi0 - chi4)/2 + (chi2 + chi6)/2 and (chi7 - chi3)/2 + (chi1 + chi5)/2
        return {2,
                {{0, 0.5}, {2, 0.5}, {4, -0.5}, {6, 0.5}},
                {{1, 0.5}, {3, -0.5}, {5, 0.5}, {7, 0.5}}};
    case 3:
        return {3,
                {{0, q}, {1, q}, {2, q}, {3, q}, {4, q}, {5, -q}, {6, q}, {7, -q},
                 {8, -q}, {9, -q}, {10, q}, {11, q}, {12, -q}, {13, q}, {14, q}, {15, -q}},
                {{0, -q}, {1, q}, {2, q}, {3, -q}, {4, q}, {5, q}, {6, -q}, {7, -q},
                 {8, -q}, {9, q}, {10, -q}, {11, q}, {12, q}, {13, q}, {14, q}, {15, q}}};
    default:
        throw std::invalid_argument("extraction_plan: only 1 to 3 timesteps are supported, got " +
                                    std::to_string(timesteps));
    }
}

struct CircuitOptions {
    /// Added to alpha00 when building the coin. Nonzero values produce a
    /// deliberately wrong (still unitary) coin for negative controls.
    double coin_alpha_offset = 0.0;
};

class QsphCircuit {
  public:
    QsphCircuit(std::size_t timesteps, std::vector<GateStep> gates, double velocity_normalizer,
                CoinParams coin)
        : timesteps_(timesteps), gates_(std::move(gates)),
          velocity_normalizer_(velocity_normalizer), coin_(coin) {}

    [[nodiscard]] std::size_t timesteps() const noexcept { return timesteps_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return 1 + timesteps_; }
    [[nodiscard]] const std::vector<GateStep> &gates() const noexcept { return gates_; }
    [[nodiscard]] double velocity_normalizer() const noexcept { return velocity_normalizer_; }
    [[nodiscard]] const CoinParams &coin() const noexcept { return coin_; }

    /// C * N^T * (1/sqrt 2)^T: the factor carried by every extracted value.
    [[nodiscard]] double extraction_scale() const {
        const double per_step = coin_.normalizer() / std::numbers::sqrt2;
        double scale = velocity_normalizer_;
        for (std::size_t t = 0; t < timesteps_; ++t) {
            scale *= per_step;
        }
        return scale;
    }

  private:
    std::size_t timesteps_;
    std::vector<GateStep> gates_;
    double velocity_normalizer_;
    CoinParams coin_;
};

/**
 * @brief Builds the gate list for a two-particle line over T timesteps.
 *
 * The entangling gate is a CNOT from the velocity qubit onto the fresh
 * neighbor. The neighbor is in |+>, an X eigenstate, so the joint state
 * stays exactly |u> (x) |+>.
 */
inline QsphCircuit build_circuit(const ParticleLine &line, const AdvectionParams &params,
                                 std::size_t timesteps, const CircuitOptions &options = {}) {
    if (line.size() != 2) {
        throw std::invalid_argument("build_circuit: the circuit models exactly two particles");
    }
    if (timesteps < 1 || timesteps > max_circuit_timesteps) {
        throw std::invalid_argument("build_circuit: timesteps must be in [1, 3], got " +
                                    std::to_string(timesteps));
    }
    const auto encoding = encode_velocity(line.u()[0], line.u()[1]);
    const CoinParams coin = CoinParams::from_alpha00(
        two_particle_coin_params(line, params).alpha00() + options.coin_alpha_offset);
    const Operator coin_op = coin_operator_2q(coin);

    std::vector<GateStep> gates;
    gates.push_back({GateKind::Encode, 0, encoding.rotation, {0}});
    for (std::size_t t = 1; t <= timesteps; ++t) {
        gates.push_back({GateKind::Hadamard, t, hadamard(), {t}});
        gates.push_back({GateKind::Entangle, t, cnot(), {0, t}});
        gates.push_back({GateKind::Shift, t, two_particle_shift(), {0, t}});
        gates.push_back({GateKind::Coin, t, coin_op, {0, t}});
    }
    return QsphCircuit(timesteps, std::move(gates), encoding.normalizer, coin);
}

using GateObserver = std::function<void(const GateStep &, const StateVector &)>;

/// Applies the gate list to |0...0>. The observer, if set, sees the state
/// after every gate.
inline StateVector run(const QsphCircuit &circuit, const GateObserver &observer = {}) {
    StateVector state = zero_state(circuit.n_qubits());
    for (const auto &gate : circuit.gates()) {
        state = apply_operator(state, gate.op, std::span<const std::size_t>(gate.targets));
        if (observer) {
            observer(gate, state);
        }
    }
    return state;
}

struct TwoParticleSolution {
    double u0;
    double u1;
};

inline TwoParticleSolution extract_solutions(const StateVector &final_state,
                                             const QsphCircuit &circuit) {
    if (final_state.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("extract_solutions: state has " +
                                    std::to_string(final_state.n_qubits()) +
                                    " qubits, circuit expects " +
                                    std::to_string(circuit.n_qubits()));
    }
    const auto plan = extraction_plan(circuit.timesteps());
    const auto combine = [&](const std::vector<ExtractionTerm> &terms) {
        double sum = 0.0;
        for (const auto &term : terms) {
            sum += term.weight * final_state[term.index].real();
        }
        return sum;
    };
    const double scale = circuit.extraction_scale();
    return {combine(plan.u0_terms) / scale, combine(plan.u1_terms) / scale};
}

/// Probability mass on the amplitudes entering the read-out with positive
/// weight. Lower values mean more weight in the junk terms.
inline double success_probability(const StateVector &final_state, const QsphCircuit &circuit) {
    if (final_state.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("success_probability: state/circuit size mismatch");
    }
    const auto plan = extraction_plan(circuit.timesteps());
    std::vector<bool> used(final_state.size(), false);
    for (const auto *terms : {&plan.u0_terms, &plan.u1_terms}) {
        for (const auto &term : *terms) {
            if (term.weight > 0) {
                used[term.index] = true;
            }
        }
    }
    double p = 0.0;
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (used[i]) {
            p += std::norm(final_state[i]);
        }
    }
    return std::min(p, 1.0);
}

/// build_circuit, run and extract_solutions in one call.
inline TwoParticleSolution simulate(const ParticleLine &line, const AdvectionParams &params,
                                    std::size_t timesteps, const CircuitOptions &options = {}) {
    const auto circuit = build_circuit(line, params, timesteps, options);
    return extract_solutions(run(circuit), circuit);
}

} // namespace qsph
