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
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include <catch_amalgamated.hpp>

#include "qsph/circuit.hpp"
#include "test_support.hpp"

using namespace qsph;
using Catch::Matchers::WithinAbs;

namespace {

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

/// One-step final state written out by hand:
/// (C N / sqrt 2) [a u0 + b u1, b u0 - a u1, b u1 - a u0, a u1 + b u0], b = 1 - a.
StateVector one_step_state(double u0, double u1, double a) {
    const double b = 1.0 - a;
    const double scale = CoinParams::from_alpha00(a).normalizer() / std::hypot(u0, u1) * inv_sqrt2;
    return StateVector{scale * (a * u0 + b * u1), scale * (b * u0 - a * u1),
                       scale * (b * u1 - a * u0), scale * (a * u1 + b * u0)};
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    }
    return out;
}

/// Derives the read-out weights by pushing a linear functional back through
/// each appended neighbor/shift/coin block. At a block with new neighbor n
/// and coin amplitude a, a term w*phi(v, r) is recovered from the new state
/// psi(v, r, n) as
///   a * phi(v, r)       = (psi(v,r,v) - psi(1-v,r,v)) / 2   (times N/sqrt2)
///   (1-a) * phi(v, r)   = (psi(v,r,1-v) + psi(1-v,r,1-v)) / 2
/// and u0(t) = a u0(t-1) + (1-a) u1(t-1), u1(t) = a u1(t-1) + (1-a) u0(t-1).
std::pair<std::map<std::size_t, double>, std::map<std::size_t, double>>
derive_extraction(std::size_t steps) {
    std::map<std::size_t, double> l0{{0, 1.0}};
    std::map<std::size_t, double> l1{{1, 1.0}};
    for (std::size_t t = 1; t <= steps; ++t) {
        auto split = [t](const std::map<std::size_t, double> &l, bool self_part) {
            std::map<std::size_t, double> out;
            for (const auto &[idx, w] : l) {
                const std::size_t v = idx >> (t - 1);
                const std::size_t r = idx & ((std::size_t{1} << (t - 1)) - 1);
                const std::size_t n = self_part ? v : 1 - v;
                out[(v << t) | (r << 1) | n] += 0.5 * w;
                out[((1 - v) << t) | (r << 1) | n] += (self_part ? -0.5 : 0.5) * w;
            }
            return out;
        };
        auto add = [](std::map<std::size_t, double> x, const std::map<std::size_t, double> &y) {
            for (const auto &[k, v] : y) {
                x[k] += v;
            }
            std::erase_if(x, [](const auto &kv) { return kv.second == 0.0; });
            return x;
        };
        auto next0 = add(split(l0, true), split(l1, false));
        auto next1 = add(split(l1, true), split(l0, false));
        l0 = std::move(next0);
        l1 = std::move(next1);
    }
    return {l0, l1};
}

std::map<std::size_t, double> as_map(const std::vector<ExtractionTerm> &terms) {
    std::map<std::size_t, double> out;
    for (const auto &t : terms) {
        out[t.index] += t.weight;
    }
    return out;
}

} // namespace

TEST_CASE("encode_velocity", "[circuit]") {
    SECTION("reference input") {
        const auto e = encode_velocity(0.8, 0.4);
        CHECK_THAT(e.state[0].real(), WithinAbs(0.89442719099991588, 1e-15));
        CHECK_THAT(e.state[1].real(), WithinAbs(0.44721359549995794, 1e-15));
        CHECK_THAT(e.normalizer, WithinAbs(1.1180339887498949, 1e-15));
        CHECK(is_unitary(e.rotation, 1e-14));
    }
    SECTION("basis and symmetric inputs") {
        const auto e = encode_velocity(1.0, 0.0);
        CHECK(max_abs_diff(e.state, StateVector{1, 0}) <= 1e-16);
        CHECK(e.normalizer == 1.0);
        const auto s = encode_velocity(0.5, 0.5);
        CHECK(max_abs_diff(s.state, StateVector{inv_sqrt2, inv_sqrt2}) <= 1e-15);
    }
    SECTION("signs survive the rotation") {
        const auto e = encode_velocity(-0.3, 0.4);
        CHECK_THAT(e.state[0].real(), WithinAbs(-0.6, 1e-15));
        CHECK_THAT(e.state[1].real(), WithinAbs(0.8, 1e-15));
    }
    CHECK_THROWS_AS(encode_velocity(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("build_circuit structure", "[circuit]") {
    const auto line = ParticleLine::uniform(0.2, {0.8, 0.4});
    const AdvectionParams params(1.0, KernelSpec(1.2));
    for (std::size_t steps = 1; steps <= 3; ++steps) {
        const auto circuit = build_circuit(line, params, steps);
        CHECK(circuit.n_qubits() == steps + 1);
        REQUIRE(circuit.gates().size() == 1 + 4 * steps);
        CHECK(circuit.gates()[0].kind == GateKind::Encode);
        for (std::size_t t = 1; t <= steps; ++t) {
            const auto *g = &circuit.gates()[1 + 4 * (t - 1)];
            CHECK(g[0].kind == GateKind::Hadamard);
            CHECK(g[0].targets == std::vector<std::size_t>{t});
            CHECK(g[1].kind == GateKind::Entangle);
            CHECK(g[2].kind == GateKind::Shift);
            CHECK(g[3].kind == GateKind::Coin);
            CHECK(g[3].targets == std::vector<std::size_t>{0, t});
        }
        for (const auto &g : circuit.gates()) {
            CHECK(is_unitary(g.op, 1e-12));
        }
    }
    CHECK_THROWS_AS(build_circuit(line, params, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_circuit(line, params, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_circuit(ParticleLine::uniform(0.2, {0.8, 0.4, 0.1}), params, 1),
                    std::invalid_argument);
}

TEST_CASE("one-step circuit state", "[circuit]") {
    for (const auto &[u0, u1, c, dx, h] :
         std::vector<std::tuple<double, double, double, double, double>>{
             {0.8, 0.4, 1.0, 0.2, 1.2}, {1.0, 0.0, 0.3, 0.5, 1.2}, {0.2, 0.0, 2.0, 1.2, 1.4},
             {0.6, 0.4, 1.44, 0.5, 1.2}}) {
        const auto line = ParticleLine::uniform(dx, {u0, u1});
        const auto circuit = build_circuit(line, AdvectionParams(c, KernelSpec(h)), 1);
        const double a = 1.0 - c * dx / (h * h);
        CHECK(max_abs_diff(run(circuit), one_step_state(u0, u1, a)) <= 1e-13);
    }
}

TEST_CASE("run: identity advection from |0>", "[circuit]") {
    // Encode (1, 0), |+> on the neighbor, SWAP, coin blockdiag(Z, -Z):
    // [1, 1, 0, 0]/sqrt2 -> [1, 0, 1, 0]/sqrt2 -> [1, 0, -1, 0]/sqrt2.
    const auto circuit =
        build_circuit(ParticleLine::uniform(0.5, {1.0, 0.0}), AdvectionParams(0.0, KernelSpec(1.2)), 1);
    const auto state = run(circuit);
    CHECK(max_abs_diff(state, StateVector{inv_sqrt2, 0, -inv_sqrt2, 0}) <= 1e-15);
    CHECK_THAT(success_probability(state, circuit), WithinAbs(0.5, 1e-15));
}

TEST_CASE("two-step circuit state matches the explicit three-qubit pipeline", "[circuit]") {
    const Operator shift3{
        {1, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 0, 0, 0}, {0, 0, 1, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 0},
        {0, 0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 1},
    };
    for (const auto &[u0, u1, c] : std::vector<std::tuple<double, double, double>>{
             {0.8, 0.4, 1.0}, {0.8, 0.4, 0.01}, {0.3, 0.7, 0.9}}) {
        const double dx = 0.2;
        const double h = 1.2;
        const double a = 1.0 - c * dx / (h * h);
        const double b = 1.0 - a;
        const double n = CoinParams::from_alpha00(a).normalizer();
        const Operator coin3 = Operator{
            {a, b, 0, 0, 0, 0, 0, 0},  {b, -a, 0, 0, 0, 0, 0, 0}, {0, 0, a, b, 0, 0, 0, 0},
            {0, 0, b, -a, 0, 0, 0, 0}, {0, 0, 0, 0, -a, b, 0, 0}, {0, 0, 0, 0, b, a, 0, 0},
            {0, 0, 0, 0, 0, 0, -a, b}, {0, 0, 0, 0, 0, 0, b, a},
        }.scaled(n);
        const auto psi = one_step_state(u0, u1, a);
        const auto expected = testing::matvec(
            coin3, testing::matvec(shift3, tensor(psi, StateVector{inv_sqrt2, inv_sqrt2})));

        const auto circuit =
            build_circuit(ParticleLine::uniform(dx, {u0, u1}), AdvectionParams(c, KernelSpec(h)), 2);
        std::optional<StateVector> before_second_hadamard;
        const auto state = run(circuit, [&](const GateStep &g, const StateVector &s) {
            if (g.kind == GateKind::Coin && g.timestep == 1) {
                before_second_hadamard = s;
            }
            CHECK_THAT(s.norm(), WithinAbs(1.0, 1e-12));
        });
        REQUIRE(before_second_hadamard.has_value());
        CHECK(max_abs_diff(*before_second_hadamard, tensor(psi, StateVector{1, 0})) <= 1e-13);
        CHECK(max_abs_diff(state, expected) <= 1e-13);
    }
}

TEST_CASE("extraction_plan matches the derived read-out", "[circuit]") {
    for (std::size_t steps = 1; steps <= 3; ++steps) {
        const auto plan = extraction_plan(steps);
        const auto [l0, l1] = derive_extraction(steps);
        CHECK(as_map(plan.u0_terms) == l0);
        CHECK(as_map(plan.u1_terms) == l1);
    }
    // The two-step tables spelled out.
    const auto two = extraction_plan(2);
    CHECK(as_map(two.u0_terms) == std::map<std::size_t, double>{{0, 0.5}, {4, -0.5}, {2, 0.5}, {6, 0.5}});
    CHECK(as_map(two.u1_terms) == std::map<std::size_t, double>{{7, 0.5}, {3, -0.5}, {1, 0.5}, {5, 0.5}});
    CHECK_THROWS_AS(extraction_plan(0), std::invalid_argument);
    CHECK_THROWS_AS(extraction_plan(4), std::invalid_argument);
}

TEST_CASE("extract_solutions", "[circuit]") {
    const auto line = ParticleLine::uniform(0.2, {0.8, 0.4});
    const AdvectionParams params(1.0, KernelSpec(1.2));

    const auto one = simulate(line, params, 1);
    CHECK_THAT(one.u0, WithinAbs(0.74444444444444444, 1e-14));
    CHECK_THAT(one.u1, WithinAbs(0.45555555555555556, 1e-14));

    const auto two = simulate(line, params, 2);
    CHECK_THAT(two.u0, WithinAbs(0.70432098765432099, 1e-13));
    CHECK_THAT(two.u1, WithinAbs(0.49567901234567901, 1e-13));

    const auto three = simulate(line, params, 3);
    const auto classical = classical_evolve(line, params, 3)[3];
    CHECK_THAT(three.u0, WithinAbs(classical.u()[0], 1e-13));
    CHECK_THAT(three.u1, WithinAbs(classical.u()[1], 1e-13));

    for (std::size_t steps = 1; steps <= 3; ++steps) {
        const auto frozen = simulate(line, AdvectionParams(0.0, KernelSpec(1.2)), steps);
        CHECK_THAT(frozen.u0, WithinAbs(0.8, 1e-14));
        CHECK_THAT(frozen.u1, WithinAbs(0.4, 1e-14));
    }

    const auto circuit = build_circuit(line, params, 2);
    CHECK_THROWS_AS(extract_solutions(zero_state(2), circuit), std::invalid_argument);
}

TEST_CASE("negative inputs pass through linearly", "[circuit]") {
    const auto line = ParticleLine::uniform(0.3, {-0.5, 0.25});
    const AdvectionParams params(0.7, KernelSpec(1.1));
    for (std::size_t steps = 1; steps <= 3; ++steps) {
        const auto q = simulate(line, params, steps);
        const auto cl = classical_evolve(line, params, steps)[steps];
        CHECK_THAT(q.u0, WithinAbs(cl.u()[0], 1e-12));
        CHECK_THAT(q.u1, WithinAbs(cl.u()[1], 1e-12));
    }
}

TEST_CASE("success_probability stays in [0, 1]", "[circuit]") {
    for (double c : logspace(1e-4, 2.0, 15)) {
        for (std::size_t steps = 1; steps <= 3; ++steps) {
            const auto circuit = build_circuit(ParticleLine::uniform(0.5, {0.8, 0.2}),
                                               AdvectionParams(c, KernelSpec(1.2)), steps);
            const double p = success_probability(run(circuit), circuit);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
    }
}

TEST_CASE("quantum pipeline reproduces classical_evolve over a parameter grid",
          "[circuit][property]") {
    double worst = 0.0;
    double worst_sum = 0.0;
    double worst_norm = 0.0;
    const std::vector<double> levels = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (double u0 : levels) {
        for (double u1 : levels) {
            if (u0 + u1 == 0.0) {
                continue;
            }
            for (double c : logspace(1e-4, 2.0, 20)) {
                for (double dx : {0.2, 0.5}) {
                    for (double h : {1.2, 1.4}) {
                        const auto line = ParticleLine::uniform(dx, {u0, u1});
                        const AdvectionParams params(c, KernelSpec(h));
                        const auto snaps = classical_evolve(line, params, 3);
                        for (std::size_t steps = 1; steps <= 3; ++steps) {
                            const auto circuit = build_circuit(line, params, steps);
                            const auto state = run(circuit, [&](const GateStep &, const StateVector &s) {
                                worst_norm = std::max(worst_norm, std::abs(s.norm() - 1.0));
                            });
                            const auto q = extract_solutions(state, circuit);
                            worst = std::max({worst, std::abs(q.u0 - snaps[steps].u()[0]),
                                              std::abs(q.u1 - snaps[steps].u()[1])});
                            worst_sum = std::max(worst_sum, std::abs(q.u0 + q.u1 - u0 - u1));
                        }
                    }
                }
            }
        }
    }
    CHECK(worst <= 1e-10);
    CHECK(worst_sum <= 1e-10);
    CHECK(worst_norm <= 1e-12);
}
