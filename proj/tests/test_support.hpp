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
 * Test-only helpers: random states and unitaries, and brute-force
 * embedding of a k-qubit operator into a full n-qubit matrix.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <random>
#include <vector>

#include "qsph/statevector.hpp"

namespace qsph::testing {

using cplx = std::complex<double>;

inline StateVector random_state(std::size_t n_qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    double sum = 0.0;
    for (auto &a : amps) {
        a = {gauss(rng), gauss(rng)};
        sum += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(sum);
    for (auto &a : amps) {
        a *= inv;
    }
    return StateVector(std::move(amps));
}

/// Haar-ish random unitary: Gram-Schmidt on the columns of a Gaussian matrix.
inline Operator random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<cplx>> cols(dim, std::vector<cplx>(dim));
    for (auto &col : cols) {
        for (auto &v : col) {
            v = {gauss(rng), gauss(rng)};
        }
    }
    for (std::size_t c = 0; c < dim; ++c) {
        // Two passes of modified Gram-Schmidt for orthogonality at 1e-15.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                cplx proj{0};
                for (std::size_t r = 0; r < dim; ++r) {
                    proj += std::conj(cols[p][r]) * cols[c][r];
                }
                for (std::size_t r = 0; r < dim; ++r) {
                    cols[c][r] -= proj * cols[p][r];
                }
            }
        }
        double norm = 0.0;
        for (const auto &v : cols[c]) {
            norm += std::norm(v);
        }
        norm = std::sqrt(norm);
        for (auto &v : cols[c]) {
            v /= norm;
        }
    }
    std::vector<cplx> entries(dim * dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            entries[r * dim + c] = cols[c][r];
        }
    }
    return Operator(dim, std::move(entries));
}

/// Full 2^n matrix of op acting on targets, built entry by entry: the
/// entry is op(local(row), local(col)) when all non-target bits agree.
inline Operator embed_brute_force(const Operator &op, const std::vector<std::size_t> &targets,
                                  std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    auto bit_of = [&](std::size_t index, std::size_t qubit) {
        return (index >> (n_qubits - 1 - qubit)) & 1U;
    };
    auto local_index = [&](std::size_t index) {
        std::size_t local = 0;
        for (std::size_t t : targets) {
            local = (local << 1) | bit_of(index, t);
        }
        return local;
    };
    std::size_t target_mask = 0;
    for (std::size_t t : targets) {
        target_mask |= std::size_t{1} << (n_qubits - 1 - t);
    }
    std::vector<cplx> entries(dim * dim, cplx{0});
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~target_mask) == (c & ~target_mask)) {
                entries[r * dim + c] = op(local_index(r), local_index(c));
            }
        }
    }
    return Operator(dim, std::move(entries));
}

inline StateVector matvec(const Operator &m, const StateVector &s) {
    std::vector<cplx> out(s.size(), cplx{0});
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            out[r] += m(r, c) * s[c];
        }
    }
    return StateVector(std::move(out));
}

} // namespace qsph::testing
