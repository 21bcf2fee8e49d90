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
 * Dense statevector and operator types with gate application on arbitrary
 * target qubits.
 *
 * Bit ordering: qubit 0 is the most-significant bit of the basis index, so
 * the state |q0 q1 ... q_{n-1}> sits at index q0*2^(n-1) + ... + q_{n-1}.
 * Column vectors written as |velocity> (x) |neighbor> read off directly.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsph {

inline constexpr std::size_t max_qubits = 20;
inline constexpr double default_unitarity_tol = 1e-12;

/// Raised when a matrix handed to apply_operator is not unitary.
class UnitarityError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

template <class Real> using Amplitude = std::complex<Real>;

namespace detail {

inline bool is_power_of_two(std::size_t value) {
    return value != 0 && (value & (value - 1)) == 0;
}

inline std::size_t log2_exact(std::size_t value) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < value) {
        ++n;
    }
    return n;
}

} // namespace detail

/**
 * @brief Square complex matrix whose dimension is a power of two.
 *
 * Row-major storage. Operator values are immutable once built; arithmetic
 * helpers return new operators.
 */
template <class Real = double> class BasicOperator {
  public:
    using value_type = Amplitude<Real>;

    BasicOperator(std::size_t dim, std::vector<value_type> entries)
        : dim_(dim), entries_(std::move(entries)) {
        if (!detail::is_power_of_two(dim_)) {
            throw std::invalid_argument("Operator dimension must be a power of two, got " +
                                        std::to_string(dim_));
        }
        if (entries_.size() != dim_ * dim_) {
            throw std::invalid_argument("Operator entry count does not match dim*dim");
        }
    }

    /// Build from nested row lists, e.g. {{1, 0}, {0, 1}}.
    BasicOperator(std::initializer_list<std::initializer_list<value_type>> rows)
        : BasicOperator(rows.size(), flatten(rows)) {}

    static BasicOperator identity(std::size_t dim) {
        std::vector<value_type> entries(dim * dim, value_type{0});
        for (std::size_t i = 0; i < dim; ++i) {
            entries[i * dim + i] = value_type{1};
        }
        return BasicOperator(dim, std::move(entries));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return detail::log2_exact(dim_); }

    [[nodiscard]] const value_type &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }

    [[nodiscard]] std::span<const value_type> entries() const noexcept { return entries_; }

    [[nodiscard]] BasicOperator adjoint() const {
        std::vector<value_type> out(dim_ * dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
            }
        }
        return BasicOperator(dim_, std::move(out));
    }

    [[nodiscard]] BasicOperator operator*(const BasicOperator &rhs) const {
        if (rhs.dim_ != dim_) {
            throw std::invalid_argument("Operator product dimension mismatch");
        }
        std::vector<value_type> out(dim_ * dim_, value_type{0});
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t k = 0; k < dim_; ++k) {
                const value_type lhs = entries_[r * dim_ + k];
                if (lhs == value_type{0}) {
                    continue;
                }
                for (std::size_t c = 0; c < dim_; ++c) {
                    out[r * dim_ + c] += lhs * rhs.entries_[k * dim_ + c];
                }
            }
        }
        return BasicOperator(dim_, std::move(out));
    }

    [[nodiscard]] BasicOperator scaled(Real factor) const {
        std::vector<value_type> out(entries_);
        for (auto &v : out) {
            v *= factor;
        }
        return BasicOperator(dim_, std::move(out));
    }

  private:
    static std::vector<value_type>
    flatten(std::initializer_list<std::initializer_list<value_type>> rows) {
        std::vector<value_type> out;
        out.reserve(rows.size() * rows.size());
        for (const auto &row : rows) {
            if (row.size() != rows.size()) {
                throw std::invalid_argument("Operator rows must form a square matrix");
            }
            out.insert(out.end(), row.begin(), row.end());
        }
        return out;
    }

    std::size_t dim_;
    std::vector<value_type> entries_;
};

/**
 * @brief Amplitudes of an n-qubit register, length exactly 2^n.
 */
template <class Real = double> class BasicStateVector {
  public:
    using value_type = Amplitude<Real>;

    /// Wraps raw amplitudes. The length must be a power of two; no
    /// normalization is applied.
    explicit BasicStateVector(std::vector<value_type> amplitudes)
        : amps_(std::move(amplitudes)) {
        if (!detail::is_power_of_two(amps_.size()) || amps_.size() < 2) {
            throw std::invalid_argument("State length must be 2^n with n >= 1, got " +
                                        std::to_string(amps_.size()));
        }
        n_qubits_ = detail::log2_exact(amps_.size());
        if (n_qubits_ > max_qubits) {
            throw std::invalid_argument("State exceeds the supported qubit count");
        }
        for (const auto &a : amps_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
                throw std::invalid_argument("State amplitudes must be finite");
            }
        }
    }

    BasicStateVector(std::initializer_list<value_type> amplitudes)
        : BasicStateVector(std::vector<value_type>(amplitudes)) {}

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] const value_type &operator[](std::size_t index) const { return amps_[index]; }
    [[nodiscard]] std::span<const value_type> amplitudes() const noexcept { return amps_; }

    [[nodiscard]] Real norm() const {
        Real sum = 0;
        for (const auto &a : amps_) {
            sum += std::norm(a);
        }
        return std::sqrt(sum);
    }

  private:
    std::size_t n_qubits_ = 0;
    std::vector<value_type> amps_;
};

using Operator = BasicOperator<double>;
using StateVector = BasicStateVector<double>;

/// |0...0> on n qubits.
template <class Real = double> BasicStateVector<Real> zero_state(std::size_t n_qubits) {
    if (n_qubits == 0 || n_qubits > max_qubits) {
        throw std::invalid_argument("zero_state: n_qubits must be in [1, " +
                                    std::to_string(max_qubits) + "]");
    }
    std::vector<Amplitude<Real>> amps(std::size_t{1} << n_qubits, Amplitude<Real>{0});
    amps[0] = Amplitude<Real>{1};
    return BasicStateVector<Real>(std::move(amps));
}

template <class Real = double> BasicOperator<Real> hadamard() {
    const Real s = Real{1} / std::sqrt(Real{2});
    return BasicOperator<Real>{{s, s}, {s, -s}};
}

template <class Real = double> BasicOperator<Real> pauli_x() {
    return BasicOperator<Real>{{0, 1}, {1, 0}};
}

/// Controlled-X with the first target as control.
template <class Real = double> BasicOperator<Real> cnot() {
    return BasicOperator<Real>{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
}

/// Real rotation [[cos, -sin], [sin, cos]] of angle theta/2 (the RY gate).
template <class Real = double> BasicOperator<Real> ry(Real theta) {
    const Real c = std::cos(theta / 2);
    const Real s = std::sin(theta / 2);
    return BasicOperator<Real>{{c, -s}, {s, c}};
}

/// Two-particle shift: exchanges |01> and |10>, i.e. a SWAP.
template <class Real = double> BasicOperator<Real> two_particle_shift() {
    return BasicOperator<Real>{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
}

/// True iff max |op^dagger op - I| <= tol elementwise.
template <class Real> bool is_unitary(const BasicOperator<Real> &op, Real tol) {
    if (!(tol > 0)) {
        throw std::invalid_argument("is_unitary: tol must be positive");
    }
    const std::size_t dim = op.dim();
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            Amplitude<Real> sum{0};
            for (std::size_t k = 0; k < dim; ++k) {
                sum += std::conj(op(k, r)) * op(k, c);
            }
            if (r == c) {
                sum -= Amplitude<Real>{1};
            }
            if (!(std::abs(sum) <= tol)) {
                return false;
            }
        }
    }
    return true;
}

template <class Real> bool is_unitary(const BasicOperator<Real> &op) {
    return is_unitary(op, static_cast<Real>(default_unitarity_tol));
}

/// Kronecker product; the left factor occupies the most-significant bits.
template <class Real>
BasicOperator<Real> tensor(const BasicOperator<Real> &a, const BasicOperator<Real> &b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    const std::size_t dim = da * db;
    std::vector<Amplitude<Real>> out(dim * dim);
    for (std::size_t ar = 0; ar < da; ++ar) {
        for (std::size_t ac = 0; ac < da; ++ac) {
            for (std::size_t br = 0; br < db; ++br) {
                for (std::size_t bc = 0; bc < db; ++bc) {
                    out[(ar * db + br) * dim + (ac * db + bc)] = a(ar, ac) * b(br, bc);
                }
            }
        }
    }
    return BasicOperator<Real>(dim, std::move(out));
}

template <class Real>
BasicStateVector<Real> tensor(const BasicStateVector<Real> &a, const BasicStateVector<Real> &b) {
    std::vector<Amplitude<Real>> out;
    out.reserve(a.size() * b.size());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            out.push_back(x * y);
        }
    }
    return BasicStateVector<Real>(std::move(out));
}

namespace detail {

inline void validate_targets(std::size_t n_qubits, std::size_t op_dim,
                             std::span<const std::size_t> targets) {
    if (targets.empty() || (std::size_t{1} << targets.size()) != op_dim) {
        throw std::invalid_argument("apply_operator: operator dimension " +
                                    std::to_string(op_dim) + " does not match " +
                                    std::to_string(targets.size()) + " target qubit(s)");
    }
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= n_qubits) {
            throw std::invalid_argument("apply_operator: target qubit " +
                                        std::to_string(targets[i]) + " out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("apply_operator: duplicate target qubit");
            }
        }
    }
}

/**
 * Applies op to the listed targets without the unitarity check. The first
 * target maps to the most-significant bit of op's row/column index.
 */
template <class Real>
BasicStateVector<Real> apply_dense(const BasicStateVector<Real> &state,
                                   const BasicOperator<Real> &op,
                                   std::span<const std::size_t> targets) {
    const std::size_t n = state.n_qubits();
    validate_targets(n, op.dim(), targets);

    const std::size_t k = targets.size();
    const std::size_t sub_dim = op.dim();

    // Bit mask within the full index for each local operator bit.
    std::vector<std::size_t> local_mask(k);
    std::size_t target_mask = 0;
    for (std::size_t m = 0; m < k; ++m) {
        const std::size_t bit = std::size_t{1} << (n - 1 - targets[m]);
        local_mask[m] = bit;
        target_mask |= bit;
    }

    // offsets[local] = full-index contribution of the target bits.
    std::vector<std::size_t> offsets(sub_dim, 0);
    for (std::size_t local = 0; local < sub_dim; ++local) {
        for (std::size_t m = 0; m < k; ++m) {
            if (local & (std::size_t{1} << (k - 1 - m))) {
                offsets[local] |= local_mask[m];
            }
        }
    }

    const auto in = state.amplitudes();
    std::vector<Amplitude<Real>> out(in.begin(), in.end());
    std::vector<Amplitude<Real>> gathered(sub_dim);
    for (std::size_t base = 0; base < in.size(); ++base) {
        if (base & target_mask) {
            continue;
        }
        for (std::size_t local = 0; local < sub_dim; ++local) {
            gathered[local] = in[base | offsets[local]];
        }
        for (std::size_t r = 0; r < sub_dim; ++r) {
            Amplitude<Real> acc{0};
            for (std::size_t c = 0; c < sub_dim; ++c) {
                acc += op(r, c) * gathered[c];
            }
            out[base | offsets[r]] = acc;
        }
    }
    return BasicStateVector<Real>(std::move(out));
}

} // namespace detail

/**
 * @brief Apply a unitary to the given target qubits.
 *
 * Equivalent to acting with op (x) identity after permuting qubits so that
 * targets[0] is the most-significant bit of op's index.
 *
 * @throws std::invalid_argument on dimension or target mismatch.
 * @throws UnitarityError if op fails is_unitary at tol.
 */
template <class Real>
BasicStateVector<Real> apply_operator(const BasicStateVector<Real> &state,
                                      const BasicOperator<Real> &op,
                                      std::span<const std::size_t> targets,
                                      Real tol = static_cast<Real>(default_unitarity_tol)) {
    detail::validate_targets(state.n_qubits(), op.dim(), targets);
    if (!is_unitary(op, tol)) {
        throw UnitarityError("apply_operator: operator is not unitary");
    }
    return detail::apply_dense(state, op, targets);
}

template <class Real>
BasicStateVector<Real> apply_operator(const BasicStateVector<Real> &state,
                                      const BasicOperator<Real> &op,
                                      std::initializer_list<std::size_t> targets) {
    return apply_operator(state, op,
                          std::span<const std::size_t>(targets.begin(), targets.size()));
}

/// Largest elementwise modulus of a - b.
template <class Real>
Real max_abs_diff(const BasicStateVector<Real> &a, const BasicStateVector<Real> &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("max_abs_diff: size mismatch");
    }
    Real worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

template <class Real>
Real max_abs_diff(const BasicOperator<Real> &a, const BasicOperator<Real> &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    Real worst = 0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        worst = std::max(worst, std::abs(ea[i] - eb[i]));
    }
    return worst;
}

} // namespace qsph
