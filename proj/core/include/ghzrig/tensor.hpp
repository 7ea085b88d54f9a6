// Copyright 2026 The ghzrig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra for small tensor-product spaces.
//
// Ordering convention: whenever a space is written as a tensor product of
// slots d_0 x d_1 x ... x d_{k-1}, slot 0 is the most significant index of
// the flattened vector (big-endian). Control qubits of controlled gates sit
// in the high-order slot.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ghzrig/error.hpp"

namespace ghzrig {

using Complex = std::complex<double>;

/// Largest row or column count any operation may allocate.
struct Limits {
    std::size_t max_dim = std::size_t{1} << 22;

    void check(std::size_t dim, const char *what) const;
};

/// Absolute tolerance for validity checks.
class Tolerance {
  public:
    static constexpr double kDefault = 1e-9;
    static constexpr double kExact = 1e-12;

    Tolerance() = default;
    explicit Tolerance(double absolute);

    double absolute() const noexcept { return absolute_; }

  private:
    double absolute_ = kDefault;
};

class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Row-major entries; throws on size mismatch or non-finite entries.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix column(std::span<const Complex> v);
    static ComplexMatrix diagonal(std::span<const Complex> d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    /// Entries of column c.
    std::vector<Complex> col(std::size_t c) const;
    /// Frobenius norm.
    double norm() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scalar);

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
std::vector<Complex> operator*(const ComplexMatrix &a, std::span<const Complex> v);

class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(std::vector<Complex> amplitudes);

    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex operator[](std::size_t k) const { return amplitudes_[k]; }

    double norm() const;
    /// |sum |a_k|^2 - 1| <= tol.
    bool is_normalized(double tol = 1e-10) const;
    StateVector normalized() const;
    ComplexMatrix as_column() const { return ComplexMatrix::column(amplitudes_); }

    friend bool operator==(const StateVector &, const StateVector &) = default;

  private:
    std::vector<Complex> amplitudes_;
};

Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);

// Standard gates.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();

std::size_t product(std::span<const std::size_t> dims);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b, const Limits &limits = {});
ComplexMatrix kron(std::span<const ComplexMatrix> factors, const Limits &limits = {});

/// Operator on the full space acting as `op` on `slots` and as identity
/// elsewhere. The row/column index of `op` enumerates the listed slots in the
/// order given, big-endian.
ComplexMatrix apply_on(const ComplexMatrix &op, std::span<const std::size_t> slots,
                       std::span<const std::size_t> dims, const Limits &limits = {});

/// Reorders tensor axes: output axis k is input axis perm[k].
std::vector<Complex> permute_axes(std::span<const Complex> data, std::span<const std::size_t> dims,
                                  std::span<const std::size_t> perm);

/// Treats `psi` as a (rest x op.cols()) row-major array and returns the
/// (rest x op.rows()) array with `op` applied to each row.
std::vector<Complex> contract_trailing(const ComplexMatrix &op, std::span<const Complex> psi);

/// Applies `op` (square) to `slots` of a vector on `dims` without forming the
/// full operator.
std::vector<Complex> apply_local(const ComplexMatrix &op, std::span<const std::size_t> slots,
                                 std::span<const std::size_t> dims, std::span<const Complex> psi);

/// Replaces slot `slot` of `psi` by the output space of `map` (which may be
/// non-square). The new dims are written to `out_dims`; the replaced slot
/// becomes the sequence `map_out_dims` at the same position.
std::vector<Complex> apply_map(const ComplexMatrix &map, std::size_t slot,
                               std::span<const std::size_t> dims,
                               std::span<const std::size_t> map_out_dims,
                               std::span<const Complex> psi, std::vector<std::size_t> &out_dims,
                               const Limits &limits = {});

double frobenius_distance(const ComplexMatrix &f, const ComplexMatrix &g);
double frobenius_distance(std::span<const Complex> f, std::span<const Complex> g);

/// |0><0| (x) I + |1><1| (x) u, control in the high-order slot.
ComplexMatrix controlled(const ComplexMatrix &u);

/// (1/sqrt d) sum_e |e>|e> on C^d (x) C^d.
StateVector bell_state(std::size_t d);

/// Hermitian with square identity, both residuals within tol.
bool is_reflection(const ComplexMatrix &m, Tolerance tol = {});
double reflection_residual(const ComplexMatrix &m);

bool commutes(const ComplexMatrix &a, const ComplexMatrix &b, Tolerance tol = {});
/// ||ab - ba||_2
double commutator_norm(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace ghzrig
