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

#include "ghzrig/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ghzrig {

namespace {

std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        strides[k - 1] = strides[k] * dims[k];
    }
    return strides;
}

void check_slots(std::span<const std::size_t> slots, std::size_t count) {
    std::vector<bool> seen(count, false);
    for (std::size_t s : slots) {
        if (s >= count) {
            fail(ErrorKind::InvalidArgument,
                 "slot " + std::to_string(s) + " out of range for " + std::to_string(count) +
                     " slots");
        }
        if (seen[s]) {
            fail(ErrorKind::InvalidArgument, "repeated slot index " + std::to_string(s));
        }
        seen[s] = true;
    }
}

void check_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorKind::ShapeMismatch,
             std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                 std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                 std::to_string(b.cols()));
    }
}

}  // namespace

// out[r, o] = sum_i op(o, i) * psi[r, i]
std::vector<Complex> contract_trailing(const ComplexMatrix &op, std::span<const Complex> psi) {
    const std::size_t in = op.cols();
    const std::size_t out = op.rows();
    if (in == 0 || psi.size() % in != 0) {
        fail(ErrorKind::ShapeMismatch, "contract_trailing: operator width does not divide data");
    }
    const std::size_t rest = psi.size() / in;
    std::vector<Complex> result(rest * out);
    const auto e = op.entries();
    for (std::size_t r = 0; r < rest; ++r) {
        const Complex *src = psi.data() + r * in;
        Complex *dst = result.data() + r * out;
        for (std::size_t o = 0; o < out; ++o) {
            const Complex *row = e.data() + o * in;
            Complex acc{};
            for (std::size_t i = 0; i < in; ++i) acc += row[i] * src[i];
            dst[o] = acc;
        }
    }
    return result;
}

void Limits::check(std::size_t dim, const char *what) const {
    if (dim > max_dim) {
        fail(ErrorKind::DimensionCeiling, std::string(what) + ": dimension " + std::to_string(dim) +
                                              " exceeds ceiling " + std::to_string(max_dim));
    }
}

Tolerance::Tolerance(double absolute) : absolute_(absolute) {
    if (!(absolute > 0.0) || !std::isfinite(absolute)) {
        fail(ErrorKind::InvalidArgument, "tolerance must be positive and finite");
    }
}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        fail(ErrorKind::ShapeMismatch, "matrix entries: expected " + std::to_string(rows_ * cols_) +
                                           ", got " + std::to_string(entries_.size()));
    }
    for (const Complex &z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            fail(ErrorKind::Numeric, "matrix entry is not finite");
        }
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) fail(ErrorKind::ShapeMismatch, "ragged matrix literal");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v) {
    return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

std::vector<Complex> ComplexMatrix::col(std::size_t c) const {
    std::vector<Complex> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

double ComplexMatrix::norm() const { return ghzrig::norm(entries_); }

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    check_same_shape(*this, other, "matrix addition");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    check_same_shape(*this, other, "matrix subtraction");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scalar) {
    for (Complex &z : entries_) z *= scalar;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        fail(ErrorKind::ShapeMismatch, "matrix product: inner dimensions " +
                                           std::to_string(a.cols()) + " and " +
                                           std::to_string(b.rows()));
    }
    ComplexMatrix m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex x = a(r, k);
            if (x == Complex{}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) m(r, c) += x * b(k, c);
        }
    }
    return m;
}

std::vector<Complex> operator*(const ComplexMatrix &a, std::span<const Complex> v) {
    if (a.cols() != v.size()) {
        fail(ErrorKind::ShapeMismatch, "matrix-vector product: " + std::to_string(a.cols()) +
                                           " columns, vector of " + std::to_string(v.size()));
    }
    return contract_trailing(a, v);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    for (const Complex &z : amplitudes_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            fail(ErrorKind::Numeric, "state amplitude is not finite");
        }
    }
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) fail(ErrorKind::InvalidArgument, "basis index out of range");
    std::vector<Complex> a(dim);
    a[index] = 1.0;
    return StateVector(std::move(a));
}

double StateVector::norm() const { return ghzrig::norm(amplitudes_); }

bool StateVector::is_normalized(double tol) const {
    double s = 0.0;
    for (const Complex &z : amplitudes_) s += std::norm(z);
    return std::abs(s - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) fail(ErrorKind::Numeric, "cannot normalize the zero vector");
    std::vector<Complex> a(amplitudes_);
    for (Complex &z : a) z /= n;
    return StateVector(std::move(a));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) fail(ErrorKind::ShapeMismatch, "inner product: length mismatch");
    Complex acc{};
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
    return acc;
}

double norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const Complex &z : v) s += std::norm(z);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Gates

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{h, h}, {h, -h}};
}

// ---------------------------------------------------------------------------
// Tensor products and embeddings

std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b, const Limits &limits) {
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    limits.check(rows, "kron rows");
    limits.check(cols, "kron cols");
    ComplexMatrix m(rows, cols);
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const Complex x = a(ar, ac);
            if (x == Complex{}) continue;
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    m(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
    return m;
}

ComplexMatrix kron(std::span<const ComplexMatrix> factors, const Limits &limits) {
    ComplexMatrix acc = ComplexMatrix::identity(1);
    for (const ComplexMatrix &f : factors) acc = kron(acc, f, limits);
    return acc;
}

ComplexMatrix apply_on(const ComplexMatrix &op, std::span<const std::size_t> slots,
                       std::span<const std::size_t> dims, const Limits &limits) {
    check_slots(slots, dims.size());
    std::size_t sub = 1;
    for (std::size_t s : slots) sub *= dims[s];
    if (!op.is_square() || op.rows() != sub) {
        fail(ErrorKind::ShapeMismatch, "apply_on: operator is " + std::to_string(op.rows()) + "x" +
                                           std::to_string(op.cols()) +
                                           ", selected slots span " + std::to_string(sub));
    }
    const std::size_t total = product(dims);
    limits.check(total, "apply_on");
    const auto strides = strides_of(dims);

    // Offsets contributed by each value of the selected sub-index.
    std::vector<std::size_t> sub_offset(sub, 0);
    for (std::size_t v = 0; v < sub; ++v) {
        std::size_t rem = v;
        std::size_t off = 0;
        for (std::size_t k = slots.size(); k-- > 0;) {
            off += (rem % dims[slots[k]]) * strides[slots[k]];
            rem /= dims[slots[k]];
        }
        sub_offset[v] = off;
    }

    ComplexMatrix full(total, total);
    for (std::size_t x = 0; x < total; ++x) {
        std::size_t xs = 0;
        for (std::size_t s : slots) xs = xs * dims[s] + (x / strides[s]) % dims[s];
        const std::size_t base = x - sub_offset[xs];
        for (std::size_t ys = 0; ys < sub; ++ys) full(x, base + sub_offset[ys]) = op(xs, ys);
    }
    return full;
}

std::vector<Complex> permute_axes(std::span<const Complex> data, std::span<const std::size_t> dims,
                                  std::span<const std::size_t> perm) {
    check_slots(perm, dims.size());
    if (perm.size() != dims.size()) fail(ErrorKind::InvalidArgument, "permutation length");
    if (data.size() != product(dims)) fail(ErrorKind::ShapeMismatch, "permute_axes: data size");

    const auto in_strides = strides_of(dims);
    const std::size_t rank = dims.size();
    std::vector<std::size_t> out_dims(rank), step(rank);
    for (std::size_t k = 0; k < rank; ++k) {
        out_dims[k] = dims[perm[k]];
        step[k] = in_strides[perm[k]];
    }
    std::vector<Complex> out(data.size());
    std::vector<std::size_t> counter(rank, 0);
    std::size_t src = 0;
    for (std::size_t dst = 0; dst < out.size(); ++dst) {
        out[dst] = data[src];
        for (std::size_t k = rank; k-- > 0;) {
            if (++counter[k] < out_dims[k]) {
                src += step[k];
                break;
            }
            counter[k] = 0;
            src -= step[k] * (out_dims[k] - 1);
        }
    }
    return out;
}

std::vector<Complex> apply_local(const ComplexMatrix &op, std::span<const std::size_t> slots,
                                 std::span<const std::size_t> dims, std::span<const Complex> psi) {
    check_slots(slots, dims.size());
    std::size_t sub = 1;
    for (std::size_t s : slots) sub *= dims[s];
    if (!op.is_square() || op.rows() != sub) {
        fail(ErrorKind::ShapeMismatch, "apply_local: operator does not match slot dimensions");
    }
    if (psi.size() != product(dims)) fail(ErrorKind::ShapeMismatch, "apply_local: vector size");

    std::vector<std::size_t> perm;
    std::vector<bool> selected(dims.size(), false);
    for (std::size_t s : slots) selected[s] = true;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (!selected[k]) perm.push_back(k);
    perm.insert(perm.end(), slots.begin(), slots.end());

    std::vector<std::size_t> moved_dims(dims.size()), inverse(dims.size());
    for (std::size_t k = 0; k < perm.size(); ++k) {
        moved_dims[k] = dims[perm[k]];
        inverse[perm[k]] = k;
    }
    auto moved = contract_trailing(op, permute_axes(psi, dims, perm));
    return permute_axes(moved, moved_dims, inverse);
}

std::vector<Complex> apply_map(const ComplexMatrix &map, std::size_t slot,
                               std::span<const std::size_t> dims,
                               std::span<const std::size_t> map_out_dims,
                               std::span<const Complex> psi, std::vector<std::size_t> &out_dims,
                               const Limits &limits) {
    if (slot >= dims.size()) fail(ErrorKind::InvalidArgument, "apply_map: slot out of range");
    if (map.cols() != dims[slot] || map.rows() != product(map_out_dims)) {
        fail(ErrorKind::ShapeMismatch, "apply_map: map shape does not match slot dimensions");
    }
    if (psi.size() != product(dims)) fail(ErrorKind::ShapeMismatch, "apply_map: vector size");
    limits.check(psi.size() / dims[slot] * map.rows(), "apply_map");

    // Move the slot last, apply, then move the produced axes back into place.
    std::vector<std::size_t> perm;
    std::vector<std::size_t> rest_dims;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (k != slot) {
            perm.push_back(k);
            rest_dims.push_back(dims[k]);
        }
    perm.push_back(slot);
    auto moved = contract_trailing(map, permute_axes(psi, dims, perm));

    std::vector<std::size_t> moved_dims(rest_dims);
    moved_dims.insert(moved_dims.end(), map_out_dims.begin(), map_out_dims.end());
    const std::size_t m = map_out_dims.size();
    std::vector<std::size_t> back;
    for (std::size_t k = 0; k < slot; ++k) back.push_back(k);
    for (std::size_t k = 0; k < m; ++k) back.push_back(rest_dims.size() + k);
    for (std::size_t k = slot; k < rest_dims.size(); ++k) back.push_back(k);

    out_dims.clear();
    for (std::size_t a : back) out_dims.push_back(moved_dims[a]);
    return permute_axes(moved, moved_dims, back);
}

double frobenius_distance(const ComplexMatrix &f, const ComplexMatrix &g) {
    check_same_shape(f, g, "frobenius_distance");
    return frobenius_distance(f.entries(), g.entries());
}

double frobenius_distance(std::span<const Complex> f, std::span<const Complex> g) {
    if (f.size() != g.size()) fail(ErrorKind::ShapeMismatch, "frobenius_distance: lengths");
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += std::norm(f[k] - g[k]);
    return std::sqrt(s);
}

ComplexMatrix controlled(const ComplexMatrix &u) {
    if (!u.is_square()) fail(ErrorKind::ShapeMismatch, "controlled: operator is not square");
    const std::size_t d = u.rows();
    ComplexMatrix c(2 * d, 2 * d);
    for (std::size_t k = 0; k < d; ++k) c(k, k) = 1.0;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) c(d + r, d + k) = u(r, k);
    return c;
}

StateVector bell_state(std::size_t d) {
    if (d == 0) fail(ErrorKind::InvalidArgument, "bell_state: dimension must be positive");
    std::vector<Complex> a(d * d);
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t e = 0; e < d; ++e) a[e * d + e] = amp;
    return StateVector(std::move(a));
}

double reflection_residual(const ComplexMatrix &m) {
    if (!m.is_square()) fail(ErrorKind::ShapeMismatch, "reflection check: matrix is not square");
    const double hermitian = frobenius_distance(m, m.adjoint());
    const double involution = frobenius_distance(m * m, ComplexMatrix::identity(m.rows()));
    return std::max(hermitian, involution);
}

bool is_reflection(const ComplexMatrix &m, Tolerance tol) {
    return reflection_residual(m) <= tol.absolute();
}

double commutator_norm(const ComplexMatrix &a, const ComplexMatrix &b) {
    check_same_shape(a, b, "commutator");
    if (!a.is_square()) fail(ErrorKind::ShapeMismatch, "commutator: matrices are not square");
    return frobenius_distance(a * b, b * a);
}

bool commutes(const ComplexMatrix &a, const ComplexMatrix &b, Tolerance tol) {
    return commutator_norm(a, b) <= tol.absolute();
}

}  // namespace ghzrig
