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

#include "oracles.hpp"

#include <cmath>

namespace oracle {

using namespace ghzrig;

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

namespace {

std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t> &dims) {
    std::vector<std::size_t> d(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        d[k] = index % dims[k];
        index /= dims[k];
    }
    return d;
}

}  // namespace

ComplexMatrix embed(const ComplexMatrix &op, const std::vector<std::size_t> &slots,
                    const std::vector<std::size_t> &dims) {
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    ComplexMatrix out(total, total);
    for (std::size_t r = 0; r < total; ++r)
        for (std::size_t c = 0; c < total; ++c) {
            const auto dr = digits(r, dims), dc = digits(c, dims);
            bool spectators_match = true;
            for (std::size_t k = 0; k < dims.size(); ++k) {
                bool acted = false;
                for (auto s : slots) acted |= s == k;
                if (!acted && dr[k] != dc[k]) spectators_match = false;
            }
            if (!spectators_match) continue;
            std::size_t sr = 0, sc = 0;
            for (auto s : slots) {
                sr = sr * dims[s] + dr[s];
                sc = sc * dims[s] + dc[s];
            }
            out(r, c) = op(sr, sc);
        }
    return out;
}

std::vector<Complex> g_state() {
    std::vector<Complex> g(8);
    const double a = 1.0 / (2.0 * std::sqrt(2.0));
    for (std::size_t x = 0; x < 8; ++x) {
        const int weight = int(x & 1) + int((x >> 1) & 1) + int((x >> 2) & 1);
        g[x] = weight <= 1 ? a : -a;
    }
    return g;
}

std::vector<Complex> g_label_state(std::size_t v) {
    auto g = g_state();
    for (std::size_t x = 0; x < 8; ++x) {
        // Z on qubit m contributes (-1)^{x_m} when s_m = 1.
        const std::size_t overlap = x & v;
        const int parity = int(overlap & 1) ^ int((overlap >> 1) & 1) ^ int((overlap >> 2) & 1);
        if (parity) g[x] = -g[x];
    }
    return g;
}

double classical_value_n1() {
    const auto inputs = enumerate_inputs(1);
    double best = 0.0;
    for (int fa = 0; fa < 4; ++fa)
        for (int fb = 0; fb < 4; ++fb)
            for (int fc = 0; fc < 4; ++fc) {
                const std::array<int, 3> f{fa, fb, fc};
                double win = 0.0;
                for (const auto &[in, p] : inputs) {
                    OutputCombo out;
                    for (std::size_t q = 0; q < 3; ++q) {
                        const int x = *in.f[q].at(1);
                        const int bit = (f[q] >> x) & 1;
                        out.g[q].push_back({1, bit ? -1 : 1});
                    }
                    if (win_predicate(in, out)) win += p;
                }
                best = std::max(best, win);
            }
    return best;
}

double losing_probability(const Strategy &s, const InputCombo &input) {
    std::array<std::array<ComplexMatrix, 2>, 3> proj;
    for (Player p : kPlayers) {
        const auto &r = s.observable(input, p);
        const auto id = ComplexMatrix::identity(r.rows());
        proj[index_of(p)][0] = Complex(0.5) * (id + r);
        proj[index_of(p)][1] = Complex(0.5) * (id - r);
    }
    const auto &psi = s.state().amplitudes();
    double lose = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                OutputCombo out;
                out.g[0].push_back({input.i, a ? -1 : 1});
                out.g[1].push_back({input.i, b ? -1 : 1});
                out.g[2].push_back({input.i, c ? -1 : 1});
                if (input.j) {
                    // The second round's value never affects the predicate.
                    const auto w = index_of(*input.double_queried());
                    out.g[w].push_back({*input.j, 1});
                }
                if (win_predicate(input, out)) continue;
                const auto m = oracle::kron(oracle::kron(proj[0][a], proj[1][b]), proj[2][c]);
                const auto v = m * psi;
                double n2 = 0.0;
                for (const auto &z : v) n2 += std::norm(z);
                lose += n2;
            }
    return lose;
}

double operator_norm(const ComplexMatrix &m) {
    const auto g = m.adjoint() * m;
    std::vector<Complex> v(g.cols(), Complex(1.0));
    double lambda = 0.0;
    for (int it = 0; it < 2000; ++it) {
        auto w = g * v;
        double n = 0.0;
        for (const auto &z : w) n += std::norm(z);
        n = std::sqrt(n);
        if (n == 0.0) return 0.0;
        for (auto &z : w) z /= n;
        v = std::move(w);
        lambda = n;
    }
    return std::sqrt(lambda);
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng &rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    return m;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

double max_abs_diff(const std::vector<Complex> &a, const std::vector<Complex> &b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

}  // namespace oracle
