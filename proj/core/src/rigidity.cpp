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

#include "ghzrig/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ghzrig {

namespace {

const WireType kQubitQ{"Q", 2};

WireType player_wire(const Strategy &s, Player w) { return WireType{std::string(1, player_name(w)), s.dim(w)}; }

std::vector<Complex> on_slot(const ComplexMatrix &op, std::size_t slot, std::span<const std::size_t> dims,
                             std::span<const Complex> psi) {
    const std::array<std::size_t, 1> slots{slot};
    return apply_local(op, slots, dims, psi);
}

std::vector<Complex> on_players(const Strategy &s, std::span<const Complex> psi,
                                const std::array<const ComplexMatrix *, 3> &ops) {
    std::vector<Complex> v(psi.begin(), psi.end());
    for (std::size_t p = 0; p < 3; ++p)
        if (ops[p] != nullptr) v = on_slot(*ops[p], p, s.dims(), v);
    return v;
}

std::vector<Complex> combine(std::span<const Complex> a, double sa, std::span<const Complex> b, double sb) {
    std::vector<Complex> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = sa * a[k] + sb * b[k];
    return out;
}

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    while (exp-- > 0) r *= base;
    return r;
}

// Vector of (Theta_W (x) I) psi where the W slot sits at `slot` of `dims`.
std::vector<Complex> apply_theta(const ComplexMatrix &theta, std::size_t k, std::size_t slot,
                                 std::vector<std::size_t> &dims, std::span<const Complex> psi,
                                 const Limits &limits) {
    std::vector<std::size_t> out(2 * k, 2);
    out.push_back(dims[slot]);
    std::vector<std::size_t> next;
    auto v = apply_map(theta, slot, dims, out, psi, next, limits);
    dims = std::move(next);
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Isometries

ComplexMatrix swap_isometry(const Strategy &s, Player w, std::size_t k) {
    const std::size_t d = s.dim(w);
    const auto id_d = ComplexMatrix::identity(d);
    const auto id_2 = ComplexMatrix::identity(2);
    const auto bell_prep = kron(bell_state(2).as_column(), id_d);
    const auto cx = kron(id_2, controlled(s.x_prime(w, k)));
    const auto cz = kron(id_2, controlled(s.z_prime(w, k)));
    const auto h = kron(id_2, kron(hadamard(), id_d));
    return cx * (h * (cz * (h * (cx * bell_prep))));
}

Diagram swap_isometry_diagram(const Strategy &s, Player w, std::size_t k) {
    const WireType wire = player_wire(s, w);
    const auto cx = Box::controlled(Box::gate("X'", wire, s.x_prime(w, k)), kQubitQ);
    const auto cz = Box::controlled(Box::gate("Z'", wire, s.z_prime(w, k)), kQubitQ);
    const auto h = Box::gate("H", kQubitQ, hadamard());
    std::vector<Box> boxes{Box::bell(kQubitQ), cx, h, cz, h, cx};
    std::vector<Wire> wires{
        {{0, 1}, {1, 0}},  // Bell half -> control of the first C(X')
        {{1, 0}, {2, 0}}, {{2, 0}, {3, 0}}, {{3, 0}, {4, 0}}, {{4, 0}, {5, 0}},
        {{1, 1}, {3, 1}}, {{3, 1}, {5, 1}},
    };
    return Diagram(std::move(boxes), std::move(wires), {{1, 1}}, {{0, 0}, {5, 0}, {5, 1}});
}

ComplexMatrix chained_isometry(const Strategy &s, Player w, std::optional<std::size_t> k,
                               const Limits &limits) {
    const std::size_t upto = k.value_or(s.n());
    if (upto > s.n()) fail(ErrorKind::InvalidArgument, "chained_isometry: k exceeds N");
    ComplexMatrix theta = ComplexMatrix::identity(s.dim(w));
    for (std::size_t m = 1; m <= upto; ++m) {
        limits.check(ipow(4, m) * s.dim(w), "chained_isometry");
        theta = kron(ComplexMatrix::identity(ipow(4, m - 1)), swap_isometry(s, w, m), limits) * theta;
    }
    return theta;
}

// ---------------------------------------------------------------------------
// G basis

ComplexMatrix stabilizer_matrix(Stabilizer which) {
    const auto x = pauli_x();
    const auto z = pauli_z();
    switch (which) {
        case Stabilizer::XZZ:
            return kron(x, kron(z, z));
        case Stabilizer::ZXZ:
            return kron(z, kron(x, z));
        case Stabilizer::ZZX:
            return kron(z, kron(z, x));
    }
    fail(ErrorKind::InvalidArgument, "unknown stabilizer");
}

std::array<StateVector, 8> ghz_eigenbasis() {
    std::array<ComplexMatrix, 3> stab{stabilizer_matrix(Stabilizer::XZZ), stabilizer_matrix(Stabilizer::ZXZ),
                                      stabilizer_matrix(Stabilizer::ZZX)};
    std::array<StateVector, 8> basis;
    for (std::size_t v = 0; v < 8; ++v) {
        // The joint eigenspace projector is rank one; its largest column
        // spans it.
        ComplexMatrix proj = ComplexMatrix::identity(8);
        for (std::size_t m = 0; m < 3; ++m) {
            const double sign = ((v >> (2 - m)) & 1) ? -1.0 : 1.0;
            ComplexMatrix factor = ComplexMatrix::identity(8) + Complex(sign) * stab[m];
            factor *= 0.5;
            proj = proj * factor;
        }
        std::size_t best = 0;
        double best_norm = -1.0;
        for (std::size_t c = 0; c < 8; ++c) {
            const double nc = norm(proj.col(c));
            if (nc > best_norm + 1e-12) {
                best_norm = nc;
                best = c;
            }
        }
        auto col = proj.col(best);
        std::size_t peak = 0;
        for (std::size_t r = 0; r < 8; ++r)
            if (std::abs(col[r]) > std::abs(col[peak]) + 1e-12) peak = r;
        const Complex phase = std::conj(col[peak]) / std::abs(col[peak]);
        for (auto &z : col) z *= phase / best_norm;
        col[peak] = std::abs(col[peak]);
        basis[v] = StateVector(std::move(col));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Layout

RegisterLayout::RegisterLayout(std::size_t n, std::array<std::size_t, 3> dims) : n_(n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "layout: n must be at least 1");
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t p = 0; p < 3; ++p) registers_.push_back({"Q" + std::to_string(p * n + k), 2});
    for (std::size_t q = 1; q <= 3 * n; ++q) registers_.push_back({"Qbar" + std::to_string(q), 2});
    for (Player w : kPlayers) registers_.push_back({std::string(1, player_name(w)), dims[index_of(w)]});
}

std::vector<std::size_t> RegisterLayout::dims() const {
    std::vector<std::size_t> d;
    for (const auto &r : registers_) d.push_back(r.dim);
    return d;
}

std::size_t RegisterLayout::position(const std::string &name) const {
    for (std::size_t k = 0; k < registers_.size(); ++k)
        if (registers_[k].name == name) return k;
    fail(ErrorKind::InvalidArgument, "layout has no register '" + name + "'");
}

std::size_t RegisterLayout::q_position(std::size_t index) const {
    if (index < 1 || index > 3 * n_) fail(ErrorKind::InvalidArgument, "Q register index out of range");
    const std::size_t p = (index - 1) / n_;
    const std::size_t k = (index - 1) % n_ + 1;
    return 3 * (k - 1) + p;
}

std::size_t RegisterLayout::extracted_dim() const { return ipow(8, n_); }

std::size_t RegisterLayout::junk_dim() const {
    std::size_t j = ipow(2, 3 * n_);
    for (std::size_t k = registers_.size() - 3; k < registers_.size(); ++k) j *= registers_[k].dim;
    return j;
}

// ---------------------------------------------------------------------------
// Extraction

std::optional<double> ExtractionResult::bound_ratio() const {
    if (!(epsilon > 0.0)) return std::nullopt;
    const double nn = static_cast<double>(n);
    return residual / (nn * nn * nn * nn * std::sqrt(epsilon));
}

std::string to_string(ExtractionMethod method) { return method == ExtractionMethod::Dense ? "dense" : "reduced"; }

namespace {

// Conjugate transpose of the matrix whose columns are G_0..G_7: row v is <G_v|.
ComplexMatrix g_basis_bra() {
    const auto g = ghz_eigenbasis();
    ComplexMatrix m(8, 8);
    for (std::size_t v = 0; v < 8; ++v)
        for (std::size_t q = 0; q < 8; ++q) m(v, q) = std::conj(g[v][q]);
    return m;
}

void finish_weights(ExtractionResult &r) {
    r.g0_weight = r.weights.empty() ? 0.0 : r.weights[0];
    r.fidelity = std::min(1.0, r.g0_weight);
    double rest = 0.0;
    for (std::size_t v = 1; v < r.weights.size(); ++v) rest += r.weights[v] * r.weights[v];
    r.residual = std::min(1.0, std::sqrt(rest));
}

}  // namespace

std::vector<Complex> g_basis_coefficients(const RegisterLayout &layout, std::span<const Complex> extracted) {
    const std::size_t n = layout.n();
    std::vector<std::size_t> dims(n, 8);
    dims.push_back(layout.junk_dim());
    const auto bra = g_basis_bra();
    std::vector<Complex> c(extracted.begin(), extracted.end());
    for (std::size_t k = 0; k < n; ++k) c = on_slot(bra, k, dims, c);
    return c;
}

std::vector<Complex> basis_component(const RegisterLayout &layout, std::span<const Complex> extracted,
                                     std::size_t label) {
    if (label >= layout.extracted_dim()) fail(ErrorKind::InvalidArgument, "basis label out of range");
    const auto c = g_basis_coefficients(layout, extracted);
    const std::size_t j = layout.junk_dim();
    return std::vector<Complex>(c.begin() + static_cast<std::ptrdiff_t>(label * j),
                                c.begin() + static_cast<std::ptrdiff_t>((label + 1) * j));
}

std::vector<Complex> apply_round_stabilizer(const RegisterLayout &layout, std::span<const Complex> extracted,
                                            std::size_t round, Stabilizer which) {
    if (round < 1 || round > layout.n()) fail(ErrorKind::InvalidArgument, "round out of range");
    const std::array<std::size_t, 3> slots{3 * (round - 1), 3 * (round - 1) + 1, 3 * (round - 1) + 2};
    return apply_local(stabilizer_matrix(which), slots, layout.dims(), extracted);
}

NegationWitness negating_stabilizer(std::size_t n, std::size_t label) {
    if (label == 0 || label >= ipow(8, n)) fail(ErrorKind::InvalidArgument, "label has no negating stabilizer");
    for (std::size_t k = 1; k <= n; ++k) {
        const std::size_t v = (label / ipow(8, n - k)) % 8;
        if (v == 0) continue;
        for (std::size_t m = 0; m < 3; ++m)
            if ((v >> (2 - m)) & 1) return {k, static_cast<Stabilizer>(m)};
    }
    fail(ErrorKind::InvalidArgument, "label has no negating stabilizer");
}

double negation_residual(const ExtractionResult &result) {
    if (result.method != ExtractionMethod::Dense || result.extracted.dim() == 0) {
        fail(ErrorKind::InvalidArgument, "negation check needs a dense extraction");
    }
    const RegisterLayout layout(result.n, result.dims);
    const auto amps = result.extracted.amplitudes();
    const auto base = g_basis_coefficients(layout, amps);
    const std::size_t j = layout.junk_dim();
    double worst = 0.0;
    // One transformed copy per (round, stabilizer) witness.
    std::vector<std::vector<Complex>> flipped(3 * result.n);
    for (std::size_t label = 1; label < layout.extracted_dim(); ++label) {
        const auto [round, which] = negating_stabilizer(result.n, label);
        auto &f = flipped[3 * (round - 1) + static_cast<std::size_t>(which)];
        if (f.empty()) f = g_basis_coefficients(layout, apply_round_stabilizer(layout, amps, round, which));
        double acc = 0.0;
        for (std::size_t t = 0; t < j; ++t) acc += std::norm(f[label * j + t] + base[label * j + t]);
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

ExtractionResult extract_dense(const Strategy &s, const Limits &limits) {
    const std::size_t n = s.n();
    const RegisterLayout layout(n, s.dims());
    limits.check(layout.total_dim(), "dense extraction");

    std::vector<std::size_t> dims(s.dims().begin(), s.dims().end());
    std::vector<Complex> psi(s.state().amplitudes().begin(), s.state().amplitudes().end());
    const std::size_t block = 2 * n + 1;
    for (Player w : kPlayers) {
        const auto theta = chained_isometry(s, w, n, limits);
        psi = apply_theta(theta, n, index_of(w) * block, dims, psi, limits);
    }

    // Axes now run, per player p: Qbar_{p,1}, Q_{p,1}, ..., Qbar_{p,N}, Q_{p,N}, W_p.
    std::vector<std::size_t> perm;
    for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t p = 0; p < 3; ++p) perm.push_back(p * block + 2 * (k - 1) + 1);
    for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t k = 1; k <= n; ++k) perm.push_back(p * block + 2 * (k - 1));
    for (std::size_t p = 0; p < 3; ++p) perm.push_back(p * block + 2 * n);

    ExtractionResult r;
    r.n = n;
    r.dims = s.dims();
    r.method = ExtractionMethod::Dense;
    r.extracted = StateVector(permute_axes(psi, dims, perm));
    r.epsilon = losing_total(s);

    const auto coeff = g_basis_coefficients(layout, r.extracted.amplitudes());
    const std::size_t j = layout.junk_dim();
    r.weights.resize(layout.extracted_dim());
    for (std::size_t v = 0; v < r.weights.size(); ++v)
        r.weights[v] = norm(std::span<const Complex>(coeff).subspan(v * j, j));
    finish_weights(r);
    return r;
}

ExtractionResult extract_reduced(const Strategy &s, const Limits &limits) {
    const std::size_t n = s.n();
    const std::size_t q = ipow(2, n);
    const auto &amps = s.state().amplitudes();
    const std::size_t total = amps.size();
    limits.check(total * total, "reduced density matrix");

    // rho as a rank-6 tensor: row axes A, B, C then column axes A', B', C'.
    std::vector<Complex> rho(total * total);
    for (std::size_t r = 0; r < total; ++r)
        for (std::size_t c = 0; c < total; ++c) rho[r * total + c] = amps[r] * std::conj(amps[c]);
    std::vector<std::size_t> dims{s.dims()[0], s.dims()[1], s.dims()[2], s.dims()[0], s.dims()[1], s.dims()[2]};

    for (Player w : kPlayers) {
        const std::size_t p = index_of(w);
        const std::size_t d = s.dim(w);
        const auto theta = chained_isometry(s, w, n, limits);
        // Output index of theta splits as (Qbar_1 Q_1 ... Qbar_N Q_N, W).
        // Kernel K[(x, x'), (a, a')] = sum_junk theta[(x, junk), a] conj(theta[(x', junk), a']).
        std::vector<std::size_t> out_dims(2 * n, 2);
        out_dims.push_back(d);
        std::vector<std::size_t> perm;  // extracted qubits first, then junk
        for (std::size_t k = 0; k < n; ++k) perm.push_back(2 * k + 1);
        for (std::size_t k = 0; k < n; ++k) perm.push_back(2 * k);
        perm.push_back(2 * n);
        const std::size_t junk = theta.rows() / q;
        ComplexMatrix split(q * junk, d);
        for (std::size_t a = 0; a < d; ++a) {
            const auto col = permute_axes(theta.col(a), out_dims, perm);
            for (std::size_t r = 0; r < col.size(); ++r) split(r, a) = col[r];
        }
        ComplexMatrix kernel(q * q, d * d);
        for (std::size_t x = 0; x < q; ++x)
            for (std::size_t x2 = 0; x2 < q; ++x2)
                for (std::size_t a = 0; a < d; ++a)
                    for (std::size_t a2 = 0; a2 < d; ++a2) {
                        Complex acc{};
                        for (std::size_t t = 0; t < junk; ++t)
                            acc += split(x * junk + t, a) * std::conj(split(x2 * junk + t, a2));
                        kernel(x * q + x2, a * d + a2) = acc;
                    }

        // Move this player's row and column axes last, contract, move back.
        std::vector<std::size_t> order;
        for (std::size_t ax = 0; ax < 6; ++ax)
            if (ax != p && ax != p + 3) order.push_back(ax);
        order.push_back(p);
        order.push_back(p + 3);
        auto moved = contract_trailing(kernel, permute_axes(rho, dims, order));
        std::vector<std::size_t> moved_dims;
        for (std::size_t k = 0; k < 4; ++k) moved_dims.push_back(dims[order[k]]);
        moved_dims.push_back(q);
        moved_dims.push_back(q);
        std::vector<std::size_t> back(6);
        for (std::size_t k = 0; k < 6; ++k) back[order[k]] = k;
        rho = permute_axes(moved, moved_dims, back);
        dims[p] = q;
        dims[p + 3] = q;
    }

    // Split each player's block into qubits and regroup rows and columns
    // round-major: (A_1 B_1 C_1) (A_2 B_2 C_2) ...
    std::vector<std::size_t> qubit_dims(6 * n, 2);
    std::vector<std::size_t> perm;
    for (std::size_t side = 0; side < 2; ++side)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t p = 0; p < 3; ++p) perm.push_back(side * 3 * n + p * n + k);
    rho = permute_axes(rho, qubit_dims, perm);

    const auto bra = g_basis_bra();
    ComplexMatrix ket_conj(8, 8);  // applied on column indices: conj(<G_v|q>)
    for (std::size_t v = 0; v < 8; ++v)
        for (std::size_t x = 0; x < 8; ++x) ket_conj(v, x) = std::conj(bra(v, x));
    std::vector<std::size_t> round_dims(2 * n, 8);
    for (std::size_t k = 0; k < n; ++k) {
        rho = on_slot(bra, k, round_dims, rho);
        rho = on_slot(ket_conj, n + k, round_dims, rho);
    }

    ExtractionResult r;
    r.n = n;
    r.dims = s.dims();
    r.method = ExtractionMethod::Reduced;
    r.epsilon = losing_total(s);
    const std::size_t e = ipow(8, n);
    r.weights.resize(e);
    for (std::size_t v = 0; v < e; ++v) r.weights[v] = std::sqrt(std::max(0.0, rho[v * e + v].real()));
    finish_weights(r);
    return r;
}

ExtractionResult extract(const Strategy &s, const Limits &limits) {
    const RegisterLayout layout(s.n(), s.dims());
    if (layout.total_dim() <= limits.max_dim) return extract_dense(s, limits);
    return extract_reduced(s, limits);
}

// ---------------------------------------------------------------------------
// Relation checkers

std::vector<KeyIneqEntry> check_keyineqs(const Strategy &s) {
    // Full-operator route, independent of losing_probability's local one.
    const auto &psi = s.state().amplitudes();
    std::vector<KeyIneqEntry> out;
    for (const auto &[input, prob] : enumerate_inputs(s.n())) {
        (void)prob;
        const auto op = kron(kron(s.observable(input, Player::A), s.observable(input, Player::B)),
                             s.observable(input, Player::C));
        const bool any_one = input.bit(Player::A) | input.bit(Player::B) | input.bit(Player::C);
        const auto v = op * psi;
        const auto diff = combine(psi, 1.0, v, any_one ? -1.0 : 1.0);
        out.push_back({input, norm(diff), losing_probability(s, input)});
    }
    return out;
}

AnticommuteCheck check_anticommute(const Strategy &s, std::size_t i, Player w) {
    const auto &psi = s.state().amplitudes();
    const std::size_t p0 = index_of(w);
    const auto &x0 = s.x_prime(w, i);
    const auto &z0 = s.z_prime(w, i);
    const auto zx = on_slot(z0, p0, s.dims(), on_slot(x0, p0, s.dims(), psi));
    const auto xz = on_slot(x0, p0, s.dims(), on_slot(z0, p0, s.dims(), psi));

    AnticommuteCheck out;
    out.residual = norm(combine(zx, 1.0, xz, 1.0));

    // Roles in cyclic order starting at w; the four stabilizer lines are
    // invariant under that rotation.
    const Player p1 = next_player(w, 1);
    const Player p2 = next_player(w, 2);
    auto line = [&](bool x_at_0, bool x_at_1, bool x_at_2, double sign) {
        std::array<const ComplexMatrix *, 3> ops{};
        ops[index_of(w)] = x_at_0 ? &s.x_prime(w, i) : &s.z_prime(w, i);
        ops[index_of(p1)] = x_at_1 ? &s.x_prime(p1, i) : &s.z_prime(p1, i);
        ops[index_of(p2)] = x_at_2 ? &s.x_prime(p2, i) : &s.z_prime(p2, i);
        return norm(combine(psi, 1.0, on_players(s, psi, ops), sign));
    };
    out.chain_bound = line(true, true, true, 1.0) + line(false, false, true, -1.0) +
                      line(true, false, false, -1.0) + line(false, true, false, -1.0);
    return out;
}

double check_commute(const Strategy &s, std::size_t i, std::size_t j, int b, int c, Player w) {
    if (i == j) fail(ErrorKind::InvalidArgument, "check_commute: rounds must be distinct");
    const auto &psi = s.state().amplitudes();
    const std::size_t p = index_of(w);
    const auto &ri = s.single(w, i, b);
    const auto &rj = s.single(w, j, c);
    const auto ji = on_slot(rj, p, s.dims(), on_slot(ri, p, s.dims(), psi));
    const auto ij = on_slot(ri, p, s.dims(), on_slot(rj, p, s.dims(), psi));
    return frobenius_distance(ji, ij);
}

std::string to_string(PushOp op) {
    switch (op) {
        case PushOp::X:
            return "X";
        case PushOp::Z:
            return "Z";
        case PushOp::HadamardOnQ:
            return "H_Q";
        case PushOp::ControlledX:
            return "CX";
        case PushOp::ControlledZ:
            return "CZ";
    }
    return "?";
}

PushCheck check_push(const Strategy &s, Player w, PushOp op, std::size_t k) {
    const auto &psi = s.state().amplitudes();
    const Player p1 = next_player(w, 1);
    const Player p2 = next_player(w, 2);
    const std::string n1(1, player_name(p1)), n2(1, player_name(p2)), kk = std::to_string(k);
    const bool x_like = op == PushOp::X || op == PushOp::ControlledX;

    const auto &own = x_like ? s.x_prime(w, k) : s.z_prime(w, k);
    // Partner acting on (p1, p2) in that order.
    ComplexMatrix partner = x_like ? kron(s.x_prime(p1, k), s.x_prime(p2, k)) : kron(s.z_prime(p1, k), s.x_prime(p2, k));
    if (x_like) partner = -partner;
    const std::string partner_name = x_like ? "-X'_" + n1 + "," + kk + " (x) X'_" + n2 + "," + kk
                                            : "Z'_" + n1 + "," + kk + " (x) X'_" + n2 + "," + kk;

    PushCheck out;
    if (op == PushOp::X || op == PushOp::Z) {
        const auto lhs = on_slot(own, index_of(w), s.dims(), psi);
        const std::array<std::size_t, 2> slots{index_of(p1), index_of(p2)};
        const auto rhs = apply_local(partner, slots, s.dims(), psi);
        out.residual = frobenius_distance(lhs, rhs);
        out.partner = partner_name;
        return out;
    }

    // Phi+ on (Qbar, Q) in front of L.
    const std::vector<std::size_t> dims{2, 2, s.dims()[0], s.dims()[1], s.dims()[2]};
    std::vector<Complex> z;
    z.reserve(4 * psi.size());
    const StateVector phi = bell_state(2);
    for (const Complex &b : phi.amplitudes())
        for (const Complex &a : psi) z.push_back(b * a);

    if (op == PushOp::HadamardOnQ) {
        const auto lhs = on_slot(hadamard(), 1, dims, z);
        const auto rhs = on_slot(hadamard(), 0, dims, z);
        out.residual = frobenius_distance(lhs, rhs);
        out.partner = "H on Qbar";
        return out;
    }
    const std::array<std::size_t, 2> own_slots{1, 2 + index_of(w)};
    const std::array<std::size_t, 3> partner_slots{0, 2 + index_of(p1), 2 + index_of(p2)};
    const auto lhs = apply_local(controlled(own), own_slots, dims, z);
    const auto rhs = apply_local(controlled(partner), partner_slots, dims, z);
    out.residual = frobenius_distance(lhs, rhs);
    out.partner = "C(" + partner_name + ") controlled on Qbar";
    return out;
}

PushChainCheck push_chain(std::span<const Complex> z, std::size_t dim_r, std::size_t dim_s,
                          std::span<const ComplexMatrix> us, std::span<const ComplexMatrix> partners,
                          const ComplexMatrix &v, const ComplexMatrix &w) {
    if (us.size() != partners.size()) fail(ErrorKind::InvalidArgument, "push_chain: one partner per operator");
    const std::array<std::size_t, 2> dims{dim_r, dim_s};
    auto on_r = [&](const ComplexMatrix &op, std::span<const Complex> x) { return on_slot(op, 0, dims, x); };
    auto on_s = [&](const ComplexMatrix &op, std::span<const Complex> x) { return on_slot(op, 1, dims, x); };

    PushChainCheck out;
    for (std::size_t m = 0; m < us.size(); ++m)
        out.push_errors.push_back(frobenius_distance(on_r(us[m], z), on_s(partners[m], z)));
    out.delta = frobenius_distance(on_r(v, z), on_r(w, z));

    // U_1 ... U_k z (U_k acts first) and its pushed form V_k ... V_1 z.
    std::vector<Complex> chain(z.begin(), z.end());
    for (std::size_t m = us.size(); m-- > 0;) chain = on_r(us[m], chain);
    std::vector<Complex> pushed(z.begin(), z.end());
    for (std::size_t m = 0; m < partners.size(); ++m) pushed = on_s(partners[m], pushed);

    const auto s0 = on_r(v, chain);
    const auto s1 = on_r(v, pushed);
    const auto s2 = on_r(w, pushed);
    const auto s3 = on_r(w, chain);
    out.stage_distances = {frobenius_distance(s0, s1), frobenius_distance(s1, s2), frobenius_distance(s2, s3)};
    out.residual = frobenius_distance(s0, s3);
    double sum = 0.0;
    for (double e : out.push_errors) sum += e;
    out.bound = 2.0 * sum + out.delta;
    return out;
}

namespace {

// ||(P on Q at q_slot)(iso (x) I)L - (iso (x) I)(P' on W)L|| for the given
// isometry on player w with k rounds of output registers.
double pauli_residual(const Strategy &s, Player w, const ComplexMatrix &iso, std::size_t rounds,
                      std::size_t k, const ComplexMatrix &pauli, const ComplexMatrix &prime, const Limits &limits) {
    const auto &psi = s.state().amplitudes();
    const std::size_t slot = index_of(w);
    std::vector<std::size_t> dims(s.dims().begin(), s.dims().end());
    std::vector<std::size_t> dims2 = dims;
    const auto mapped = apply_theta(iso, rounds, slot, dims, psi, limits);
    const auto lhs = on_slot(pauli, slot + 2 * (k - 1) + 1, dims, mapped);
    const auto rhs = apply_theta(iso, rounds, slot, dims2, on_slot(prime, slot, s.dims(), psi), limits);
    return frobenius_distance(lhs, rhs);
}

}  // namespace

PauliCheck check_correct_pauli(const Strategy &s, Player w, std::size_t k) {
    const auto psi_k = swap_isometry(s, w, k);
    return {pauli_residual(s, w, psi_k, 1, 1, pauli_x(), s.x_prime(w, k), {}),
            pauli_residual(s, w, psi_k, 1, 1, pauli_z(), s.z_prime(w, k), {})};
}

PauliCheck check_multi_pauli(const Strategy &s, Player w, std::size_t k, const Limits &limits) {
    const auto theta = chained_isometry(s, w, s.n(), limits);
    return {pauli_residual(s, w, theta, s.n(), k, pauli_x(), s.x_prime(w, k), limits),
            pauli_residual(s, w, theta, s.n(), k, pauli_z(), s.z_prime(w, k), limits)};
}

PauliCheck multi_pauli_budget(const Strategy &s, Player w, std::size_t k, const Limits &limits) {
    if (k < 1 || k > s.n()) fail(ErrorKind::InvalidArgument, "round out of range");
    const auto &psi = s.state().amplitudes();
    const std::size_t slot = index_of(w);
    const auto before = chained_isometry(s, w, k - 1, limits);
    const auto psi_k = swap_isometry(s, w, k);

    auto budget = [&](const ComplexMatrix &pauli, const ComplexMatrix &prime) {
        std::vector<std::size_t> dims(s.dims().begin(), s.dims().end());
        const auto phi = apply_theta(before, k - 1, slot, dims, psi, limits);
        const std::size_t w_slot = slot + 2 * (k - 1);

        // Swap step for round k on Theta_{k-1} L.
        std::vector<std::size_t> out_dims{2, 2, s.dim(w)};
        std::vector<std::size_t> d1, d2;
        const auto swapped = apply_map(psi_k, w_slot, dims, out_dims, phi, d1, limits);
        const auto lhs = on_slot(pauli, w_slot + 1, d1, swapped);
        const auto rhs = apply_map(psi_k, w_slot, dims, out_dims, on_slot(prime, w_slot, dims, phi), d2, limits);
        const double r1 = frobenius_distance(lhs, rhs);

        // X'_k (Z'_k) commuted through Theta_{k-1}.
        std::vector<std::size_t> dims3(s.dims().begin(), s.dims().end());
        const auto pulled = apply_theta(before, k - 1, slot, dims3, on_slot(prime, slot, s.dims(), psi), limits);
        const double r2 = frobenius_distance(on_slot(prime, w_slot, dims, phi), pulled);
        return r1 + r2;
    };
    return {budget(pauli_x(), s.x_prime(w, k)), budget(pauli_z(), s.z_prime(w, k))};
}

double RelationReport::max_keyineq() const {
    double m = 0.0;
    for (const auto &e : keyineqs) m = std::max(m, e.residual);
    return m;
}

double RelationReport::max_of(const std::vector<RelationEntry> &entries) {
    double m = 0.0;
    for (const auto &e : entries) m = std::max(m, e.residual);
    return m;
}

std::string error_exponent(const std::string &relation) {
    if (relation == "multi_pauli") return "N^3 sqrt(eps)";
    if (relation == "extraction") return "N^4 sqrt(eps)";
    return "N sqrt(eps)";
}

RelationReport check_relations(const Strategy &s, const Limits &limits) {
    RelationReport rep;
    const std::size_t n = s.n();
    rep.n = n;
    rep.epsilon = losing_total(s);
    rep.keyineqs = check_keyineqs(s);
    for (Player w : kPlayers)
        for (std::size_t i = 1; i <= n; ++i) {
            const auto ac = check_anticommute(s, i, w);
            rep.anticommute.push_back({"anticommute", w, i, "", ac.residual});
            for (std::size_t j = 1; j <= n; ++j) {
                if (j == i) continue;
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 2; ++c)
                        rep.commute.push_back({"commute", w, i,
                                               "j=" + std::to_string(j) + " b=" + std::to_string(b) +
                                                   " c=" + std::to_string(c),
                                               check_commute(s, i, j, b, c, w)});
            }
            for (PushOp op : {PushOp::X, PushOp::Z, PushOp::HadamardOnQ, PushOp::ControlledX, PushOp::ControlledZ}) {
                const auto pc = check_push(s, w, op, i);
                rep.push.push_back({"push", w, i, to_string(op) + " -> " + pc.partner, pc.residual});
            }
            const auto cp = check_correct_pauli(s, w, i);
            rep.correct_pauli.push_back({"correct_pauli", w, i, "X", cp.x});
            rep.correct_pauli.push_back({"correct_pauli", w, i, "Z", cp.z});
            const auto mp = check_multi_pauli(s, w, i, limits);
            rep.multi_pauli.push_back({"multi_pauli", w, i, "X", mp.x});
            rep.multi_pauli.push_back({"multi_pauli", w, i, "Z", mp.z});
        }
    return rep;
}

}  // namespace ghzrig
