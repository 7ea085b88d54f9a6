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

#include "ghzrig/strategy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace ghzrig {

namespace {

std::string where_single(Player w, std::size_t i, int b) {
    return std::string(1, player_name(w)) + " i=" + std::to_string(i) + " b=" + std::to_string(b);
}

std::string where_pair(Player w, std::size_t i, int b, std::size_t j, int c) {
    return where_single(w, i, b) + " j=" + std::to_string(j) + " c=" + std::to_string(c);
}

std::vector<Complex> apply_player_ops(const Strategy &s, std::span<const Complex> psi,
                                      const std::array<const ComplexMatrix *, 3> &ops) {
    const auto &dims = s.dims();
    std::vector<Complex> v(psi.begin(), psi.end());
    for (std::size_t p = 0; p < 3; ++p) {
        if (ops[p] == nullptr) continue;
        const std::array<std::size_t, 1> slot{p};
        v = apply_local(*ops[p], slot, dims, v);
    }
    return v;
}

double gaussian(Rng &rng) {
    // Box-Muller; 1 - u keeps the logarithm finite.
    const double u = 1.0 - rng.uniform();
    const double v = rng.uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace

// ---------------------------------------------------------------------------
// Strategy

Strategy::Strategy(std::size_t n, std::array<std::size_t, 3> dims, const Limits &limits)
    : n_(n), dims_(dims) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "strategy: n must be at least 1");
    for (std::size_t d : dims)
        if (d == 0) fail(ErrorKind::InvalidArgument, "strategy: player dimension must be positive");
    const std::size_t total = dims[0] * dims[1] * dims[2];
    limits.check(total, "strategy state");
    state_ = StateVector::basis(total, 0);
    singles_.resize(3 * n * 2);
    pairs_.resize(3 * n * 2 * n * 2);
    for (Player w : kPlayers) {
        const auto id = ComplexMatrix::identity(dim(w));
        for (std::size_t i = 1; i <= n; ++i)
            for (int b = 0; b < 2; ++b) {
                singles_[single_index(w, i, b)] = id;
                for (std::size_t j = 1; j <= n; ++j) {
                    if (j == i) continue;
                    for (int c = 0; c < 2; ++c) pairs_[pair_index(w, i, b, j, c)] = id;
                }
            }
    }
}

std::size_t Strategy::single_index(Player w, std::size_t i, int b) const {
    if (i < 1 || i > n_) fail(ErrorKind::InvalidArgument, "round " + std::to_string(i) + " out of range");
    if (b != 0 && b != 1) fail(ErrorKind::InvalidArgument, "input bit must be 0 or 1");
    return (index_of(w) * n_ + (i - 1)) * 2 + static_cast<std::size_t>(b);
}

std::size_t Strategy::pair_index(Player w, std::size_t i, int b, std::size_t j, int c) const {
    if (j < 1 || j > n_) fail(ErrorKind::InvalidArgument, "round " + std::to_string(j) + " out of range");
    if (i == j) fail(ErrorKind::InvalidArgument, "pair observables need distinct rounds");
    if (c != 0 && c != 1) fail(ErrorKind::InvalidArgument, "input bit must be 0 or 1");
    return (single_index(w, i, b) * n_ + (j - 1)) * 2 + static_cast<std::size_t>(c);
}

void Strategy::check_matrix(Player w, const ComplexMatrix &m) const {
    if (m.rows() != dim(w) || m.cols() != dim(w)) {
        fail(ErrorKind::ShapeMismatch, std::string("observable for player ") + player_name(w) + " must be " +
                                           std::to_string(dim(w)) + "x" + std::to_string(dim(w)));
    }
}

const ComplexMatrix &Strategy::single(Player w, std::size_t i, int b) const {
    return singles_[single_index(w, i, b)];
}

const ComplexMatrix &Strategy::pair(Player w, std::size_t i, int b, std::size_t j, int c) const {
    return pairs_[pair_index(w, i, b, j, c)];
}

void Strategy::set_state(StateVector state) {
    if (state.dim() != dims_[0] * dims_[1] * dims_[2]) {
        fail(ErrorKind::ShapeMismatch, "state dimension does not match d_A d_B d_C");
    }
    state_ = std::move(state);
}

void Strategy::set_single(Player w, std::size_t i, int b, ComplexMatrix m) {
    check_matrix(w, m);
    singles_[single_index(w, i, b)] = std::move(m);
}

void Strategy::set_pair(Player w, std::size_t i, int b, std::size_t j, int c, ComplexMatrix m) {
    check_matrix(w, m);
    pairs_[pair_index(w, i, b, j, c)] = std::move(m);
}

const ComplexMatrix &Strategy::observable(const InputCombo &input, Player p) const {
    if (input.n != n_) fail(ErrorKind::InvalidArgument, "input combo is for a different round count");
    const auto &e = input.f[index_of(p)].entries;
    if (e.size() == 1) return single(p, e[0].round, e[0].bit);
    return pair(p, e[0].round, e[0].bit, e[1].round, e[1].bit);
}

// ---------------------------------------------------------------------------
// Validation and scoring

ValidationReport validate(const Strategy &s, Tolerance tol) {
    ValidationReport report;
    auto add = [&](std::string check, std::string where, double residual) {
        report.ok = false;
        report.violations.push_back({std::move(check), std::move(where), residual});
    };
    const double state_err = std::abs(s.state().norm() * s.state().norm() - 1.0);
    if (state_err > 1e-10) add("state_normalized", "L", state_err);

    const std::size_t n = s.n();
    for (Player w : kPlayers)
        for (std::size_t i = 1; i <= n; ++i)
            for (int b = 0; b < 2; ++b) {
                const double r = reflection_residual(s.single(w, i, b));
                if (r > tol.absolute()) add("reflection", where_single(w, i, b), r);
                for (std::size_t j = 1; j <= n; ++j) {
                    if (j == i) continue;
                    for (int c = 0; c < 2; ++c) {
                        const auto &m = s.pair(w, i, b, j, c);
                        const double rp = reflection_residual(m);
                        if (rp > tol.absolute()) add("reflection", where_pair(w, i, b, j, c), rp);
                        // Each unordered pair is checked once.
                        if (i < j) {
                            const double rc = commutator_norm(m, s.pair(w, j, c, i, b));
                            if (rc > tol.absolute()) add("pair_commutes", where_pair(w, i, b, j, c), rc);
                        }
                    }
                }
            }
    return report;
}

double losing_probability(const Strategy &s, const InputCombo &input) {
    input.validate();
    const auto &psi = s.state().amplitudes();
    const auto v = apply_player_ops(
        s, psi, {&s.observable(input, Player::A), &s.observable(input, Player::B), &s.observable(input, Player::C)});
    const bool any_one = input.bit(Player::A) | input.bit(Player::B) | input.bit(Player::C);
    const double sign = any_one ? -1.0 : 1.0;
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) acc += std::norm(v[k] + sign * psi[k]);
    return std::clamp(acc / 4.0, 0.0, 1.0);
}

double losing_total(const Strategy &s) {
    double eps = 0.0;
    for (const auto &[input, prob] : enumerate_inputs(s.n())) eps += prob * losing_probability(s, input);
    return std::clamp(eps, 0.0, 1.0);
}

double winning_probability(const Strategy &s) { return 1.0 - losing_total(s); }

// ---------------------------------------------------------------------------
// Symmetry and noise

PlayerPermutation inverse(const PlayerPermutation &sigma) {
    PlayerPermutation inv{};
    std::array<bool, 3> seen{};
    for (std::size_t p = 0; p < 3; ++p) {
        if (sigma[p] > 2 || seen[sigma[p]]) fail(ErrorKind::InvalidArgument, "not a permutation of 3 players");
        seen[sigma[p]] = true;
        inv[sigma[p]] = p;
    }
    return inv;
}

Strategy permute_players(const Strategy &s, const PlayerPermutation &sigma) {
    const auto inv = inverse(sigma);
    std::array<std::size_t, 3> dims{};
    for (std::size_t p = 0; p < 3; ++p) dims[sigma[p]] = s.dims()[p];
    Strategy out(s.n(), dims);
    // New axis sigma(p) is old axis p.
    out.set_state(StateVector(permute_axes(s.state().amplitudes(), s.dims(), inv)));
    const std::size_t n = s.n();
    for (Player w : kPlayers) {
        const auto to = static_cast<Player>(sigma[index_of(w)]);
        for (std::size_t i = 1; i <= n; ++i)
            for (int b = 0; b < 2; ++b) {
                out.set_single(to, i, b, s.single(w, i, b));
                for (std::size_t j = 1; j <= n; ++j) {
                    if (j == i) continue;
                    for (int c = 0; c < 2; ++c) out.set_pair(to, i, b, j, c, s.pair(w, i, b, j, c));
                }
            }
    }
    return out;
}

std::string to_string(NoiseKind kind) { return kind == NoiseKind::Rotation ? "rotation" : "state-mix"; }

NoiseKind noise_kind_from_string(const std::string &name) {
    if (name == "rotation") return NoiseKind::Rotation;
    if (name == "state-mix") return NoiseKind::StateMix;
    fail(ErrorKind::InvalidArgument, "unknown noise kind '" + name + "'");
}

ComplexMatrix bisector_rotation(double theta) {
    const auto h = hadamard();
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return c * ComplexMatrix::identity(2) + Complex(0.0, -s) * h;
}

Strategy perturb(const Strategy &s, const NoiseSpec &spec) {
    if (!(spec.theta >= 0.0) || !std::isfinite(spec.theta)) {
        fail(ErrorKind::InvalidArgument, "noise theta must be a finite nonnegative number");
    }
    Strategy out = s;
    if (spec.kind == NoiseKind::StateMix) {
        if (spec.theta > 1.0) fail(ErrorKind::InvalidArgument, "state-mix weight must lie in [0, 1]");
        const auto &psi = s.state().amplitudes();
        const double u = 1.0 / std::sqrt(static_cast<double>(psi.size()));
        std::vector<Complex> mixed(psi.size());
        for (std::size_t k = 0; k < psi.size(); ++k) mixed[k] = (1.0 - spec.theta) * psi[k] + spec.theta * u;
        out.set_state(StateVector(std::move(mixed)).normalized());
        return out;
    }

    const std::size_t d = s.dim(Player::A);
    if (!std::has_single_bit(d)) fail(ErrorKind::InvalidArgument, "rotation noise needs d_A to be a power of two");
    ComplexMatrix u = ComplexMatrix::identity(1);
    const auto v = bisector_rotation(spec.theta);
    for (std::size_t q = 1; q < d; q *= 2) u = kron(u, v);
    const auto ud = u.adjoint();
    const std::size_t n = s.n();
    for (std::size_t i = 1; i <= n; ++i)
        for (int b = 0; b < 2; ++b) {
            out.set_single(Player::A, i, b, u * s.single(Player::A, i, b) * ud);
            for (std::size_t j = 1; j <= n; ++j) {
                if (j == i) continue;
                for (int c = 0; c < 2; ++c)
                    out.set_pair(Player::A, i, b, j, c, u * s.pair(Player::A, i, b, j, c) * ud);
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Monte Carlo play

namespace {

struct Outcome {
    double probability;
    OutputCombo output;
};

// Spectral projectors (I + s R)/2 of a reflection.
ComplexMatrix projector(const ComplexMatrix &r, int sign) {
    ComplexMatrix p = ComplexMatrix::identity(r.rows()) + Complex(sign) * r;
    p *= 0.5;
    return p;
}

// Joint outcome distribution of all three players' measurements for one
// query. The double-queried player measures a commuting pair, whose joint
// eigenspaces are the products of the two spectral projectors.
std::vector<Outcome> outcome_distribution(const Strategy &s, const InputCombo &input) {
    struct Branch {
        std::vector<Complex> psi;
        OutputCombo output;
    };
    std::vector<Branch> branches{{std::vector<Complex>(s.state().amplitudes().begin(), s.state().amplitudes().end()), {}}};
    for (Player p : kPlayers) {
        const auto &e = input.f[index_of(p)].entries;
        std::vector<std::pair<ComplexMatrix, std::vector<RoundValue>>> effects;
        if (e.size() == 1) {
            const auto &r = s.single(p, e[0].round, e[0].bit);
            for (int sign : {1, -1}) effects.push_back({projector(r, sign), {{e[0].round, sign}}});
        } else {
            const auto &ri = s.pair(p, e[0].round, e[0].bit, e[1].round, e[1].bit);
            const auto &rj = s.pair(p, e[1].round, e[1].bit, e[0].round, e[0].bit);
            for (int si : {1, -1})
                for (int sj : {1, -1})
                    effects.push_back({projector(ri, si) * projector(rj, sj), {{e[0].round, si}, {e[1].round, sj}}});
        }
        std::vector<Branch> next;
        const std::array<std::size_t, 1> slot{index_of(p)};
        for (const Branch &br : branches)
            for (const auto &[proj, values] : effects) {
                Branch nb{apply_local(proj, slot, s.dims(), br.psi), br.output};
                nb.output.g[index_of(p)] = values;
                next.push_back(std::move(nb));
            }
        branches = std::move(next);
    }
    std::vector<Outcome> dist;
    double total = 0.0;
    for (const Branch &br : branches) {
        const double pr = norm(br.psi) * norm(br.psi);
        total += pr;
        dist.push_back({pr, br.output});
    }
    if (std::abs(total - 1.0) > 1e-8) {
        fail(ErrorKind::Numeric, "measurement probabilities sum to " + std::to_string(total) +
                                     "; observables are not commuting reflections");
    }
    return dist;
}

std::uint64_t combo_key(const InputCombo &c) {
    std::uint64_t key = static_cast<std::uint64_t>(c.r);
    key = key * 64 + c.i;
    key = key * 64 + c.j.value_or(0);
    for (std::size_t p = 0; p < 3; ++p)
        for (const RoundBit &e : c.f[p].entries) key = key * 2 + static_cast<std::uint64_t>(e.bit);
    return key;
}

}  // namespace

SimulationResult simulate(const Strategy &s, std::size_t rounds, std::uint64_t seed) {
    std::map<std::uint64_t, std::vector<Outcome>> cache;
    SimulationResult result;
    result.rounds = rounds;
    const std::size_t shards = (rounds + kSimulationShard - 1) / kSimulationShard;
    for (std::size_t shard = 0; shard < shards; ++shard) {
        Rng rng(derive_seed(seed, shard));
        const std::size_t count = std::min(kSimulationShard, rounds - shard * kSimulationShard);
        for (std::size_t k = 0; k < count; ++k) {
            const InputCombo input = sample_input(s.n(), rng);
            const std::uint64_t key = combo_key(input);
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, outcome_distribution(s, input)).first;
            const auto &dist = it->second;
            double u = rng.uniform();
            std::size_t pick = dist.size() - 1;
            for (std::size_t o = 0; o < dist.size(); ++o) {
                if (u < dist[o].probability) {
                    pick = o;
                    break;
                }
                u -= dist[o].probability;
            }
            if (win_predicate(input, dist[pick].output)) ++result.wins;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Random instances

ComplexMatrix random_unitary(std::size_t d, Rng &rng) {
    // Gram-Schmidt on a complex Gaussian matrix, column by column.
    std::vector<std::vector<Complex>> cols(d, std::vector<Complex>(d));
    for (auto &col : cols)
        for (auto &z : col) z = Complex(gaussian(rng), gaussian(rng));
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t m = 0; m < k; ++m) {
            const Complex proj = inner(cols[m], cols[k]);
            for (std::size_t r = 0; r < d; ++r) cols[k][r] -= proj * cols[m][r];
        }
        const double nk = norm(cols[k]);
        for (auto &z : cols[k]) z /= nk;
    }
    ComplexMatrix u(d, d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) u(r, c) = cols[c][r];
    return u;
}

namespace {

ComplexMatrix reflection_in_basis(const ComplexMatrix &u, Rng &rng) {
    const std::size_t d = u.rows();
    std::vector<Complex> signs(d);
    for (auto &s : signs) s = rng.below(2) == 0 ? 1.0 : -1.0;
    ComplexMatrix r = u * ComplexMatrix::diagonal(signs) * u.adjoint();
    // Symmetrize away rounding so the result is Hermitian to the last bit.
    ComplexMatrix h = r + r.adjoint();
    h *= 0.5;
    return h;
}

}  // namespace

ComplexMatrix random_reflection(std::size_t d, Rng &rng) {
    return reflection_in_basis(random_unitary(d, rng), rng);
}

StateVector random_state(std::size_t d, Rng &rng) {
    std::vector<Complex> a(d);
    for (auto &z : a) z = Complex(gaussian(rng), gaussian(rng));
    return StateVector(std::move(a)).normalized();
}

Strategy random_strategy(std::size_t n, std::array<std::size_t, 3> dims, Rng &rng) {
    Strategy s(n, dims);
    s.set_state(random_state(dims[0] * dims[1] * dims[2], rng));
    for (Player w : kPlayers) {
        const std::size_t d = s.dim(w);
        for (std::size_t i = 1; i <= n; ++i)
            for (int b = 0; b < 2; ++b) {
                s.set_single(w, i, b, random_reflection(d, rng));
                for (std::size_t j = i + 1; j <= n; ++j)
                    for (int c = 0; c < 2; ++c) {
                        const auto u = random_unitary(d, rng);
                        s.set_pair(w, i, b, j, c, reflection_in_basis(u, rng));
                        s.set_pair(w, j, c, i, b, reflection_in_basis(u, rng));
                    }
            }
    }
    return s;
}

}  // namespace ghzrig
