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

#include "ghzrig/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "ghzrig/strategy.hpp"

namespace ghzrig {

namespace {

// Even-parity input triples for round i.
constexpr std::array<std::array<int, 3>, 4> kEvenTriples{{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}};

InputCombo make_combo(std::size_t n, int r, std::size_t i, std::optional<std::size_t> j,
                      const std::array<int, 3> &bits, int extra_bit) {
    InputCombo c;
    c.n = n;
    c.r = r;
    c.i = i;
    c.j = j;
    for (std::size_t p = 0; p < 3; ++p) {
        c.f[p].entries.push_back({i, bits[p]});
        if (r > 0 && p == static_cast<std::size_t>(r - 1)) c.f[p].entries.push_back({*j, extra_bit});
    }
    return c;
}

}  // namespace

char player_name(Player p) { return "ABC"[index_of(p)]; }

Player player_from_name(char c) {
    switch (c) {
        case 'A':
            return Player::A;
        case 'B':
            return Player::B;
        case 'C':
            return Player::C;
    }
    fail(ErrorKind::InvalidArgument, std::string("unknown player '") + c + "'");
}

Player next_player(Player p, std::size_t offset) {
    return static_cast<Player>((index_of(p) + offset) % 3);
}

std::optional<int> PartialAssignment::at(std::size_t round) const {
    for (const RoundBit &e : entries)
        if (e.round == round) return e.bit;
    return std::nullopt;
}

std::optional<Player> InputCombo::double_queried() const {
    if (r == 0) return std::nullopt;
    return static_cast<Player>(r - 1);
}

void InputCombo::validate() const {
    auto bad = [](const std::string &why) { fail(ErrorKind::InvalidArgument, "input combo: " + why); };
    if (n == 0) bad("n must be at least 1");
    if (r < 0 || r > 3) bad("r must be in 0..3");
    if (i < 1 || i > n) bad("round i out of range");
    if (r == 0 && j) bad("r = 0 must not carry a second round");
    if (r > 0) {
        if (!j) bad("r > 0 requires a second round j");
        if (*j < 1 || *j > n) bad("round j out of range");
        if (*j == i) bad("rounds i and j must differ");
    }
    int parity = 0;
    for (std::size_t p = 0; p < 3; ++p) {
        const auto &e = f[p].entries;
        const bool is_double = r > 0 && p == static_cast<std::size_t>(r - 1);
        if (e.size() != (is_double ? 2u : 1u)) bad("wrong domain size for player " + std::to_string(p + 1));
        if (e[0].round != i) bad("first entry must be round i");
        if (is_double && e[1].round != *j) bad("second entry must be round j");
        for (const RoundBit &rb : e)
            if (rb.bit != 0 && rb.bit != 1) bad("input bits must be 0 or 1");
        parity ^= e[0].bit;
    }
    if (parity != 0) bad("round-i inputs must have even parity");
}

std::size_t input_count(std::size_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "n must be at least 1");
    return 4 * n + 24 * n * (n - 1);
}

std::vector<WeightedInput> enumerate_inputs(std::size_t n) {
    std::vector<WeightedInput> out;
    out.reserve(input_count(n));
    const double nn = static_cast<double>(n);
    const double p0 = n == 1 ? 0.25 : 1.0 / (16.0 * nn);
    for (std::size_t i = 1; i <= n; ++i)
        for (const auto &bits : kEvenTriples) out.push_back({make_combo(n, 0, i, std::nullopt, bits, 0), p0});
    if (n == 1) return out;

    const double pr = 1.0 / (32.0 * nn * (nn - 1.0));
    for (int r = 1; r <= 3; ++r)
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) {
                if (j == i) continue;
                for (const auto &bits : kEvenTriples)
                    for (int t = 0; t < 2; ++t) out.push_back({make_combo(n, r, i, j, bits, t), pr});
            }
    return out;
}

InputCombo sample_input(std::size_t n, Rng &rng) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "n must be at least 1");
    if (n == 1) return make_combo(1, 0, 1, std::nullopt, kEvenTriples[rng.below(4)], 0);

    const int r = static_cast<int>(rng.below(4));
    const std::size_t i = 1 + rng.below(n);
    std::size_t j = 1 + rng.below(n - 1);
    if (j >= i) ++j;
    const auto &bits = kEvenTriples[rng.below(4)];
    if (r == 0) return make_combo(n, 0, i, std::nullopt, bits, 0);
    const int t = static_cast<int>(rng.below(2));
    return make_combo(n, r, i, j, bits, t);
}

bool win_predicate(const InputCombo &input, const OutputCombo &output) {
    int product = 1;
    bool any_one = false;
    for (std::size_t p = 0; p < 3; ++p) {
        const auto &fs = input.f[p].entries;
        const auto &gs = output.g[p];
        if (fs.size() != gs.size()) {
            fail(ErrorKind::InvalidArgument, "output domain does not match input domain");
        }
        for (const RoundBit &e : fs) {
            const auto it = std::find_if(gs.begin(), gs.end(),
                                         [&](const RoundValue &v) { return v.round == e.round; });
            if (it == gs.end()) fail(ErrorKind::InvalidArgument, "output missing a queried round");
            if (it->value != 1 && it->value != -1) {
                fail(ErrorKind::InvalidArgument, "outputs must be +1 or -1");
            }
            if (e.round == input.i) product *= it->value;
        }
        any_one = any_one || input.bit(static_cast<Player>(p)) == 1;
    }
    return product == (any_one ? 1 : -1);
}

double classical_value(std::size_t n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "n must be at least 1");
    if (n > 2) fail(ErrorKind::DimensionCeiling, "classical_value: exhaustive search limited to n <= 2");

    // Only the round-i answer of each query influences the outcome, so a
    // deterministic player is one output bit per distinct query it can get:
    // 2n single-round queries and 4n(n-1) two-round queries.
    const std::size_t singles = 2 * n;
    const std::size_t queries = singles + 4 * n * (n - 1);
    auto query_index = [&](const InputCombo &c, std::size_t p) -> std::size_t {
        const auto &e = c.f[p].entries;
        if (e.size() == 1) return 2 * (e[0].round - 1) + static_cast<std::size_t>(e[0].bit);
        const std::size_t jj = e[1].round < e[0].round ? e[1].round : e[1].round - 1;
        return singles + (((e[0].round - 1) * (n - 1) + (jj - 1)) * 2 + static_cast<std::size_t>(e[0].bit)) * 2 +
               static_cast<std::size_t>(e[1].bit);
    };

    // Integer weights: every probability is a multiple of 1/(32 n (n-1)).
    struct Term {
        std::size_t a, b, c;
        unsigned target;  // required parity of the three output bits
        std::uint64_t weight;
    };
    std::vector<Term> terms;
    std::uint64_t total = 0;
    for (const auto &[c, prob] : enumerate_inputs(n)) {
        const bool any_one = c.bit(Player::A) | c.bit(Player::B) | c.bit(Player::C);
        const std::uint64_t w = n == 1 ? 1 : (c.r == 0 ? 2 * (n - 1) : 1);
        // Output bit 1 means -1; a product of +1 needs even parity.
        terms.push_back({query_index(c, 0), query_index(c, 1), query_index(c, 2), any_one ? 0u : 1u, w});
        total += w;
    }

    // Negating both A and C leaves every product unchanged, so A's first
    // output can be fixed.
    const std::uint64_t space = std::uint64_t{1} << queries;
    std::uint64_t best = 0;
    std::vector<std::array<std::uint64_t, 2>> score(queries);
    for (std::uint64_t a = 0; a < space / 2; ++a) {
        for (std::uint64_t b = 0; b < space; ++b) {
            for (auto &s : score) s = {0, 0};
            for (const Term &t : terms) {
                const unsigned need = t.target ^ unsigned((a >> t.a) & 1) ^ unsigned((b >> t.b) & 1);
                score[t.c][need] += t.weight;
            }
            std::uint64_t wins = 0;
            for (const auto &s : score) wins += std::max(s[0], s[1]);
            best = std::max(best, wins);
        }
    }
    return static_cast<double>(best) / static_cast<double>(total);
}

StateVector ghz_g_state() {
    const double amp = 1.0 / (2.0 * std::sqrt(2.0));
    std::vector<Complex> a(8);
    for (std::size_t k = 0; k < 8; ++k) a[k] = std::popcount(k) <= 1 ? amp : -amp;
    return StateVector(std::move(a));
}

Strategy ideal_strategy(std::size_t n, const Limits &limits) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "n must be at least 1");
    if (n >= 20) fail(ErrorKind::DimensionCeiling, "ideal_strategy: n too large");
    const std::size_t d = std::size_t{1} << n;
    limits.check(d * d * d, "ideal_strategy state");
    Strategy s(n, {d, d, d}, limits);

    // Amplitude of |a>|b>|c> is the product over copies k of G[a_k b_k c_k],
    // where a_k is bit k (most significant first) of a.
    const auto g = ghz_g_state();
    std::vector<Complex> amps(d * d * d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) {
                Complex z = 1.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const std::size_t shift = n - 1 - k;
                    const std::size_t idx = (((a >> shift) & 1) << 2) | (((b >> shift) & 1) << 1) | ((c >> shift) & 1);
                    z *= g[idx];
                }
                amps[(a * d + b) * d + c] = z;
            }
    s.set_state(StateVector(std::move(amps)));

    std::vector<std::size_t> qubits(n, 2);
    for (Player w : kPlayers)
        for (std::size_t i = 1; i <= n; ++i) {
            const std::array<std::size_t, 1> slot{i - 1};
            const auto x = apply_on(pauli_x(), slot, qubits, limits);
            const auto z = apply_on(pauli_z(), slot, qubits, limits);
            s.set_single(w, i, 0, x);
            s.set_single(w, i, 1, z);
            for (std::size_t j = 1; j <= n; ++j) {
                if (j == i) continue;
                for (int c = 0; c < 2; ++c) {
                    s.set_pair(w, i, 0, j, c, x);
                    s.set_pair(w, i, 1, j, c, z);
                }
            }
        }
    return s;
}

}  // namespace ghzrig
