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

#include <cmath>

#include <gtest/gtest.h>

#include "ghzrig/error.hpp"
#include "ghzrig/game.hpp"
#include "ghzrig/random.hpp"
#include "ghzrig/rigidity.hpp"
#include "ghzrig/strategy.hpp"
#include "oracles.hpp"

using namespace ghzrig;

namespace {

Strategy noisy(std::size_t n, double theta, NoiseKind kind = NoiseKind::Rotation) {
    return perturb(ideal_strategy(n), {kind, theta, 0});
}

}  // namespace

TEST(Rigidity, EigenbasisMatchesZStringOracle) {
    const auto basis = ghz_eigenbasis();
    for (std::size_t v = 0; v < 8; ++v) {
        const auto want = oracle::g_label_state(v);
        const std::vector<Complex> got(basis[v].amplitudes().begin(), basis[v].amplitudes().end());
        // Fixed phase: largest-magnitude amplitude real positive. The oracle
        // vectors have equal magnitudes, so compare up to a global sign.
        const double plus = oracle::max_abs_diff(got, want);
        std::vector<Complex> neg(want);
        for (auto &z : neg) z = -z;
        EXPECT_LT(std::min(plus, oracle::max_abs_diff(got, neg)), 1e-12) << "label " << v;
    }
}

TEST(Rigidity, EigenbasisIsOrthonormalAndLabelled) {
    const auto basis = ghz_eigenbasis();
    for (std::size_t a = 0; a < 8; ++a) {
        for (std::size_t b = 0; b < 8; ++b)
            EXPECT_NEAR(std::abs(inner(basis[a].amplitudes(), basis[b].amplitudes())), a == b ? 1.0 : 0.0, 1e-12);
        for (std::size_t m = 0; m < 3; ++m) {
            const double sign = ((a >> (2 - m)) & 1) ? -1.0 : 1.0;
            const auto applied = stabilizer_matrix(static_cast<Stabilizer>(m)) * basis[a].amplitudes();
            std::vector<Complex> want(basis[a].amplitudes().begin(), basis[a].amplitudes().end());
            for (auto &z : want) z *= sign;
            EXPECT_LT(oracle::max_abs_diff(applied, want), 1e-12);
        }
    }
    // G_0 is the game state itself.
    EXPECT_LT(oracle::max_abs_diff(std::vector<Complex>(basis[0].amplitudes().begin(), basis[0].amplitudes().end()),
                                   oracle::g_state()),
              1e-12);
}

TEST(Rigidity, LayoutPositions) {
    const RegisterLayout layout(2, {4, 4, 4});
    EXPECT_EQ(layout.registers().size(), 3u * 2 + 3u * 2 + 3u);
    EXPECT_EQ(layout.q_position(1), 0u);  // Q_1: A, round 1
    EXPECT_EQ(layout.q_position(3), 1u);  // Q_{N+1}: B, round 1
    EXPECT_EQ(layout.q_position(5), 2u);  // Q_{2N+1}: C, round 1
    EXPECT_EQ(layout.q_position(2), 3u);  // Q_2: A, round 2
    EXPECT_EQ(layout.position("Q4"), 4u);
    EXPECT_EQ(layout.position("Qbar1"), 6u);
    EXPECT_EQ(layout.position("C"), 14u);
    EXPECT_EQ(layout.extracted_dim(), 64u);
    EXPECT_EQ(layout.total_dim(), std::size_t{1} << 18);
    EXPECT_THROW(layout.q_position(7), Error);
    EXPECT_THROW(layout.position("D"), Error);
}

TEST(Rigidity, IdealSwapIsometryIsSwapWithBellJunk) {
    const auto s = ideal_strategy(1);
    for (Player w : kPlayers) {
        const auto psi = swap_isometry(s, w, 1);
        ComplexMatrix want(8, 2);
        // Output (Qbar, Q, W): Q carries the input, (Qbar, W) a Bell pair.
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t e = 0; e < 2; ++e) want((e * 2 + a) * 2 + e, a) = 1.0 / std::sqrt(2.0);
        EXPECT_LT(oracle::max_abs_diff(psi, want), 1e-12);
    }
}

TEST(Rigidity, ChainedIsometryIsIsometry) {
    Rng rng(31);
    for (int t = 0; t < 5; ++t) {
        const auto s = random_strategy(2, {2, 4, 3}, rng);
        for (Player w : kPlayers) {
            const auto theta = chained_isometry(s, w);
            EXPECT_EQ(theta.rows(), 16 * s.dim(w));
            EXPECT_LT(frobenius_distance(theta.adjoint() * theta, ComplexMatrix::identity(s.dim(w))), 1e-9);
            EXPECT_LT(frobenius_distance(chained_isometry(s, w, 1), swap_isometry(s, w, 1)), 1e-15);
            EXPECT_EQ(chained_isometry(s, w, 0), ComplexMatrix::identity(s.dim(w)));
        }
    }
    EXPECT_THROW(chained_isometry(ideal_strategy(1), Player::A, 2), Error);
}

TEST(Rigidity, IdealExtractionIsExact) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto r = extract(ideal_strategy(n));
        EXPECT_EQ(r.method, n <= 2 ? ExtractionMethod::Dense : ExtractionMethod::Reduced);
        EXPECT_LE(r.residual, 1e-9);
        EXPECT_NEAR(r.fidelity, 1.0, 1e-9);
        EXPECT_EQ(r.epsilon, 0.0);
        EXPECT_FALSE(r.bound_ratio().has_value());
    }
}

TEST(Rigidity, DenseAndReducedAgree) {
    Rng rng(32);
    for (std::size_t n = 1; n <= 2; ++n)
        for (int t = 0; t < 3; ++t) {
            const auto s = t == 0 ? noisy(n, 0.2) : random_strategy(n, {2, 2, 2}, rng);
            const auto dense = extract_dense(s);
            const auto reduced = extract_reduced(s);
            ASSERT_EQ(dense.weights.size(), reduced.weights.size());
            // The reduced route reads squared weights off a density matrix.
            for (std::size_t v = 0; v < dense.weights.size(); ++v)
                EXPECT_NEAR(dense.weights[v] * dense.weights[v], reduced.weights[v] * reduced.weights[v], 1e-12);
            EXPECT_NEAR(dense.residual * dense.residual, reduced.residual * reduced.residual, 1e-12);
        }
}

TEST(Rigidity, WeightsFormAProbabilityVector) {
    Rng rng(33);
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto s = n == 3 ? noisy(3, 0.1) : random_strategy(n, {2, 2, 2}, rng);
        const auto r = extract(s);
        double total = 0.0;
        for (double w : r.weights) total += w * w;
        EXPECT_NEAR(total, 1.0, 1e-9);
        EXPECT_GE(r.fidelity, 0.0);
        EXPECT_LE(r.fidelity, 1.0);
    }
}

TEST(Rigidity, DenseExtractionRespectsCeiling) {
    Limits small;
    small.max_dim = 256;
    try {
        (void)extract_dense(ideal_strategy(1), small);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DimensionCeiling);
    }
    // extract() falls back to the reduced route under the same ceiling.
    EXPECT_EQ(extract(ideal_strategy(1), small).method, ExtractionMethod::Reduced);
}

TEST(Rigidity, BasisComponentsReassembleTheVector) {
    const auto r = extract_dense(noisy(1, 0.3));
    const RegisterLayout layout(1, r.dims);
    const auto basis = ghz_eigenbasis();
    const std::size_t j = layout.junk_dim();
    std::vector<Complex> rebuilt(r.extracted.dim());
    for (std::size_t v = 0; v < 8; ++v) {
        const auto c = basis_component(layout, r.extracted.amplitudes(), v);
        EXPECT_NEAR(norm(c), r.weights[v], 1e-12);
        for (std::size_t q = 0; q < 8; ++q)
            for (std::size_t t = 0; t < j; ++t) rebuilt[q * j + t] += basis[v][q] * c[t];
    }
    EXPECT_LT(frobenius_distance(rebuilt, r.extracted.amplitudes()), 1e-12);
}

TEST(Rigidity, NegatingStabilizerChoice) {
    EXPECT_EQ(negating_stabilizer(1, 4).which, Stabilizer::XZZ);
    EXPECT_EQ(negating_stabilizer(1, 1).which, Stabilizer::ZZX);
    EXPECT_EQ(negating_stabilizer(1, 3).which, Stabilizer::ZXZ);
    const auto w = negating_stabilizer(2, 3);  // round 1 label 0, round 2 label 3
    EXPECT_EQ(w.round, 2u);
    EXPECT_EQ(w.which, Stabilizer::ZXZ);
    EXPECT_EQ(negating_stabilizer(2, 8 * 5 + 2).round, 1u);
    EXPECT_THROW(negating_stabilizer(1, 0), Error);
}

TEST(Rigidity, NegationStructureHolds) {
    for (double theta : {0.1, 0.4}) {
        for (NoiseKind kind : {NoiseKind::Rotation, NoiseKind::StateMix}) {
            const auto r = extract_dense(noisy(1, theta, kind));
            EXPECT_LE(negation_residual(r), 1e-10);
        }
    }
    Rng rng(34);
    EXPECT_LE(negation_residual(extract_dense(random_strategy(2, {2, 2, 2}, rng))), 1e-10);
    EXPECT_THROW(negation_residual(extract_reduced(ideal_strategy(1))), Error);
}

TEST(Rigidity, KeyIneqResidualSquaredIsFourTimesLosing) {
    Rng rng(35);
    for (int t = 0; t < 5; ++t) {
        const auto s = random_strategy(2, {2, 2, 2}, rng);
        for (const auto &e : check_keyineqs(s)) {
            EXPECT_NEAR(e.residual * e.residual, 4 * e.losing_probability, 1e-10);
            EXPECT_NEAR(e.losing_probability, oracle::losing_probability(s, e.input), 1e-12);
        }
    }
}

TEST(Rigidity, SignFlippedStrategyHasMaximalResidual) {
    auto s = ideal_strategy(1);
    s.set_single(Player::A, 1, 0, -s.single(Player::A, 1, 0));
    s.set_single(Player::A, 1, 1, -s.single(Player::A, 1, 1));
    for (const auto &e : check_keyineqs(s)) {
        EXPECT_NEAR(e.losing_probability, 1.0, 1e-12);
        EXPECT_NEAR(e.residual, 2.0, 1e-12);
    }
}

TEST(Rigidity, AnticommuteStaysWithinChainBound) {
    Rng rng(36);
    for (int t = 0; t < 10; ++t) {
        const auto s = t < 4 ? noisy(1 + t % 2, 0.1 * (t + 1), t % 2 ? NoiseKind::StateMix : NoiseKind::Rotation)
                             : random_strategy(2, {2, 2, 2}, rng);
        for (Player w : kPlayers)
            for (std::size_t i = 1; i <= s.n(); ++i) {
                const auto c = check_anticommute(s, i, w);
                EXPECT_LE(c.residual, c.chain_bound + 1e-12);
            }
    }
}

TEST(Rigidity, CommuteChecks) {
    EXPECT_LE(check_commute(ideal_strategy(2), 1, 2, 0, 1), 1e-12);
    Strategy s(2, {2, 2, 2});
    s.set_single(Player::B, 1, 0, pauli_x());
    s.set_single(Player::B, 2, 1, pauli_z());
    s.set_state(StateVector::basis(8, 0));
    EXPECT_NEAR(check_commute(s, 1, 2, 0, 1, Player::B), 2.0, 1e-12);
    EXPECT_THROW(check_commute(s, 1, 1, 0, 0), Error);
}

TEST(Rigidity, PushChecksVanishOnIdeal) {
    const auto s = ideal_strategy(2);
    for (Player w : kPlayers)
        for (std::size_t k = 1; k <= 2; ++k)
            for (PushOp op : {PushOp::X, PushOp::Z, PushOp::HadamardOnQ, PushOp::ControlledX, PushOp::ControlledZ})
                EXPECT_LE(check_push(s, w, op, k).residual, 1e-12) << to_string(op);
}

TEST(Rigidity, PushResidualTracksKeyIneqs) {
    // X'_A L = -X'_B X'_C L follows from the x = y = z = 0 query.
    Rng rng(37);
    const auto s = random_strategy(1, {2, 2, 2}, rng);
    const auto keys = check_keyineqs(s);
    const auto push = check_push(s, Player::A, PushOp::X, 1);
    for (const auto &e : keys)
        if (e.input.bit(Player::A) == 0 && e.input.bit(Player::B) == 0) {
            EXPECT_NEAR(push.residual, e.residual, 1e-12);
        }
}

TEST(Rigidity, PushChainBound) {
    Rng rng(38);
    for (int t = 0; t < 10; ++t) {
        const std::size_t dr = 2, ds = 3;
        std::vector<Complex> z(dr * ds);
        for (auto &x : z) x = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
        const double nz = norm(z);
        for (auto &x : z) x /= nz;
        std::vector<ComplexMatrix> us, partners;
        for (int k = 0; k < 3; ++k) {
            us.push_back(random_unitary(dr, rng));
            partners.push_back(random_unitary(ds, rng));
        }
        const auto v = random_unitary(dr, rng);
        const auto w = random_unitary(dr, rng);
        const auto c = push_chain(z, dr, ds, us, partners, v, w);
        EXPECT_LE(c.residual, c.bound + 1e-12);
        EXPECT_LE(c.residual, c.stage_distances[0] + c.stage_distances[1] + c.stage_distances[2] + 1e-12);
        EXPECT_NEAR(c.stage_distances[1], c.delta, 1e-12);
    }
}

TEST(Rigidity, PushChainOnNoisyStrategy) {
    const auto s = noisy(1, 0.2);
    const auto &psi = s.state().amplitudes();
    const std::vector<ComplexMatrix> us{s.x_prime(Player::A, 1), s.z_prime(Player::A, 1)};
    const std::vector<ComplexMatrix> partners{-kron(s.x_prime(Player::B, 1), s.x_prime(Player::C, 1)),
                                              kron(s.z_prime(Player::B, 1), s.x_prime(Player::C, 1))};
    const auto id = ComplexMatrix::identity(2);
    const auto c = push_chain(psi, 2, 4, us, partners, id, id);
    EXPECT_EQ(c.delta, 0.0);
    EXPECT_NEAR(c.push_errors[0], check_push(s, Player::A, PushOp::X, 1).residual, 1e-12);
    EXPECT_LE(c.residual, c.bound + 1e-12);
    const std::vector<ComplexMatrix> one{partners[0]};
    EXPECT_THROW(push_chain(psi, 2, 4, us, one, id, id), Error);
}

TEST(Rigidity, PauliChecksVanishOnIdeal) {
    const auto s = ideal_strategy(2);
    for (Player w : kPlayers)
        for (std::size_t k = 1; k <= 2; ++k) {
            const auto cp = check_correct_pauli(s, w, k);
            const auto mp = check_multi_pauli(s, w, k);
            EXPECT_LE(std::max(cp.x, cp.z), 1e-12);
            EXPECT_LE(std::max(mp.x, mp.z), 1e-12);
        }
}

TEST(Rigidity, MultiPauliWithinBudget) {
    Rng rng(39);
    for (int t = 0; t < 4; ++t) {
        const auto s = t == 0 ? noisy(2, 0.2) : random_strategy(2, {2, 2, 2}, rng);
        for (Player w : kPlayers) {
            const auto first = check_multi_pauli(s, w, 1);
            const auto cp = check_correct_pauli(s, w, 1);
            EXPECT_NEAR(first.x, cp.x, 1e-12);
            EXPECT_NEAR(first.z, cp.z, 1e-12);
            for (std::size_t k = 1; k <= 2; ++k) {
                const auto mp = check_multi_pauli(s, w, k);
                const auto budget = multi_pauli_budget(s, w, k);
                EXPECT_LE(mp.x, budget.x + 1e-12);
                EXPECT_LE(mp.z, budget.z + 1e-12);
            }
        }
    }
}

TEST(Rigidity, RelationReportCollapsesAtZeroNoise) {
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto rep = check_relations(ideal_strategy(n));
        EXPECT_EQ(rep.keyineqs.size(), input_count(n));
        EXPECT_EQ(rep.anticommute.size(), 3 * n);
        EXPECT_EQ(rep.commute.size(), 3 * n * (n - 1) * 4);
        EXPECT_LE(rep.max_keyineq(), 1e-9);
        for (const auto *list : {&rep.anticommute, &rep.commute, &rep.push, &rep.correct_pauli, &rep.multi_pauli})
            EXPECT_LE(RelationReport::max_of(*list), 1e-9);
    }
}

TEST(Rigidity, ResidualGrowsWithNoise) {
    for (std::size_t n = 1; n <= 2; ++n) {
        double last = -1.0;
        for (int k = 0; k <= 6; ++k) {
            const double r = extract(noisy(n, 0.05 * k)).residual;
            EXPECT_GE(r, last - 1e-12);
            last = r;
        }
    }
}

TEST(Rigidity, ResidualScalesAsSquareRootOfEpsilon) {
    std::vector<double> xs, ys;
    for (int k = 1; k <= 10; ++k) {
        const auto r = extract(noisy(1, 0.02 * k));
        xs.push_back(std::log(r.epsilon));
        ys.push_back(std::log(r.residual));
        ASSERT_TRUE(r.bound_ratio().has_value());
    }
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k] / xs.size();
        my += ys[k] / ys.size();
    }
    double sxy = 0, sxx = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxy += (xs[k] - mx) * (ys[k] - my);
        sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    EXPECT_NEAR(sxy / sxx, 0.5, 0.15);
}

TEST(Rigidity, ErrorExponents) {
    EXPECT_EQ(error_exponent("extraction"), "N^4 sqrt(eps)");
    EXPECT_EQ(error_exponent("multi_pauli"), "N^3 sqrt(eps)");
    EXPECT_EQ(error_exponent("push"), "N sqrt(eps)");
}
