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

// Swap isometries, GHZ-basis extraction, and numeric checkers for the
// approximate relations a near-optimal strategy must satisfy.
//
// Register conventions. The swap isometry for player W and round k maps W
// to Qbar_k (x) Q_k (x) W: a Bell pair is prepared on (Qbar_k, Q_k), then
// C(X'_k), H on Q_k, C(Z'_k), H on Q_k, C(X'_k) are applied with Q_k as
// control and W as target. Round k's extracted qubits are Q_k, Q_{N+k},
// Q_{2N+k}, owned by A, B and C respectively.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ghzrig/diagram.hpp"
#include "ghzrig/game.hpp"
#include "ghzrig/strategy.hpp"
#include "ghzrig/tensor.hpp"

namespace ghzrig {

/// Psi_{W,k}: (4 d_W) x d_W isometry, output order (Qbar_k, Q_k, W).
ComplexMatrix swap_isometry(const Strategy &s, Player w, std::size_t k);

/// The same isometry built as a string diagram; used as an independent
/// route to swap_isometry.
Diagram swap_isometry_diagram(const Strategy &s, Player w, std::size_t k);

/// Theta_{W,k} = (I (x) Psi_k) ... (I (x) Psi_2) Psi_1, output order
/// (Qbar_1, Q_1, ..., Qbar_k, Q_k, W). Defaults to k = N.
ComplexMatrix chained_isometry(const Strategy &s, Player w, std::optional<std::size_t> k = std::nullopt,
                               const Limits &limits = {});

/// The three commuting stabilizers X(x)Z(x)Z, Z(x)X(x)Z, Z(x)Z(x)X.
enum class Stabilizer { XZZ = 0, ZXZ = 1, ZZX = 2 };

ComplexMatrix stabilizer_matrix(Stabilizer which);

/// G_0..G_7. Label v has eigenvalue (-1)^{bit} under stabilizer m, where
/// bit = (v >> (2 - m)) & 1; G_0 is the joint +1 eigenvector. Global phase
/// makes the largest-magnitude amplitude (first, on ties) real positive.
std::array<StateVector, 8> ghz_eigenbasis();

/// Names and places every register of the extracted space. Order:
/// Q_1, Q_{N+1}, Q_{2N+1}, ..., Q_N, Q_{2N}, Q_{3N} (round-major), then
/// Qbar_1..Qbar_{3N}, then A, B, C.
class RegisterLayout {
  public:
    RegisterLayout(std::size_t n, std::array<std::size_t, 3> dims);

    struct Register {
        std::string name;
        std::size_t dim;
    };

    std::size_t n() const noexcept { return n_; }
    const std::vector<Register> &registers() const noexcept { return registers_; }
    std::vector<std::size_t> dims() const;
    /// Throws when no register has this name.
    std::size_t position(const std::string &name) const;
    /// Position of Q_{index}, index in 1..3N.
    std::size_t q_position(std::size_t index) const;
    /// Dimension of the extracted-qubit block (8^N) and of the rest.
    std::size_t extracted_dim() const;
    std::size_t junk_dim() const;
    std::size_t total_dim() const { return extracted_dim() * junk_dim(); }

  private:
    std::size_t n_;
    std::vector<Register> registers_;
};

enum class ExtractionMethod { Dense, Reduced };

struct ExtractionResult {
    std::size_t n = 0;
    std::array<std::size_t, 3> dims{};
    ExtractionMethod method = ExtractionMethod::Dense;
    /// (Theta_A (x) Theta_B (x) Theta_C) L in RegisterLayout order; empty for
    /// the reduced method.
    StateVector extracted;
    /// ||L'_v|| for every label v = (v_1 .. v_N), v_1 most significant, base 8.
    std::vector<double> weights;
    double g0_weight = 0.0;
    /// Overlap with |G>^{(x)N} maximized over junk states; equals g0_weight.
    double fidelity = 0.0;
    /// Norm of all components other than G_0^{(x)N}.
    double residual = 0.0;
    /// The strategy's total losing probability.
    double epsilon = 0.0;

    /// residual / (N^4 sqrt(epsilon)); empty when epsilon is zero.
    std::optional<double> bound_ratio() const;
};

/// Applies Theta_N on every player and expands round by round in the G
/// basis. Uses the dense extracted vector when it fits under the ceiling,
/// otherwise contracts the junk registers away first (weights only).
ExtractionResult extract(const Strategy &s, const Limits &limits = {});
ExtractionResult extract_dense(const Strategy &s, const Limits &limits = {});
ExtractionResult extract_reduced(const Strategy &s, const Limits &limits = {});

/// L'_v: component of an extracted vector along G_{v_1} (x) ... (x) G_{v_N}.
std::vector<Complex> basis_component(const RegisterLayout &layout, std::span<const Complex> extracted,
                                     std::size_t label);

/// Applies a stabilizer to the three extracted qubits of `round`.
std::vector<Complex> apply_round_stabilizer(const RegisterLayout &layout, std::span<const Complex> extracted,
                                            std::size_t round, Stabilizer which);

struct NegationWitness {
    std::size_t round;
    Stabilizer which;
};

/// For v != 0, a round-local stabilizer with eigenvalue -1 on the v term.
NegationWitness negating_stabilizer(std::size_t n, std::size_t label);

/// Coefficients of an extracted vector in the G basis, as an
/// (8^N x junk) row-major array: row v holds L'_v.
std::vector<Complex> g_basis_coefficients(const RegisterLayout &layout, std::span<const Complex> extracted);

/// max over v != 0 of ||L'_v + (L'_v after applying v's witness)||, which
/// vanishes when every witness negates its component. Needs a dense result.
double negation_residual(const ExtractionResult &result);

std::string to_string(ExtractionMethod method);

// ---------------------------------------------------------------------------
// Relation checkers. Every residual is a Euclidean norm of a difference of
// two vectors, so it is zero exactly when the relation holds exactly.

struct KeyIneqEntry {
    InputCombo input;
    /// ||(I + sign R^A R^B R^C) L|| with sign = + on 000 inputs and - otherwise.
    double residual = 0.0;
    double losing_probability = 0.0;
};

/// One entry per referee query: the four GHZ stabilizer lines for every
/// round plus every variant with the double-queried player's pair observable.
std::vector<KeyIneqEntry> check_keyineqs(const Strategy &s);

struct AnticommuteCheck {
    double residual = 0.0;
    /// Sum of the four round-i keyineq residual norms, which bounds residual.
    double chain_bound = 0.0;
};

/// ||(Z'_i X'_i + X'_i Z'_i)_W L||.
AnticommuteCheck check_anticommute(const Strategy &s, std::size_t i, Player w = Player::A);

/// ||((R_{j->c} R_{i->b} - R_{i->b} R_{j->c})_W) L|| with single-round observables.
double check_commute(const Strategy &s, std::size_t i, std::size_t j, int b, int c, Player w = Player::A);

enum class PushOp { X, Z, HadamardOnQ, ControlledX, ControlledZ };

std::string to_string(PushOp op);

struct PushCheck {
    double residual = 0.0;
    std::string partner;
};

/// Pushes an operator on player W through the state onto its partner on
/// the other players: X'_W -> -X'_{W+1} X'_{W+2}, Z'_W -> Z'_{W+1} X'_{W+2}
/// (cyclic order). The controlled and Hadamard variants act on the state
/// Phi+_{Qbar,Q} (x) L with the control on Q, and push onto Qbar.
PushCheck check_push(const Strategy &s, Player w, PushOp op, std::size_t k);

struct PushChainCheck {
    /// ||(V U_1..U_k) Z - (W U_1..U_k) Z||
    double residual = 0.0;
    /// Individual push residuals ||U_i Z - V_i Z||.
    std::vector<double> push_errors;
    /// ||V Z - W Z||
    double delta = 0.0;
    /// Distances between consecutive stages of the push-swap-pull chain.
    std::array<double, 3> stage_distances{};
    /// 2 sum(push_errors) + delta.
    double bound = 0.0;
};

/// Numeric push-through bound on a bipartite vector z in R (x) S:
/// operators `us` on R, `partners` on S, and the pair `v`, `w` on R.
PushChainCheck push_chain(std::span<const Complex> z, std::size_t dim_r, std::size_t dim_s,
                          std::span<const ComplexMatrix> us, std::span<const ComplexMatrix> partners,
                          const ComplexMatrix &v, const ComplexMatrix &w);

struct PauliCheck {
    double x = 0.0;
    double z = 0.0;
};

/// ||(X on Q_k) Psi_k L - Psi_k X'_k L|| and the Z analogue.
PauliCheck check_correct_pauli(const Strategy &s, Player w, std::size_t k);

/// Same with Theta_N in place of Psi_k.
PauliCheck check_multi_pauli(const Strategy &s, Player w, std::size_t k, const Limits &limits = {});

/// Triangle-inequality budget for check_multi_pauli built from the swap step
/// for round k applied after Theta_{k-1}, plus the failure of X'_k (Z'_k) to
/// commute through Theta_{k-1}. Equal to check_correct_pauli when k = 1.
PauliCheck multi_pauli_budget(const Strategy &s, Player w, std::size_t k, const Limits &limits = {});

struct RelationEntry {
    std::string relation;
    Player player = Player::A;
    std::size_t round = 1;
    std::string detail;
    double residual = 0.0;
};

struct RelationReport {
    std::size_t n = 0;
    double epsilon = 0.0;
    std::vector<KeyIneqEntry> keyineqs;
    std::vector<RelationEntry> anticommute;
    std::vector<RelationEntry> commute;
    std::vector<RelationEntry> push;
    std::vector<RelationEntry> correct_pauli;
    std::vector<RelationEntry> multi_pauli;

    double max_keyineq() const;
    static double max_of(const std::vector<RelationEntry> &entries);
};

/// Error scale the corresponding relation is expected to follow.
std::string error_exponent(const std::string &relation);

RelationReport check_relations(const Strategy &s, const Limits &limits = {});

}  // namespace ghzrig
