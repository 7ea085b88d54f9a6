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

// Quantum strategies for the augmented GHZ game: a shared state on A(x)B(x)C
// and, per player, one reflection for every single-round query and one for
// every ordered two-round query.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ghzrig/game.hpp"
#include "ghzrig/tensor.hpp"

namespace ghzrig {

class Strategy {
  public:
    /// Every reflection is the identity and the state is the first basis
    /// vector; callers overwrite what they need.
    Strategy(std::size_t n, std::array<std::size_t, 3> dims, const Limits &limits = {});

    std::size_t n() const noexcept { return n_; }
    const std::array<std::size_t, 3> &dims() const noexcept { return dims_; }
    std::size_t dim(Player p) const { return dims_[index_of(p)]; }
    const StateVector &state() const noexcept { return state_; }

    /// R^W_{i -> b}
    const ComplexMatrix &single(Player w, std::size_t i, int b) const;
    /// R^W_{i -> b | j -> c}: the round-i observable when also asked about j.
    const ComplexMatrix &pair(Player w, std::size_t i, int b, std::size_t j, int c) const;

    const ComplexMatrix &x_prime(Player w, std::size_t i) const { return single(w, i, 0); }
    const ComplexMatrix &z_prime(Player w, std::size_t i) const { return single(w, i, 1); }

    void set_state(StateVector state);
    void set_single(Player w, std::size_t i, int b, ComplexMatrix m);
    void set_pair(Player w, std::size_t i, int b, std::size_t j, int c, ComplexMatrix m);

    /// Observable player `p` measures for round `input.i`.
    const ComplexMatrix &observable(const InputCombo &input, Player p) const;

    friend bool operator==(const Strategy &, const Strategy &) = default;

  private:
    std::size_t single_index(Player w, std::size_t i, int b) const;
    std::size_t pair_index(Player w, std::size_t i, int b, std::size_t j, int c) const;
    void check_matrix(Player w, const ComplexMatrix &m) const;

    std::size_t n_;
    std::array<std::size_t, 3> dims_;
    StateVector state_;
    std::vector<ComplexMatrix> singles_;
    std::vector<ComplexMatrix> pairs_;
};

struct Violation {
    std::string check;
    std::string where;
    double residual = 0.0;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
};

ValidationReport validate(const Strategy &s, Tolerance tol = {});

/// ||R^A R^B R^C L + (-1)^{x or y or z} L||^2 / 4, with the pair observable
/// for the double-queried player.
double losing_probability(const Strategy &s, const InputCombo &input);

/// sum over queries of probability * losing probability.
double losing_total(const Strategy &s);
double winning_probability(const Strategy &s);

/// sigma[p] is the seat that player p's subsystem and observables move to.
using PlayerPermutation = std::array<std::size_t, 3>;

Strategy permute_players(const Strategy &s, const PlayerPermutation &sigma);
PlayerPermutation inverse(const PlayerPermutation &sigma);

enum class NoiseKind { Rotation, StateMix };

struct NoiseSpec {
    NoiseKind kind = NoiseKind::Rotation;
    /// Rotation angle in radians, or the mixing weight in [0, 1].
    double theta = 0.0;
    /// Carried for provenance; both noise kinds are deterministic.
    std::uint64_t seed = 0;
};

std::string to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(const std::string &name);

/// exp(-i theta H / 2): rotation by theta about the (X+Z)/sqrt2 axis.
ComplexMatrix bisector_rotation(double theta);

/// Rotation: conjugates every observable of player A by the bisector
/// rotation on each of A's qubits (d_A must be a power of two).
/// StateMix: replaces L by normalize((1-theta) L + theta u), u the uniform
/// superposition.
Strategy perturb(const Strategy &s, const NoiseSpec &spec);

struct SimulationResult {
    std::size_t rounds = 0;
    std::size_t wins = 0;

    double frequency() const { return rounds == 0 ? 0.0 : double(wins) / double(rounds); }
};

/// Plays `rounds` games: inputs from sample_input, outputs by projective
/// measurement of the shared state. Rounds are processed in shards of
/// kSimulationShard, shard k drawing from derive_seed(seed, k).
SimulationResult simulate(const Strategy &s, std::size_t rounds, std::uint64_t seed);

inline constexpr std::size_t kSimulationShard = 1 << 14;

/// Random strategy with Haar-like reflections and state, for testing.
/// Pair observables share an eigenbasis so they commute exactly.
Strategy random_strategy(std::size_t n, std::array<std::size_t, 3> dims, Rng &rng);
ComplexMatrix random_unitary(std::size_t d, Rng &rng);
ComplexMatrix random_reflection(std::size_t d, Rng &rng);
StateVector random_state(std::size_t d, Rng &rng);

}  // namespace ghzrig
