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

// The augmented GHZ game played over N simulated rounds.
//
// Rounds are 1-based. Input bits are 0/1; outputs are +1/-1, with the usual
// correspondence bit 0 <-> +1 and bit 1 <-> -1.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghzrig/random.hpp"
#include "ghzrig/tensor.hpp"

namespace ghzrig {

enum class Player : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Player, 3> kPlayers{Player::A, Player::B, Player::C};

inline constexpr std::size_t index_of(Player p) { return static_cast<std::size_t>(p); }
char player_name(Player p);
Player player_from_name(char c);
/// The player `offset` places after `p` in the cyclic order A, B, C.
Player next_player(Player p, std::size_t offset = 1);

struct RoundBit {
    std::size_t round = 1;
    int bit = 0;

    friend bool operator==(const RoundBit &, const RoundBit &) = default;
};

/// A partial function from rounds to input bits; one or two entries.
struct PartialAssignment {
    std::vector<RoundBit> entries;

    std::optional<int> at(std::size_t round) const;
    friend bool operator==(const PartialAssignment &, const PartialAssignment &) = default;
};

struct InputCombo {
    std::size_t n = 1;
    /// 0: every player is queried on round i only. 1..3: player r is also
    /// queried on round j.
    int r = 0;
    std::size_t i = 1;
    std::optional<std::size_t> j;
    std::array<PartialAssignment, 3> f;

    int bit(Player p) const { return *f[index_of(p)].at(i); }
    /// The player queried on two rounds, if any.
    std::optional<Player> double_queried() const;
    /// Throws InvalidArgument when the combo is not a legal referee query.
    void validate() const;

    friend bool operator==(const InputCombo &, const InputCombo &) = default;
};

struct RoundValue {
    std::size_t round = 1;
    int value = 1;

    friend bool operator==(const RoundValue &, const RoundValue &) = default;
};

struct OutputCombo {
    std::array<std::vector<RoundValue>, 3> g;
};

struct WeightedInput {
    InputCombo input;
    double probability = 0.0;
};

/// Every possible referee query with its probability. For n = 1 the game
/// has no pair of distinct rounds, so only r = 0 queries exist.
std::vector<WeightedInput> enumerate_inputs(std::size_t n);

/// Number of queries enumerate_inputs(n) returns.
std::size_t input_count(std::size_t n);

/// Draws one referee query following the referee's steps.
InputCombo sample_input(std::size_t n, Rng &rng);

/// Parity condition on round i: g1 g2 g3 = (-1)^{not(f1 or f2 or f3)}.
bool win_predicate(const InputCombo &input, const OutputCombo &output);

/// Best winning probability of a deterministic classical strategy, by
/// exhaustive search. Supported for n <= 2.
double classical_value(std::size_t n);

class Strategy;

/// |G>^{(x)n} shared so that player W holds qubit W of every copy, with
/// X measured on input 0 and Z on input 1.
Strategy ideal_strategy(std::size_t n, const Limits &limits = {});

/// The 3-qubit state (1/2sqrt2)(sum_{r+s+t<=1}|rst> - sum_{r+s+t>=2}|rst>).
StateVector ghz_g_state();

}  // namespace ghzrig
