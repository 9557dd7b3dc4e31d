// Copyright 2026 The QCT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Classical coin-tossing protocols as finite game trees.
//
// A party's memory is the public transcript plus its private coins, so a
// behavioral strategy is one probability row per (round, transcript prefix)
// for the rounds it owns, and one row over {0, 1, abort} per full
// transcript for its output. Prefixes are indexed in mixed radix over the
// round alphabets, first round most significant.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qct/protocol.hpp"

namespace qct {

struct ClassicalRound {
  Party owner = Party::kAlice;
  std::vector<std::string> alphabet;
  /// table[prefix][message]
  std::vector<std::vector<double>> table;
};

using OutputRow = std::array<double, 3>;

struct ClassicalProtocol {
  std::vector<ClassicalRound> rounds;
  /// One row per full transcript.
  std::vector<OutputRow> alice_output;
  std::vector<OutputRow> bob_output;

  /// Number of prefixes before `round` (0-based). prefix_count(rounds.size())
  /// is the number of full transcripts.
  std::size_t prefix_count(std::size_t round) const;
  /// Throws ValidationError naming the violated invariant.
  void validate() const;
};

/// Deterministic strategy for one party: a message index per owned
/// (round, prefix) and an outcome per full transcript. Rounds the party
/// does not own have empty choice vectors.
struct PureClassicalStrategy {
  Party party = Party::kAlice;
  std::vector<std::vector<std::size_t>> choices;
  std::vector<Coin> output;
};

struct WeightedPure {
  double weight = 0.0;
  PureClassicalStrategy strategy;
};

/// Kuhn decomposition: one pure strategy per combination of supported
/// entries across the party's information sets, weighted by the product of
/// those entries. Throws PreconditionError above `max_strategies` terms.
std::vector<WeightedPure> decompose_pure(const ClassicalProtocol& c, Party party,
                                         std::size_t max_strategies = 1u << 20);

/// Behavioral tables of the mixture, in the protocol's layout. Rounds not
/// owned by the party are left empty.
ClassicalProtocol remix(const ClassicalProtocol& shape, Party party,
                        const std::vector<WeightedPure>& mixture);

/// Protocol with one party's behavior replaced by a pure strategy.
ClassicalProtocol with_pure(const ClassicalProtocol& c, const PureClassicalStrategy& s);

OutcomeDistribution classical_distribution(const ClassicalProtocol& c);

bool classical_correct(const ClassicalProtocol& c, double tol = 1e-12);

/// P(target, target) when `cheater` plays `s` and the other party is honest.
double classical_forcing_probability(const ClassicalProtocol& c, const PureClassicalStrategy& s,
                                     int target);

struct WinningResult {
  Party party = Party::kAlice;
  PureClassicalStrategy strategy;
  double value = 0.0;
  /// Outcome the winner forces against the honest opponent.
  Coin forced = Coin::kZero;
};

/// Zero-sum game on the honest support tree in which Alice wins iff the
/// outcome is `winner_outcome`. Backward induction; ties go to the lowest
/// message index. Throws PreconditionError unless the protocol is correct.
WinningResult solve_winning(const ClassicalProtocol& c, int winner_outcome);

/// Alice announces a fair bit, then Bob does; the result is their XOR.
ClassicalProtocol classical_xor();
/// Alice announces a fair bit, which is the result.
ClassicalProtocol classical_dictator();

/// Every protocol with 1..max_rounds binary rounds, alternating owners from
/// either starting party, rows drawn from {(1,0), (1/2,1/2), (0,1)}, and a
/// deterministic output map shared by both parties, filtered to those whose
/// honest distribution is (1/2, 1/2) on the diagonal. Visits each with `f`
/// and returns how many were visited.
std::size_t for_each_fair_protocol(std::size_t max_rounds,
                                   const std::function<void(const ClassicalProtocol&)>& f);

}  // namespace qct
