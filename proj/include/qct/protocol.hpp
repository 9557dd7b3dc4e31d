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

// Turn-based two-party protocol engine.
//
// The global system is Alice (x) Mailbox (x) Bob. Alice prepares
// Alice (x) Mailbox, Bob prepares his notepad, then the parties apply their
// moves alternately to their notepad together with the mailbox. The slots are
// numbered 1..rounds; the first mover takes the odd slots. With the default
// first mover (Bob) and an even number of rounds Alice applies the last move,
// which is the usual alternation
//
//   rho_N = (T_A^(N) (x) Id)(Id (x) T_B^(N-1)) ... (T_A^(2) (x) Id)(Id (x) T_B^(1)) rho_0.
//
// Each party finishes by measuring a three-outcome POVM {0, 1, abort} on its
// notepad.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qct/algebra.hpp"

namespace qct {

enum class Party { kAlice, kBob };

std::string to_string(Party p);
Party party_from_string(const std::string& s);
Party other(Party p);

/// Coin outcomes. kAbort is the failure symbol.
enum class Coin { kZero = 0, kOne = 1, kAbort = 2 };

inline constexpr std::array<Coin, 3> kCoins = {Coin::kZero, Coin::kOne, Coin::kAbort};
/// Outcome labels as used in POVMs and documents.
inline constexpr std::array<const char*, 3> kCoinLabels = {"0", "1", "abort"};

std::string to_string(Coin c);
Coin coin_from_string(const std::string& s);
Coin coin_from_bit(int bit);

struct Strategy {
  Party party = Party::kAlice;
  AlgebraSpec private_algebra = AlgebraSpec::quantum(1);
  AlgebraSpec mailbox = AlgebraSpec::quantum(1);
  /// Alice: a state on private (x) mailbox. Bob: a state on private.
  CMatrix initial;
  /// Alice: channels on private (x) mailbox. Bob: on mailbox (x) private.
  std::vector<Channel> moves;
  /// POVM on the private algebra with labels "0", "1", "abort".
  Povm final_measurement = Povm(AlgebraSpec::quantum(1), {{"0", CMatrix::Identity(1, 1)}});

  /// Algebra of the initial state.
  AlgebraSpec initial_algebra() const;
  /// Algebra every move acts on.
  AlgebraSpec move_algebra() const;
  /// Throws ValidationError naming the violated invariant.
  void validate() const;
};

/// Build a validated strategy.
Strategy make_strategy(Party party, AlgebraSpec private_algebra, AlgebraSpec mailbox,
                       CMatrix initial, std::vector<Channel> moves, Povm final_measurement);

struct Protocol {
  Strategy alice;
  Strategy bob;
  AlgebraSpec mailbox = AlgebraSpec::quantum(1);
  std::size_t rounds = 0;
  Party first_mover = Party::kBob;

  /// Number of moves the party owns for this round count.
  std::size_t moves_of(Party p) const;
  Party mover(std::size_t slot) const;  // slot is 1-based
  /// Throws ProtocolError on alternation or mailbox mismatch.
  void validate() const;
};

/// True when both algebras describe the same mailbox, or one is the
/// enveloping quantum algebra of the other (strategies in unitary normal
/// form work on the enveloping mailbox).
bool mailbox_compatible(const AlgebraSpec& a, const AlgebraSpec& b);

class OutcomeDistribution {
 public:
  OutcomeDistribution() = default;
  /// Validates: entries >= -1e-12 (clipped to 0), sum 1 within 1e-9.
  explicit OutcomeDistribution(const std::array<std::array<double, 3>, 3>& table);

  double operator()(Coin alice, Coin bob) const {
    return table_[static_cast<int>(alice)][static_cast<int>(bob)];
  }
  const std::array<std::array<double, 3>, 3>& table() const { return table_; }
  double max_deviation(const OutcomeDistribution& other) const;

 private:
  std::array<std::array<double, 3>, 3> table_{};
};

struct PayoffTable {
  /// cells[a][b] = (alice payoff, bob payoff).
  std::array<std::array<std::pair<double, double>, 3>, 3> cells{};

  /// Alice gains on (0,0), Bob on (1,1), nothing otherwise.
  static PayoffTable weak_game();
  /// Zero-sum variant: (0,0) -> (1,-1), (1,1) -> (-1,1), other -> (0,0).
  static PayoffTable zero_sum();
};

/// Final global state on Alice (x) Mailbox (x) Bob.
CMatrix final_state(const Protocol& p);

OutcomeDistribution run_exact(const Protocol& p);

/// Joint distribution read off a global state on Alice (x) Mailbox (x) Bob.
OutcomeDistribution outcome_distribution(const Protocol& p, const CMatrix& global);

using CountTable = std::array<std::array<std::uint64_t, 3>, 3>;

/// n i.i.d. draws from run_exact's distribution. Deterministic in `seed`.
CountTable sample(const Protocol& p, std::uint64_t n, std::uint64_t seed);
CountTable sample(const OutcomeDistribution& d, std::uint64_t n, std::uint64_t seed);

bool check_correct(const OutcomeDistribution& d, double tol = 1e-9);

/// P(x, x) for x = target when `cheater` plays `replacement` and the other
/// party stays honest.
double forcing_probability(const Protocol& p, Party cheater, int target,
                           const Strategy& replacement);

/// Protocol with one party's strategy swapped.
Protocol with_strategy(const Protocol& p, const Strategy& replacement);

std::pair<double, double> payoff(const OutcomeDistribution& d, const PayoffTable& t);

}  // namespace qct
