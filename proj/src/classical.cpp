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

#include "qct/classical.hpp"

#include <cmath>
#include <sstream>

#include "qct/errors.hpp"

namespace qct {

namespace {

constexpr double kRowTolerance = 1e-12;

template <typename Row>
void check_row(const Row& row, std::size_t expected, const std::string& where) {
  if (row.size() != expected) {
    throw ValidationError(where + ": row has " + std::to_string(row.size()) + " entries, expected " +
                          std::to_string(expected));
  }
  double sum = 0.0;
  for (double x : row) {
    if (!std::isfinite(x) || x < 0.0) {
      throw ValidationError(where + ": entries must be finite and non-negative");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > kRowTolerance) {
    std::ostringstream os;
    os << where << ": row sums to " << sum << ", not 1 within 1e-12";
    throw ValidationError(os.str());
  }
}

OutputRow one_hot(Coin c) {
  OutputRow r{0.0, 0.0, 0.0};
  r[static_cast<int>(c)] = 1.0;
  return r;
}

std::vector<double> one_hot(std::size_t n, std::size_t k) {
  std::vector<double> r(n, 0.0);
  r[k] = 1.0;
  return r;
}

std::vector<OutputRow>& output_of(ClassicalProtocol& c, Party p) {
  return p == Party::kAlice ? c.alice_output : c.bob_output;
}

const std::vector<OutputRow>& output_of(const ClassicalProtocol& c, Party p) {
  return p == Party::kAlice ? c.alice_output : c.bob_output;
}

// Probability of every full transcript under the message tables.
std::vector<double> transcript_probabilities(const ClassicalProtocol& c) {
  std::vector<double> probs = {1.0};
  for (const auto& round : c.rounds) {
    const std::size_t k = round.alphabet.size();
    std::vector<double> next(probs.size() * k);
    for (std::size_t p = 0; p < probs.size(); ++p) {
      for (std::size_t m = 0; m < k; ++m) next[p * k + m] = probs[p] * round.table[p][m];
    }
    probs = std::move(next);
  }
  return probs;
}

std::size_t argmax(const OutputRow& r) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] > r[best]) best = i;
  }
  return best;
}

}  // namespace

std::size_t ClassicalProtocol::prefix_count(std::size_t round) const {
  std::size_t n = 1;
  for (std::size_t r = 0; r < round; ++r) n *= rounds[r].alphabet.size();
  return n;
}

void ClassicalProtocol::validate() const {
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    const auto& round = rounds[r];
    const std::string where = "ClassicalProtocol round " + std::to_string(r + 1);
    if (round.alphabet.empty()) throw ValidationError(where + ": empty alphabet");
    if (round.table.size() != prefix_count(r)) {
      throw ValidationError(where + ": table needs one row per transcript prefix (" +
                            std::to_string(prefix_count(r)) + ")");
    }
    for (const auto& row : round.table) check_row(row, round.alphabet.size(), where);
  }
  const std::size_t leaves = prefix_count(rounds.size());
  for (Party p : {Party::kAlice, Party::kBob}) {
    const auto& out = output_of(*this, p);
    const std::string where = "ClassicalProtocol " + to_string(p) + " output";
    if (out.size() != leaves) {
      throw ValidationError(where + ": needs one row per transcript (" + std::to_string(leaves) + ")");
    }
    for (const auto& row : out) check_row(row, 3, where);
  }
}

std::vector<WeightedPure> decompose_pure(const ClassicalProtocol& c, Party party,
                                         std::size_t max_strategies) {
  c.validate();
  // Information sets: owned (round, prefix) rows, then output rows.
  struct InfoSet {
    std::size_t round;  // rounds.size() for outputs
    std::size_t prefix;
    std::vector<std::pair<std::size_t, double>> support;
  };
  std::vector<InfoSet> sets;
  std::size_t total = 1;
  auto add = [&](std::size_t round, std::size_t prefix, const auto& row) {
    InfoSet s{round, prefix, {}};
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] > 0.0) s.support.push_back({k, row[k]});
    }
    total *= s.support.size();
    if (total > max_strategies) {
      throw PreconditionError("decompose_pure: more than " + std::to_string(max_strategies) +
                              " pure strategies");
    }
    sets.push_back(std::move(s));
  };
  for (std::size_t r = 0; r < c.rounds.size(); ++r) {
    if (c.rounds[r].owner != party) continue;
    for (std::size_t p = 0; p < c.rounds[r].table.size(); ++p) add(r, p, c.rounds[r].table[p]);
  }
  const auto& out = output_of(c, party);
  for (std::size_t t = 0; t < out.size(); ++t) add(c.rounds.size(), t, out[t]);

  PureClassicalStrategy base;
  base.party = party;
  base.choices.resize(c.rounds.size());
  for (std::size_t r = 0; r < c.rounds.size(); ++r) {
    if (c.rounds[r].owner == party) base.choices[r].assign(c.rounds[r].table.size(), 0);
  }
  base.output.assign(out.size(), Coin::kZero);

  std::vector<WeightedPure> result;
  result.reserve(total);
  std::vector<std::size_t> odometer(sets.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    PureClassicalStrategy s = base;
    double w = 1.0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const auto [k, prob] = sets[i].support[odometer[i]];
      w *= prob;
      if (sets[i].round == c.rounds.size()) {
        s.output[sets[i].prefix] = kCoins[k];
      } else {
        s.choices[sets[i].round][sets[i].prefix] = k;
      }
    }
    result.push_back({w, std::move(s)});
    for (std::size_t i = sets.size(); i-- > 0;) {
      if (++odometer[i] < sets[i].support.size()) break;
      odometer[i] = 0;
    }
  }
  return result;
}

ClassicalProtocol remix(const ClassicalProtocol& shape, Party party,
                        const std::vector<WeightedPure>& mixture) {
  ClassicalProtocol c = shape;
  for (auto& round : c.rounds) {
    if (round.owner != party) {
      round.table.clear();
      continue;
    }
    for (auto& row : round.table) std::fill(row.begin(), row.end(), 0.0);
  }
  auto& out = output_of(c, party);
  for (auto& row : out) row = {0.0, 0.0, 0.0};
  output_of(c, other(party)).clear();
  for (const auto& [w, s] : mixture) {
    for (std::size_t r = 0; r < c.rounds.size(); ++r) {
      if (c.rounds[r].owner != party) continue;
      for (std::size_t p = 0; p < s.choices[r].size(); ++p) c.rounds[r].table[p][s.choices[r][p]] += w;
    }
    for (std::size_t t = 0; t < s.output.size(); ++t) out[t][static_cast<int>(s.output[t])] += w;
  }
  return c;
}

ClassicalProtocol with_pure(const ClassicalProtocol& c, const PureClassicalStrategy& s) {
  ClassicalProtocol out = c;
  for (std::size_t r = 0; r < out.rounds.size(); ++r) {
    auto& round = out.rounds[r];
    if (round.owner != s.party) continue;
    if (r >= s.choices.size() || s.choices[r].size() != round.table.size()) {
      throw DimensionError("with_pure: strategy does not match the protocol's round layout");
    }
    for (std::size_t p = 0; p < round.table.size(); ++p) {
      round.table[p] = one_hot(round.alphabet.size(), s.choices[r][p]);
    }
  }
  auto& outputs = output_of(out, s.party);
  if (s.output.size() != outputs.size()) {
    throw DimensionError("with_pure: strategy output map has the wrong number of transcripts");
  }
  for (std::size_t t = 0; t < outputs.size(); ++t) outputs[t] = one_hot(s.output[t]);
  return out;
}

OutcomeDistribution classical_distribution(const ClassicalProtocol& c) {
  c.validate();
  const auto probs = transcript_probabilities(c);
  std::array<std::array<double, 3>, 3> table{};
  for (std::size_t t = 0; t < probs.size(); ++t) {
    if (probs[t] == 0.0) continue;
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t b = 0; b < 3; ++b) table[a][b] += probs[t] * c.alice_output[t][a] * c.bob_output[t][b];
    }
  }
  return OutcomeDistribution(table);
}

bool classical_correct(const ClassicalProtocol& c, double tol) {
  const auto d = classical_distribution(c);
  return 1.0 - d(Coin::kZero, Coin::kZero) - d(Coin::kOne, Coin::kOne) <= tol;
}

double classical_forcing_probability(const ClassicalProtocol& c, const PureClassicalStrategy& s,
                                     int target) {
  const Coin t = coin_from_bit(target);
  return classical_distribution(with_pure(c, s))(t, t);
}

WinningResult solve_winning(const ClassicalProtocol& c, int winner_outcome) {
  const Coin w = coin_from_bit(winner_outcome);
  const auto d = classical_distribution(c);
  const double off = 1.0 - d(Coin::kZero, Coin::kZero) - d(Coin::kOne, Coin::kOne);
  if (off > kRowTolerance) {
    std::ostringstream os;
    os << "solve_winning: protocol is not correct (honest mass " << off
       << " outside {(0,0), (1,1)})";
    throw PreconditionError(os.str());
  }

  const std::size_t n = c.rounds.size();
  // alice_wins[r][p]: Alice wins the subgame at prefix p before round r,
  // both players restricted to messages in the honest support.
  std::vector<std::vector<char>> alice_wins(n + 1);
  alice_wins[n].resize(c.prefix_count(n));
  for (std::size_t t = 0; t < alice_wins[n].size(); ++t) {
    alice_wins[n][t] = argmax(c.alice_output[t]) == static_cast<std::size_t>(w);
  }
  for (std::size_t r = n; r-- > 0;) {
    const auto& round = c.rounds[r];
    const std::size_t k = round.alphabet.size();
    alice_wins[r].resize(round.table.size());
    for (std::size_t p = 0; p < round.table.size(); ++p) {
      bool any = false, all = true;
      for (std::size_t m = 0; m < k; ++m) {
        if (round.table[p][m] <= 0.0) continue;
        const bool win = alice_wins[r + 1][p * k + m];
        any = any || win;
        all = all && win;
      }
      alice_wins[r][p] = round.owner == Party::kAlice ? any : all;
    }
  }

  WinningResult result;
  result.party = alice_wins[0][0] ? Party::kAlice : Party::kBob;
  const bool want = result.party == Party::kAlice;
  result.forced = want ? w : coin_from_bit(1 - winner_outcome);
  auto& s = result.strategy;
  s.party = result.party;
  s.choices.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& round = c.rounds[r];
    if (round.owner != result.party) continue;
    const std::size_t k = round.alphabet.size();
    s.choices[r].resize(round.table.size());
    for (std::size_t p = 0; p < round.table.size(); ++p) {
      std::size_t pick = k;
      for (std::size_t m = 0; m < k && pick == k; ++m) {
        if (round.table[p][m] > 0.0 && static_cast<bool>(alice_wins[r + 1][p * k + m]) == want) pick = m;
      }
      for (std::size_t m = 0; m < k && pick == k; ++m) {
        if (round.table[p][m] > 0.0) pick = m;
      }
      s.choices[r][p] = pick;
    }
  }
  s.output.assign(c.prefix_count(n), result.forced);
  result.value = classical_forcing_probability(c, s, static_cast<int>(result.forced));
  return result;
}

ClassicalProtocol classical_xor() {
  ClassicalProtocol c;
  c.rounds.push_back({Party::kAlice, {"0", "1"}, {{0.5, 0.5}}});
  c.rounds.push_back({Party::kBob, {"0", "1"}, {{0.5, 0.5}, {0.5, 0.5}}});
  for (std::size_t t = 0; t < 4; ++t) {
    const Coin x = coin_from_bit(static_cast<int>((t >> 1) ^ (t & 1)));
    c.alice_output.push_back(one_hot(x));
    c.bob_output.push_back(one_hot(x));
  }
  c.validate();
  return c;
}

ClassicalProtocol classical_dictator() {
  ClassicalProtocol c;
  c.rounds.push_back({Party::kAlice, {"0", "1"}, {{0.5, 0.5}}});
  for (int t = 0; t < 2; ++t) {
    c.alice_output.push_back(one_hot(coin_from_bit(t)));
    c.bob_output.push_back(one_hot(coin_from_bit(t)));
  }
  c.validate();
  return c;
}

std::size_t for_each_fair_protocol(std::size_t max_rounds,
                                   const std::function<void(const ClassicalProtocol&)>& f) {
  static const std::vector<std::vector<double>> kRows = {{1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}};
  std::size_t visited = 0;
  for (std::size_t n = 1; n <= max_rounds; ++n) {
    for (Party first : {Party::kAlice, Party::kBob}) {
      ClassicalProtocol c;
      std::size_t rows = 0;
      for (std::size_t r = 0; r < n; ++r) {
        const Party owner = r % 2 == 0 ? first : other(first);
        c.rounds.push_back({owner, {"0", "1"}, std::vector<std::vector<double>>(std::size_t{1} << r)});
        rows += std::size_t{1} << r;
      }
      const std::size_t leaves = std::size_t{1} << n;
      std::vector<std::size_t> pick(rows, 0);
      while (true) {
        std::size_t i = 0;
        for (auto& round : c.rounds) {
          for (auto& row : round.table) row = kRows[pick[i++]];
        }
        const auto probs = transcript_probabilities(c);
        for (std::size_t map = 0; map < (std::size_t{1} << leaves); ++map) {
          double zero = 0.0;
          for (std::size_t t = 0; t < leaves; ++t) {
            if (((map >> t) & 1) == 0) zero += probs[t];
          }
          if (zero != 0.5) continue;
          c.alice_output.clear();
          for (std::size_t t = 0; t < leaves; ++t) {
            c.alice_output.push_back(one_hot(coin_from_bit(static_cast<int>((map >> t) & 1))));
          }
          c.bob_output = c.alice_output;
          f(c);
          ++visited;
        }
        std::size_t k = rows;
        while (k-- > 0) {
          if (++pick[k] < kRows.size()) break;
          pick[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
  }
  return visited;
}

}  // namespace qct
