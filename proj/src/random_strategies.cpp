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

#include "qct/random_strategies.hpp"

#include <numeric>

namespace qct {

namespace {

std::vector<std::vector<std::size_t>> sector_indices(const AlgebraSpec& algebra) {
  std::vector<std::vector<std::size_t>> out(algebra.block_count());
  for (std::size_t b = 0; b < algebra.block_count(); ++b) out[b] = algebra.block_indices(b);
  return out;
}

std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.index(i)]);
  return p;
}

}  // namespace

AlgebraSpec random_algebra(Rng& rng, std::size_t max_dim) {
  const std::size_t total = 1 + rng.index(max_dim);
  std::vector<Block> blocks;
  std::size_t left = total;
  while (left > 0) {
    const std::size_t d = 1 + rng.index(left);
    blocks.push_back(Block{"b" + std::to_string(blocks.size()), d});
    left -= d;
  }
  return AlgebraSpec(std::move(blocks));
}

CMatrix random_block_state(Rng& rng, const AlgebraSpec& algebra) {
  const std::size_t n = algebra.total_dim();
  CMatrix rho = CMatrix::Zero(n, n);
  for (const auto& idx : sector_indices(algebra)) {
    const CMatrix g = random_ginibre(rng, idx.size(), idx.size());
    const CMatrix block = g * g.adjoint();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = 0; j < idx.size(); ++j) rho(idx[i], idx[j]) = block(i, j);
    }
  }
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

Channel random_block_channel(Rng& rng, const AlgebraSpec& algebra, std::size_t kraus_count) {
  const std::size_t n = algebra.total_dim();
  const auto sectors = sector_indices(algebra);
  const std::size_t s_count = sectors.size();

  // Every block needs at least as many target rows as it has columns.
  auto rows_for = [&](const std::vector<std::vector<std::size_t>>& targets, std::size_t s) {
    std::size_t rows = 0;
    for (const auto& t : targets) rows += sectors[t[s]].size();
    return rows;
  };
  std::vector<std::vector<std::size_t>> targets(kraus_count);
  bool fits = false;
  for (int attempt = 0; attempt < 8 && !fits; ++attempt) {
    for (auto& t : targets) t = random_permutation(rng, s_count);
    fits = true;
    for (std::size_t s = 0; s < s_count; ++s) fits = fits && rows_for(targets, s) >= sectors[s].size();
  }
  if (!fits) {
    for (auto& t : targets) {
      t.resize(s_count);
      std::iota(t.begin(), t.end(), 0);
    }
  }

  std::vector<CMatrix> kraus(kraus_count, CMatrix::Zero(n, n));
  for (std::size_t s = 0; s < s_count; ++s) {
    const std::size_t rows = rows_for(targets, s);
    const CMatrix v = random_isometry(rng, rows, sectors[s].size());
    std::size_t offset = 0;
    for (std::size_t k = 0; k < kraus_count; ++k) {
      const auto& out = sectors[targets[k][s]];
      for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = 0; j < sectors[s].size(); ++j) {
          kraus[k](out[i], sectors[s][j]) = v(offset + i, j);
        }
      }
      offset += out.size();
    }
  }
  return Channel(algebra, algebra, std::move(kraus));
}

Povm random_coin_povm(Rng& rng, const AlgebraSpec& algebra) {
  const std::size_t n = algebra.total_dim();
  std::vector<Outcome> outcomes;
  for (const char* label : kCoinLabels) outcomes.push_back({label, CMatrix::Zero(n, n)});
  for (const auto& idx : sector_indices(algebra)) {
    const std::size_t d = idx.size();
    const CMatrix v = random_isometry(rng, 3 * d, d);
    for (std::size_t x = 0; x < 3; ++x) {
      const CMatrix part = v.middleRows(x * d, d);
      const CMatrix e = part.adjoint() * part;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) outcomes[x].effect(idx[i], idx[j]) = e(i, j);
      }
    }
  }
  for (auto& o : outcomes) o.effect = 0.5 * (o.effect + o.effect.adjoint());
  return Povm(algebra, std::move(outcomes));
}

Strategy random_strategy(Rng& rng, Party party, const AlgebraSpec& private_algebra,
                         const AlgebraSpec& mailbox, std::size_t moves, std::size_t kraus_count) {
  Strategy s;
  s.party = party;
  s.private_algebra = private_algebra;
  s.mailbox = mailbox;
  s.initial = random_block_state(rng, s.initial_algebra());
  const auto on = s.move_algebra();
  for (std::size_t i = 0; i < moves; ++i) s.moves.push_back(random_block_channel(rng, on, kraus_count));
  s.final_measurement = random_coin_povm(rng, private_algebra);
  s.validate();
  return s;
}

Strategy random_opponent(Rng& rng, const Protocol& p, Party party, std::size_t max_private_dim) {
  const Strategy& current = party == Party::kAlice ? p.alice : p.bob;
  const auto algebra = random_algebra(rng, max_private_dim);
  return random_strategy(rng, party, algebra, current.mailbox, p.moves_of(party),
                         1 + rng.index(2));
}

}  // namespace qct
