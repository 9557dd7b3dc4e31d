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

// Shared helpers for the unit tests.

#pragma once

#include <cmath>

#include "doctest.h"
#include "qct/protocol.hpp"
#include "qct/random.hpp"
#include "qct/random_strategies.hpp"

namespace qct::testing {

inline double max_diff(const CMatrix& a, const CMatrix& b) {
  REQUIRE(a.rows() == b.rows());
  REQUIRE(a.cols() == b.cols());
  return (a - b).cwiseAbs().maxCoeff();
}

/// Random protocol with small algebras: private dims <= 3, mailbox dim <= 3.
inline Protocol random_protocol(Rng& rng, std::size_t rounds, Party first = Party::kBob) {
  const auto mailbox = random_algebra(rng, 3);
  Protocol p;
  p.mailbox = mailbox;
  p.rounds = rounds;
  p.first_mover = first;
  p.alice = random_strategy(rng, Party::kAlice, random_algebra(rng, 3), mailbox, p.moves_of(Party::kAlice),
                            1 + rng.index(2));
  p.bob = random_strategy(rng, Party::kBob, random_algebra(rng, 3), mailbox, p.moves_of(Party::kBob),
                          1 + rng.index(2));
  p.validate();
  return p;
}

}  // namespace qct::testing
