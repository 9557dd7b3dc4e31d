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

// Dilations: purification of states, Stinespring form of channels, Naimark
// extension of POVMs, and the unitary normal form of a whole strategy.
//
// All constructions work in the enveloping quantum algebra; classical data
// becomes coherent ancilla content. Ancilla reference states are always |0>.

#pragma once

#include <cstdint>
#include <vector>

#include "qct/protocol.hpp"

namespace qct {

struct StinespringForm {
  std::size_t ancilla_dim = 1;
  CVector ancilla_state;
  /// Unitary on system (x) ancilla with
  /// T(rho) = tr_ancilla U (rho (x) |phi><phi|) U^dagger.
  CMatrix unitary;
};

struct NaimarkForm {
  std::size_t ancilla_dim = 1;
  CVector ancilla_state;
  /// Orthogonal projections on system (x) ancilla, in the POVM's outcome
  /// order, with tr(E_x rho) = tr(F_x (rho (x) |phi><phi|)).
  std::vector<Outcome> projectors;
};

/// Vector on system (x) ancilla whose ancilla marginal is traced away to give
/// `rho`. The ancilla dimension is the numerical rank of rho (threshold 1e-9).
CVector purify(const State& rho);

/// Requires a channel with equal input and output dimension. Unitary
/// channels get a trivial ancilla and U itself; otherwise the ancilla has one
/// level per Kraus operator.
StinespringForm stinespring(const Channel& t);

/// Projective POVMs get a trivial ancilla; otherwise the pointer has one
/// level per outcome.
NaimarkForm naimark(const Povm& e);

/// A strategy with pure initial state, unitary moves and projective final
/// measurement, together with the ancilla layout that produced it.
struct PureStrategy {
  Strategy strategy;
  CVector initial_vector;
  /// Private factors are (original private, purification ancilla, one
  /// ancilla per move, measurement pointer); dimensions in that order.
  Dims private_factors;

  /// Throws ValidationError unless the strategy is pure.
  void validate() const;
};

PureStrategy unitary_normal_form(const Strategy& s);

struct DilationReport {
  /// Max-cell deviation of the outcome table against the protocol's own
  /// opponent.
  double context_deviation = 0.0;
  /// Same, one entry per random opponent.
  std::vector<double> deviations;
  double max_deviation = 0.0;
};

/// Plays `original` and `pure` against the protocol's own opponent and
/// against `random_opponents` random opponents, comparing the full 3x3
/// outcome tables.
DilationReport verify_normal_form(const Protocol& context, const Strategy& original,
                                  const PureStrategy& pure, std::size_t random_opponents,
                                  std::uint64_t seed);

}  // namespace qct
