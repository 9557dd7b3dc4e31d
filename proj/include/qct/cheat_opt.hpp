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

// Cheating analysis: closed-form discrimination bounds and a multistart
// simplex search over parameterized strategy families.
//
// Search values are lower bounds (every evaluated point is a feasible
// strategy). Upper bounds only come from the analytic oracles.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qct/protocol.hpp"

namespace qct {

/// Optimal success probability for telling rho0 (prior `prior`) from rho1.
double helstrom(const CMatrix& rho0, const CMatrix& rho1, double prior = 0.5);
double helstrom(const State& rho0, const State& rho1, double prior = 0.5);

/// exp(A) for the anti-Hermitian A assembled from dim^2 reals: first the
/// dim diagonal phases (A_kk = i p), then for each pair j < k a real and an
/// imaginary part (A_kj = (x + i y) / 2, A_jk = (-x + i y) / 2).
CMatrix parameterize_unitary(const std::vector<double>& params, std::size_t dim);

/// Density operator L L^dagger / tr(L L^dagger) from dim^2 reals: dim real
/// diagonal entries of L, then real and imaginary parts of the strictly
/// lower entries row by row.
CMatrix parameterize_density(const std::vector<double>& params, std::size_t dim);

using Bounds = std::vector<std::pair<double, double>>;

struct SimplexResult {
  double value = 0.0;
  std::vector<double> point;
  std::size_t evaluations = 0;
};

/// Maximizes f by Nelder-Mead with points clamped into `bounds`, using at
/// most `max_evaluations` calls.
SimplexResult maximize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> start, const Bounds& bounds,
                               std::size_t max_evaluations);

struct SearchConfig {
  std::size_t restarts = 32;
  /// Total evaluation budget, split evenly over restarts.
  long long budget = 20000;
  std::uint64_t seed = 0;
  /// Starting points for the first restarts (inherited from a smaller
  /// family, say); the remaining restarts start uniformly in bounds.
  std::vector<std::vector<double>> starts;
  /// Values above claimed_bound + 1e-6 raise a diagnostic.
  std::optional<double> claimed_bound;
};

struct PreparationBound {
  double value = 0.0;
  CMatrix argmax;
  std::size_t evaluations = 0;
  std::vector<std::string> diagnostics;
};

/// max over mailbox states sigma of (1/2)[F(sigma, rho0)^2 + F(sigma, rho1)^2]
/// where rho_b is psi_b reduced to factor `mailbox_factor` of `dims`.
PreparationBound alice_preparation_bound(const CVector& psi0, const CVector& psi1,
                                         const Dims& dims, std::size_t mailbox_factor,
                                         const SearchConfig& config = {});

struct CheatFamily {
  std::string name;
  Party party = Party::kBob;
  std::size_t parameter_count = 0;
  std::function<Strategy(const std::vector<double>&)> builder;
  Bounds bounds;
};

struct SearchReport {
  std::string family;
  Party party = Party::kBob;
  int target = 0;
  double best_value = 0.0;
  std::vector<double> best_parameters;
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
  std::optional<double> claimed_bound;
  bool bound_violation = false;
  std::vector<std::string> diagnostics;
};

/// Statement carried by every report about what best_value certifies.
extern const char* const kLowerBoundNote;

SearchReport optimize_cheat(const Protocol& p, const CheatFamily& family, int target,
                            const SearchConfig& config = {});

/// The shipped strategy of `party` in `p`, no parameters.
CheatFamily honest_family(const Protocol& p, Party party);

namespace dk {

/// The published cheat for `party`, no parameters.
CheatFamily published_family(Party party, int target);
/// Bob measures the mailbox qutrit in the computational basis and, on
/// result c, announces 1 with probability params[c]; he claims `target`.
CheatFamily measure_respond_family(int target);
/// As measure_respond_family, measuring in the basis U^dagger|c> with U
/// from params[3..12); zero extra parameters give the computational basis.
CheatFamily rotated_measure_respond_family(int target);
/// Alice prepares a 9-dim vector (18 reals) on her qutrit and the mailbox
/// qutrit, applies a unitary (9 reals) on her qutrit when the announced
/// bit differs from `target`, hands the qutrit over and claims `target`.
CheatFamily prep_unitary_family(int target);

/// Family by CLI name: published, honest, measure-respond,
/// rotated-measure-respond (Bob), prep-unitary (Alice).
CheatFamily family_by_name(const std::string& name, Party party, int target, const Protocol& p);

/// Value the published cheats achieve; searches report anything above it.
inline constexpr double kClaimedCheatValue = 0.75;

}  // namespace dk

}  // namespace qct
