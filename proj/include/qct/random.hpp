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

// Seeded randomness.
//
// The engine is MT19937-64 (std::mt19937_64, identical output on every
// conforming implementation). Doubles are drawn as (x >> 11) * 2^-53 and
// normals with the Box-Muller transform, so streams do not depend on the
// standard library's distribution classes. Sub-streams (one per restart,
// per opponent, ...) are seeded with splitmix64(seed ^ splitmix64(index)).

#pragma once

#include <cstdint>
#include <random>

#include "qct/linalg.hpp"

namespace qct {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream number `index` derived from `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  double normal();
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

CMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols);
/// Haar-distributed unitary.
CMatrix random_unitary(Rng& rng, std::size_t dim);
/// rows x cols matrix with orthonormal columns.
CMatrix random_isometry(Rng& rng, std::size_t rows, std::size_t cols);
CVector random_pure_state(Rng& rng, std::size_t dim);
/// Density operator of the given rank (rank == dim gives a full-rank state).
CMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank);
CMatrix random_hermitian(Rng& rng, std::size_t dim);

}  // namespace qct
