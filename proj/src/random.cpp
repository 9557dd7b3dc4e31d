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

#include "qct/random.hpp"

#include <cmath>
#include <numbers>

#include "qct/errors.hpp"

namespace qct {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t n) {
  if (n == 0) throw PreconditionError("Rng::index: empty range");
  auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return k < n ? k : n - 1;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

CMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  CMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

CMatrix random_unitary(Rng& rng, std::size_t dim) {
  const CMatrix g = random_ginibre(rng, dim, dim);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column phases so the distribution is Haar.
  for (std::size_t k = 0; k < dim; ++k) {
    const Complex d = r(k, k);
    const double a = std::abs(d);
    if (a > 0.0) q.col(k) *= d / a;
  }
  return q;
}

CMatrix random_isometry(Rng& rng, std::size_t rows, std::size_t cols) {
  if (cols > rows) throw DimensionError("random_isometry: more columns than rows");
  return random_unitary(rng, rows).leftCols(cols);
}

CVector random_pure_state(Rng& rng, std::size_t dim) {
  CVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return v.normalized();
}

CMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank) {
  if (rank == 0 || rank > dim) throw PreconditionError("random_density: rank out of range");
  const CMatrix g = random_ginibre(rng, dim, rank);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

CMatrix random_hermitian(Rng& rng, std::size_t dim) {
  const CMatrix g = random_ginibre(rng, dim, dim);
  return 0.5 * (g + g.adjoint());
}

}  // namespace qct
