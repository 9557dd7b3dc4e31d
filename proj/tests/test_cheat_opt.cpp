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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qct/cheat_opt.hpp"
#include "qct/dk_protocol.hpp"
#include "qct/errors.hpp"
#include "qct/random.hpp"
#include "support.hpp"

using namespace qct;
using qct::testing::max_diff;

namespace {

std::vector<double> random_point(Rng& rng, std::size_t n, double scale) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform(-scale, scale);
  return x;
}

}  // namespace

TEST_CASE("Helstrom: identical states cannot be told apart") {
  Rng rng(61);
  const CMatrix rho = random_density(rng, 3, 2);
  CHECK(helstrom(rho, rho) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(helstrom(rho, rho, 0.8) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("Helstrom: orthogonal states are perfectly distinguishable") {
  CHECK(helstrom(projector(basis_vector(2, 0)), projector(basis_vector(2, 1))) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(helstrom(projector(dk::psi0()), projector(dk::psi1())) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Helstrom on the mailbox marginals") {
  const std::vector<double> r0 = {0.5, 0.0, 0.5}, r1 = {0.0, 0.5, 0.5};
  CHECK(std::abs(helstrom(diagonal(r0), diagonal(r1)) - 0.75) < 1e-12);
  const auto a = AlgebraSpec::quantum(3);
  CHECK(std::abs(helstrom(State(a, diagonal(r0)), State(a, diagonal(r1))) - 0.75) < 1e-12);
}

TEST_CASE("Helstrom dominates every two-outcome measurement") {
  Rng rng(62);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix rho0 = random_density(rng, 3, 1 + rng.index(3));
    const CMatrix rho1 = random_density(rng, 3, 1 + rng.index(3));
    const double p = rng.uniform();
    // random effect 0 <= E <= I
    const auto eig = hermitian_eig(random_hermitian(rng, 3));
    RVector lambda(3);
    for (int i = 0; i < 3; ++i) lambda(i) = rng.uniform();
    const CMatrix e = eig.vectors * lambda.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    const double guess = p * (e * rho0).trace().real() + (1.0 - p) * ((identity(3) - e) * rho1).trace().real();
    CHECK(guess <= helstrom(rho0, rho1, p) + 1e-12);
  }
}

TEST_CASE("Helstrom input checks") {
  CHECK_THROWS(helstrom(identity(2) / 2.0, identity(3) / 3.0));
  CHECK_THROWS(helstrom(identity(2) / 2.0, identity(2) / 2.0, 1.5));
}

TEST_CASE("parameterized unitaries") {
  Rng rng(63);
  for (std::size_t d : {1u, 2u, 3u, 4u}) {
    CHECK(max_diff(parameterize_unitary(std::vector<double>(d * d, 0.0), d), identity(d)) < 1e-14);
    for (int trial = 0; trial < 5; ++trial) {
      CHECK(unitary_defect(parameterize_unitary(random_point(rng, d * d, 3.0), d)) < 1e-12);
    }
  }
  // a rotation by pi in the (0, 1) plane
  std::vector<double> x(4, 0.0);
  x[2] = std::acos(-1.0);
  CMatrix flip = CMatrix::Zero(2, 2);
  flip(0, 1) = -1.0;
  flip(1, 0) = 1.0;
  CHECK(max_diff(parameterize_unitary(x, 2), flip) < 1e-12);
  CHECK_THROWS_AS(parameterize_unitary({0.0, 0.0}, 2), DimensionError);
}

TEST_CASE("parameterized densities") {
  Rng rng(64);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix sigma = parameterize_density(random_point(rng, 9, 1.0), 3);
    CHECK(std::abs(sigma.trace() - 1.0) < 1e-12);
    CHECK(hermitian_defect(sigma) < 1e-14);
    CHECK(hermitian_eig(sigma).values(0) > -1e-12);
  }
}

TEST_CASE("Nelder-Mead maximizes a concave quadratic") {
  auto f = [](const std::vector<double>& x) { return -(x[0] - 0.3) * (x[0] - 0.3) - 2.0 * (x[1] + 0.2) * (x[1] + 0.2); };
  const auto r = maximize_simplex(f, {0.9, 0.9}, {{-1.0, 1.0}, {-1.0, 1.0}}, 2000);
  CHECK(r.point[0] == doctest::Approx(0.3).epsilon(1e-4));
  CHECK(r.point[1] == doctest::Approx(-0.2).epsilon(1e-4));
  CHECK(r.evaluations <= 2000);
}

TEST_CASE("Nelder-Mead respects the bounds") {
  auto f = [](const std::vector<double>& x) { return x[0]; };
  const auto r = maximize_simplex(f, {0.0}, {{-1.0, 1.0}}, 500);
  CHECK(r.point[0] <= 1.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("preparation bound for equal states is one") {
  Rng rng(65);
  const CVector v = random_pure_state(rng, 9);
  SearchConfig config;
  config.restarts = 4;
  config.budget = 4000;
  CHECK(alice_preparation_bound(v, v, {3, 3}, 1, config).value == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("preparation bound for the coin-flipping states") {
  SearchConfig config;
  config.seed = 7;
  config.claimed_bound = dk::kClaimedCheatValue;
  const auto r = alice_preparation_bound(dk::psi0(), dk::psi1(), {3, 3}, 1, config);
  CHECK(r.value >= 0.749);
  CHECK(r.value <= 0.75 + 1e-6);
  CHECK(r.diagnostics.empty());
  CHECK(std::abs(r.argmax.trace() - 1.0) < 1e-12);
}

TEST_CASE("preparation bound input checks") {
  CHECK_THROWS_AS(alice_preparation_bound(2.0 * dk::psi0(), dk::psi1(), {3, 3}, 1), PreconditionError);
  CHECK_THROWS_AS(alice_preparation_bound(dk::psi0(), dk::psi1(), {3, 3}, 2), DimensionError);
  CHECK_THROWS_AS(alice_preparation_bound(dk::psi0(), dk::psi1(), {2, 3}, 1), DimensionError);
}

TEST_CASE("a violated claimed bound raises a diagnostic") {
  SearchConfig config;
  config.restarts = 2;
  config.budget = 2000;
  config.claimed_bound = 0.6;
  const auto r = alice_preparation_bound(dk::psi0(), dk::psi1(), {3, 3}, 1, config);
  CHECK_FALSE(r.diagnostics.empty());

  const Protocol p = dk::build_dk_honest();
  const auto s = optimize_cheat(p, dk::published_family(Party::kBob, 0), 0, config);
  CHECK(s.bound_violation);
  CHECK_FALSE(s.diagnostics.empty());
}

TEST_CASE("honest family gives one half") {
  const Protocol p = dk::build_dk_honest();
  for (Party party : {Party::kAlice, Party::kBob}) {
    for (int t = 0; t < 2; ++t) {
      const auto r = optimize_cheat(p, honest_family(p, party), t);
      CHECK(std::abs(r.best_value - 0.5) < 1e-10);
      CHECK(r.restarts == 1);
    }
  }
}

TEST_CASE("published families give three quarters") {
  const Protocol p = dk::build_dk_honest();
  for (Party party : {Party::kAlice, Party::kBob}) {
    const auto r = optimize_cheat(p, dk::published_family(party, 1), 1);
    CHECK(std::abs(r.best_value - 0.75) < 1e-10);
  }
}

TEST_CASE("measure-and-respond search finds three quarters") {
  const Protocol p = dk::build_dk_honest();
  SearchConfig config;
  config.restarts = 8;
  config.budget = 4000;
  config.seed = 3;
  for (int t = 0; t < 2; ++t) {
    const auto r = optimize_cheat(p, dk::measure_respond_family(t), t, config);
    CHECK(r.best_value >= 0.749);
    CHECK(r.best_value <= 0.75 + 1e-9);
    CHECK(r.evaluations <= 4000);
  }
}

TEST_CASE("inherited starts make the larger family at least as good") {
  const Protocol p = dk::build_dk_honest();
  SearchConfig small;
  small.restarts = 2;
  small.budget = 200;
  small.seed = 5;
  const auto base = optimize_cheat(p, dk::measure_respond_family(0), 0, small);

  SearchConfig big = small;
  std::vector<double> start = base.best_parameters;
  start.resize(dk::rotated_measure_respond_family(0).parameter_count, 0.0);
  big.starts = {start};
  const auto r = optimize_cheat(p, dk::rotated_measure_respond_family(0), 0, big);
  CHECK(r.best_value >= base.best_value - 1e-12);
}

TEST_CASE("searches are deterministic for a fixed seed") {
  const Protocol p = dk::build_dk_honest();
  SearchConfig config;
  config.restarts = 3;
  config.budget = 600;
  config.seed = 11;
  const auto a = optimize_cheat(p, dk::measure_respond_family(1), 1, config);
  const auto b = optimize_cheat(p, dk::measure_respond_family(1), 1, config);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_parameters == b.best_parameters);
}

TEST_CASE("search input checks") {
  const Protocol p = dk::build_dk_honest();
  SearchConfig config;
  config.budget = 0;
  CHECK_THROWS_AS(optimize_cheat(p, dk::measure_respond_family(0), 0, config), PreconditionError);
  CHECK_THROWS_AS(dk::family_by_name("prep-unitary", Party::kBob, 0, p), PreconditionError);
  CHECK_THROWS_AS(dk::family_by_name("nonsense", Party::kBob, 0, p), PreconditionError);
  CHECK(dk::family_by_name("measure-respond", Party::kBob, 0, p).parameter_count == 3);
}

TEST_CASE("cheat values never exceed one") {
  Rng rng(66);
  const Protocol p = dk::build_dk_honest();
  const CheatFamily f = dk::prep_unitary_family(0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> x(f.parameter_count);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(f.bounds[i].first, f.bounds[i].second);
    const double v = forcing_probability(p, Party::kAlice, 0, f.builder(x));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0 + 1e-12);
  }
}
