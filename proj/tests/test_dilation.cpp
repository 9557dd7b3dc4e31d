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
#include "qct/dilation.hpp"
#include "qct/dk_protocol.hpp"
#include "qct/errors.hpp"
#include "qct/random.hpp"
#include "qct/random_strategies.hpp"
#include "support.hpp"

using namespace qct;
using qct::testing::max_diff;
using qct::testing::random_protocol;

namespace {

CMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Povm trine() {
  const double pi = std::acos(-1.0);
  std::vector<Outcome> outcomes;
  const char* labels[] = {"0", "1", "abort"};
  for (int k = 0; k < 3; ++k) {
    CVector v(2);
    v << std::cos(2.0 * pi * k / 3.0), std::sin(2.0 * pi * k / 3.0);
    outcomes.push_back({labels[k], (2.0 / 3.0) * projector(v)});
  }
  return Povm(AlgebraSpec::quantum(2), outcomes);
}

}  // namespace

TEST_CASE("purification traces back to the state") {
  Rng rng(41);
  for (std::size_t d = 1; d <= 9; ++d) {
    const CMatrix rho = random_density(rng, d, 1 + rng.index(d));
    const CVector phi = purify(State(AlgebraSpec::quantum(d), rho));
    CHECK(phi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const std::size_t r = static_cast<std::size_t>(phi.size()) / d;
    CHECK(max_diff(partial_trace(projector(phi), {d, r}, {0}), rho) < 1e-10);
  }
}

TEST_CASE("purification of a pure state has a trivial ancilla") {
  Rng rng(42);
  const CVector v = random_pure_state(rng, 4);
  const CVector phi = purify(pure_state(AlgebraSpec::quantum(4), v));
  CHECK(phi.size() == 4);
  CHECK(std::abs(std::abs(v.dot(phi)) - 1.0) < 1e-12);
}

TEST_CASE("Stinespring dilation reproduces the channel on an operator basis") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_algebra(rng, 3);
    const std::size_t n = a.total_dim();
    const Channel t = random_block_channel(rng, a, 1 + rng.index(3));
    const StinespringForm f = stinespring(t);
    CHECK(unitary_defect(f.unitary) < 1e-9);
    const CMatrix anc = projector(f.ancilla_state);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const CMatrix e = unit(n, i, j);
        const CMatrix out = partial_trace(f.unitary * tensor(e, anc) * f.unitary.adjoint(),
                                          {n, f.ancilla_dim}, {0});
        CHECK(max_diff(out, t.apply(e)) < 1e-10);
      }
    }
  }
}

TEST_CASE("Stinespring of a unitary channel is the unitary itself") {
  Rng rng(44);
  const CMatrix u = random_unitary(rng, 3);
  const StinespringForm f = stinespring(Channel::unitary(AlgebraSpec::quantum(3), u));
  CHECK(f.ancilla_dim == 1);
  CHECK(max_diff(f.unitary, u) == 0.0);
}

TEST_CASE("Stinespring needs equal input and output dimensions") {
  const Channel trace_out(AlgebraSpec::quantum(2), AlgebraSpec::quantum(1),
                          {CMatrix(basis_vector(2, 0).adjoint()), CMatrix(basis_vector(2, 1).adjoint())});
  CHECK_THROWS_AS(stinespring(trace_out), ValidationError);
}

TEST_CASE("Naimark dilation of the trine") {
  Rng rng(45);
  const Povm e = trine();
  CHECK_FALSE(e.is_projective());
  const NaimarkForm f = naimark(e);
  REQUIRE(f.projectors.size() == 3);
  const std::size_t n = 2 * f.ancilla_dim;
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& p : f.projectors) {
    CHECK(max_diff(p.effect * p.effect, p.effect) < 1e-10);
    sum += p.effect;
  }
  CHECK(max_diff(sum, identity(n)) < 1e-10);
  const CMatrix anc = projector(f.ancilla_state);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix rho = random_density(rng, 2, 1 + rng.index(2));
    for (std::size_t x = 0; x < 3; ++x) {
      const double lhs = (e.outcomes()[x].effect * rho).trace().real();
      const double rhs = (f.projectors[x].effect * tensor(rho, anc)).trace().real();
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("Naimark dilation of random coin measurements") {
  Rng rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_algebra(rng, 3);
    const Povm e = random_coin_povm(rng, a);
    const NaimarkForm f = naimark(e);
    const CMatrix anc = projector(f.ancilla_state);
    const CMatrix rho = random_block_state(rng, a);
    for (std::size_t x = 0; x < 3; ++x) {
      const double lhs = (e.outcomes()[x].effect * rho).trace().real();
      const double rhs = (f.projectors[x].effect * tensor(rho, anc)).trace().real();
      CHECK(std::abs(lhs - rhs) < 1e-10);
    }
  }
}

TEST_CASE("normal form of honest Alice against honest and cheating Bob") {
  const Protocol p = dk::build_dk_honest();
  const PureStrategy pure = unitary_normal_form(p.alice);
  for (const Strategy& bob : {dk::honest_bob(), dk::build_bob_cheat(0), dk::build_bob_cheat(1)}) {
    const Protocol base = with_strategy(p, bob);
    const auto a = run_exact(base);
    const auto b = run_exact(with_strategy(base, pure.strategy));
    CHECK(a.max_deviation(b) < 1e-9);
  }
}

TEST_CASE("normal form of honest Bob against Alice's cheat") {
  const Protocol p = dk::build_dk_honest();
  const PureStrategy pure = unitary_normal_form(p.bob);
  for (int t = 0; t < 2; ++t) {
    const Protocol base = with_strategy(p, dk::build_alice_cheat(t));
    CHECK(run_exact(base).max_deviation(run_exact(with_strategy(base, pure.strategy))) < 1e-9);
  }
}

TEST_CASE("normal forms of random strategies against random opponents") {
  Rng rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    const Protocol p = random_protocol(rng, rng.index(5), rng.index(2) ? Party::kAlice : Party::kBob);
    const Party party = rng.index(2) ? Party::kAlice : Party::kBob;
    const Strategy& s = party == Party::kAlice ? p.alice : p.bob;
    const PureStrategy pure = unitary_normal_form(s);
    const DilationReport report = verify_normal_form(p, s, pure, 20, 1000 + trial);
    CHECK(report.deviations.size() == 20);
    CHECK(report.max_deviation < 1e-6);
  }
}

TEST_CASE("already pure strategies stay pure") {
  const Protocol p = dk::build_dk_honest();
  const PureStrategy once = unitary_normal_form(dk::build_alice_cheat(0));
  const PureStrategy twice = unitary_normal_form(once.strategy);
  CHECK_NOTHROW(twice.validate());
  const Protocol base = with_strategy(p, once.strategy);
  CHECK(run_exact(base).max_deviation(run_exact(with_strategy(p, twice.strategy))) < 1e-9);
}

TEST_CASE("PureStrategy validation rejects mixed strategies") {
  const PureStrategy fake{dk::honest_alice(), CVector(), {}};
  CHECK_THROWS_AS(fake.validate(), ValidationError);
}

TEST_CASE("each move unitary acts only on its own ancilla slot") {
  Rng rng(48);
  for (int trial = 0; trial < 6; ++trial) {
    const Protocol p = random_protocol(rng, 4);
    const Party party = trial % 2 ? Party::kAlice : Party::kBob;
    const Strategy& s = party == Party::kAlice ? p.alice : p.bob;
    const PureStrategy pure = unitary_normal_form(s);
    const std::size_t dm = pure.strategy.mailbox.total_dim();
    Dims full;
    std::size_t offset = 0;
    if (party == Party::kAlice) {
      full = pure.private_factors;
      full.push_back(dm);
      offset = 2;
    } else {
      full = {dm};
      full.insert(full.end(), pure.private_factors.begin(), pure.private_factors.end());
      offset = 3;
    }
    const std::size_t moves = pure.strategy.moves.size();
    for (std::size_t j = 0; j < moves; ++j) {
      const CMatrix& u = pure.strategy.moves[j].kraus().front();
      for (std::size_t k = 0; k < moves; ++k) {
        if (k == j) continue;
        const std::size_t dim = full[offset + k];
        const CMatrix x = embed_operator(random_ginibre(rng, dim, dim), full, {offset + k});
        CHECK(max_diff(u * x, x * u) < 1e-10);
      }
    }
  }
}
