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
#include <string>
#include <vector>

#include "doctest.h"
#include "qct/algebra.hpp"
#include "qct/errors.hpp"
#include "qct/random.hpp"
#include "qct/random_strategies.hpp"
#include "support.hpp"

using namespace qct;
using qct::testing::max_diff;

namespace {

CMatrix swap_matrix(std::size_t d) {
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  }
  return s;
}

// Generalized Pauli (clock and shift) operators scaled to form a channel.
std::vector<CMatrix> depolarizing_kraus(std::size_t d) {
  const double pi = std::acos(-1.0);
  CMatrix x = CMatrix::Zero(d, d), z = CMatrix::Zero(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    x((k + 1) % d, k) = 1.0;
    z(k, k) = std::polar(1.0, 2.0 * pi * static_cast<double>(k) / static_cast<double>(d));
  }
  std::vector<CMatrix> kraus;
  CMatrix xa = identity(d);
  for (std::size_t a = 0; a < d; ++a) {
    CMatrix zb = identity(d);
    for (std::size_t b = 0; b < d; ++b) {
      kraus.push_back(xa * zb / static_cast<double>(d));
      zb = zb * z;
    }
    xa = xa * x;
  }
  return kraus;
}

}  // namespace

TEST_CASE("algebra specs") {
  const auto q = AlgebraSpec::quantum(3);
  CHECK(q.is_quantum());
  CHECK(q.total_dim() == 3);
  const auto c = AlgebraSpec::classical(4);
  CHECK(c.is_classical());
  CHECK(c.block_count() == 4);
  CHECK(c.find_block("2").value() == 2);
  CHECK_FALSE(c.find_block("x").has_value());

  const AlgebraSpec hybrid({{"a", 2}, {"b", 1}});
  CHECK(hybrid.total_dim() == 3);
  CHECK(hybrid.block_indices(0) == std::vector<std::size_t>{0, 1});
  CHECK(hybrid.enveloping() == AlgebraSpec::quantum(3));
  CHECK(hybrid.is_contiguous());
}

TEST_CASE("tensor of algebras") {
  const auto t = tensor(AlgebraSpec::classical(2), AlgebraSpec::quantum(2));
  CHECK(t.total_dim() == 4);
  CHECK(t.block_count() == 2);
  CHECK(t.is_contiguous());

  const auto u = tensor(AlgebraSpec::quantum(2), AlgebraSpec::classical(2));
  CHECK(u.block_count() == 2);
  CHECK_FALSE(u.is_contiguous());
  CHECK(u.sectors() == std::vector<std::size_t>{0, 1, 0, 1});
}

TEST_CASE("with_sectors validates block sizes") {
  const auto a = AlgebraSpec::with_sectors({{"x", 1}, {"y", 2}}, {1, 0, 1});
  CHECK(a.block_indices(1) == std::vector<std::size_t>{0, 2});
  CHECK_THROWS_AS(AlgebraSpec::with_sectors({{"x", 1}, {"y", 2}}, {0, 0, 1}), ValidationError);
}

TEST_CASE("embed_classical") {
  const State s = embed_classical({0.25, 0.75}, {"h", "t"});
  CHECK(s.algebra().is_classical());
  CHECK(s.matrix()(0, 0).real() == doctest::Approx(0.25));
  CHECK(s.matrix()(1, 1).real() == doctest::Approx(0.75));
  CHECK(std::abs(s.matrix()(0, 1)) == 0.0);
  CHECK_THROWS_AS(embed_classical({0.5, 0.6}, {"h", "t"}), ValidationError);
  CHECK_THROWS_AS(embed_classical({-0.5, 1.5}, {"h", "t"}), ValidationError);
  CHECK_THROWS_AS(embed_classical({1.0}, {"h", "t"}), DimensionError);
}

TEST_CASE("states are validated") {
  const auto q = AlgebraSpec::quantum(2);
  CHECK_THROWS_AS(State(q, identity(2)), ValidationError);
  CHECK_THROWS_AS(State(q, identity(3) / 3.0), DimensionError);
  CMatrix coherent = CMatrix::Constant(2, 2, 0.5);
  CHECK_NOTHROW(State(q, coherent));
  CHECK_THROWS_AS(State(AlgebraSpec::classical(2), coherent), ValidationError);
  const std::vector<double> neg = {1.5, -0.5};
  CHECK_THROWS_AS(State(q, diagonal(neg)), ValidationError);
}

TEST_CASE("swap channel") {
  Rng rng(21);
  const auto q2 = tensor(AlgebraSpec::quantum(2), AlgebraSpec::quantum(3));
  const auto q2r = tensor(AlgebraSpec::quantum(3), AlgebraSpec::quantum(2));
  // swap for unequal dimensions through permute_factors
  CMatrix s(6, 6);
  for (std::size_t i = 0; i < 6; ++i) s.col(i) = permute_factors(basis_vector(6, i), {2, 3}, {1, 0});
  const Channel t(q2, q2r, {s});
  const CMatrix a = random_density(rng, 2, 2), b = random_density(rng, 3, 2);
  const State out = apply_channel(t, State(q2, tensor(a, b)));
  CHECK(max_diff(out.matrix(), tensor(b, a)) < 1e-12);

  const auto q33 = tensor(AlgebraSpec::quantum(3), AlgebraSpec::quantum(3));
  const Channel sw = Channel::unitary(q33, swap_matrix(3));
  CHECK(sw.is_unitary());
  const CMatrix c = random_density(rng, 3, 1);
  const State out2 = apply_channel(sw, State(q33, tensor(c, b)));
  CHECK(max_diff(out2.matrix(), tensor(b, c)) < 1e-12);
}

TEST_CASE("depolarizing channel sends every state to the maximally mixed state") {
  Rng rng(22);
  for (std::size_t d : {2u, 3u}) {
    const auto q = AlgebraSpec::quantum(d);
    const Channel t(q, q, depolarizing_kraus(d));
    for (int trial = 0; trial < 5; ++trial) {
      const State out = apply_channel(t, State(q, random_density(rng, d, 1 + rng.index(d))));
      CHECK(max_diff(out.matrix(), identity(d) / static_cast<double>(d)) < 1e-12);
    }
  }
}

TEST_CASE("channels reject a Kraus sum defect") {
  const auto q = AlgebraSpec::quantum(2);
  try {
    Channel(q, q, {0.5 * identity(2)});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("Kraus") != std::string::npos);
  }
}

TEST_CASE("channels must preserve the block structure") {
  const auto c = AlgebraSpec::classical(2);
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  CHECK_THROWS_AS(Channel::unitary(c, h), ValidationError);
  // a classical permutation is fine
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  CHECK_NOTHROW(Channel::unitary(c, x));
  // so is dephasing from quantum into classical
  CHECK_NOTHROW(Channel(AlgebraSpec::quantum(2), c,
                        {projector(basis_vector(2, 0)), projector(basis_vector(2, 1))}));
}

TEST_CASE("random block channels preserve random algebras") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_algebra(rng, 4);
    const Channel t = random_block_channel(rng, a, 1 + rng.index(3));
    const State rho(a, random_block_state(rng, a));
    const State out = apply_channel(t, rho);
    CHECK(a.off_block_mass(out.matrix()) < 1e-12);
    CHECK(std::abs(out.matrix().trace() - 1.0) < 1e-10);
  }
}

TEST_CASE("measure is the readout of the measurement channel") {
  Rng rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = AlgebraSpec::quantum(3);
    const Povm e = random_coin_povm(rng, a);
    const State rho(a, random_density(rng, 3, 2));
    const auto p = measure(e, rho);
    const State out = apply_channel(measurement_channel(e), rho);
    CHECK(out.algebra().is_classical());
    for (std::size_t x = 0; x < p.size(); ++x) CHECK(std::abs(out.matrix()(x, x).real() - p[x]) < 1e-12);
    CHECK(out.algebra().off_block_mass(out.matrix()) < 1e-12);
  }
}

TEST_CASE("povm validation") {
  const auto q = AlgebraSpec::quantum(2);
  CHECK_THROWS_AS(Povm(q, {{"0", identity(2)}, {"0", CMatrix::Zero(2, 2)}}), ValidationError);
  CHECK_THROWS_AS(Povm(q, {{"0", 0.5 * identity(2)}}), ValidationError);
  const Povm comp(q, {{"0", projector(basis_vector(2, 0))}, {"1", projector(basis_vector(2, 1))}});
  CHECK(comp.is_projective());
  const Povm flat(q, {{"0", 0.5 * identity(2)}, {"1", 0.5 * identity(2)}});
  CHECK_FALSE(flat.is_projective());
}

TEST_CASE("Lueders instrument on |+>") {
  const auto q = AlgebraSpec::quantum(2);
  const Povm comp(q, {{"0", projector(basis_vector(2, 0))}, {"1", projector(basis_vector(2, 1))}});
  CVector plus(2);
  plus << 1.0, 1.0;
  plus /= std::sqrt(2.0);
  const auto results = instrument_apply(Instrument::luders(comp), pure_state(q, plus));
  REQUIRE(results.size() == 2);
  for (std::size_t x = 0; x < 2; ++x) {
    CHECK(results[x].probability == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(results[x].post_state.has_value());
    CHECK(max_diff(results[x].post_state->matrix(), projector(basis_vector(2, x))) < 1e-12);
  }
  const Instrument ins = Instrument::luders(comp);
  CHECK(max_diff(ins.povm().effect("1"), comp.effect("1")) < 1e-12);
}

TEST_CASE("instrument outcomes below the floor have no post state") {
  const auto q = AlgebraSpec::quantum(2);
  const Povm comp(q, {{"0", projector(basis_vector(2, 0))}, {"1", projector(basis_vector(2, 1))}});
  const auto results = instrument_apply(Instrument::luders(comp), pure_state(q, basis_vector(2, 0)));
  CHECK(results[1].probability == 0.0);
  CHECK_FALSE(results[1].post_state.has_value());
}

TEST_CASE("lifted channels satisfy the product law") {
  Rng rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_algebra(rng, 3), b = random_algebra(rng, 3);
    const Channel t = random_block_channel(rng, a, 2);
    const CMatrix rho = random_block_state(rng, a), sigma = random_block_state(rng, b);
    const CMatrix expected_left = tensor(t.apply(rho), sigma);
    const CMatrix expected_right = tensor(sigma, t.apply(rho));
    const State left = apply_channel(lift_channel(t, b, Side::kLeft), State(tensor(a, b), tensor(rho, sigma)));
    const State right = apply_channel(lift_channel(t, b, Side::kRight), State(tensor(b, a), tensor(sigma, rho)));
    CHECK(max_diff(left.matrix(), expected_left) < 1e-12);
    CHECK(max_diff(right.matrix(), expected_right) < 1e-12);
  }
}

TEST_CASE("parametrized instruments look up by label") {
  const auto q = AlgebraSpec::quantum(2);
  const Povm comp(q, {{"0", projector(basis_vector(2, 0))}, {"1", projector(basis_vector(2, 1))}});
  const ParamInstrument p({"a", "b"}, {{"a", Instrument::luders(comp)}, {"b", Instrument::luders(comp)}});
  CHECK(p.at("a").arms().size() == 2);
  CHECK_THROWS(p.at("c"));
}
