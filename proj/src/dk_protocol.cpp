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

#include "qct/dk_protocol.hpp"

#include <cmath>
#include <functional>

#include "qct/errors.hpp"

namespace qct::dk {

namespace {

using Digits = std::vector<std::size_t>;

std::size_t encode(const Digits& d, const Dims& dims) {
  std::size_t index = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + d[k];
  return index;
}

Digits decode(std::size_t index, const Dims& dims) {
  Digits d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = index % dims[k];
    index /= dims[k];
  }
  return d;
}

// Operator with |d> -> |f(d)> on basis states where keep(d) holds, zero on the
// others.
CMatrix basis_map(const Dims& dims, const std::function<Digits(Digits)>& f,
                  const std::function<bool(const Digits&)>& keep = nullptr) {
  const std::size_t n = product(dims);
  CMatrix m = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Digits d = decode(i, dims);
    if (keep && !keep(d)) continue;
    m(encode(f(d), dims), i) = 1.0;
  }
  return m;
}

CMatrix zero(std::size_t n) { return CMatrix::Zero(n, n); }

// Final measurement that always reports `target`.
Povm constant_claim(const AlgebraSpec& algebra, int target) {
  const std::size_t n = algebra.total_dim();
  std::vector<Outcome> outcomes = {{"0", zero(n)}, {"1", zero(n)}, {"abort", zero(n)}};
  outcomes[target].effect = CMatrix::Identity(n, n);
  return Povm(algebra, std::move(outcomes));
}

void require_bit(int target) {
  if (target != 0 && target != 1) throw PreconditionError("target must be 0 or 1");
}

}  // namespace

CVector psi0() {
  CVector v = CVector::Zero(9);
  v(0 * 3 + 0) = 1.0 / std::sqrt(2.0);
  v(1 * 3 + 2) = 1.0 / std::sqrt(2.0);
  return v;
}

CVector psi1() {
  CVector v = CVector::Zero(9);
  v(1 * 3 + 1) = 1.0 / std::sqrt(2.0);
  v(0 * 3 + 2) = 1.0 / std::sqrt(2.0);
  return v;
}

CVector psi(int bit) {
  require_bit(bit);
  return bit == 0 ? psi0() : psi1();
}

CVector psi_tilde(int bit) {
  require_bit(bit);
  const std::size_t b = static_cast<std::size_t>(bit);
  CVector v = CVector::Zero(9);
  v(b * 3 + 0) = 1.0 / std::sqrt(6.0);
  v(b * 3 + 1) = 1.0 / std::sqrt(6.0);
  v((1 - b) * 3 + 2) = 2.0 / std::sqrt(6.0);
  return v;
}

AlgebraSpec mailbox_algebra() { return AlgebraSpec({{"0", 3}, {"1", 3}}); }
AlgebraSpec alice_algebra() { return AlgebraSpec({{"0", 3}, {"1", 3}}); }
AlgebraSpec bob_algebra() { return AlgebraSpec({{"0", 9}, {"1", 9}}); }

Povm bob_register_measurement() {
  const CMatrix p0 = projector(psi0());
  const CMatrix p1 = projector(psi1());
  const CMatrix rest = CMatrix::Identity(9, 9) - p0 - p1;
  return Povm(AlgebraSpec::quantum(9), {{"0", p0}, {"1", p1}, {"abort", rest}});
}

Strategy honest_alice() {
  const auto a = alice_algebra();
  const auto m = mailbox_algebra();
  // digits of Alice (x) mailbox: (b_A, qA, bit, qM)
  const Dims dims = {2, 3, 2, 3};
  CMatrix initial = zero(36);
  for (int b = 0; b < 2; ++b) {
    const CVector pb = psi(b);
    CVector v = CVector::Zero(36);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) v(encode({std::size_t(b), i, 0, j}, dims)) = pb(i * 3 + j);
    }
    initial += 0.5 * projector(v);
  }
  const auto on = tensor(a, m);
  // step 3: hand the qutrit to the mailbox
  const Channel hand_over = Channel::unitary(
      on, basis_map(dims, [](Digits d) { return Digits{d[0], d[3], d[2], d[1]}; }));
  // step 5: b_A <- b_A xor b_B
  const Channel output_bit = Channel::unitary(
      on, basis_map(dims, [](Digits d) { return Digits{d[0] ^ d[2], d[1], d[2], d[3]}; }));

  CMatrix e0 = zero(6), e1 = zero(6);
  e0.topLeftCorner(3, 3).setIdentity();
  e1.bottomRightCorner(3, 3).setIdentity();
  Povm claim(a, {{"0", e0}, {"1", e1}, {"abort", zero(6)}});
  return make_strategy(Party::kAlice, a, m, initial, {hand_over, output_bit}, claim);
}

Strategy honest_bob(std::size_t fiducial) {
  if (fiducial > 2) throw PreconditionError("honest_bob: fiducial state index must be 0, 1 or 2");
  const auto b = bob_algebra();
  const auto m = mailbox_algebra();
  CMatrix initial = zero(18);
  for (std::size_t coin = 0; coin < 2; ++coin) {
    const std::size_t i = (coin * 3 + fiducial) * 3 + fiducial;
    initial(i, i) = 0.5;
  }
  // digits of mailbox (x) Bob: (bit, qM, b_B, first, second)
  const Dims dims = {2, 3, 2, 3, 3};
  const auto on = tensor(m, b);
  // step 2: read the mailbox into the second register, announce b_B
  const Channel read_and_announce = Channel::unitary(on, basis_map(dims, [](Digits d) {
    return Digits{d[0] ^ d[2], d[4], d[2], d[3], d[1]};
  }));
  // step 4: read the mailbox into the first register
  const Channel read_again = Channel::unitary(
      on, basis_map(dims, [](Digits d) { return Digits{d[0], d[3], d[2], d[1], d[4]}; }));

  const auto registers = bob_register_measurement();
  const CMatrix& p0 = registers.effect("0");
  const CMatrix& p1 = registers.effect("1");
  const CMatrix& rest = registers.effect("abort");
  const CMatrix c0 = projector(basis_vector(2, 0));
  const CMatrix c1 = projector(basis_vector(2, 1));
  // output b_A' xor b_B
  Povm claim(b, {{"0", tensor(c0, p0) + tensor(c1, p1)},
                 {"1", tensor(c0, p1) + tensor(c1, p0)},
                 {"abort", tensor(CMatrix::Identity(2, 2), rest)}});
  return make_strategy(Party::kBob, b, m, initial, {read_and_announce, read_again}, claim);
}

Protocol build_dk_honest(std::size_t bob_fiducial) {
  Protocol p{honest_alice(), honest_bob(bob_fiducial), mailbox_algebra(), 4, Party::kBob};
  p.validate();
  return p;
}

Strategy build_bob_cheat(int target) {
  require_bit(target);
  const auto t = static_cast<std::size_t>(target);
  const auto b = tensor(AlgebraSpec::classical({"c=0", "c=1", "c=2"}),
                        AlgebraSpec::classical({"coin=0", "coin=1"}));
  const auto m = mailbox_algebra();
  CMatrix initial = zero(6);
  initial(0, 0) = 0.5;  // c = 0, coin = 0
  initial(1, 1) = 0.5;  // c = 0, coin = 1
  // digits of mailbox (x) Bob: (bit, qM, c, coin)
  const Dims dims = {2, 3, 3, 2};
  const auto on = tensor(m, b);
  std::vector<CMatrix> kraus;
  for (std::size_t outcome = 0; outcome < 3; ++outcome) {
    kraus.push_back(basis_map(
        dims,
        [outcome, t](Digits d) {
          const std::size_t announce = outcome == 2 ? d[3] : (outcome ^ t);
          return Digits{d[0] ^ announce, d[1], (d[2] + outcome) % 3, d[3]};
        },
        [outcome](const Digits& d) { return d[1] == outcome; }));
  }
  const Channel measure_and_announce(on, on, std::move(kraus));
  return make_strategy(Party::kBob, b, m, initial, {measure_and_announce, Channel::identity(on)},
                       constant_claim(b, target));
}

Strategy build_alice_cheat(int target) {
  require_bit(target);
  const auto t = static_cast<std::size_t>(target);
  const auto a = AlgebraSpec::quantum(3);
  const auto m = mailbox_algebra();
  // digits of Alice (x) mailbox: (qA, bit, qM)
  const Dims dims = {3, 2, 3};
  const CVector prep = psi_tilde(0);
  CVector v = CVector::Zero(18);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) v(encode({i, 0, j}, dims)) = prep(i * 3 + j);
  }
  const auto on = tensor(a, m);
  const Channel flip_and_hand_over = Channel::unitary(on, basis_map(dims, [t](Digits d) {
    std::size_t q = d[0];
    if ((d[1] ^ t) == 1 && q < 2) q = 1 - q;
    return Digits{d[2], d[1], q};
  }));
  return make_strategy(Party::kAlice, a, m, projector(v),
                       {flip_and_hand_over, Channel::identity(on)}, constant_claim(a, target));
}

}  // namespace qct::dk
