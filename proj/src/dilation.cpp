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

#include "qct/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qct/errors.hpp"
#include "qct/random_strategies.hpp"

namespace qct {

namespace {

// Unitary on system (x) ancilla whose columns |i, 0> are the columns of the
// isometry `w` (rows indexed system-major, ancilla-minor).
CMatrix unitary_from_isometry(const CMatrix& w, std::size_t system, std::size_t ancilla) {
  const CMatrix completed = complete_isometry(w);
  const std::size_t n = system * ancilla;
  CMatrix u(n, n);
  std::size_t spare = system;
  for (std::size_t i = 0; i < system; ++i) {
    for (std::size_t a = 0; a < ancilla; ++a) {
      u.col(i * ancilla + a) = a == 0 ? completed.col(i) : completed.col(spare++);
    }
  }
  return u;
}

}  // namespace

CVector purify(const State& rho) {
  const auto eig = hermitian_eig(rho.matrix());
  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = eig.values.size(); i-- > 0;) {
    if (eig.values(i) > kTolerance) kept.push_back(i);
  }
  const std::size_t n = rho.algebra().total_dim();
  const std::size_t rank = kept.size();
  CVector phi = CVector::Zero(n * rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double weight = std::sqrt(eig.values(kept[k]));
    for (std::size_t i = 0; i < n; ++i) phi(i * rank + k) = weight * eig.vectors(i, kept[k]);
  }
  return phi.normalized();
}

StinespringForm stinespring(const Channel& t) {
  const std::size_t n = t.input().total_dim();
  if (t.output().total_dim() != n) {
    throw ValidationError("stinespring: input and output dimensions must agree");
  }
  if (t.is_unitary()) {
    return {1, CVector::Ones(1), t.kraus().front()};
  }
  const std::size_t k = t.kraus().size();
  // V |i> = sum_j K_j |i> (x) |j>
  CMatrix w(n * k, n);
  for (std::size_t j = 0; j < k; ++j) {
    const CMatrix& kj = t.kraus()[j];
    for (std::size_t out = 0; out < n; ++out) w.row(out * k + j) = kj.row(out);
  }
  return {k, basis_vector(k, 0), unitary_from_isometry(w, n, k)};
}

NaimarkForm naimark(const Povm& e) {
  if (e.is_projective()) {
    return {1, CVector::Ones(1), e.outcomes()};
  }
  const std::size_t n = e.algebra().total_dim();
  const std::size_t m = e.outcomes().size();
  // Lueders dilation: V |i> = sum_x sqrt(E_x) |i> (x) |x>
  CMatrix w(n * m, n);
  for (std::size_t x = 0; x < m; ++x) {
    const CMatrix root = sqrt_psd(e.outcomes()[x].effect);
    for (std::size_t out = 0; out < n; ++out) w.row(out * m + x) = root.row(out);
  }
  const CMatrix u = unitary_from_isometry(w, n, m);
  std::vector<Outcome> projectors;
  for (std::size_t x = 0; x < m; ++x) {
    const CMatrix pointer = tensor(identity(n), projector(basis_vector(m, x)));
    CMatrix f = u.adjoint() * pointer * u;
    projectors.push_back({e.outcomes()[x].label, 0.5 * (f + f.adjoint())});
  }
  return {m, basis_vector(m, 0), std::move(projectors)};
}

void PureStrategy::validate() const {
  strategy.validate();
  const double purity = (strategy.initial * strategy.initial).trace().real();
  if (purity < 1.0 - kTolerance) {
    std::ostringstream os;
    os << "PureStrategy: initial state is not pure (purity " << purity << ")";
    throw ValidationError(os.str());
  }
  for (const auto& t : strategy.moves) {
    if (!t.is_unitary()) throw ValidationError("PureStrategy: a move is not a unitary conjugation");
  }
  if (!strategy.final_measurement.is_projective()) {
    throw ValidationError("PureStrategy: final measurement is not projective");
  }
}

PureStrategy unitary_normal_form(const Strategy& s) {
  s.validate();
  const bool alice = s.party == Party::kAlice;
  const std::size_t dp = s.private_algebra.total_dim();
  const std::size_t dm = s.mailbox.total_dim();
  const std::size_t moves = s.moves.size();

  // Dilate every ingredient.
  const CVector phi0 = purify(State(s.initial_algebra(), s.initial));
  const std::size_t r0 = static_cast<std::size_t>(phi0.size()) / s.initial_algebra().total_dim();
  std::vector<StinespringForm> dilated_moves;
  dilated_moves.reserve(moves);
  for (const auto& t : s.moves) dilated_moves.push_back(stinespring(t));
  const NaimarkForm pointer = naimark(s.final_measurement);

  // Private factors: P, L0, L_1..L_moves, Lf.
  Dims priv = {dp, r0};
  for (const auto& f : dilated_moves) priv.push_back(f.ancilla_dim);
  priv.push_back(pointer.ancilla_dim);
  const std::size_t lf = priv.size() - 1;
  const std::size_t private_dim = product(priv);

  // Initial vector on the new private space (and the mailbox for Alice).
  CVector psi;
  if (alice) {
    // phi0 lives on (P, M, L0); reorder to (P, L0, M), pad the other
    // ancillas with |0> and move M to the end.
    CVector v = permute_factors(phi0, {dp, dm, r0}, {0, 2, 1});
    Dims layout = {dp, r0, dm};
    for (std::size_t k = 2; k < priv.size(); ++k) {
      v = tensor(v, basis_vector(priv[k], 0));
      layout.push_back(priv[k]);
    }
    std::vector<std::size_t> perm = {0, 1};
    for (std::size_t k = 2; k < priv.size(); ++k) perm.push_back(k + 1);
    perm.push_back(2);
    psi = permute_factors(v, layout, perm);
  } else {
    psi = phi0;
    for (std::size_t k = 2; k < priv.size(); ++k) psi = tensor(psi, basis_vector(priv[k], 0));
  }

  // Move unitaries, each acting on (system, its own ancilla).
  Dims full;
  std::size_t mailbox_pos = 0;
  std::size_t private_pos = 0;
  if (alice) {
    full = priv;
    full.push_back(dm);
    private_pos = 0;
    mailbox_pos = full.size() - 1;
  } else {
    full = {dm};
    full.insert(full.end(), priv.begin(), priv.end());
    mailbox_pos = 0;
    private_pos = 1;
  }
  const std::size_t ancilla_offset = private_pos + 2;  // position of L_1 in `full`

  const auto new_private = AlgebraSpec::quantum(private_dim);
  const auto new_mailbox = s.mailbox.enveloping();
  Strategy out;
  out.party = s.party;
  out.private_algebra = new_private;
  out.mailbox = new_mailbox;
  out.initial = projector(psi);
  const auto on = out.move_algebra();
  for (std::size_t j = 0; j < moves; ++j) {
    std::vector<std::size_t> positions;
    if (alice) {
      positions = {private_pos, mailbox_pos, ancilla_offset + j};
    } else {
      positions = {mailbox_pos, private_pos, ancilla_offset + j};
    }
    out.moves.push_back(
        Channel::unitary(on, embed_operator(dilated_moves[j].unitary, full, positions)));
  }
  std::vector<Outcome> effects;
  for (const auto& f : pointer.projectors) {
    effects.push_back({f.label, embed_operator(f.effect, priv, {0, lf})});
  }
  out.final_measurement = Povm(new_private, std::move(effects));

  PureStrategy pure{std::move(out), psi, priv};
  pure.validate();
  return pure;
}

DilationReport verify_normal_form(const Protocol& context, const Strategy& original,
                                  const PureStrategy& pure, std::size_t random_opponents,
                                  std::uint64_t seed) {
  const Party opponent = other(original.party);
  auto deviation = [&](const Protocol& base) {
    const auto a = run_exact(with_strategy(base, original));
    const auto b = run_exact(with_strategy(base, pure.strategy));
    return a.max_deviation(b);
  };
  DilationReport report;
  report.context_deviation = deviation(context);
  report.max_deviation = report.context_deviation;
  for (std::size_t i = 0; i < random_opponents; ++i) {
    Rng rng = Rng::stream(seed, i);
    const Protocol base = with_strategy(context, random_opponent(rng, context, opponent));
    const double d = deviation(base);
    report.deviations.push_back(d);
    report.max_deviation = std::max(report.max_deviation, d);
  }
  return report;
}

}  // namespace qct
