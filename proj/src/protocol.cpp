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

#include "qct/protocol.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <Eigen/SparseCore>

#include "qct/errors.hpp"
#include "qct/random.hpp"

namespace qct {

namespace {

using SparseC = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

// K (x) I_right or I_left (x) K as a sparse matrix.
SparseC lift_sparse(const CMatrix& k, std::size_t left, std::size_t right) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  const auto kr = k.rows();
  const auto kc = k.cols();
  std::size_t nnz = 0;
  for (Eigen::Index i = 0; i < kr; ++i) {
    for (Eigen::Index j = 0; j < kc; ++j) nnz += k(i, j) != Complex(0.0);
  }
  triplets.reserve(nnz * left * right);
  for (std::size_t l = 0; l < left; ++l) {
    for (Eigen::Index i = 0; i < kr; ++i) {
      for (Eigen::Index j = 0; j < kc; ++j) {
        const Complex v = k(i, j);
        if (v == Complex(0.0)) continue;
        const auto row = (l * kr + i) * right;
        const auto col = (l * kc + j) * right;
        for (std::size_t r = 0; r < right; ++r) triplets.emplace_back(row + r, col + r, v);
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(left * kr * right);
  SparseC s(n, static_cast<Eigen::Index>(left * kc * right));
  s.setFromTriplets(triplets.begin(), triplets.end());
  return s;
}

// rho -> sum_k (I_left (x) K_k (x) I_right) rho (...)^dagger
CMatrix apply_local(const Channel& t, const CMatrix& rho, std::size_t left, std::size_t right) {
  if (left == 1 && right == 1) return t.apply(rho);
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : t.kraus()) {
    const SparseC lifted = lift_sparse(k, left, right);
    const CMatrix tmp = lifted * rho;
    out.noalias() += tmp * lifted.adjoint();
  }
  return out;
}

void check_outcome_labels(const Povm& e, const std::string& who) {
  std::set<std::string> labels;
  for (const auto& o : e.outcomes()) labels.insert(o.label);
  const std::set<std::string> expected = {"0", "1", "abort"};
  if (labels != expected) {
    throw ValidationError(who + ": final measurement must have exactly the outcomes 0, 1, abort");
  }
}

}  // namespace

std::string to_string(Party p) { return p == Party::kAlice ? "alice" : "bob"; }

Party party_from_string(const std::string& s) {
  if (s == "alice") return Party::kAlice;
  if (s == "bob") return Party::kBob;
  throw ValidationError("unknown party '" + s + "' (expected alice or bob)");
}

Party other(Party p) { return p == Party::kAlice ? Party::kBob : Party::kAlice; }

std::string to_string(Coin c) { return kCoinLabels[static_cast<int>(c)]; }

Coin coin_from_string(const std::string& s) {
  for (auto c : kCoins) {
    if (s == to_string(c)) return c;
  }
  throw ValidationError("unknown outcome label '" + s + "' (expected 0, 1 or abort)");
}

Coin coin_from_bit(int bit) {
  if (bit != 0 && bit != 1) throw PreconditionError("target bit must be 0 or 1");
  return bit == 0 ? Coin::kZero : Coin::kOne;
}

// ---------------------------------------------------------------------------
// Strategy

AlgebraSpec Strategy::initial_algebra() const {
  return party == Party::kAlice ? tensor(private_algebra, mailbox) : private_algebra;
}

AlgebraSpec Strategy::move_algebra() const {
  return party == Party::kAlice ? tensor(private_algebra, mailbox) : tensor(mailbox, private_algebra);
}

void Strategy::validate() const {
  const std::string who = to_string(party) + " strategy";
  try {
    (void)State(initial_algebra(), initial);
  } catch (const Error& e) {
    throw ValidationError(who + ": initial state: " + e.what());
  }
  const auto on = move_algebra();
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!(moves[i].input() == on) || !(moves[i].output() == on)) {
      std::ostringstream os;
      os << who << ": move " << i << " does not act on "
         << (party == Party::kAlice ? "private (x) mailbox" : "mailbox (x) private");
      throw ValidationError(os.str());
    }
  }
  if (!(final_measurement.algebra() == private_algebra)) {
    throw ValidationError(who + ": final measurement must act on the private algebra");
  }
  check_outcome_labels(final_measurement, who);
}

Strategy make_strategy(Party party, AlgebraSpec private_algebra, AlgebraSpec mailbox,
                       CMatrix initial, std::vector<Channel> moves, Povm final_measurement) {
  Strategy s{party,
             std::move(private_algebra),
             std::move(mailbox),
             std::move(initial),
             std::move(moves),
             std::move(final_measurement)};
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Protocol

std::size_t Protocol::moves_of(Party p) const {
  const std::size_t odd = (rounds + 1) / 2;
  return p == first_mover ? odd : rounds - odd;
}

Party Protocol::mover(std::size_t slot) const {
  return slot % 2 == 1 ? first_mover : other(first_mover);
}

bool mailbox_compatible(const AlgebraSpec& a, const AlgebraSpec& b) {
  if (a == b) return true;
  return a.total_dim() == b.total_dim() && (a.is_quantum() || b.is_quantum());
}

void Protocol::validate() const {
  if (alice.party != Party::kAlice) throw ProtocolError("protocol: alice slot holds a bob strategy");
  if (bob.party != Party::kBob) throw ProtocolError("protocol: bob slot holds an alice strategy");
  if (!mailbox_compatible(alice.mailbox, mailbox) || !mailbox_compatible(bob.mailbox, mailbox)) {
    throw ProtocolError("protocol: mailbox algebras of the strategies do not agree");
  }
  for (const Strategy* s : {&alice, &bob}) {
    if (s->moves.size() != moves_of(s->party)) {
      std::ostringstream os;
      os << "protocol: " << to_string(s->party) << " has " << s->moves.size()
         << " moves but the alternation over " << rounds << " rounds gives "
         << moves_of(s->party);
      throw ProtocolError(os.str());
    }
    const auto n = static_cast<Eigen::Index>(s->initial_algebra().total_dim());
    if (s->initial.rows() != n || s->initial.cols() != n) {
      throw ProtocolError("protocol: " + to_string(s->party) +
                          " initial state has the wrong dimension");
    }
    const auto m = s->move_algebra().total_dim();
    for (const auto& t : s->moves) {
      if (t.input().total_dim() != m || t.output().total_dim() != m) {
        throw ProtocolError("protocol: " + to_string(s->party) + " move has the wrong dimension");
      }
    }
    if (s->final_measurement.algebra().total_dim() != s->private_algebra.total_dim()) {
      throw ProtocolError("protocol: " + to_string(s->party) +
                          " final measurement has the wrong dimension");
    }
    for (const char* label : kCoinLabels) {
      if (!s->final_measurement.find(label)) {
        throw ProtocolError("protocol: " + to_string(s->party) +
                            " final measurement lacks outcome '" + label + "'");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// distributions

OutcomeDistribution::OutcomeDistribution(const std::array<std::array<double, 3>, 3>& table) {
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double x = table[a][b];
      if (!std::isfinite(x) || x < -kTolerance) {
        std::ostringstream os;
        os << "OutcomeDistribution: invalid probability " << x;
        throw ValidationError(os.str());
      }
      x = std::max(x, 0.0);
      table_[a][b] = x;
      sum += x;
    }
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    std::ostringstream os;
    os << "OutcomeDistribution: probabilities sum to " << sum;
    throw ValidationError(os.str());
  }
}

double OutcomeDistribution::max_deviation(const OutcomeDistribution& other) const {
  double worst = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) worst = std::max(worst, std::abs(table_[a][b] - other.table_[a][b]));
  }
  return worst;
}

PayoffTable PayoffTable::weak_game() {
  PayoffTable t;
  t.cells[0][0] = {1.0, 0.0};
  t.cells[1][1] = {0.0, 1.0};
  return t;
}

PayoffTable PayoffTable::zero_sum() {
  PayoffTable t;
  t.cells[0][0] = {1.0, -1.0};
  t.cells[1][1] = {-1.0, 1.0};
  return t;
}

// ---------------------------------------------------------------------------
// execution

namespace {

// Unnormalized vectors v_k with rho = sum_k v_k v_k^dagger.
std::vector<CVector> ensemble_of(const CMatrix& rho) {
  const auto eig = hermitian_eig(rho);
  std::vector<CVector> out;
  for (Eigen::Index i = eig.values.size(); i-- > 0;) {
    if (eig.values(i) > 1e-15) out.push_back(std::sqrt(eig.values(i)) * eig.vectors.col(i));
  }
  return out;
}

CMatrix density_of(const std::vector<CVector>& ensemble, Eigen::Index n) {
  CMatrix rho = CMatrix::Zero(n, n);
  for (const auto& v : ensemble) rho.noalias() += v * v.adjoint();
  return rho;
}

struct Evolved {
  bool vectors = true;
  std::vector<CVector> ensemble;
  CMatrix rho;
};

Evolved evolve(const Protocol& p) {
  p.validate();
  const std::size_t da = p.alice.private_algebra.total_dim();
  const std::size_t db = p.bob.private_algebra.total_dim();

  // Low-rank runs propagate an ensemble of vectors; once the ensemble
  // outgrows half the dimension the density matrix is cheaper.
  std::vector<CVector> ensemble;
  for (const auto& a : ensemble_of(p.alice.initial)) {
    for (const auto& b : ensemble_of(p.bob.initial)) ensemble.push_back(tensor(a, b));
  }
  const auto n = static_cast<Eigen::Index>(da * p.mailbox.total_dim() * db);
  Evolved out;
  bool& vectors = out.vectors;
  CMatrix& rho = out.rho;

  std::size_t next_alice = 0;
  std::size_t next_bob = 0;
  for (std::size_t slot = 1; slot <= p.rounds; ++slot) {
    const bool alice = p.mover(slot) == Party::kAlice;
    const Channel& t = alice ? p.alice.moves[next_alice++] : p.bob.moves[next_bob++];
    const std::size_t left = alice ? 1 : da;
    const std::size_t right = alice ? db : 1;
    if (vectors && ensemble.size() * t.kraus().size() > static_cast<std::size_t>(n) / 2) {
      rho = density_of(ensemble, n);
      vectors = false;
    }
    if (vectors) {
      std::vector<CVector> next;
      next.reserve(ensemble.size() * t.kraus().size());
      for (const auto& k : t.kraus()) {
        const SparseC lifted = lift_sparse(k, left, right);
        for (const auto& v : ensemble) {
          CVector w = lifted * v;
          if (w.squaredNorm() > 1e-30) next.push_back(std::move(w));
        }
      }
      ensemble = std::move(next);
    } else {
      rho = apply_local(t, rho, left, right);
      rho = 0.5 * (rho + rho.adjoint());
    }
  }
  out.ensemble = std::move(ensemble);
  return out;
}

}  // namespace

CMatrix final_state(const Protocol& p) {
  Evolved e = evolve(p);
  if (!e.vectors) return std::move(e.rho);
  const auto n = static_cast<Eigen::Index>(p.alice.private_algebra.total_dim() *
                                           p.mailbox.total_dim() *
                                           p.bob.private_algebra.total_dim());
  return density_of(e.ensemble, n);
}

OutcomeDistribution outcome_distribution(const Protocol& p, const CMatrix& global) {
  const std::size_t da = p.alice.private_algebra.total_dim();
  const std::size_t dm = p.mailbox.total_dim();
  const std::size_t db = p.bob.private_algebra.total_dim();
  if (static_cast<std::size_t>(global.rows()) != da * dm * db) {
    throw DimensionError("outcome_distribution: global state has the wrong dimension");
  }
  const CMatrix rho_ab = partial_trace(global, {da, dm, db}, {0, 2});

  std::array<std::array<double, 3>, 3> table{};
  for (int b = 0; b < 3; ++b) {
    const CMatrix& eb = p.bob.final_measurement.effect(kCoinLabels[b]);
    // sigma_b = tr_B[(I (x) E_b) rho_AB]
    CMatrix sigma = CMatrix::Zero(da, da);
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < da; ++j) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < db; ++k) {
          for (std::size_t l = 0; l < db; ++l) {
            acc += eb(l, k) * rho_ab(i * db + k, j * db + l);
          }
        }
        sigma(i, j) = acc;
      }
    }
    for (int a = 0; a < 3; ++a) {
      const CMatrix& ea = p.alice.final_measurement.effect(kCoinLabels[a]);
      table[a][b] = (ea * sigma).trace().real();
    }
  }
  return OutcomeDistribution(table);
}

OutcomeDistribution run_exact(const Protocol& p) {
  Evolved e = evolve(p);
  if (!e.vectors) return outcome_distribution(p, e.rho);
  const auto da = static_cast<Eigen::Index>(p.alice.private_algebra.total_dim());
  const auto dm = static_cast<Eigen::Index>(p.mailbox.total_dim());
  const auto db = static_cast<Eigen::Index>(p.bob.private_algebra.total_dim());
  // <v| E_a (x) I (x) F_b |v> = sum_m tr(X_m^dagger E_a X_m F_b^T) with
  // X_m(i, j) = v(i, m, j).
  std::array<CMatrix, 3> fbt;
  for (int b = 0; b < 3; ++b) fbt[b] = p.bob.final_measurement.effect(kCoinLabels[b]).transpose();
  std::array<std::array<double, 3>, 3> table{};
  CMatrix x(da, db);
  for (const auto& v : e.ensemble) {
    for (Eigen::Index m = 0; m < dm; ++m) {
      for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < db; ++j) x(i, j) = v((i * dm + m) * db + j);
      }
      for (int b = 0; b < 3; ++b) {
        const CMatrix xf = x * fbt[b];
        for (int a = 0; a < 3; ++a) {
          const CMatrix& ea = p.alice.final_measurement.effect(kCoinLabels[a]);
          table[a][b] += (x.adjoint() * ea * xf).trace().real();
        }
      }
    }
  }
  return OutcomeDistribution(table);
}

CountTable sample(const OutcomeDistribution& d, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw PreconditionError("sample: n must be at least 1");
  std::array<double, 9> cumulative{};
  double acc = 0.0;
  for (int c = 0; c < 9; ++c) {
    acc += d.table()[c / 3][c % 3];
    cumulative[c] = acc;
  }
  Rng rng(seed);
  CountTable counts{};
  for (std::uint64_t i = 0; i < n; ++i) {
    const double u = rng.uniform() * acc;
    int cell = 8;
    for (int c = 0; c < 9; ++c) {
      if (u < cumulative[c]) {
        cell = c;
        break;
      }
    }
    ++counts[cell / 3][cell % 3];
  }
  return counts;
}

CountTable sample(const Protocol& p, std::uint64_t n, std::uint64_t seed) {
  return sample(run_exact(p), n, seed);
}

bool check_correct(const OutcomeDistribution& d, double tol) {
  return std::abs(d(Coin::kZero, Coin::kZero) - 0.5) <= tol &&
         std::abs(d(Coin::kOne, Coin::kOne) - 0.5) <= tol;
}

Protocol with_strategy(const Protocol& p, const Strategy& replacement) {
  Protocol q = p;
  if (!mailbox_compatible(replacement.mailbox, p.mailbox)) {
    throw ProtocolError("replacement strategy uses a different mailbox algebra");
  }
  if (replacement.party == Party::kAlice) {
    q.alice = replacement;
  } else {
    q.bob = replacement;
  }
  return q;
}

double forcing_probability(const Protocol& p, Party cheater, int target,
                           const Strategy& replacement) {
  const Coin x = coin_from_bit(target);
  if (replacement.party != cheater) {
    throw PreconditionError("forcing_probability: replacement belongs to the other party");
  }
  const auto d = run_exact(with_strategy(p, replacement));
  return d(x, x);
}

std::pair<double, double> payoff(const OutcomeDistribution& d, const PayoffTable& t) {
  double alice = 0.0;
  double bob = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      alice += d.table()[a][b] * t.cells[a][b].first;
      bob += d.table()[a][b] * t.cells[a][b].second;
    }
  }
  return {alice, bob};
}

}  // namespace qct
