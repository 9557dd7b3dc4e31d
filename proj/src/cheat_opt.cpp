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

#include "qct/cheat_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qct/dk_protocol.hpp"
#include "qct/errors.hpp"
#include "qct/random.hpp"

namespace qct {

const char* const kLowerBoundNote =
    "best_value is a lower bound on the optimal cheat: every evaluated point is a feasible "
    "strategy; upper bounds come only from the analytic oracles";

namespace {

constexpr double kBoundSlack = 1e-6;

using Point = std::vector<double>;

void clamp(Point& x, const Bounds& bounds) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], bounds[i].first, bounds[i].second);
}

Point uniform_point(Rng& rng, const Bounds& bounds) {
  Point x(bounds.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(bounds[i].first, bounds[i].second);
  return x;
}

std::string bound_message(double value, double bound) {
  std::ostringstream os;
  os.precision(12);
  os << "value " << value << " exceeds the claimed bound " << bound
     << " + 1e-6; this would contradict the protocol's stated bias";
  return os.str();
}

}  // namespace

double helstrom(const CMatrix& rho0, const CMatrix& rho1, double prior) {
  if (!(prior >= 0.0 && prior <= 1.0)) throw PreconditionError("helstrom: prior must lie in [0, 1]");
  if (rho0.rows() != rho1.rows() || rho0.cols() != rho1.cols() || rho0.rows() != rho0.cols()) {
    throw DimensionError("helstrom: states must be square and of equal dimension");
  }
  return 0.5 * (1.0 + trace_norm(prior * rho0 - (1.0 - prior) * rho1));
}

double helstrom(const State& rho0, const State& rho1, double prior) {
  return helstrom(rho0.matrix(), rho1.matrix(), prior);
}

CMatrix parameterize_unitary(const std::vector<double>& params, std::size_t dim) {
  if (params.size() != dim * dim) {
    throw DimensionError("parameterize_unitary: expected " + std::to_string(dim * dim) +
                         " parameters, got " + std::to_string(params.size()));
  }
  const Complex i(0.0, 1.0);
  CMatrix a = CMatrix::Zero(dim, dim);
  std::size_t n = 0;
  for (std::size_t k = 0; k < dim; ++k) a(k, k) = i * params[n++];
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t k = j + 1; k < dim; ++k) {
      const double x = params[n++];
      const double y = params[n++];
      a(k, j) = 0.5 * Complex(x, y);
      a(j, k) = 0.5 * Complex(-x, y);
    }
  }
  // exp(A) = V exp(i lambda) V^dagger with A = i H.
  const CMatrix h = -i * a;
  const auto eig = hermitian_eig(0.5 * (h + h.adjoint()));
  CVector phases(dim);
  for (std::size_t k = 0; k < dim; ++k) phases(k) = std::exp(i * eig.values(k));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

CMatrix parameterize_density(const std::vector<double>& params, std::size_t dim) {
  if (params.size() != dim * dim) {
    throw DimensionError("parameterize_density: expected " + std::to_string(dim * dim) +
                         " parameters, got " + std::to_string(params.size()));
  }
  CMatrix l = CMatrix::Zero(dim, dim);
  std::size_t n = 0;
  for (std::size_t k = 0; k < dim; ++k) l(k, k) = params[n++];
  for (std::size_t r = 1; r < dim; ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      l(r, c) = Complex(params[n], params[n + 1]);
      n += 2;
    }
  }
  CMatrix rho = l * l.adjoint();
  const double tr = rho.trace().real();
  if (tr < 1e-300) return CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  rho /= tr;
  return 0.5 * (rho + rho.adjoint());
}

SimplexResult maximize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> start, const Bounds& bounds,
                               std::size_t max_evaluations) {
  const std::size_t n = start.size();
  if (bounds.size() != n) throw DimensionError("maximize_simplex: bounds and start differ in length");
  SimplexResult result;
  if (max_evaluations == 0) return result;
  clamp(start, bounds);

  auto eval = [&](const Point& x) {
    ++result.evaluations;
    return f(x);
  };

  std::vector<Point> pts = {start};
  for (std::size_t i = 0; i < n && pts.size() < max_evaluations; ++i) {
    Point x = start;
    const double step = 0.1 * (bounds[i].second - bounds[i].first);
    x[i] = x[i] + step <= bounds[i].second ? x[i] + step : x[i] - step;
    pts.push_back(std::move(x));
  }
  std::vector<double> vals;
  for (const auto& x : pts) vals.push_back(eval(x));

  auto record_best = [&] {
    const auto it = std::max_element(vals.begin(), vals.end());
    result.value = *it;
    result.point = pts[static_cast<std::size_t>(it - vals.begin())];
  };
  if (n == 0 || pts.size() < n + 1) {
    record_best();
    return result;
  }

  // dimension-adapted coefficients (Gao and Han)
  const double dn = static_cast<double>(n);
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 0.5 / dn;
  const double shrink = n > 1 ? 1.0 - 1.0 / dn : 0.5;

  std::vector<std::size_t> order(n + 1);
  double scale = 0.1;
  while (result.evaluations < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];

    double diameter = 0.0;
    for (const auto& x : pts) {
      for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(x[k] - pts[best][k]));
    }
    if (vals[best] - vals[worst] < 1e-14 && diameter < 1e-10) {
      // collapsed: rebuild a smaller simplex around the best vertex
      scale *= 0.5;
      if (scale < 1e-6 || result.evaluations + n > max_evaluations) break;
      for (std::size_t j = 0, axis = 0; j < n + 1; ++j) {
        if (j == best) continue;
        pts[j] = pts[best];
        const double step = scale * (bounds[axis].second - bounds[axis].first);
        pts[j][axis] = pts[j][axis] + step <= bounds[axis].second ? pts[j][axis] + step : pts[j][axis] - step;
        ++axis;
        vals[j] = eval(pts[j]);
      }
      continue;
    }

    Point centroid(n, 0.0);
    for (std::size_t j = 0; j < n + 1; ++j) {
      if (j == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[j][k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      Point x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      clamp(x, bounds);
      return x;
    };

    Point xr = along(-1.0);
    const double fr = eval(xr);
    if (fr > vals[best] && result.evaluations < max_evaluations) {
      Point xe = along(-expand);
      const double fe = eval(xe);
      if (fe > fr) {
        pts[worst] = std::move(xe);
        vals[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        vals[worst] = fr;
      }
      continue;
    }
    if (fr > vals[second]) {
      pts[worst] = std::move(xr);
      vals[worst] = fr;
      continue;
    }
    if (result.evaluations >= max_evaluations) break;
    const bool outside = fr > vals[worst];
    Point xc = along(outside ? -contract : contract);
    const double fc = eval(xc);
    if (outside ? fc >= fr : fc > vals[worst]) {
      pts[worst] = std::move(xc);
      vals[worst] = fc;
      continue;
    }
    // shrink towards the best vertex
    for (std::size_t j = 0; j < n + 1 && result.evaluations < max_evaluations; ++j) {
      if (j == best) continue;
      for (std::size_t k = 0; k < n; ++k) pts[j][k] = pts[best][k] + shrink * (pts[j][k] - pts[best][k]);
      clamp(pts[j], bounds);
      vals[j] = eval(pts[j]);
    }
  }
  record_best();
  return result;
}

namespace {

// Runs `restarts` simplex searches with the budget split evenly; the first
// restarts use `starts`, the rest draw from stream (seed, restart).
SimplexResult multistart(const std::function<double(const Point&)>& f, const Bounds& bounds,
                         const SearchConfig& config) {
  if (config.budget <= 0) throw PreconditionError("search budget must be positive");
  if (config.restarts == 0) throw PreconditionError("search needs at least one restart");
  const auto budget = static_cast<std::size_t>(config.budget);
  SimplexResult best;
  best.value = -1.0;
  std::size_t evaluations = 0;
  const std::size_t runs = bounds.empty() ? 1 : config.restarts;
  for (std::size_t r = 0; r < runs; ++r) {
    const std::size_t share = budget / runs + (r < budget % runs ? 1 : 0);
    if (share == 0) continue;
    Point start;
    if (r < config.starts.size()) {
      start = config.starts[r];
      if (start.size() != bounds.size()) {
        throw DimensionError("search start has " + std::to_string(start.size()) +
                             " parameters, expected " + std::to_string(bounds.size()));
      }
    } else {
      Rng rng = Rng::stream(config.seed, r);
      start = uniform_point(rng, bounds);
    }
    SimplexResult run = maximize_simplex(f, std::move(start), bounds, share);
    evaluations += run.evaluations;
    if (run.value > best.value) best = std::move(run);
  }
  best.evaluations = evaluations;
  return best;
}

}  // namespace

PreparationBound alice_preparation_bound(const CVector& psi0, const CVector& psi1,
                                         const Dims& dims, std::size_t mailbox_factor,
                                         const SearchConfig& config) {
  if (mailbox_factor >= dims.size()) throw DimensionError("alice_preparation_bound: bad mailbox factor");
  const auto n = static_cast<Eigen::Index>(product(dims));
  if (psi0.size() != n || psi1.size() != n) {
    throw DimensionError("alice_preparation_bound: vectors do not match the factor dimensions");
  }
  if (std::abs(psi0.norm() - 1.0) > kTolerance || std::abs(psi1.norm() - 1.0) > kTolerance) {
    throw PreconditionError("alice_preparation_bound: vectors must be normalized");
  }
  const CMatrix rho0 = partial_trace(projector(psi0), dims, {mailbox_factor});
  const CMatrix rho1 = partial_trace(projector(psi1), dims, {mailbox_factor});
  const std::size_t d = dims[mailbox_factor];
  auto objective = [&](const Point& x) {
    const CMatrix sigma = parameterize_density(x, d);
    const double f0 = fidelity(sigma, rho0);
    const double f1 = fidelity(sigma, rho1);
    return 0.5 * (f0 * f0 + f1 * f1);
  };
  const Bounds bounds(d * d, {-1.0, 1.0});
  const auto best = multistart(objective, bounds, config);

  PreparationBound out;
  out.value = best.value;
  out.argmax = parameterize_density(best.point, d);
  out.evaluations = best.evaluations;
  if (config.claimed_bound && out.value > *config.claimed_bound + kBoundSlack) {
    out.diagnostics.push_back("alice_preparation_bound: " + bound_message(out.value, *config.claimed_bound));
  }
  return out;
}

SearchReport optimize_cheat(const Protocol& p, const CheatFamily& family, int target,
                            const SearchConfig& config) {
  coin_from_bit(target);
  if (config.budget <= 0) throw PreconditionError("optimize_cheat: budget must be positive");
  if (family.bounds.size() != family.parameter_count) {
    throw DimensionError("optimize_cheat: family bounds do not match its parameter count");
  }
  Point mid(family.parameter_count);
  for (std::size_t i = 0; i < mid.size(); ++i) {
    mid[i] = 0.5 * (family.bounds[i].first + family.bounds[i].second);
  }
  const Strategy probe = family.builder(mid);
  if (probe.party != family.party) throw PreconditionError("optimize_cheat: family builds the wrong party");
  if (!mailbox_compatible(probe.mailbox, p.mailbox)) {
    throw ProtocolError("optimize_cheat: family mailbox does not match the protocol mailbox");
  }

  auto objective = [&](const Point& x) {
    return forcing_probability(p, family.party, target, family.builder(x));
  };
  const auto best = multistart(objective, family.bounds, config);

  SearchReport report;
  report.family = family.name;
  report.party = family.party;
  report.target = target;
  report.best_value = std::clamp(best.value, 0.0, 1.0);
  report.best_parameters = best.point;
  report.evaluations = best.evaluations;
  report.restarts = family.parameter_count == 0 ? 1 : config.restarts;
  report.seed = config.seed;
  report.claimed_bound = config.claimed_bound;
  if (config.claimed_bound && report.best_value > *config.claimed_bound + kBoundSlack) {
    report.bound_violation = true;
    report.diagnostics.push_back("optimize_cheat: " + bound_message(report.best_value, *config.claimed_bound));
  }
  return report;
}

CheatFamily honest_family(const Protocol& p, Party party) {
  const Strategy s = party == Party::kAlice ? p.alice : p.bob;
  return {"honest", party, 0, [s](const Point&) { return s; }, {}};
}

namespace dk {

namespace {

Povm constant_claim(const AlgebraSpec& algebra, int target) {
  const std::size_t n = algebra.total_dim();
  std::vector<Outcome> outcomes = {{"0", CMatrix::Zero(n, n)},
                                   {"1", CMatrix::Zero(n, n)},
                                   {"abort", CMatrix::Zero(n, n)}};
  outcomes[static_cast<std::size_t>(target)].effect = CMatrix::Identity(n, n);
  return Povm(algebra, std::move(outcomes));
}

const CMatrix& bit_flip() {
  static const CMatrix x = [] {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
  }();
  return x;
}

Strategy bob_measure_respond(int target, const Point& announce_one, const CMatrix& basis) {
  const auto priv = AlgebraSpec::quantum(1);
  const auto m = mailbox_algebra();
  const auto on = tensor(m, priv);
  std::vector<CMatrix> kraus;
  for (std::size_t c = 0; c < 3; ++c) {
    const CMatrix read = projector(basis_vector(3, c)) * basis;
    const double p1 = std::clamp(announce_one[c], 0.0, 1.0);
    // announcing a bit XORs it into the mailbox bit
    if (p1 < 1.0) kraus.push_back(std::sqrt(1.0 - p1) * tensor(identity(2), read));
    if (p1 > 0.0) kraus.push_back(std::sqrt(p1) * tensor(bit_flip(), read));
  }
  const Channel first(on, on, std::move(kraus));
  return make_strategy(Party::kBob, priv, m, CMatrix::Identity(1, 1),
                       {first, Channel::identity(on)}, constant_claim(priv, target));
}

}  // namespace

CheatFamily published_family(Party party, int target) {
  coin_from_bit(target);
  if (party == Party::kBob) {
    return {"published", party, 0, [target](const Point&) { return build_bob_cheat(target); }, {}};
  }
  return {"published", party, 0, [target](const Point&) { return build_alice_cheat(target); }, {}};
}

CheatFamily measure_respond_family(int target) {
  coin_from_bit(target);
  return {"measure-respond", Party::kBob, 3,
          [target](const Point& x) { return bob_measure_respond(target, x, identity(3)); },
          Bounds(3, {0.0, 1.0})};
}

CheatFamily rotated_measure_respond_family(int target) {
  coin_from_bit(target);
  Bounds bounds(3, {0.0, 1.0});
  bounds.resize(12, {-M_PI, M_PI});
  return {"rotated-measure-respond", Party::kBob, 12,
          [target](const Point& x) {
            const Point angles(x.begin() + 3, x.end());
            return bob_measure_respond(target, x, parameterize_unitary(angles, 3));
          },
          bounds};
}

CheatFamily prep_unitary_family(int target) {
  coin_from_bit(target);
  const auto t = static_cast<std::size_t>(target);
  Bounds bounds(18, {-1.0, 1.0});
  bounds.resize(27, {-M_PI, M_PI});
  auto builder = [t](const Point& x) {
    const auto a = AlgebraSpec::quantum(3);
    const auto m = mailbox_algebra();
    CVector phi(9);
    for (std::size_t k = 0; k < 9; ++k) phi(k) = Complex(x[2 * k], x[2 * k + 1]);
    if (phi.norm() < 1e-12) phi = basis_vector(9, 0);
    phi.normalize();
    // Alice (x) mailbox digits (qA, bit, qM); the bit starts at 0.
    const CVector initial = permute_factors(tensor(phi, basis_vector(2, 0)), {3, 3, 2}, {0, 2, 1});
    const CMatrix w = parameterize_unitary(Point(x.begin() + 18, x.end()), 3);
    CMatrix control = CMatrix::Zero(18, 18);
    for (std::size_t bit = 0; bit < 2; ++bit) {
      const CMatrix local = (bit ^ t) == 1 ? w : identity(3);
      control += tensor(tensor(local, projector(basis_vector(2, bit))), identity(3));
    }
    // swap qA and qM
    CMatrix swap = CMatrix::Zero(18, 18);
    for (std::size_t qa = 0; qa < 3; ++qa) {
      for (std::size_t bit = 0; bit < 2; ++bit) {
        for (std::size_t qm = 0; qm < 3; ++qm) swap((qm * 2 + bit) * 3 + qa, (qa * 2 + bit) * 3 + qm) = 1.0;
      }
    }
    const auto on = tensor(a, m);
    return make_strategy(Party::kAlice, a, m, projector(initial),
                         {Channel::unitary(on, swap * control), Channel::identity(on)},
                         constant_claim(a, static_cast<int>(t)));
  };
  return {"prep-unitary", Party::kAlice, 27, builder, bounds};
}

CheatFamily family_by_name(const std::string& name, Party party, int target, const Protocol& p) {
  if (name == "published") return published_family(party, target);
  if (name == "honest") return honest_family(p, party);
  auto require = [&](Party needed) {
    if (party != needed) {
      throw PreconditionError("family '" + name + "' is only defined for " + to_string(needed));
    }
  };
  if (name == "measure-respond") {
    require(Party::kBob);
    return measure_respond_family(target);
  }
  if (name == "rotated-measure-respond") {
    require(Party::kBob);
    return rotated_measure_respond_family(target);
  }
  if (name == "prep-unitary") {
    require(Party::kAlice);
    return prep_unitary_family(target);
  }
  throw PreconditionError("unknown cheat family '" + name +
                          "' (published, honest, measure-respond, rotated-measure-respond, "
                          "prep-unitary)");
}

}  // namespace dk

}  // namespace qct
