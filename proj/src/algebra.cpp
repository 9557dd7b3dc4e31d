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

#include "qct/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qct/errors.hpp"

namespace qct {

namespace {

std::string describe(double value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

void check_square_side(const CMatrix& m, std::size_t n, const std::string& what) {
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n) {
    std::ostringstream os;
    os << what << ": expected a " << n << "x" << n << " matrix, got " << m.rows() << "x"
       << m.cols();
    throw DimensionError(os.str());
  }
}

double min_eigenvalue(const CMatrix& m) {
  return hermitian_eig(m).values.minCoeff();
}

// Checks that sum_k K_k X K_k^dagger stays block-diagonal for every X in an
// input block I. For output sectors a != b the map X -> sum_k A_k X B_k^dagger
// (A_k = P_a K_k P_I, B_k = P_b K_k P_I) vanishes iff
// sum_k vec(A_k) vec(B_k)^dagger does, whose squared Frobenius norm is
// tr(G_a G_b) with Gram matrices G_a(k, l) = <vec A_k, vec A_l>.
void check_block_preservation(const AlgebraSpec& input, const AlgebraSpec& output,
                              const std::vector<CMatrix>& kraus, const std::string& what) {
  if (output.is_quantum()) return;
  const auto k = static_cast<Eigen::Index>(kraus.size());
  double mass = 0.0;
  for (std::size_t b = 0; b < input.block_count(); ++b) {
    const auto idx = input.block_indices(b);
    std::vector<CMatrix> grams;
    for (std::size_t a = 0; a < output.block_count(); ++a) {
      const auto rows = output.block_indices(a);
      CMatrix z(static_cast<Eigen::Index>(rows.size() * idx.size()), k);
      for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::Index n = 0;
        for (std::size_t r : rows) {
          for (std::size_t i : idx) z(n++, j) = kraus[j](r, i);
        }
      }
      grams.push_back(z.adjoint() * z);
    }
    for (std::size_t a = 0; a < grams.size(); ++a) {
      for (std::size_t c = a + 1; c < grams.size(); ++c) {
        mass += 2.0 * grams[a].cwiseProduct(grams[c].transpose()).sum().real();
      }
    }
  }
  const double worst = std::sqrt(std::max(mass, 0.0));
  if (worst > kTolerance) {
    throw ValidationError(what + ": output leaves the block structure of the output algebra "
                                 "(off-block mass " + describe(worst) + ")");
  }
}

double kraus_sum_defect(const std::vector<CMatrix>& kraus, std::size_t n) {
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return max_abs(sum - CMatrix::Identity(n, n));
}

}  // namespace

// ---------------------------------------------------------------------------
// AlgebraSpec

AlgebraSpec::AlgebraSpec(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ValidationError("AlgebraSpec: at least one block is required");
  std::set<std::string> labels;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].dim == 0) {
      throw ValidationError("AlgebraSpec: block '" + blocks_[b].label +
                            "' has quantum dimension 0");
    }
    if (!labels.insert(blocks_[b].label).second) {
      throw ValidationError("AlgebraSpec: block labels must be unique ('" + blocks_[b].label +
                            "' repeated)");
    }
    sector_.insert(sector_.end(), blocks_[b].dim, b);
  }
}

AlgebraSpec::AlgebraSpec(std::vector<Block> blocks, std::vector<std::size_t> sectors)
    : blocks_(std::move(blocks)), sector_(std::move(sectors)) {}

AlgebraSpec AlgebraSpec::quantum(std::size_t dim, std::string label) {
  return AlgebraSpec({Block{std::move(label), dim}});
}

AlgebraSpec AlgebraSpec::classical(std::vector<std::string> labels) {
  std::vector<Block> blocks;
  blocks.reserve(labels.size());
  for (auto& l : labels) blocks.push_back(Block{std::move(l), 1});
  return AlgebraSpec(std::move(blocks));
}

AlgebraSpec AlgebraSpec::classical(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return classical(std::move(labels));
}

std::vector<std::size_t> AlgebraSpec::block_indices(std::size_t block) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sector_.size(); ++i) {
    if (sector_[i] == block) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> AlgebraSpec::find_block(const std::string& label) const {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].label == label) return b;
  }
  return std::nullopt;
}

bool AlgebraSpec::is_classical() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.dim == 1; });
}

bool AlgebraSpec::is_contiguous() const {
  std::size_t i = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (std::size_t k = 0; k < blocks_[b].dim; ++k, ++i) {
      if (sector_[i] != b) return false;
    }
  }
  return true;
}

AlgebraSpec AlgebraSpec::with_sectors(std::vector<Block> blocks, std::vector<std::size_t> sectors) {
  AlgebraSpec contiguous(blocks);
  if (sectors.size() != contiguous.total_dim()) {
    throw ValidationError("AlgebraSpec: sector list length " + std::to_string(sectors.size()) +
                          " differs from the total dimension " +
                          std::to_string(contiguous.total_dim()));
  }
  std::vector<std::size_t> count(blocks.size(), 0);
  for (auto s : sectors) {
    if (s >= blocks.size()) throw ValidationError("AlgebraSpec: sector names a missing block");
    ++count[s];
  }
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (count[b] != blocks[b].dim) {
      throw ValidationError("AlgebraSpec: block '" + blocks[b].label + "' has dimension " +
                            std::to_string(blocks[b].dim) + " but " + std::to_string(count[b]) +
                            " sector entries");
    }
  }
  return AlgebraSpec(std::move(blocks), std::move(sectors));
}

AlgebraSpec AlgebraSpec::enveloping() const { return quantum(total_dim()); }

double AlgebraSpec::off_block_mass(const CMatrix& m) const {
  check_square_side(m, total_dim(), "off_block_mass");
  if (is_quantum()) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < sector_.size(); ++i) {
    for (std::size_t j = 0; j < sector_.size(); ++j) {
      if (sector_[i] != sector_[j]) worst = std::max(worst, std::abs(m(i, j)));
    }
  }
  return worst;
}

CMatrix AlgebraSpec::block_projector(std::size_t block) const {
  CMatrix p = CMatrix::Zero(total_dim(), total_dim());
  for (auto i : block_indices(block)) p(i, i) = 1.0;
  return p;
}

AlgebraSpec tensor(const AlgebraSpec& a, const AlgebraSpec& b) {
  std::vector<Block> blocks;
  for (const auto& x : a.blocks()) {
    for (const auto& y : b.blocks()) blocks.push_back(Block{x.label + "," + y.label, x.dim * y.dim});
  }
  std::vector<std::size_t> sectors;
  sectors.reserve(a.total_dim() * b.total_dim());
  for (auto sa : a.sectors()) {
    for (auto sb : b.sectors()) sectors.push_back(sa * b.block_count() + sb);
  }
  return AlgebraSpec(std::move(blocks), std::move(sectors));
}

// ---------------------------------------------------------------------------
// State

State::State(AlgebraSpec algebra, CMatrix matrix)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {
  check_square_side(matrix_, algebra_.total_dim(), "State");
  if (!all_finite(matrix_)) throw ValidationError("State: matrix has non-finite entries");
  const double herm = hermitian_defect(matrix_);
  if (herm > kTolerance) {
    throw ValidationError("State: density operator is not Hermitian (defect " + describe(herm) +
                          ")");
  }
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTolerance) {
    throw ValidationError("State: unit trace violated (trace " + describe(tr) + ")");
  }
  const double off = algebra_.off_block_mass(matrix_);
  if (off > kTolerance) {
    throw ValidationError("State: density operator is not block-diagonal for its algebra "
                          "(off-block mass " + describe(off) + ")");
  }
  const double lo = min_eigenvalue(matrix_);
  if (lo < -kTolerance) {
    throw ValidationError("State: density operator is not positive semidefinite (eigenvalue " +
                          describe(lo) + ")");
  }
}

double State::purity() const { return (matrix_ * matrix_).trace().real(); }

State pure_state(const AlgebraSpec& algebra, const CVector& v) {
  return State(algebra, projector(v));
}

// ---------------------------------------------------------------------------
// Povm

Povm::Povm(AlgebraSpec algebra, std::vector<Outcome> outcomes)
    : algebra_(std::move(algebra)), outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw ValidationError("Povm: at least one outcome is required");
  const std::size_t n = algebra_.total_dim();
  std::set<std::string> labels;
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& o : outcomes_) {
    if (!labels.insert(o.label).second) {
      throw ValidationError("Povm: outcome labels must be unique ('" + o.label + "' repeated)");
    }
    check_square_side(o.effect, n, "Povm effect '" + o.label + "'");
    if (!all_finite(o.effect)) throw ValidationError("Povm: effect '" + o.label + "' is not finite");
    const double herm = hermitian_defect(o.effect);
    if (herm > kTolerance) {
      throw ValidationError("Povm: effect '" + o.label + "' is not Hermitian (defect " +
                            describe(herm) + ")");
    }
    const double lo = min_eigenvalue(o.effect);
    if (lo < -kTolerance) {
      throw ValidationError("Povm: effect '" + o.label + "' is not positive (eigenvalue " +
                            describe(lo) + ")");
    }
    const double off = algebra_.off_block_mass(o.effect);
    if (off > kTolerance) {
      throw ValidationError("Povm: effect '" + o.label +
                            "' is not block-diagonal (off-block mass " + describe(off) + ")");
    }
    sum += o.effect;
  }
  const double defect = max_abs(sum - CMatrix::Identity(n, n));
  if (defect > kTolerance) {
    throw ValidationError("Povm: effects do not sum to the identity (defect " + describe(defect) +
                          ")");
  }
}

std::optional<std::size_t> Povm::find(const std::string& label) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i].label == label) return i;
  }
  return std::nullopt;
}

const CMatrix& Povm::effect(const std::string& label) const {
  const auto i = find(label);
  if (!i) throw PreconditionError("Povm: no outcome labelled '" + label + "'");
  return outcomes_[*i].effect;
}

bool Povm::is_projective(double tol) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    const auto& e = outcomes_[i].effect;
    if (max_abs(e * e - e) > tol) return false;
    for (std::size_t j = i + 1; j < outcomes_.size(); ++j) {
      if (max_abs(e * outcomes_[j].effect) > tol) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Channel

Channel::Channel(AlgebraSpec input, AlgebraSpec output, std::vector<CMatrix> kraus)
    : input_(std::move(input)), output_(std::move(output)), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw ValidationError("Channel: at least one Kraus operator is required");
  const auto n_in = static_cast<Eigen::Index>(input_.total_dim());
  const auto n_out = static_cast<Eigen::Index>(output_.total_dim());
  for (const auto& k : kraus_) {
    if (k.rows() != n_out || k.cols() != n_in) {
      std::ostringstream os;
      os << "Channel: Kraus operator has shape " << k.rows() << "x" << k.cols() << ", expected "
         << n_out << "x" << n_in;
      throw DimensionError(os.str());
    }
    if (!all_finite(k)) throw ValidationError("Channel: Kraus operator has non-finite entries");
  }
  const double defect = kraus_sum_defect(kraus_, input_.total_dim());
  if (defect > kTolerance) {
    throw ValidationError("Channel: Kraus sum defect max|sum K^dagger K - I| = " +
                          describe(defect) + " exceeds 1e-9 (trace preservation)");
  }
  check_block_preservation(input_, output_, kraus_, "Channel");
}

Channel Channel::identity(const AlgebraSpec& algebra) {
  return Channel(algebra, algebra, {CMatrix::Identity(algebra.total_dim(), algebra.total_dim())});
}

Channel Channel::unitary(const AlgebraSpec& algebra, const CMatrix& u) {
  return Channel(algebra, algebra, {u});
}

CMatrix Channel::apply(const CMatrix& rho) const {
  CMatrix out = CMatrix::Zero(output_.total_dim(), output_.total_dim());
  for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

bool Channel::is_unitary(double tol) const {
  return kraus_.size() == 1 && qct::is_unitary(kraus_.front(), tol);
}

// ---------------------------------------------------------------------------
// Instrument

Instrument::Instrument(AlgebraSpec input, std::vector<InstrumentArm> arms)
    : input_(std::move(input)), arms_(std::move(arms)) {
  if (arms_.empty()) throw ValidationError("Instrument: at least one arm is required");
  const std::size_t n = input_.total_dim();
  std::set<std::string> labels;
  std::vector<CMatrix> all;
  for (const auto& arm : arms_) {
    if (!labels.insert(arm.label).second) {
      throw ValidationError("Instrument: arm labels must be unique ('" + arm.label +
                            "' repeated)");
    }
    if (arm.kraus.empty()) {
      throw ValidationError("Instrument: arm '" + arm.label + "' has no Kraus operators");
    }
    for (const auto& k : arm.kraus) {
      check_square_side(k, n, "Instrument arm '" + arm.label + "'");
      all.push_back(k);
    }
  }
  const double defect = kraus_sum_defect(all, n);
  if (defect > kTolerance) {
    throw ValidationError("Instrument: Kraus sum defect over all arms = " + describe(defect) +
                          " exceeds 1e-9 (trace preservation)");
  }
  for (const auto& arm : arms_) check_block_preservation(input_, input_, arm.kraus, "Instrument");
}

Instrument Instrument::luders(const Povm& povm) {
  std::vector<InstrumentArm> arms;
  for (const auto& o : povm.outcomes()) arms.push_back({o.label, {sqrt_psd(o.effect)}});
  return Instrument(povm.algebra(), std::move(arms));
}

Povm Instrument::povm() const {
  std::vector<Outcome> outcomes;
  const std::size_t n = input_.total_dim();
  for (const auto& arm : arms_) {
    CMatrix e = CMatrix::Zero(n, n);
    for (const auto& k : arm.kraus) e += k.adjoint() * k;
    outcomes.push_back({arm.label, 0.5 * (e + e.adjoint())});
  }
  return Povm(input_, std::move(outcomes));
}

Channel Instrument::total_channel() const {
  std::vector<CMatrix> all;
  for (const auto& arm : arms_) all.insert(all.end(), arm.kraus.begin(), arm.kraus.end());
  return Channel(input_, input_, std::move(all));
}

ParamInstrument::ParamInstrument(std::vector<std::string> parameter_labels,
                                 std::map<std::string, Instrument> table)
    : labels_(std::move(parameter_labels)), table_(std::move(table)) {
  if (labels_.empty()) throw ValidationError("ParamInstrument: no parameter labels");
  const AlgebraSpec* input = nullptr;
  for (const auto& l : labels_) {
    const auto it = table_.find(l);
    if (it == table_.end()) {
      throw ValidationError("ParamInstrument: table does not cover parameter '" + l + "'");
    }
    if (input && !(it->second.input() == *input)) {
      throw ValidationError("ParamInstrument: instruments must share one input algebra");
    }
    input = &it->second.input();
  }
}

const Instrument& ParamInstrument::at(const std::string& parameter) const {
  const auto it = table_.find(parameter);
  if (it == table_.end()) throw PreconditionError("ParamInstrument: unknown parameter '" + parameter + "'");
  return it->second;
}

// ---------------------------------------------------------------------------
// operations

State embed_classical(const std::vector<double>& p, const std::vector<std::string>& labels) {
  if (p.size() != labels.size()) {
    throw DimensionError("embed_classical: probabilities and labels differ in length");
  }
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw ValidationError("embed_classical: negative probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw ValidationError("embed_classical: probabilities sum to " + describe(sum) +
                          ", not 1");
  }
  return State(AlgebraSpec::classical(labels), diagonal(p));
}

State apply_channel(const Channel& t, const State& rho) {
  if (!(rho.algebra() == t.input())) {
    throw DimensionError("apply_channel: state algebra does not match the channel input");
  }
  CMatrix out = t.apply(rho.matrix());
  out = 0.5 * (out + out.adjoint());
  try {
    return State(t.output(), std::move(out));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("apply_channel: internal consistency error: ") + e.what());
  }
}

std::vector<double> measure(const Povm& e, const State& rho) {
  if (!(rho.algebra() == e.algebra())) {
    throw DimensionError("measure: state algebra does not match the POVM");
  }
  std::vector<double> p;
  double sum = 0.0;
  for (const auto& o : e.outcomes()) {
    double x = (rho.matrix() * o.effect).trace().real();
    if (x < kProbabilityFloor) x = std::max(x, 0.0);
    p.push_back(x);
    sum += x;
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ValidationError("measure: outcome probabilities sum to " + describe(sum));
  }
  return p;
}

std::vector<InstrumentResult> instrument_apply(const Instrument& ins, const State& rho) {
  if (!(rho.algebra() == ins.input())) {
    throw DimensionError("instrument_apply: state algebra does not match the instrument");
  }
  std::vector<InstrumentResult> out;
  double sum = 0.0;
  for (const auto& arm : ins.arms()) {
    CMatrix post = CMatrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto& k : arm.kraus) post.noalias() += k * rho.matrix() * k.adjoint();
    const double p = std::max(post.trace().real(), 0.0);
    sum += p;
    InstrumentResult r{arm.label, p, std::nullopt};
    if (p > kProbabilityFloor) {
      post /= p;
      r.post_state.emplace(ins.input(), 0.5 * (post + post.adjoint()));
    } else {
      r.probability = 0.0;
    }
    out.push_back(std::move(r));
  }
  if (std::abs(sum - 1.0) > kTolerance) {
    throw ValidationError("instrument_apply: arm probabilities sum to " + describe(sum));
  }
  return out;
}

Channel lift_channel(const Channel& t, const AlgebraSpec& bystander, Side side) {
  const CMatrix id = CMatrix::Identity(bystander.total_dim(), bystander.total_dim());
  std::vector<CMatrix> kraus;
  kraus.reserve(t.kraus().size());
  for (const auto& k : t.kraus()) kraus.push_back(side == Side::kLeft ? tensor(k, id) : tensor(id, k));
  if (side == Side::kLeft) {
    return Channel(tensor(t.input(), bystander), tensor(t.output(), bystander), std::move(kraus));
  }
  return Channel(tensor(bystander, t.input()), tensor(bystander, t.output()), std::move(kraus));
}

Channel measurement_channel(const Povm& e) {
  std::vector<std::string> labels;
  for (const auto& o : e.outcomes()) labels.push_back(o.label);
  const auto out = AlgebraSpec::classical(labels);
  const std::size_t n = e.algebra().total_dim();
  std::vector<CMatrix> kraus;
  for (std::size_t x = 0; x < labels.size(); ++x) {
    const CMatrix root = sqrt_psd(e.outcomes()[x].effect);
    for (std::size_t k = 0; k < n; ++k) {
      CMatrix op = CMatrix::Zero(labels.size(), n);
      op.row(x) = root.row(k);
      kraus.push_back(std::move(op));
    }
  }
  return Channel(e.algebra(), out, std::move(kraus));
}

}  // namespace qct
