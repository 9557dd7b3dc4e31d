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

// Hybrid observable algebras C(X) (x) B(H), and the states, measurements,
// channels and instruments that live on them.
//
// An algebra is a list of labelled blocks; block x carries a quantum system
// of dimension d_x. Elements are stored as full matrices of the enveloping
// algebra B(C^n), n = sum d_x, and must vanish outside the diagonal blocks.
// Each basis index of the enveloping space belongs to exactly one block (its
// "sector"). Algebras read from documents have contiguous sectors; tensor
// products interleave them according to the Kronecker layout.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qct/linalg.hpp"

namespace qct {

struct Block {
  std::string label;
  std::size_t dim = 1;

  bool operator==(const Block&) const = default;
};

class AlgebraSpec {
 public:
  /// Blocks laid out contiguously in the order given.
  explicit AlgebraSpec(std::vector<Block> blocks);

  static AlgebraSpec quantum(std::size_t dim, std::string label = "q");
  static AlgebraSpec classical(std::vector<std::string> labels);
  /// Classical algebra over labels "0", ..., "n-1".
  static AlgebraSpec classical(std::size_t n);
  /// Blocks with an explicit block number per basis index.
  static AlgebraSpec with_sectors(std::vector<Block> blocks, std::vector<std::size_t> sectors);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t total_dim() const { return sector_.size(); }
  std::size_t sector_of(std::size_t basis_index) const { return sector_.at(basis_index); }
  const std::vector<std::size_t>& sectors() const { return sector_; }
  std::vector<std::size_t> block_indices(std::size_t block) const;
  std::optional<std::size_t> find_block(const std::string& label) const;

  bool is_quantum() const { return blocks_.size() == 1; }
  bool is_classical() const;
  /// True when every block occupies a run of consecutive indices in order.
  bool is_contiguous() const;
  /// The single-block algebra B(C^n) containing this one.
  AlgebraSpec enveloping() const;

  /// Largest entry outside the diagonal blocks.
  double off_block_mass(const CMatrix& m) const;
  CMatrix block_projector(std::size_t block) const;

  bool operator==(const AlgebraSpec&) const = default;

  friend AlgebraSpec tensor(const AlgebraSpec& a, const AlgebraSpec& b);

 private:
  AlgebraSpec(std::vector<Block> blocks, std::vector<std::size_t> sectors);

  std::vector<Block> blocks_;
  std::vector<std::size_t> sector_;
};

/// Composite algebra. Block (i, j) is labelled "<a_i>,<b_j>" and ordered
/// with the left block index outermost.
AlgebraSpec tensor(const AlgebraSpec& a, const AlgebraSpec& b);

/// Density operator on an algebra. The constructor validates: finite,
/// Hermitian, unit trace, PSD and block-diagonal, all within kTolerance.
class State {
 public:
  State(AlgebraSpec algebra, CMatrix matrix);

  const AlgebraSpec& algebra() const { return algebra_; }
  const CMatrix& matrix() const { return matrix_; }
  double purity() const;

 private:
  AlgebraSpec algebra_;
  CMatrix matrix_;
};

State pure_state(const AlgebraSpec& algebra, const CVector& v);

struct Outcome {
  std::string label;
  CMatrix effect;
};

/// Positive operator valued measure. Effects are PSD, block-diagonal and sum
/// to the identity.
class Povm {
 public:
  Povm(AlgebraSpec algebra, std::vector<Outcome> outcomes);

  const AlgebraSpec& algebra() const { return algebra_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const CMatrix& effect(const std::string& label) const;
  std::optional<std::size_t> find(const std::string& label) const;
  bool is_projective(double tol = kTolerance) const;

 private:
  AlgebraSpec algebra_;
  std::vector<Outcome> outcomes_;
};

/// Completely positive trace-preserving map in Kraus form. Validated on
/// construction: shapes, sum K^dagger K = I, and block-structure
/// preservation on a spanning set of every input block.
class Channel {
 public:
  Channel(AlgebraSpec input, AlgebraSpec output, std::vector<CMatrix> kraus);

  static Channel identity(const AlgebraSpec& algebra);
  static Channel unitary(const AlgebraSpec& algebra, const CMatrix& u);

  const AlgebraSpec& input() const { return input_; }
  const AlgebraSpec& output() const { return output_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  /// Sum K rho K^dagger on raw matrices, no validation.
  CMatrix apply(const CMatrix& rho) const;
  /// True when there is one Kraus operator and it is unitary.
  bool is_unitary(double tol = kTolerance) const;

 private:
  AlgebraSpec input_;
  AlgebraSpec output_;
  std::vector<CMatrix> kraus_;
};

struct InstrumentArm {
  std::string label;
  std::vector<CMatrix> kraus;
};

/// Measurement with post-measurement state: arm x maps rho to
/// sum_k K_{x,k} rho K_{x,k}^dagger. The union of all arms is trace
/// preserving.
class Instrument {
 public:
  Instrument(AlgebraSpec input, std::vector<InstrumentArm> arms);

  /// Lueders instrument of a POVM: one Kraus operator sqrt(E_x) per arm.
  static Instrument luders(const Povm& povm);

  const AlgebraSpec& input() const { return input_; }
  const std::vector<InstrumentArm>& arms() const { return arms_; }
  /// Induced POVM E_x = sum_k K_{x,k}^dagger K_{x,k}.
  Povm povm() const;
  /// Channel obtained by ignoring the outcome.
  Channel total_channel() const;

 private:
  AlgebraSpec input_;
  std::vector<InstrumentArm> arms_;
};

/// Family of instruments indexed by a classical parameter.
class ParamInstrument {
 public:
  ParamInstrument(std::vector<std::string> parameter_labels,
                  std::map<std::string, Instrument> table);

  const std::vector<std::string>& parameter_labels() const { return labels_; }
  const Instrument& at(const std::string& parameter) const;

 private:
  std::vector<std::string> labels_;
  std::map<std::string, Instrument> table_;
};

/// Probabilities below this are treated as zero.
inline constexpr double kProbabilityFloor = 1e-12;

State embed_classical(const std::vector<double>& p, const std::vector<std::string>& labels);

/// Throws DimensionError on algebra mismatch, ValidationError if the output
/// leaves the output algebra.
State apply_channel(const Channel& t, const State& rho);

std::vector<double> measure(const Povm& e, const State& rho);

struct InstrumentResult {
  std::string label;
  double probability = 0.0;
  std::optional<State> post_state;  // absent when probability <= kProbabilityFloor
};

std::vector<InstrumentResult> instrument_apply(const Instrument& ins, const State& rho);

enum class Side { kLeft, kRight };

/// T (x) Id when the channel sits on the left of the bystander, Id (x) T
/// otherwise.
Channel lift_channel(const Channel& t, const AlgebraSpec& bystander, Side side);

/// Quantum-classical channel rho -> sum_x tr(rho E_x) |x><x| onto the
/// classical algebra over the POVM's labels.
Channel measurement_channel(const Povm& e);

}  // namespace qct
