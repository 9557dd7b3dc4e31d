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

#include "qct/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qct/errors.hpp"

namespace qct {

namespace {

// Digits of `index` in the mixed radix `dims` (left factor most significant).
void decompose(std::size_t index, const Dims& dims, std::vector<std::size_t>& digits) {
  digits.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
}

// For every output index of the permuted layout, the input index it reads.
std::vector<std::size_t> permutation_map(const Dims& dims,
                                         const std::vector<std::size_t>& perm) {
  if (perm.size() != dims.size()) {
    throw DimensionError("permute_factors: permutation length differs from factor count");
  }
  std::vector<bool> seen(dims.size(), false);
  for (auto p : perm) {
    if (p >= dims.size() || seen[p]) {
      throw DimensionError("permute_factors: not a permutation of the factor indices");
    }
    seen[p] = true;
  }
  Dims out_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) out_dims[k] = dims[perm[k]];

  const std::size_t total = product(dims);
  std::vector<std::size_t> map(total);
  std::vector<std::size_t> out_digits;
  std::vector<std::size_t> in_digits(dims.size());
  for (std::size_t o = 0; o < total; ++o) {
    decompose(o, out_dims, out_digits);
    for (std::size_t k = 0; k < perm.size(); ++k) in_digits[perm[k]] = out_digits[k];
    std::size_t in = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) in = in * dims[k] + in_digits[k];
    map[o] = in;
  }
  return map;
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionError(os.str());
  }
}

}  // namespace

CMatrix identity(std::size_t n) { return CMatrix::Identity(n, n); }

CVector basis_vector(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionError("basis_vector: index out of range");
  CVector v = CVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

CMatrix diagonal(std::span<const double> values) {
  CMatrix m = CMatrix::Zero(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool all_finite(const CMatrix& m) { return m.allFinite(); }

double hermitian_defect(const CMatrix& m) {
  require_square(m, "hermitian_defect");
  return max_abs(m - m.adjoint());
}

bool is_hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && hermitian_defect(m) <= tol;
}

double unitary_defect(const CMatrix& u) {
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols()));
}

bool is_unitary(const CMatrix& u, double tol) {
  return u.rows() == u.cols() && unitary_defect(u) <= tol &&
         max_abs(u * u.adjoint() - CMatrix::Identity(u.rows(), u.rows())) <= tol;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix tensor_all(std::span<const CMatrix> factors) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor(out, f);
  return out;
}

CMatrix partial_trace(const CMatrix& m, const Dims& dims,
                      const std::vector<std::size_t>& keep) {
  require_square(m, "partial_trace");
  if (product(dims) != static_cast<std::size_t>(m.rows())) {
    std::ostringstream os;
    os << "partial_trace: factor dimensions multiply to " << product(dims)
       << " but the matrix side is " << m.rows();
    throw DimensionError(os.str());
  }
  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size() || kept[k]) throw DimensionError("partial_trace: bad keep index");
    kept[k] = true;
  }
  std::vector<std::size_t> order(keep.begin(), keep.end());
  std::sort(order.begin(), order.end());
  std::size_t keep_dim = 1;
  for (auto k : order) keep_dim *= dims[k];
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!kept[k]) order.push_back(k);
  }
  const std::size_t traced_dim = product(dims) / keep_dim;

  const auto map = permutation_map(dims, order);
  CMatrix out = CMatrix::Zero(keep_dim, keep_dim);
  for (std::size_t i = 0; i < keep_dim; ++i) {
    for (std::size_t j = 0; j < keep_dim; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) {
        acc += m(map[i * traced_dim + t], map[j * traced_dim + t]);
      }
      out(i, j) = acc;
    }
  }
  // `keep` may list factors out of order; honour the requested order.
  std::vector<std::size_t> sorted_keep(keep.begin(), keep.end());
  std::sort(sorted_keep.begin(), sorted_keep.end());
  if (sorted_keep != keep) {
    Dims kept_dims;
    for (auto k : sorted_keep) kept_dims.push_back(dims[k]);
    std::vector<std::size_t> perm;
    for (auto k : keep) {
      perm.push_back(static_cast<std::size_t>(
          std::find(sorted_keep.begin(), sorted_keep.end(), k) - sorted_keep.begin()));
    }
    out = permute_factors(out, kept_dims, perm);
  }
  return out;
}

CVector permute_factors(const CVector& v, const Dims& dims,
                        const std::vector<std::size_t>& perm) {
  if (product(dims) != static_cast<std::size_t>(v.size())) {
    throw DimensionError("permute_factors: dimensions do not match vector length");
  }
  const auto map = permutation_map(dims, perm);
  CVector out(v.size());
  for (std::size_t o = 0; o < map.size(); ++o) out(o) = v(map[o]);
  return out;
}

CMatrix permute_factors(const CMatrix& m, const Dims& dims,
                        const std::vector<std::size_t>& perm) {
  require_square(m, "permute_factors");
  if (product(dims) != static_cast<std::size_t>(m.rows())) {
    throw DimensionError("permute_factors: dimensions do not match matrix side");
  }
  const auto map = permutation_map(dims, perm);
  CMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < map.size(); ++i) {
    for (std::size_t j = 0; j < map.size(); ++j) out(i, j) = m(map[i], map[j]);
  }
  return out;
}

CMatrix embed_operator(const CMatrix& op, const Dims& dims,
                       const std::vector<std::size_t>& positions) {
  require_square(op, "embed_operator");
  std::vector<bool> used(dims.size(), false);
  Dims sub_dims;
  for (auto p : positions) {
    if (p >= dims.size() || used[p]) throw DimensionError("embed_operator: bad factor position");
    used[p] = true;
    sub_dims.push_back(dims[p]);
  }
  const std::size_t sub = product(sub_dims);
  if (sub != static_cast<std::size_t>(op.rows())) {
    throw DimensionError("embed_operator: operator side does not match its factors");
  }
  std::vector<std::size_t> order(positions.begin(), positions.end());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (!used[k]) order.push_back(k);
  }
  // In the reordered layout the operator is op (x) I_rest.
  const std::size_t total = product(dims);
  const std::size_t rest = total / sub;
  const auto map = permutation_map(dims, order);
  CMatrix out = CMatrix::Zero(total, total);
  for (std::size_t s = 0; s < sub; ++s) {
    for (std::size_t t = 0; t < sub; ++t) {
      const Complex value = op(s, t);
      if (value == Complex(0.0)) continue;
      for (std::size_t r = 0; r < rest; ++r) {
        out(map[s * rest + r], map[t * rest + r]) = value;
      }
    }
  }
  return out;
}

EigenDecomposition hermitian_eig(const CMatrix& m) {
  require_square(m, "hermitian_eig");
  if (!all_finite(m)) throw ValidationError("hermitian_eig: matrix has non-finite entries");
  const double defect = hermitian_defect(m);
  if (defect > kTolerance) {
    std::ostringstream os;
    os << "hermitian_eig: matrix is not Hermitian (max |M - M^dagger| = " << defect
       << " exceeds " << kTolerance << ")";
    throw ValidationError(os.str());
  }
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ValidationError("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double trace_norm(const CMatrix& m) {
  require_square(m, "trace_norm");
  if (m.size() == 0) return 0.0;
  if (is_hermitian(m)) return hermitian_eig(m).values.cwiseAbs().sum();
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

CMatrix sqrt_psd(const CMatrix& m) {
  const auto eig = hermitian_eig(m);
  RVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double lambda = eig.values(i);
    if (lambda < -kTolerance) {
      std::ostringstream os;
      os << "sqrt_psd: matrix is not positive semidefinite (eigenvalue " << lambda << ")";
      throw ValidationError(os.str());
    }
    roots(i) = std::sqrt(std::max(lambda, 0.0));
  }
  return eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  require_square(rho, "fidelity");
  require_square(sigma, "fidelity");
  if (rho.rows() != sigma.rows()) throw DimensionError("fidelity: dimension mismatch");
  const CMatrix product = sqrt_psd(rho) * sqrt_psd(sigma);
  return Eigen::JacobiSVD<CMatrix>(product).singularValues().sum();
}

CMatrix complete_isometry(const CMatrix& v) {
  const auto n = v.rows();
  const auto m = v.cols();
  if (n < m) throw ValidationError("complete_isometry: more columns than rows");
  const double defect = max_abs(v.adjoint() * v - CMatrix::Identity(m, m));
  if (defect > kTolerance) {
    std::ostringstream os;
    os << "complete_isometry: columns are not orthonormal (max |V^dagger V - I| = " << defect
       << ")";
    throw ValidationError(os.str());
  }
  CMatrix u(n, n);
  u.leftCols(m) = v;
  if (m == n) return u;

  Eigen::HouseholderQR<CMatrix> qr(v);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  CMatrix complement = q.rightCols(n - m);
  // Re-orthogonalize against v and within the complement.
  for (int pass = 0; pass < 2; ++pass) {
    complement -= v * (v.adjoint() * complement);
    for (Eigen::Index k = 0; k < complement.cols(); ++k) {
      for (Eigen::Index j = 0; j < k; ++j) {
        complement.col(k) -= complement.col(j) * complement.col(j).dot(complement.col(k));
      }
      complement.col(k).normalize();
    }
  }
  u.rightCols(n - m) = complement;
  return u;
}

}  // namespace qct
