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

// Dense complex linear algebra at desk scale.
//
// Index convention for tensor products: row-major Kronecker order with the
// left factor outermost. For factors of dimensions (d0, d1, ..., dk) the
// basis vector |i0, i1, ..., ik> sits at index
//   ((i0 * d1 + i1) * d2 + i2) ... * dk + ik.
// Every module uses this layout.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qct {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

using Dims = std::vector<std::size_t>;

/// Hermiticity and PSD tolerance used throughout.
inline constexpr double kTolerance = 1e-9;

// ---------------------------------------------------------------------------
// construction helpers

CMatrix identity(std::size_t n);
CVector basis_vector(std::size_t dim, std::size_t index);
CMatrix projector(const CVector& v);
CMatrix diagonal(std::span<const double> values);

std::size_t product(std::span<const std::size_t> dims);

// ---------------------------------------------------------------------------
// checks

double max_abs(const CMatrix& m);
bool all_finite(const CMatrix& m);
/// max |m - m^dagger| entry.
double hermitian_defect(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = kTolerance);
/// max |u^dagger u - I| entry.
double unitary_defect(const CMatrix& u);
bool is_unitary(const CMatrix& u, double tol = kTolerance);

// ---------------------------------------------------------------------------
// tensor structure

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);
CMatrix tensor_all(std::span<const CMatrix> factors);

/// Traces out every factor not listed in `keep`. Kept factors stay in their
/// original relative order. Throws DimensionError when the product of `dims`
/// does not match the side length of `m` or `keep` names a bad factor.
CMatrix partial_trace(const CMatrix& m, const Dims& dims,
                      const std::vector<std::size_t>& keep);

/// Reorders tensor factors. Factor `perm[k]` of the input becomes factor `k`
/// of the output.
CVector permute_factors(const CVector& v, const Dims& dims,
                        const std::vector<std::size_t>& perm);
CMatrix permute_factors(const CMatrix& m, const Dims& dims,
                        const std::vector<std::size_t>& perm);

/// Places `op`, which acts on the factors listed in `positions` (in that
/// order), into the full space described by `dims`, identity elsewhere.
CMatrix embed_operator(const CMatrix& op, const Dims& dims,
                       const std::vector<std::size_t>& positions);

// ---------------------------------------------------------------------------
// spectral tools

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // columns are eigenvectors
};

/// Throws ValidationError if `m` is not Hermitian within kTolerance.
EigenDecomposition hermitian_eig(const CMatrix& m);

/// Sum of singular values. Hermitian input takes the eigenvalue path.
double trace_norm(const CMatrix& m);

/// Square root of a PSD matrix; eigenvalues in [-kTolerance, 0) are clipped
/// to zero, anything more negative is a ValidationError.
CMatrix sqrt_psd(const CMatrix& m);

/// Root fidelity tr sqrt(sqrt(rho) sigma sqrt(rho)).
double fidelity(const CMatrix& rho, const CMatrix& sigma);

/// Extends a matrix with orthonormal columns to a square unitary whose
/// leading columns are `v` exactly.
CMatrix complete_isometry(const CMatrix& v);

}  // namespace qct
