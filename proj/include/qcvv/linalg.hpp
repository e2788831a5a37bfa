// Copyright 2026 The qcvv authors
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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "qcvv/support.hpp"

namespace qcvv {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Column-stacking vectorization: vec(M)(c * rows + r) = M(r, c).
/// With this convention vec(A rho B) = (B^T (x) A) vec(rho).
CVec vec(const CMat& m);

/// Inverse of vec for square matrices.
CMat unvec(const CVec& v);

CMat kron(const CMat& a, const CMat& b);

inline CMat dagger(const CMat& m) { return m.adjoint(); }

/// Hermitian part (m + m^dag) / 2.
CMat hermitize(const CMat& m);

/// Largest absolute entry of m - m^dag; zero iff m is Hermitian.
double herm_deviation(const CMat& m);

/// Largest absolute entry.
double max_abs(const CMat& m);

/// Eigenvalues of a (nearly) Hermitian matrix, ascending.
RVec eigh_values(const CMat& m);

/// Eigen-decomposition of a (nearly) Hermitian matrix; values ascending,
/// matching eigenvector columns.
std::pair<RVec, CMat> eigh(const CMat& m);

double min_eigenvalue(const CMat& m);

/// Nearest positive semidefinite matrix in Frobenius norm: clips negative
/// eigenvalues of the Hermitian part to zero.
CMat psd_clip(const CMat& m);

/// Principal square root of a PSD matrix; negative eigenvalue dust from
/// finite precision is clipped to zero first.
CMat psd_sqrt(const CMat& m);

/// Moore-Penrose pseudoinverse with a relative singular value cutoff.
CMat pinv(const CMat& m, double rcond = 1e-12);

/// Partial trace over the second factor of C^{d1} (x) C^{d2}.
CMat partial_trace_second(const CMat& m, int d1, int d2);

/// Partial trace over the first factor of C^{d1} (x) C^{d2}.
CMat partial_trace_first(const CMat& m, int d1, int d2);

/// Normalized complex-Gaussian vector: Haar-uniform on the unit sphere.
CVec random_statevector(int dim, Rng& rng);

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// R-diagonal phase fix.
CMat haar_unitary(int dim, Rng& rng);

}  // namespace qcvv
