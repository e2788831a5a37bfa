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

#include "qcvv/linalg.hpp"

namespace qcvv {

CVec vec(const CMat& m) {
  CVec v(m.rows() * m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    v.segment(c * m.rows(), m.rows()) = m.col(c);
  }
  return v;
}

CMat unvec(const CVec& v) {
  Eigen::Index d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) {
    throw ValidationError(detail::cat("unvec: length ", v.size(), " is not a perfect square"));
  }
  CMat m(d, d);
  for (Eigen::Index c = 0; c < d; ++c) m.col(c) = v.segment(c * d, d);
  return m;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMat hermitize(const CMat& m) { return 0.5 * (m + m.adjoint()); }

double herm_deviation(const CMat& m) { return max_abs(m - m.adjoint()); }

double max_abs(const CMat& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

RVec eigh_values(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitize(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigh_values: eigensolver failed");
  return solver.eigenvalues();
}

std::pair<RVec, CMat> eigh(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(hermitize(m));
  if (solver.info() != Eigen::Success) throw NumericalError("eigh: eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const CMat& m) { return eigh_values(m).minCoeff(); }

CMat psd_clip(const CMat& m) {
  auto [vals, vecs] = eigh(m);
  RVec clipped = vals.cwiseMax(0.0);
  return vecs * clipped.asDiagonal() * vecs.adjoint();
}

CMat psd_sqrt(const CMat& m) {
  auto [vals, vecs] = eigh(m);
  RVec root = vals.cwiseMax(0.0).cwiseSqrt();
  return vecs * root.asDiagonal() * vecs.adjoint();
}

CMat pinv(const CMat& m, double rcond) {
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& s = svd.singularValues();
  double cutoff = rcond * (s.size() > 0 ? s(0) : 0.0);
  RVec inv = RVec::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) inv(i) = 1.0 / s(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

CMat partial_trace_second(const CMat& m, int d1, int d2) {
  if (m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows()) {
    throw ValidationError(detail::cat("partial_trace_second: matrix is ", m.rows(), "x", m.cols(),
                                      ", expected ", d1 * d2, "x", d1 * d2));
  }
  CMat out = CMat::Zero(d1, d1);
  for (int i = 0; i < d1; ++i) {
    for (int j = 0; j < d1; ++j) {
      for (int k = 0; k < d2; ++k) out(i, j) += m(i * d2 + k, j * d2 + k);
    }
  }
  return out;
}

CMat partial_trace_first(const CMat& m, int d1, int d2) {
  if (m.rows() != static_cast<Eigen::Index>(d1) * d2 || m.cols() != m.rows()) {
    throw ValidationError(detail::cat("partial_trace_first: matrix is ", m.rows(), "x", m.cols(),
                                      ", expected ", d1 * d2, "x", d1 * d2));
  }
  CMat out = CMat::Zero(d2, d2);
  for (int i = 0; i < d2; ++i) {
    for (int j = 0; j < d2; ++j) {
      for (int k = 0; k < d1; ++k) out(i, j) += m(k * d2 + i, k * d2 + j);
    }
  }
  return out;
}

CVec random_statevector(int dim, Rng& rng) {
  if (dim < 1) throw ValidationError("random_statevector: dim must be positive");
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
  double norm = v.norm();
  while (norm == 0.0) {  // astronomically unlikely
    for (int i = 0; i < dim; ++i) v(i) = Complex(rng.gaussian(), rng.gaussian());
    norm = v.norm();
  }
  return v / norm;
}

CMat haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw ValidationError("haar_unitary: dim must be positive");
  CMat g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  }
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the diagonal phases so the distribution is exactly Haar.
  for (int j = 0; j < dim; ++j) {
    Complex d = r(j, j);
    double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace qcvv
