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

#include "qcvv/qmodel.hpp"

#include "qcvv/pauli.hpp"

namespace qcvv {

namespace {

void check_square(const CMat& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw ValidationError(detail::cat(what, ": matrix is ", m.rows(), "x", m.cols(),
                                      ", expected square and non-empty"));
  }
}

Eigen::Index isqrt_size(Eigen::Index n, const char* what) {
  Eigen::Index d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw ValidationError(detail::cat(what, ": size ", n, " is not a perfect square"));
  return d;
}

}  // namespace

DensityMatrix::DensityMatrix(CMat m, double tol) {
  check_square(m, "DensityMatrix");
  double herm = herm_deviation(m);
  if (herm > tol) {
    throw ValidationError(detail::cat("DensityMatrix: not Hermitian, max |m - m^dag| = ", herm));
  }
  double tr_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_dev > tol) {
    throw ValidationError(detail::cat("DensityMatrix: trace deviates from 1 by ", tr_dev));
  }
  double min_eig = min_eigenvalue(m);
  if (min_eig < -tol) {
    throw ValidationError(detail::cat("DensityMatrix: not PSD, min eigenvalue = ", min_eig));
  }
  mat = std::move(m);
}

PureState::PureState(CVec v, double tol) {
  if (v.size() == 0) throw ValidationError("PureState: empty vector");
  double dev = std::abs(v.norm() - 1.0);
  if (dev > tol) throw ValidationError(detail::cat("PureState: norm deviates from 1 by ", dev));
  amp = std::move(v);
}

DensityMatrix pure_density(const PureState& psi) {
  return DensityMatrix(psi.amp * psi.amp.adjoint());
}

CMat kraus_to_superop(const std::vector<CMat>& kraus) {
  if (kraus.empty()) throw ValidationError("kraus_to_superop: empty Kraus list");
  Eigen::Index d = kraus[0].rows();
  for (const CMat& k : kraus) {
    check_square(k, "kraus_to_superop");
    if (k.rows() != d) {
      throw ValidationError(detail::cat("kraus_to_superop: mixed Kraus dimensions ", d, " and ", k.rows()));
    }
  }
  CMat s = CMat::Zero(d * d, d * d);
  for (const CMat& k : kraus) s += kron(k.conjugate(), k);
  return s;
}

CMat superop_to_choi(const CMat& superop) {
  check_square(superop, "superop_to_choi");
  Eigen::Index d = isqrt_size(superop.rows(), "superop_to_choi");
  CMat choi(d * d, d * d);
  // S[j*d + i, l*d + k] = <i| G(|k><l|) |j>  maps to  J[k*d + i, l*d + j].
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index l = 0; l < d; ++l) {
        for (Eigen::Index j = 0; j < d; ++j) {
          choi(k * d + i, l * d + j) = superop(j * d + i, l * d + k);
        }
      }
    }
  }
  return choi;
}

CMat choi_to_superop(const CMat& choi) {
  check_square(choi, "choi_to_superop");
  Eigen::Index d = isqrt_size(choi.rows(), "choi_to_superop");
  CMat s(d * d, d * d);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index l = 0; l < d; ++l) {
        for (Eigen::Index j = 0; j < d; ++j) {
          s(j * d + i, l * d + k) = choi(k * d + i, l * d + j);
        }
      }
    }
  }
  return s;
}

std::vector<CMat> choi_to_kraus(const CMat& choi, double rel_cutoff) {
  check_square(choi, "choi_to_kraus");
  auto [vals, vecs] = eigh(choi);
  double cutoff = rel_cutoff * std::max(vals.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<CMat> kraus;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) > cutoff) {
      kraus.push_back(unvec(std::sqrt(vals(i)) * vecs.col(i)));
    }
  }
  if (kraus.empty()) throw ValidationError("choi_to_kraus: Choi matrix has no positive spectrum");
  return kraus;
}

namespace {

void check_trace_preserving(const std::vector<CMat>& kraus, double tol) {
  Eigen::Index d = kraus[0].rows();
  CMat acc = CMat::Zero(d, d);
  for (const CMat& k : kraus) acc += k.adjoint() * k;
  double dev = max_abs(acc - CMat::Identity(d, d));
  if (dev > tol) {
    throw ValidationError(detail::cat(
        "QuantumChannel: not trace-preserving, max |sum K^dag K - I| = ", dev));
  }
}

void check_representation_coherence(const std::vector<CMat>& kraus, const CMat& superop, double tol) {
  Eigen::Index d = kraus[0].rows();
  if (d <= 8) {
    double dev = max_abs(superop - kraus_to_superop(kraus));
    if (dev > tol) {
      throw ValidationError(detail::cat(
          "QuantumChannel: Kraus and superoperator forms disagree by ", dev));
    }
    return;
  }
  // Large register: compare the action of both forms on a few fixed probe
  // states instead of rebuilding the d^4-entry superoperator.
  Rng rng(0x51f0c0de);
  for (int probe = 0; probe < 3; ++probe) {
    CVec psi = random_statevector(static_cast<int>(d), rng);
    CMat rho = psi * psi.adjoint();
    CMat via_kraus = CMat::Zero(d, d);
    for (const CMat& k : kraus) via_kraus += k * rho * k.adjoint();
    CMat via_superop = unvec(superop * vec(rho));
    double dev = max_abs(via_kraus - via_superop);
    if (dev > tol) {
      throw ValidationError(detail::cat(
          "QuantumChannel: Kraus and superoperator forms disagree by ", dev, " on a probe state"));
    }
  }
}

}  // namespace

QuantumChannel QuantumChannel::from_kraus(std::vector<CMat> kraus, double tol) {
  CMat superop = kraus_to_superop(kraus);  // also validates shapes
  check_trace_preserving(kraus, tol);
  QuantumChannel g;
  g.kraus = std::move(kraus);
  g.superop = std::move(superop);
  return g;
}

QuantumChannel QuantumChannel::from_superop(const CMat& superop, double tol) {
  CMat choi = superop_to_choi(superop);
  Eigen::Index d = isqrt_size(superop.rows(), "QuantumChannel::from_superop");
  double herm = herm_deviation(choi);
  if (herm > tol) {
    throw ValidationError(detail::cat(
        "QuantumChannel: superoperator is not Hermiticity-preserving, Choi deviation = ", herm));
  }
  double min_eig = min_eigenvalue(choi);
  if (min_eig < -tol * static_cast<double>(d)) {
    throw ValidationError(detail::cat(
        "QuantumChannel: not completely positive, min Choi eigenvalue = ", min_eig));
  }
  double tp_dev = max_abs(partial_trace_second(choi, static_cast<int>(d), static_cast<int>(d)) -
                          CMat::Identity(d, d));
  if (tp_dev > tol * static_cast<double>(d)) {
    throw ValidationError(detail::cat(
        "QuantumChannel: not trace-preserving, max |Tr_out J - I| = ", tp_dev));
  }
  QuantumChannel g;
  g.kraus = choi_to_kraus(choi);
  g.superop = superop;
  return g;
}

QuantumChannel QuantumChannel::from_parts(std::vector<CMat> kraus, CMat superop, double tol) {
  if (kraus.empty()) throw ValidationError("QuantumChannel: empty Kraus list");
  Eigen::Index d = kraus[0].rows();
  if (superop.rows() != d * d || superop.cols() != d * d) {
    throw ValidationError(detail::cat("QuantumChannel: superoperator is ", superop.rows(), "x",
                                      superop.cols(), " but Kraus dimension ", d, " needs ",
                                      d * d, "x", d * d));
  }
  check_trace_preserving(kraus, tol);
  check_representation_coherence(kraus, superop, tol);
  QuantumChannel g;
  g.kraus = std::move(kraus);
  g.superop = std::move(superop);
  return g;
}

DensityMatrix QuantumChannel::choi_state() const {
  Eigen::Index d = dim();
  return DensityMatrix(choi_matrix() / static_cast<double>(d));
}

RMat QuantumChannel::ptm() const {
  int n = 0;
  for (int d = dim(); d > 1; d >>= 1) ++n;
  if ((1 << n) != dim()) {
    throw ValidationError(detail::cat("ptm: dimension ", dim(), " is not a power of 2"));
  }
  CMat w = pauli_basis_change(n);
  CMat r = w.adjoint() * superop * w;
  double imag = max_abs(CMat(r.imag().cast<Complex>()));
  if (imag > 1e-9) {
    throw NumericalError(detail::cat("ptm: non-real transfer matrix, max imaginary part = ", imag));
  }
  return r.real();
}

QuantumChannel unitary_channel(const CMat& u, double tol) {
  check_square(u, "unitary_channel");
  double dev = max_abs(u.adjoint() * u - CMat::Identity(u.rows(), u.cols()));
  if (dev > tol) {
    throw ValidationError(detail::cat("unitary_channel: not unitary, max |U^dag U - I| = ", dev));
  }
  QuantumChannel g;
  g.kraus = {u};
  g.superop = kron(u.conjugate(), u);
  return g;
}

QuantumChannel identity_channel(int dim) { return unitary_channel(CMat::Identity(dim, dim)); }

QuantumChannel compose_channels(const QuantumChannel& g2, const QuantumChannel& g1) {
  if (g2.dim() != g1.dim()) {
    throw ValidationError(detail::cat("compose_channels: dimension mismatch ", g2.dim(), " vs ", g1.dim()));
  }
  std::vector<CMat> kraus;
  kraus.reserve(g2.kraus.size() * g1.kraus.size());
  for (const CMat& a : g2.kraus) {
    for (const CMat& b : g1.kraus) kraus.push_back(a * b);
  }
  // Rebuilding the matrix form from the product Kraus list costs
  // k * d^4 against d^6 for the matrix product; pick the cheaper path.
  std::size_t d = static_cast<std::size_t>(g1.dim());
  CMat superop = (kraus.size() < d * d) ? kraus_to_superop(kraus) : CMat(g2.superop * g1.superop);
  return QuantumChannel::from_parts(std::move(kraus), std::move(superop));
}

DensityMatrix apply_channel(const QuantumChannel& g, const DensityMatrix& rho) {
  if (g.dim() != rho.dim()) {
    throw ValidationError(detail::cat("apply_channel: channel dimension ", g.dim(),
                                      " vs state dimension ", rho.dim()));
  }
  CMat out = CMat::Zero(rho.dim(), rho.dim());
  for (const CMat& k : g.kraus) out += k * rho.mat * k.adjoint();
  return DensityMatrix(hermitize(out));
}

double born_probability(const CMat& effect, const DensityMatrix& rho, double tol) {
  check_square(effect, "born_probability");
  if (effect.rows() != rho.dim()) {
    throw ValidationError(detail::cat("born_probability: effect dimension ", effect.rows(),
                                      " vs state dimension ", rho.dim()));
  }
  double herm = herm_deviation(effect);
  if (herm > tol) {
    throw ValidationError(detail::cat("born_probability: effect not Hermitian, deviation = ", herm));
  }
  RVec eigs = eigh_values(effect);
  if (eigs.minCoeff() < -tol || eigs.maxCoeff() > 1.0 + tol) {
    throw ValidationError(detail::cat("born_probability: effect spectrum [", eigs.minCoeff(), ", ",
                                      eigs.maxCoeff(), "] outside [0, 1]"));
  }
  double p = (effect * rho.mat).trace().real();
  if (p < 0.0) {
    if (p < -tol) throw NumericalError(detail::cat("born_probability: probability ", p, " below 0"));
    p = 0.0;
  }
  if (p > 1.0) {
    if (p > 1.0 + tol) throw NumericalError(detail::cat("born_probability: probability ", p, " above 1"));
    p = 1.0;
  }
  return p;
}

Povm::Povm(std::vector<CMat> e, double tol) {
  if (e.empty()) throw ValidationError("Povm: empty effect list");
  Eigen::Index d = e[0].rows();
  CMat sum = CMat::Zero(d, d);
  for (std::size_t i = 0; i < e.size(); ++i) {
    check_square(e[i], "Povm");
    if (e[i].rows() != d) {
      throw ValidationError(detail::cat("Povm: effect ", i, " has dimension ", e[i].rows(),
                                        ", expected ", d));
    }
    double herm = herm_deviation(e[i]);
    if (herm > tol) {
      throw ValidationError(detail::cat("Povm: effect ", i, " not Hermitian, deviation = ", herm));
    }
    double min_eig = min_eigenvalue(e[i]);
    if (min_eig < -tol) {
      throw ValidationError(detail::cat("Povm: effect ", i, " not PSD, min eigenvalue = ", min_eig));
    }
    sum += e[i];
  }
  double dev = max_abs(sum - CMat::Identity(d, d));
  if (dev > tol) {
    throw ValidationError(detail::cat("Povm: effects do not sum to identity, max deviation = ", dev));
  }
  effects = std::move(e);
}

RVec Povm::probabilities(const DensityMatrix& rho) const {
  if (dim() != rho.dim()) {
    throw ValidationError(detail::cat("Povm: effect dimension ", dim(), " vs state dimension ", rho.dim()));
  }
  RVec p(n_outcomes());
  for (int k = 0; k < n_outcomes(); ++k) {
    double v = (effects[k] * rho.mat).trace().real();
    p(k) = std::min(1.0, std::max(0.0, v));
  }
  return p;
}

const QuantumChannel& GateSet::gate(const std::string& label) const {
  auto it = gates.find(label);
  if (it == gates.end()) {
    throw ValidationError(detail::cat("GateSet: no gate with label \"", label, "\""));
  }
  return it->second;
}

void GateSet::validate(double tol) const {
  if (n_qubits < 1 || n_qubits > 5) {
    throw ValidationError(detail::cat("GateSet: n_qubits must be in [1, 5], got ", n_qubits));
  }
  int d = dim();
  if (prep.dim() != d) {
    throw ValidationError(detail::cat("GateSet: prep dimension ", prep.dim(), ", expected ", d));
  }
  if (meas.dim() != d) {
    throw ValidationError(detail::cat("GateSet: measurement dimension ", meas.dim(), ", expected ", d));
  }
  for (const auto& [label, g] : gates) {
    if (label.empty()) throw ValidationError("GateSet: empty gate label");
    if (g.dim() != d) {
      throw ValidationError(detail::cat("GateSet: gate \"", label, "\" has dimension ", g.dim(),
                                        ", expected ", d));
    }
    check_representation_coherence(g.kraus, g.superop, tol);
  }
}

PureState random_pure_state(int dim, Rng& rng) { return PureState(random_statevector(dim, rng)); }

DensityMatrix random_density_matrix(int dim, Rng& rng) {
  CVec psi = random_statevector(dim * dim, rng);
  CMat full = psi * psi.adjoint();
  return DensityMatrix(hermitize(partial_trace_second(full, dim, dim)));
}

QuantumChannel random_channel(int dim, int env_dim, Rng& rng) {
  if (dim < 1 || env_dim < 1) throw ValidationError("random_channel: dimensions must be positive");
  CMat u = haar_unitary(dim * env_dim, rng);
  // Isometry V = U restricted to inputs |c> (x) |0>_env; Kraus blocks
  // K_e(r, c) = V(r * env_dim + e, c).
  std::vector<CMat> kraus(env_dim, CMat::Zero(dim, dim));
  for (int e = 0; e < env_dim; ++e) {
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) kraus[e](r, c) = u(r * env_dim + e, c * env_dim);
    }
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

}  // namespace qcvv
