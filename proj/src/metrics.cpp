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

#include "qcvv/metrics.hpp"

#include <vector>

namespace qcvv {

namespace {

// When an argument is numerically pure, report its dominant eigenvector so
// fidelity can use the exact quadratic form <psi|other|psi>. The general
// square-root formula loses half the floating-point digits on the zero
// modes of rank-deficient inputs (each contributes O(sqrt(eps)) noise).
bool principal_pure_component(const CMat& m, CVec* psi) {
  auto [vals, vecs] = eigh(m);
  Eigen::Index top = m.rows() - 1;  // eigenvalues ascend
  if (vals(top) < 1.0 - 1e-12) return false;
  *psi = vecs.col(top);
  return true;
}

}  // namespace

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError(detail::cat("state_fidelity: dimension mismatch ", rho.dim(), " vs ", sigma.dim()));
  }
  CVec psi;
  if (principal_pure_component(rho.mat, &psi)) {
    double f = (psi.adjoint() * sigma.mat * psi).value().real();
    return std::min(1.0, std::max(0.0, f));
  }
  if (principal_pure_component(sigma.mat, &psi)) {
    double f = (psi.adjoint() * rho.mat * psi).value().real();
    return std::min(1.0, std::max(0.0, f));
  }
  CMat root = psd_sqrt(rho.mat);
  RVec vals = eigh_values(root * sigma.mat * root);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) > 0.0) tr += std::sqrt(vals(i));
  }
  double f = tr * tr;
  return std::min(1.0, std::max(0.0, f));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw ValidationError(detail::cat("trace_distance: dimension mismatch ", rho.dim(), " vs ", sigma.dim()));
  }
  RVec vals = eigh_values(rho.mat - sigma.mat);
  return 0.5 * vals.cwiseAbs().sum();
}

double tvd(const RVec& p, const RVec& q) {
  if (p.size() != q.size()) {
    throw ValidationError(detail::cat("tvd: length mismatch ", p.size(), " vs ", q.size()));
  }
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) < -kDefaultTol || q(i) < -kDefaultTol) {
      throw ValidationError(detail::cat("tvd: negative entry at index ", i));
    }
  }
  if (std::abs(p.sum() - 1.0) > 1e-6 || std::abs(q.sum() - 1.0) > 1e-6) {
    throw ValidationError(detail::cat("tvd: vectors must sum to 1, got ", p.sum(), " and ", q.sum()));
  }
  return 0.5 * (p - q).cwiseAbs().sum();
}

double process_fidelity(const QuantumChannel& g1, const QuantumChannel& g2) {
  if (g1.dim() != g2.dim()) {
    throw ValidationError(detail::cat("process_fidelity: dimension mismatch ", g1.dim(), " vs ", g2.dim()));
  }
  return state_fidelity(g1.choi_state(), g2.choi_state());
}

double avg_gate_fidelity(double f_process, int dim) {
  if (dim < 2) throw ValidationError(detail::cat("avg_gate_fidelity: dimension must be >= 2, got ", dim));
  return (static_cast<double>(dim) * f_process + 1.0) / (static_cast<double>(dim) + 1.0);
}

namespace {

// Trace distance of the two channel outputs on the pure probe |phi> of the
// extended space C^d (x) C^{d_anc}, with channels acting on the first
// factor. Lifted Kraus operators are precomputed by the caller.
double probe_distance(const std::vector<CMat>& lifted1, const std::vector<CMat>& lifted2,
                      const CVec& phi) {
  Eigen::Index dd = phi.size();
  CMat delta = CMat::Zero(dd, dd);
  for (const CMat& m : lifted1) {
    CVec v = m * phi;
    delta += v * v.adjoint();
  }
  for (const CMat& m : lifted2) {
    CVec v = m * phi;
    delta -= v * v.adjoint();
  }
  RVec vals = eigh_values(delta);
  return 0.5 * vals.cwiseAbs().sum();
}

// Coordinate-wise refinement over the real and imaginary parts of phi with
// geometric step shrinking; phi is renormalized after every trial move.
double refine_probe(const std::vector<CMat>& lifted1, const std::vector<CMat>& lifted2, CVec phi) {
  double best = probe_distance(lifted1, lifted2, phi);
  Eigen::Index dd = phi.size();
  for (double step = 0.25; step >= 1e-6; step *= 0.5) {
    bool improved = true;
    int sweeps = 0;
    while (improved && sweeps < 40) {
      improved = false;
      ++sweeps;
      for (Eigen::Index c = 0; c < 2 * dd; ++c) {
        Complex delta = (c < dd) ? Complex(step, 0.0) : Complex(0.0, step);
        Eigen::Index idx = c % dd;
        for (int sign = -1; sign <= 1; sign += 2) {
          CVec trial = phi;
          trial(idx) += static_cast<double>(sign) * delta;
          double norm = trial.norm();
          if (norm <= 0.0) continue;
          trial /= norm;
          double val = probe_distance(lifted1, lifted2, trial);
          if (val > best + 1e-15) {
            best = val;
            phi = trial;
            improved = true;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

double diamond_lower_search(const QuantumChannel& g1, const QuantumChannel& g2,
                            int n_restarts, uint64_t seed, bool use_ancilla) {
  if (g1.dim() != g2.dim()) {
    throw ValidationError(detail::cat("diamond_lower_search: dimension mismatch ", g1.dim(), " vs ", g2.dim()));
  }
  if (n_restarts < 1) throw ValidationError("diamond_lower_search: need at least one restart");
  int d = g1.dim();
  int d_anc = use_ancilla ? d : 1;
  CMat id_anc = CMat::Identity(d_anc, d_anc);
  std::vector<CMat> lifted1, lifted2;
  for (const CMat& k : g1.kraus) lifted1.push_back(kron(k, id_anc));
  for (const CMat& k : g2.kraus) lifted2.push_back(kron(k, id_anc));

  std::vector<double> results(static_cast<std::size_t>(n_restarts), 0.0);
  parallel_for(static_cast<std::size_t>(n_restarts), [&](std::size_t r) {
    CVec phi;
    if (r == 0 && use_ancilla) {
      // Maximally entangled start; optimal for many structured channel
      // pairs, so the search only has to polish.
      phi = CVec::Zero(static_cast<Eigen::Index>(d) * d_anc);
      double a = 1.0 / std::sqrt(static_cast<double>(d));
      for (int i = 0; i < d; ++i) phi(static_cast<Eigen::Index>(i) * d_anc + i) = a;
    } else {
      Rng rng(derive_seed(seed, r));
      phi = random_statevector(d * d_anc, rng);
    }
    results[r] = refine_probe(lifted1, lifted2, phi);
  });
  double best = 0.0;
  for (double v : results) best = std::max(best, v);
  return best;
}

DiamondBounds diamond_bounds(const QuantumChannel& g1, const QuantumChannel& g2,
                             int n_restarts, uint64_t seed) {
  if (g1.dim() != g2.dim()) {
    throw ValidationError(detail::cat("diamond_bounds: dimension mismatch ", g1.dim(), " vs ", g2.dim()));
  }
  DiamondBounds b;
  double choi_dist = trace_distance(g1.choi_state(), g2.choi_state());
  b.upper = std::min(1.0, static_cast<double>(g1.dim()) * choi_dist);
  b.lower = std::min(diamond_lower_search(g1, g2, n_restarts, seed, true), b.upper);
  return b;
}

}  // namespace qcvv
