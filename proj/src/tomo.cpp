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

#include "qcvv/tomo.hpp"

#include <limits>

#include "qcvv/gates.hpp"

namespace qcvv {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Fiducial {
  std::string tag;                  // per-qubit label characters
  std::vector<std::string> layers;  // circuit layers, in application order
  CMat unitary;                     // product of the layers as applied
};

// Measurement-basis rotations for one setting across all qubits.
Fiducial meas_fiducial(const std::string& basis, int n_qubits) {
  Fiducial f;
  f.tag = basis;
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  f.unitary = CMat::Identity(d, d);
  for (int j = 0; j < n_qubits; ++j) {
    std::string sfx = "@" + std::to_string(j);
    std::vector<std::pair<std::string, CMat>> gates;
    switch (basis[j]) {
      case 'X': gates = {{"H" + sfx, embed_unitary(mat_h(), {j}, n_qubits)}}; break;
      case 'Y':
        gates = {{"Sdg" + sfx, embed_unitary(mat_sdg(), {j}, n_qubits)},
                 {"H" + sfx, embed_unitary(mat_h(), {j}, n_qubits)}};
        break;
      case 'Z': break;
      default: throw ValidationError(detail::cat("invalid basis character '", std::string(1, basis[j]), "'"));
    }
    for (auto& [label, u] : gates) {
      f.layers.push_back(label);
      f.unitary = u * f.unitary;
    }
  }
  return f;
}

// Preparation fiducials |0>, |1>, |+>, |+i> per qubit.
Fiducial prep_fiducial(const std::string& tag, int n_qubits) {
  Fiducial f;
  f.tag = tag;
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  f.unitary = CMat::Identity(d, d);
  for (int j = 0; j < n_qubits; ++j) {
    std::string sfx = "@" + std::to_string(j);
    std::vector<std::pair<std::string, CMat>> gates;
    switch (tag[j]) {
      case '0': break;
      case '1': gates = {{"X" + sfx, embed_unitary(mat_x(), {j}, n_qubits)}}; break;
      case '+': gates = {{"H" + sfx, embed_unitary(mat_h(), {j}, n_qubits)}}; break;
      case 'i':
        gates = {{"H" + sfx, embed_unitary(mat_h(), {j}, n_qubits)},
                 {"S" + sfx, embed_unitary(mat_s(), {j}, n_qubits)}};
        break;
      default: throw ValidationError(detail::cat("invalid preparation character '", std::string(1, tag[j]), "'"));
    }
    for (auto& [label, u] : gates) {
      f.layers.push_back(label);
      f.unitary = u * f.unitary;
    }
  }
  return f;
}

std::vector<std::string> enumerate_tags(const std::string& alphabet, int n_qubits) {
  std::size_t total = 1;
  for (int j = 0; j < n_qubits; ++j) total *= alphabet.size();
  std::vector<std::string> tags;
  tags.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string tag(static_cast<std::size_t>(n_qubits), alphabet[0]);
    std::size_t rest = idx;
    for (int j = n_qubits - 1; j >= 0; --j) {
      tag[static_cast<std::size_t>(j)] = alphabet[rest % alphabet.size()];
      rest /= alphabet.size();
    }
    tags.push_back(std::move(tag));
  }
  return tags;
}

int matrix_rank(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  const RVec& s = svd.singularValues();
  if (s.size() == 0) return 0;
  double cutoff = 1e-9 * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace

void TomographyDesign::validate_spanning() const {
  int dd = dim() * dim();
  int rank = matrix_rank(effect_matrix);
  if (rank != dd) {
    throw ValidationError(detail::cat("tomography design: effects span a rank-", rank,
                                      " subspace, need ", dd));
  }
  if (kind == TomoKind::kProcess) {
    int prank = matrix_rank(prep_matrix);
    if (prank != dd) {
      throw ValidationError(detail::cat("tomography design: preparations span a rank-", prank,
                                        " subspace, need ", dd));
    }
  }
}

double TomographyDesign::condition_number() const {
  Eigen::JacobiSVD<CMat> svd(effect_matrix);
  const RVec& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return s(0) / s(s.size() - 1);
}

TomographyDesign standard_state_design(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 3) {
    throw ValidationError(detail::cat("standard_state_design: n_qubits must be in [1, 3], got ", n_qubits));
  }
  TomographyDesign design;
  design.kind = TomoKind::kState;
  design.n_qubits = n_qubits;
  design.n_preps = 1;
  Eigen::Index d = design.dim();
  std::vector<std::string> bases = enumerate_tags("XYZ", n_qubits);
  design.n_settings = static_cast<int>(bases.size());
  design.effect_matrix.resize(static_cast<Eigen::Index>(bases.size()) * d, d * d);
  for (std::size_t s = 0; s < bases.size(); ++s) {
    Fiducial f = meas_fiducial(bases[s], n_qubits);
    Circuit c;
    c.id = "meas_" + f.tag;
    c.n_qubits = n_qubits;
    c.layers = f.layers;
    design.circuits.push_back(std::move(c));
    for (Eigen::Index o = 0; o < d; ++o) {
      CVec a = f.unitary.row(o).adjoint();  // column o of W^dag
      CMat effect = a * a.adjoint();        // W^dag |o><o| W
      design.effect_matrix.row(static_cast<Eigen::Index>(s) * d + o) = vec(effect).adjoint();
      design.effects.push_back(std::move(effect));
    }
  }
  design.validate_spanning();
  return design;
}

TomographyDesign standard_process_design(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 2) {
    throw ValidationError(detail::cat("standard_process_design: n_qubits must be in [1, 2], got ", n_qubits));
  }
  TomographyDesign design;
  design.kind = TomoKind::kProcess;
  design.n_qubits = n_qubits;
  Eigen::Index d = design.dim();
  std::vector<std::string> preps = enumerate_tags("01+i", n_qubits);
  std::vector<std::string> bases = enumerate_tags("XYZ", n_qubits);
  design.n_preps = static_cast<int>(preps.size());
  design.n_settings = static_cast<int>(bases.size());

  std::vector<Fiducial> meas;
  meas.reserve(bases.size());
  design.effect_matrix.resize(static_cast<Eigen::Index>(bases.size()) * d, d * d);
  for (std::size_t s = 0; s < bases.size(); ++s) {
    Fiducial f = meas_fiducial(bases[s], n_qubits);
    for (Eigen::Index o = 0; o < d; ++o) {
      CVec a = f.unitary.row(o).adjoint();
      CMat effect = a * a.adjoint();
      design.effect_matrix.row(static_cast<Eigen::Index>(s) * d + o) = vec(effect).adjoint();
      design.effects.push_back(std::move(effect));
    }
    meas.push_back(std::move(f));
  }

  design.prep_matrix.resize(d * d, static_cast<Eigen::Index>(preps.size()));
  for (std::size_t jp = 0; jp < preps.size(); ++jp) {
    Fiducial pf = prep_fiducial(preps[jp], n_qubits);
    CVec column0 = pf.unitary.col(0);  // V |0...0>
    CMat rho = column0 * column0.adjoint();
    design.prep_matrix.col(static_cast<Eigen::Index>(jp)) = vec(rho);
    design.prep_states.push_back(rho);
    for (const Fiducial& mf : meas) {
      Circuit c;
      c.id = "prep_" + pf.tag + "_meas_" + mf.tag;
      c.n_qubits = n_qubits;
      c.layers = pf.layers;
      c.layers.push_back("G");
      c.layers.insert(c.layers.end(), mf.layers.begin(), mf.layers.end());
      design.circuits.push_back(std::move(c));
    }
  }
  design.validate_spanning();
  return design;
}

TomoData tomo_data_from_counts(const TomographyDesign& design, const std::vector<CountData>& counts) {
  if (counts.size() != design.circuits.size()) {
    throw ValidationError(detail::cat("tomography data: ", counts.size(), " count records for ",
                                      design.circuits.size(), " circuits"));
  }
  int d = design.outcomes_per_setting();
  TomoData data;
  data.freq.resize(design.n_rows());
  data.weight.resize(design.n_rows());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const CountData& cd = counts[i];
    if (cd.circuit_id != design.circuits[i].id) {
      throw ValidationError(detail::cat("tomography data: record ", i, " has circuit_id \"",
                                        cd.circuit_id, "\", design expects \"", design.circuits[i].id, "\""));
    }
    if (cd.shots < 1) {
      throw ValidationError(detail::cat("tomography data: circuit \"", cd.circuit_id, "\" has ",
                                        cd.shots, " shots, need >= 1"));
    }
    if (static_cast<int>(cd.counts.size()) != d) {
      throw ValidationError(detail::cat("tomography data: circuit \"", cd.circuit_id, "\" has ",
                                        cd.counts.size(), " outcomes, expected ", d));
    }
    long long total = 0;
    for (long long c : cd.counts) {
      if (c < 0) {
        throw ValidationError(detail::cat("tomography data: negative count in circuit \"", cd.circuit_id, "\""));
      }
      total += c;
    }
    if (total != cd.shots) {
      throw ValidationError(detail::cat("tomography data: circuit \"", cd.circuit_id, "\" counts sum to ",
                                        total, " but shots = ", cd.shots));
    }
    for (int o = 0; o < d; ++o) {
      Eigen::Index row = static_cast<Eigen::Index>(i) * d + o;
      data.freq(row) = static_cast<double>(cd.counts[static_cast<std::size_t>(o)]) /
                       static_cast<double>(cd.shots);
      data.weight(row) = static_cast<double>(cd.shots);
    }
  }
  return data;
}

TomoData tomo_data_from_probs(const TomographyDesign& design, const std::vector<RVec>& probs) {
  if (probs.size() != design.circuits.size()) {
    throw ValidationError(detail::cat("tomography data: ", probs.size(), " distributions for ",
                                      design.circuits.size(), " circuits"));
  }
  int d = design.outcomes_per_setting();
  TomoData data;
  data.freq.resize(design.n_rows());
  data.weight.resize(design.n_rows());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (static_cast<int>(probs[i].size()) != d) {
      throw ValidationError(detail::cat("tomography data: distribution ", i, " has ", probs[i].size(),
                                        " outcomes, expected ", d));
    }
    if (std::abs(probs[i].sum() - 1.0) > 1e-6) {
      throw ValidationError(detail::cat("tomography data: distribution ", i, " sums to ", probs[i].sum()));
    }
    for (int o = 0; o < d; ++o) {
      Eigen::Index row = static_cast<Eigen::Index>(i) * d + o;
      data.freq(row) = std::max(0.0, probs[i](o));
      data.weight(row) = 1.0;
    }
  }
  return data;
}

namespace {

void check_data(const TomographyDesign& design, const TomoData& data) {
  if (data.freq.size() != design.n_rows() || data.weight.size() != design.n_rows()) {
    throw ValidationError(detail::cat("tomography data has ", data.freq.size(), " rows, design has ",
                                      design.n_rows()));
  }
}

// sum_r w_r f_r log p_r with the 0 log 0 = 0 convention; -inf when an
// observed row has zero probability.
double loglikelihood(const RVec& freq, const RVec& weight, const RVec& probs) {
  double total = 0.0;
  for (Eigen::Index r = 0; r < freq.size(); ++r) {
    if (freq(r) <= 0.0) continue;
    if (probs(r) <= 0.0) return kNegInf;
    total += weight(r) * freq(r) * std::log(probs(r));
  }
  return total;
}

RVec state_probs(const TomographyDesign& design, const CMat& rho) {
  CVec p = design.effect_matrix * vec(rho);
  return p.real();
}

// Probabilities of every design row under a Choi matrix (trace-d
// normalization), using p = tr[J (rho^T (x) E)].
RVec process_probs(const std::vector<CMat>& row_ops, const CMat& choi) {
  RVec p(static_cast<Eigen::Index>(row_ops.size()));
  for (std::size_t r = 0; r < row_ops.size(); ++r) {
    p(static_cast<Eigen::Index>(r)) = (row_ops[r].conjugate().cwiseProduct(choi)).sum().real();
  }
  return p;
}

CMat clip_and_renormalize(const CMat& m) {
  CMat clipped = psd_clip(m);
  double tr = clipped.trace().real();
  if (tr <= 1e-12) {
    Eigen::Index d = m.rows();
    return CMat::Identity(d, d) / static_cast<double>(d);
  }
  return clipped / tr;
}

// Orthogonal projection of a Choi matrix onto the trace-preserving affine
// subspace Tr_out J = I.
CMat tp_project(const CMat& choi, int d) {
  CMat delta = partial_trace_second(choi, d, d) - CMat::Identity(d, d);
  return choi - kron(delta, CMat::Identity(d, d)) / static_cast<double>(d);
}

CMat project_choi(const CMat& choi, int d) {
  // Alternating projections between the PSD cone and the trace-preserving
  // affine subspace, stopped once a clipped iterate already satisfies trace
  // preservation, so the result respects both constraints to ~1e-11.
  CMat j = choi;
  for (int round = 0; round < 200; ++round) {
    j = psd_clip(j);
    CMat delta = partial_trace_second(j, d, d) - CMat::Identity(d, d);
    if (max_abs(delta) < 1e-11) break;
    j -= kron(delta, CMat::Identity(d, d)) / static_cast<double>(d);
  }
  double tr = j.trace().real();
  if (tr <= 1e-12) {
    Eigen::Index dd = choi.rows();
    return CMat::Identity(dd, dd) / static_cast<double>(d);
  }
  return j * (static_cast<double>(d) / tr);
}

}  // namespace

StateEstimate state_tomography_linear(const TomographyDesign& design, const TomoData& data) {
  if (design.kind != TomoKind::kState) {
    throw ValidationError("state_tomography_linear: design is not a state design");
  }
  check_data(design, data);
  CVec freq_c = data.freq.cast<Complex>();
  CMat rho = unvec(pinv(design.effect_matrix) * freq_c);
  rho = hermitize(rho);
  double tr = rho.trace().real();
  if (std::abs(tr) < 0.1) {
    throw NumericalError(detail::cat("state_tomography_linear: estimate trace ", tr, " too far from 1"));
  }
  rho /= tr;
  StateEstimate est;
  est.rho_hat = rho;
  est.method = "linear";
  est.physical = min_eigenvalue(rho) >= -kPhysicalTol;
  est.loglikelihood = loglikelihood(data.freq, data.weight, state_probs(design, rho));
  return est;
}

StateEstimate state_tomography_mle(const TomographyDesign& design, const TomoData& data,
                                   const MleOptions& options) {
  if (design.kind != TomoKind::kState) {
    throw ValidationError("state_tomography_mle: design is not a state design");
  }
  check_data(design, data);
  Eigen::Index d = design.dim();

  StateEstimate seed = state_tomography_linear(design, data);
  CMat rho = clip_and_renormalize(seed.rho_hat);
  double loglik = loglikelihood(data.freq, data.weight, state_probs(design, rho));
  if (loglik == kNegInf) {
    // Rank-deficient seed assigns zero probability to an observed outcome;
    // mix in a little of the maximally mixed state to enter the interior.
    rho = 0.999999 * rho + (1e-6 / static_cast<double>(d)) * CMat::Identity(d, d);
    loglik = loglikelihood(data.freq, data.weight, state_probs(design, rho));
  }

  double alpha = 0.0;
  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iters; ++iter) {
    RVec p = state_probs(design, rho);
    CMat grad = CMat::Zero(d, d);
    for (Eigen::Index r = 0; r < data.freq.size(); ++r) {
      if (data.freq(r) <= 0.0) continue;
      grad += (data.weight(r) * data.freq(r) / std::max(p(r), 1e-12)) * design.effects[static_cast<std::size_t>(r)];
    }
    // Step within the unit-trace slice. The isotropic gradient component
    // only inflates the trace, which the renormalization undoes with an
    // overshoot that turns boundary ascent directions into descent.
    grad -= (grad.trace().real() / static_cast<double>(d)) * CMat::Identity(d, d);
    double gnorm = grad.norm();
    if (iter == 0) alpha = 1.0 / (gnorm + 1.0);
    bool accepted = false;
    double cand_loglik = loglik;
    CMat cand;
    while (alpha >= 1e-14) {
      cand = clip_and_renormalize(rho + alpha * grad);
      cand_loglik = loglikelihood(data.freq, data.weight, state_probs(design, cand));
      if (cand_loglik > loglik) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      converged = true;  // no ascent direction at line-search resolution
      break;
    }
    double gain = cand_loglik - loglik;
    rho = cand;
    loglik = cand_loglik;
    alpha = std::min(alpha * 2.0, 1e6);
    if (gain < options.tol) {
      converged = true;
      ++iter;
      break;
    }
  }
  if (!converged) {
    throw TomoNonConvergence(detail::cat("state_tomography_mle: no convergence after ",
                                         options.max_iters, " iterations, log-likelihood ", loglik),
                             rho, loglik);
  }
  StateEstimate est;
  est.rho_hat = rho;
  est.method = "mle";
  est.loglikelihood = loglik;
  est.physical = min_eigenvalue(rho) >= -kPhysicalTol;
  est.iterations = iter;
  return est;
}

namespace {

// F matrix (effect rows x preparations) from per-row data.
RMat data_matrix(const TomographyDesign& design, const TomoData& data) {
  int block = design.n_settings * design.outcomes_per_setting();
  RMat f(block, design.n_preps);
  for (int j = 0; j < design.n_preps; ++j) {
    for (int r = 0; r < block; ++r) {
      f(r, j) = data.freq(static_cast<Eigen::Index>(j) * block + r);
    }
  }
  return f;
}

std::vector<CMat> process_row_ops(const TomographyDesign& design) {
  int block = design.n_settings * design.outcomes_per_setting();
  std::vector<CMat> ops;
  ops.reserve(static_cast<std::size_t>(design.n_rows()));
  for (int j = 0; j < design.n_preps; ++j) {
    CMat rho_conj = design.prep_states[static_cast<std::size_t>(j)].conjugate();
    for (int r = 0; r < block; ++r) {
      ops.push_back(kron(rho_conj, design.effects[static_cast<std::size_t>(r)]));
    }
  }
  return ops;
}

}  // namespace

ProcessEstimate process_tomography_linear(const TomographyDesign& design, const TomoData& data) {
  if (design.kind != TomoKind::kProcess) {
    throw ValidationError("process_tomography_linear: design is not a process design");
  }
  check_data(design, data);
  int d = design.dim();
  RMat f = data_matrix(design, data);
  CMat superop = pinv(design.effect_matrix) * f.cast<Complex>() * pinv(design.prep_matrix);
  CMat choi = tp_project(hermitize(superop_to_choi(superop)), d);
  ProcessEstimate est;
  est.superop_hat = choi_to_superop(choi);
  est.method = "linear";
  est.physical = min_eigenvalue(choi) / static_cast<double>(d) >= -kPhysicalTol;
  est.loglikelihood = loglikelihood(data.freq, data.weight, process_probs(process_row_ops(design), choi));
  return est;
}

ProcessEstimate process_tomography_mle(const TomographyDesign& design, const TomoData& data,
                                       const MleOptions& options) {
  if (design.kind != TomoKind::kProcess) {
    throw ValidationError("process_tomography_mle: design is not a process design");
  }
  check_data(design, data);
  int d = design.dim();
  Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
  std::vector<CMat> row_ops = process_row_ops(design);

  ProcessEstimate seed = process_tomography_linear(design, data);
  CMat choi = project_choi(superop_to_choi(seed.superop_hat), d);
  double loglik = loglikelihood(data.freq, data.weight, process_probs(row_ops, choi));
  if (loglik == kNegInf) {
    CMat depol = CMat::Identity(dd, dd) / static_cast<double>(d);  // fully depolarizing Choi
    choi = 0.999999 * choi + 1e-6 * depol;
    loglik = loglikelihood(data.freq, data.weight, process_probs(row_ops, choi));
  }

  double alpha = 0.0;
  int iter = 0;
  bool converged = false;
  for (; iter < options.max_iters; ++iter) {
    RVec p = process_probs(row_ops, choi);
    CMat grad = CMat::Zero(dd, dd);
    for (Eigen::Index r = 0; r < data.freq.size(); ++r) {
      if (data.freq(r) <= 0.0) continue;
      grad += (data.weight(r) * data.freq(r) / std::max(p(r), 1e-12)) * row_ops[static_cast<std::size_t>(r)];
    }
    double gnorm = grad.norm();
    if (iter == 0) alpha = 1.0 / (gnorm + 1.0);
    bool accepted = false;
    double cand_loglik = loglik;
    CMat cand;
    while (alpha >= 1e-14) {
      cand = project_choi(choi + alpha * grad, d);
      cand_loglik = loglikelihood(data.freq, data.weight, process_probs(row_ops, cand));
      if (cand_loglik > loglik) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      converged = true;
      break;
    }
    double gain = cand_loglik - loglik;
    choi = cand;
    loglik = cand_loglik;
    alpha = std::min(alpha * 2.0, 1e6);
    if (gain < options.tol) {
      converged = true;
      ++iter;
      break;
    }
  }
  if (!converged) {
    throw TomoNonConvergence(detail::cat("process_tomography_mle: no convergence after ",
                                         options.max_iters, " iterations, log-likelihood ", loglik),
                             choi, loglik);
  }
  ProcessEstimate est;
  est.superop_hat = choi_to_superop(choi);
  est.method = "mle";
  est.loglikelihood = loglik;
  est.physical = min_eigenvalue(choi) / static_cast<double>(d) >= -kPhysicalTol;
  est.iterations = iter;
  return est;
}

MeasurementEstimate measurement_tomography(const std::vector<DensityMatrix>& probes,
                                           const std::vector<CountData>& counts) {
  if (probes.empty()) throw ValidationError("measurement_tomography: no probe states");
  if (counts.size() != probes.size()) {
    throw ValidationError(detail::cat("measurement_tomography: ", counts.size(), " count records for ",
                                      probes.size(), " probes"));
  }
  Eigen::Index d = probes[0].dim();
  std::size_t m = counts[0].counts.size();
  if (m < 1) throw ValidationError("measurement_tomography: no outcomes");
  CMat design(static_cast<Eigen::Index>(probes.size()), d * d);
  for (std::size_t j = 0; j < probes.size(); ++j) {
    if (probes[j].dim() != d) {
      throw ValidationError(detail::cat("measurement_tomography: probe ", j, " has dimension ",
                                        probes[j].dim(), ", expected ", d));
    }
    design.row(static_cast<Eigen::Index>(j)) = vec(probes[j].mat).adjoint();
  }
  int rank = matrix_rank(design);
  if (rank != d * d) {
    throw ValidationError(detail::cat("measurement_tomography: probes span a rank-", rank,
                                      " subspace, need ", d * d));
  }
  CMat design_pinv = pinv(design);

  std::vector<CMat> effects;
  effects.reserve(m);
  CMat total = CMat::Zero(d, d);
  for (std::size_t k = 0; k < m; ++k) {
    CVec f(static_cast<Eigen::Index>(probes.size()));
    for (std::size_t j = 0; j < probes.size(); ++j) {
      const CountData& cd = counts[j];
      if (cd.counts.size() != m) {
        throw ValidationError(detail::cat("measurement_tomography: record ", j, " has ",
                                          cd.counts.size(), " outcomes, expected ", m));
      }
      if (cd.shots < 1) {
        throw ValidationError(detail::cat("measurement_tomography: record ", j, " has ", cd.shots, " shots"));
      }
      f(static_cast<Eigen::Index>(j)) =
          static_cast<double>(cd.counts[k]) / static_cast<double>(cd.shots);
    }
    CMat e = hermitize(unvec(design_pinv * f));
    total += e;
    effects.push_back(std::move(e));
  }
  // Affine completeness correction: spread sum(E) - I evenly.
  CMat correction = (total - CMat::Identity(d, d)) / static_cast<double>(m);
  MeasurementEstimate est;
  for (CMat& e : effects) {
    e -= correction;
    RVec eigs = eigh_values(e);
    est.physical.push_back(eigs.minCoeff() >= -kPhysicalTol && eigs.maxCoeff() <= 1.0 + kPhysicalTol);
    est.effects.push_back(std::move(e));
  }
  return est;
}

}  // namespace qcvv
