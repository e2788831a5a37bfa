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

#include "qcvv/simcore.hpp"

namespace qcvv {

/// An estimate is flagged physical when its spectrum dips no lower than
/// this below zero (per unit trace).
inline constexpr double kPhysicalTol = 1e-6;

enum class TomoKind { kState, kProcess, kMeasurement };

/// Informationally complete measurement (and, for process kind,
/// preparation) layout together with the circuits that collect its data.
///
/// Row order: preparations outermost (process kind only), then measurement
/// settings, then outcomes: row = (prep * n_settings + setting) * 2^n + outcome.
/// The circuits follow the same (prep, setting) order.
struct TomographyDesign {
  TomoKind kind = TomoKind::kState;
  int n_qubits = 0;
  std::vector<Circuit> circuits;

  /// One measurement operator per (setting, outcome) row; 6^n rows for the
  /// standard design.
  std::vector<CMat> effects;
  /// Stacked rows vec(E)^dag, so probabilities = effect_matrix * vec(rho).
  CMat effect_matrix;

  /// Process kind: materialized input states and their stacked
  /// vectorizations as columns (d^2 x n_preps).
  std::vector<CMat> prep_states;
  CMat prep_matrix;

  int n_preps = 1;
  int n_settings = 0;

  int dim() const { return 1 << n_qubits; }
  int outcomes_per_setting() const { return 1 << n_qubits; }
  int n_rows() const { return n_preps * n_settings * outcomes_per_setting(); }

  /// Rank of the effect span (and prep span for process kind) must equal
  /// d^2; throws otherwise. Also reports nothing on success.
  void validate_spanning() const;

  /// Condition number of the effect matrix (largest over smallest kept
  /// singular value).
  double condition_number() const;
};

/// Measurement fiducials rotating every qubit into the X, Y or Z basis
/// (3^n settings x 2^n outcomes = 6^n effect rows). n_qubits in [1, 3].
TomographyDesign standard_state_design(int n_qubits);

/// Adds per-qubit preparation fiducials {|0>, |1>, |+>, |+i>} (4^n input
/// states) around a probed gate labeled "G". n_qubits in [1, 2].
TomographyDesign standard_process_design(int n_qubits);

/// Per-row outcome frequencies and the statistical weight (shot count) of
/// each row's circuit; exact-probability data carries weight 1.
struct TomoData {
  RVec freq;
  RVec weight;
};

/// Aligns measured counts with the design. Counts must appear in design
/// circuit order with matching circuit ids; every circuit needs shots > 0.
TomoData tomo_data_from_counts(const TomographyDesign& design, const std::vector<CountData>& counts);

/// Exact outcome distributions in design circuit order.
TomoData tomo_data_from_probs(const TomographyDesign& design, const std::vector<RVec>& probs);

struct StateEstimate {
  CMat rho_hat;
  std::string method;
  double loglikelihood = 0.0;
  bool physical = false;
  int iterations = 0;
};

struct ProcessEstimate {
  CMat superop_hat;
  std::string method;
  double loglikelihood = 0.0;
  bool physical = false;
  int iterations = 0;
};

struct MleOptions {
  int max_iters = 2000;
  double tol = 1e-11;  // absolute log-likelihood improvement cutoff
};

/// Raised when iterative refinement hits max_iters before the improvement
/// drops below tolerance; carries the best iterate found.
class TomoNonConvergence : public NumericalError {
 public:
  TomoNonConvergence(const std::string& msg, CMat best, double loglik)
      : NumericalError(msg), best_iterate(std::move(best)), loglikelihood(loglik) {}

  CMat best_iterate;
  double loglikelihood;
};

/// Pseudo-inverse estimate unvec(pinv(effect_matrix) * freq), Hermitized
/// and trace-renormalized. Unconstrained: may be unphysical, see the flag.
StateEstimate state_tomography_linear(const TomographyDesign& design, const TomoData& data);

/// Maximum-likelihood estimate by projected gradient ascent with
/// backtracking line search, seeded from the PSD projection of the linear
/// estimate. Monotone in log-likelihood; the result is PSD with unit
/// trace by construction.
StateEstimate state_tomography_mle(const TomographyDesign& design, const TomoData& data,
                                   const MleOptions& options = MleOptions());

/// Pseudo-inverse process estimate pinv(M) F pinv(B) with the Choi matrix
/// Hermitized and projected onto the trace-preserving affine subspace.
ProcessEstimate process_tomography_linear(const TomographyDesign& design, const TomoData& data);

/// Maximum-likelihood process estimate: projected gradient ascent on the
/// Choi matrix, alternating the PSD cone clip with the trace-preserving
/// affine projection.
ProcessEstimate process_tomography_mle(const TomographyDesign& design, const TomoData& data,
                                       const MleOptions& options = MleOptions());

struct MeasurementEstimate {
  std::vector<CMat> effects;
  std::vector<bool> physical;
};

/// Effect reconstruction from known probe states: per-outcome
/// pseudo-inverse, Hermitization, then the affine completeness correction
/// E_k -= (sum E - I) / m. Probe states must span operator space.
MeasurementEstimate measurement_tomography(const std::vector<DensityMatrix>& probes,
                                           const std::vector<CountData>& counts);

}  // namespace qcvv
