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

#include <map>
#include <string>
#include <vector>

#include "qcvv/linalg.hpp"

namespace qcvv {

/// Density operator: Hermitian, positive semidefinite, unit trace.
/// Invariants are checked at construction (within tol) and assumed after.
struct DensityMatrix {
  CMat mat;

  DensityMatrix() = default;
  explicit DensityMatrix(CMat m, double tol = kDefaultTol);

  int dim() const { return static_cast<int>(mat.rows()); }
};

/// Normalized state vector.
struct PureState {
  CVec amp;

  PureState() = default;
  explicit PureState(CVec v, double tol = kDefaultTol);

  int dim() const { return static_cast<int>(amp.size()); }
};

/// Rank-1 density operator |psi><psi|.
DensityMatrix pure_density(const PureState& psi);

/// Builds the superoperator sum_k conj(K_k) (x) K_k, acting on
/// column-stacked density operators.
CMat kraus_to_superop(const std::vector<CMat>& kraus);

/// Choi matrix of a superoperator, normalized to trace d for a
/// trace-preserving map: J = sum_{kl} |k><l| (x) G(|k><l|)
/// (first tensor factor = input index, second = output index).
CMat superop_to_choi(const CMat& superop);

/// Inverse reshuffle of superop_to_choi.
CMat choi_to_superop(const CMat& choi);

/// Kraus operators from the eigendecomposition of the Choi matrix;
/// eigenvalues below a relative cutoff are dropped.
std::vector<CMat> choi_to_kraus(const CMat& choi, double rel_cutoff = 1e-12);

/// Completely positive trace-preserving map held in two coherent
/// representations: an operator-sum (Kraus) form and the matrix acting on
/// column-stacked density operators. Constructors check complete
/// positivity, trace preservation, and that the two representations agree.
struct QuantumChannel {
  std::vector<CMat> kraus;
  CMat superop;

  int dim() const { return kraus.empty() ? 0 : static_cast<int>(kraus[0].rows()); }

  static QuantumChannel from_kraus(std::vector<CMat> kraus, double tol = kDefaultTol);
  static QuantumChannel from_superop(const CMat& superop, double tol = kDefaultTol);

  /// Builds from both representations at once. Agreement of the two is
  /// verified entrywise for dim <= 8 and on random probe states above that
  /// (where the entrywise rebuild would dominate the run time).
  static QuantumChannel from_parts(std::vector<CMat> kraus, CMat superop, double tol = kDefaultTol);

  /// Choi matrix with trace d.
  CMat choi_matrix() const { return superop_to_choi(superop); }

  /// Choi matrix normalized to unit trace; a valid density operator, which
  /// is what the state-metric reductions of process metrics act on.
  DensityMatrix choi_state() const;

  /// Pauli transfer matrix W^dag S W, real by construction.
  RMat ptm() const;
};

QuantumChannel unitary_channel(const CMat& u, double tol = kDefaultTol);
QuantumChannel identity_channel(int dim);

/// G2 after G1 (G1 acts first).
QuantumChannel compose_channels(const QuantumChannel& g2, const QuantumChannel& g1);

DensityMatrix apply_channel(const QuantumChannel& g, const DensityMatrix& rho);

/// Tr(E rho) for a measurement effect E (Hermitian with spectrum in
/// [0, 1]); the result is clamped into [0, 1] when within tol of the
/// boundary.
double born_probability(const CMat& effect, const DensityMatrix& rho, double tol = kDefaultTol);

/// Positive operator-valued measure: Hermitian PSD effects summing to the
/// identity.
struct Povm {
  std::vector<CMat> effects;

  Povm() = default;
  explicit Povm(std::vector<CMat> effects, double tol = kDefaultTol);

  int dim() const { return effects.empty() ? 0 : static_cast<int>(effects[0].rows()); }
  int n_outcomes() const { return static_cast<int>(effects.size()); }

  /// Outcome probabilities under rho; entries clamped to [0, 1].
  RVec probabilities(const DensityMatrix& rho) const;
};

/// A device model: preparation, labeled gates, and a terminating
/// measurement, all on the same 2^n-dimensional register.
struct GateSet {
  int n_qubits = 0;
  DensityMatrix prep;
  std::map<std::string, QuantumChannel> gates;
  Povm meas;

  int dim() const { return 1 << n_qubits; }
  const QuantumChannel& gate(const std::string& label) const;
  void validate(double tol = kDefaultTol) const;
};

PureState random_pure_state(int dim, Rng& rng);

/// Random mixed state: partial trace of a random pure state on dim^2.
DensityMatrix random_density_matrix(int dim, Rng& rng);

/// Random CPTP map from a Haar isometry into an environment of dimension
/// env_dim (Kraus rank env_dim).
QuantumChannel random_channel(int dim, int env_dim, Rng& rng);

}  // namespace qcvv
