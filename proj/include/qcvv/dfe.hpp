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

#include <functional>

#include "qcvv/pauli.hpp"
#include "qcvv/qmodel.hpp"

namespace qcvv {

/// A stabilizer pure state described by its group: n commuting independent
/// signed Pauli generators on n qubits, expanded into all 2^n subset
/// products. Element i is stored as an unsigned Hermitian base string plus
/// the sign the target state assigns it (its expectation value, +-1).
struct StabilizerTarget {
  int n_qubits = 0;
  std::vector<PauliString> generators;
  std::vector<PauliString> elements;  // canonical Hermitian, sign stripped
  std::vector<int> signs;             // target expectation of each element

  static StabilizerTarget from_generators(const std::vector<PauliString>& generators);

  std::size_t group_size() const { return elements.size(); }

  /// Target expectation of an unsigned Pauli: +-1 for group members, 0
  /// otherwise.
  int expectation(const PauliString& base) const;

  /// Rank-1 projector (1/2^n) sum_i sign_i P_i onto the stabilized state.
  CMat projector() const;

  /// The stabilized state itself (top eigenvector of the projector).
  PureState state() const;
};

/// Measures the expectation value of a Hermitian Pauli on the device under
/// test: exact when shots == 0, otherwise a two-outcome sample with the
/// given stream seed.
using PauliSampler = std::function<double(const PauliString& base, long long shots, uint64_t seed)>;

/// Simulator-backed sampler for a fixed density operator.
PauliSampler density_matrix_sampler(const DensityMatrix& rho);

struct DfeResult {
  double f_hat = 0.0;      // raw estimator mean; unbiased, can leave [0, 1]
  double f_clamped = 0.0;  // clipped into [0, 1]
  double stderr_f = 0.0;   // sample standard error over settings
  int n_settings = 0;
  long long shots_per_setting = 0;
};

/// Direct fidelity estimation: averages the sign-corrected expectation of
/// uniformly drawn stabilizer-group elements (identity included, which
/// contributes exactly 1). The estimator mean is <psi| rho |psi>.
DfeResult dfe_stabilizer(const StabilizerTarget& target, const PauliSampler& sampler,
                         int n_settings, long long shots_per_setting, uint64_t seed);

/// Every group element once with exact expectations: recovers the true
/// overlap up to floating point.
DfeResult dfe_exhaustive(const StabilizerTarget& target, const PauliSampler& sampler);

}  // namespace qcvv
