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

#include <string>
#include <vector>

#include "qcvv/qmodel.hpp"

namespace qcvv {

/// A sequence of gate-set labels applied left to right to the prepared
/// state, terminated by the gate set's measurement.
struct Circuit {
  std::string id;
  int n_qubits = 0;
  std::vector<std::string> layers;
};

/// Measured outcome histogram for one circuit; counts are indexed by
/// computational basis outcome.
struct CountData {
  std::string circuit_id;
  long long shots = 0;
  std::vector<long long> counts;
};

/// A parsed noise model ingredient.
///
/// Gate noise kinds (depolarizing, amplitude_damping, coherent_rotation)
/// insert an error channel after every gate; the spam kind instead flips
/// preparation qubits and mixes a readout confusion matrix into the
/// measurement effects.
struct NoiseSpec {
  enum class Kind { kDepolarizing, kAmplitudeDamping, kCoherentRotation, kSpam };

  Kind kind = Kind::kDepolarizing;
  double q = 0.0;             // depolarizing probability
  double gamma = 0.0;         // damping probability
  char axis = 'Z';            // coherent rotation axis
  double angle = 0.0;         // coherent rotation angle (radians)
  double prep_flip = 0.0;     // spam: preparation bit-flip probability
  double readout_flip = 0.0;  // spam: readout bit-flip probability

  static NoiseSpec depolarizing(double q);
  static NoiseSpec amplitude_damping(double gamma);
  static NoiseSpec coherent_rotation(char axis, double angle);
  static NoiseSpec spam(double prep_flip, double readout_flip);

  /// Parses CLI syntax kind:param[,param], e.g. "depolarizing:0.02",
  /// "amplitude_damping:0.1", "coherent_rotation:Z,0.05",
  /// "spam:0.02,0.05".
  static NoiseSpec parse(const std::string& text);

  void validate() const;

  /// Canonical round-trippable rendering in the parse syntax.
  std::string describe() const;
};

/// The error channel itself on an n-qubit register. Depolarizing acts
/// globally, rho -> (1-q) rho + q I/d, scaling the whole traceless Pauli
/// block by 1-q. Amplitude damping and coherent rotation act independently
/// and identically on every qubit. Rejects the spam kind, which is not a
/// gate channel.
QuantumChannel noise_channel(const NoiseSpec& spec, int n_qubits);

/// Applies one noise ingredient to a device model. Gate noise composes the
/// error channel after every gate; spam noise rewrites preparation and
/// measurement. Calling repeatedly stacks ingredients.
GateSet build_noisy_gateset(const GateSet& ideal, const NoiseSpec& spec);

/// Exact outcome distribution of one circuit under the device model.
RVec circuit_probabilities(const GateSet& gs, const Circuit& circuit);

/// Multinomial sample by inverse-CDF; identical seeds give identical
/// counts on every platform.
CountData sample_counts(const RVec& probs, long long shots, uint64_t seed,
                        const std::string& circuit_id = "");

/// Simulates every circuit with shots samples each; circuit i draws from
/// the stream derive_seed(seed, i), so results are independent of
/// execution order.
std::vector<CountData> run_design(const GateSet& gs, const std::vector<Circuit>& circuits,
                                  long long shots, uint64_t seed);

/// Exact distributions for every circuit.
std::vector<RVec> run_design_exact(const GateSet& gs, const std::vector<Circuit>& circuits);

/// |0...0><0...0| on n qubits.
DensityMatrix computational_prep(int n_qubits);

/// Computational-basis projectors on n qubits.
Povm computational_povm(int n_qubits);

/// Ideal register with per-qubit fiducial gates "H@j", "S@j", "Sdg@j",
/// "X@j", and an identity placeholder "G" for the probed gate of process
/// tomography.
GateSet fiducial_gateset(int n_qubits);

}  // namespace qcvv
