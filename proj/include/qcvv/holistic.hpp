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

/// One-sided 97.5% normal quantile used by the quantum volume pass rule.
inline constexpr double kQvConfidenceZ = 1.959963984540054;

/// Heavy-output pass threshold.
inline constexpr double kQvThreshold = 2.0 / 3.0;

/// A two-qubit Haar block acting on a qubit pair.
struct QvBlock {
  int qubit_a = 0;
  int qubit_b = 0;
  CMat unitary;  // 4 x 4
};

struct QvLayer {
  std::vector<int> permutation;
  std::vector<QvBlock> blocks;
};

/// Square model circuit: depth n_qubits, each layer a fresh random qubit
/// pairing with independent Haar blocks.
struct QvCircuit {
  std::string id;
  int n_qubits = 0;
  std::vector<QvLayer> layers;
};

/// Deterministic in seed; circuit i draws from derive_seed(seed, i).
/// n_qubits in [2, 5].
std::vector<QvCircuit> generate_qv_circuits(int n_qubits, int n_circuits, uint64_t seed);

/// Outcomes with ideal probability strictly above the median (the mean of
/// the two central order statistics, since 2^n is even); ascending.
std::vector<int> heavy_outputs(const RVec& ideal_probs);

/// A model circuit lowered onto the simulator: one channel per block,
/// labels "L<layer>B<block>".
struct QvCompiled {
  GateSet gs;
  Circuit circuit;
};

/// Materializes every block as a channel and stacks the noise ingredients
/// in order (gate noise after every block; spam on preparation and
/// measurement).
QvCompiled compile_qv_circuit(const QvCircuit& qc, const std::vector<NoiseSpec>& noise);

/// Heavy-output statistics at one width.
struct QvWidthResult {
  int n_qubits = 0;
  int n_circuits = 0;
  double mean_hop = 0.0;
  double std_hop = 0.0;  // sample standard deviation
  double lcb = 0.0;      // mean - z * sd / sqrt(K)
  bool pass = false;     // lcb > 2/3
};

struct QvResult {
  std::vector<QvWidthResult> per_width;
  int quantum_volume = 1;  // 2^(largest passing width), 1 when none pass
};

/// Full protocol over widths 2..n_max. shots == 0 scores the exact heavy
/// mass of the noisy distribution; otherwise each circuit is sampled with
/// a seed derived from (seed, width, circuit).
QvResult run_quantum_volume(int n_max, int n_circuits, const std::vector<NoiseSpec>& noise,
                            long long shots, uint64_t seed);

/// Linear cross-entropy benchmarking fidelity d * E_x[p_ideal(x)] - 1,
/// with the expectation over the sampled counts.
double linear_xeb(const std::vector<long long>& counts, const RVec& ideal_probs);

/// The same score in expectation: d * sum_x p(x) p_ideal(x) - 1.
double linear_xeb_exact(const RVec& probs, const RVec& ideal_probs);

}  // namespace qcvv
