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

#include "qcvv/qmodel.hpp"

namespace qcvv {

/// Mixed-state fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to
/// [0, 1]. Symmetric in its arguments; equals |<psi|phi>|^2 on pure states.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Trace distance (1/2) ||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Total variation distance (1/2) sum |p_k - q_k| between probability
/// vectors.
double tvd(const RVec& p, const RVec& q);

/// Process (entanglement) fidelity: the state fidelity of the unit-trace
/// Choi states of the two channels.
double process_fidelity(const QuantumChannel& g1, const QuantumChannel& g2);

/// Average gate fidelity from process fidelity: (d F_pro + 1) / (d + 1).
double avg_gate_fidelity(double f_process, int dim);

/// Two-sided bracket on the diamond distance (1/2) ||G1 - G2||_diamond.
struct DiamondBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Lower bound: best ancilla-assisted pure-state discrimination found by a
/// seeded multi-restart coordinate search (restart 0 starts from the
/// maximally entangled state, the rest from random states). Upper bound:
/// d times the trace distance between the unit-trace Choi states, clamped
/// to [0, 1]. The truth lies in [lower, upper].
DiamondBounds diamond_bounds(const QuantumChannel& g1, const QuantumChannel& g2,
                             int n_restarts = 64, uint64_t seed = 0);

/// The lower-bound search alone; with use_ancilla = false the probe states
/// live on the bare input space, which can only do worse.
double diamond_lower_search(const QuantumChannel& g1, const QuantumChannel& g2,
                            int n_restarts, uint64_t seed, bool use_ancilla = true);

}  // namespace qcvv
