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

#include "qcvv/clifford.hpp"
#include "qcvv/simcore.hpp"

namespace qcvv {

/// Standard randomized benchmarking experiment layout.
struct RbDesign {
  int n_qubits = 1;          // 1 or 2 (enumerable Clifford groups)
  std::vector<int> lengths;  // >= 3 distinct positive lengths, ascending
  int k_sequences = 1;       // random sequences per length
  uint64_t seed = 0;

  void validate() const;
};

/// Samples the benchmarking circuits: for every length m, k sequences of m
/// uniform Clifford elements followed by the exact group inverse of their
/// product. Labels are "C<index>" into the enumerated group; circuit ids
/// are "m<length>_s<sequence>". Deterministic in design.seed.
std::vector<Circuit> sample_rb_sequences(const RbDesign& design);

/// Device model covering every Clifford label used by the circuits:
/// computational preparation and measurement plus one channel per label.
/// Noise ingredients are applied in order via build_noisy_gateset.
GateSet rb_gateset(const RbDesign& design, const std::vector<Circuit>& circuits,
                   const std::vector<NoiseSpec>& noise);

/// Mean survival probability at one sequence length.
struct SurvivalPoint {
  int m = 0;
  double f = 0.0;
};

/// Runs the experiment and averages the survival probability (outcome 0,
/// the prepared computational state) over the k sequences of each length.
/// shots == 0 computes exact probabilities; otherwise circuit i samples
/// from the stream derive_seed(seed, i).
std::vector<SurvivalPoint> run_rb(const RbDesign& design, const GateSet& gs, long long shots,
                                  uint64_t seed);

/// Exponential decay fit F(m) = A p^m + B.
struct DecayFit {
  double a = 0.0;
  double b = 0.0;
  double p = 1.0;
  double r = 0.0;         // rb number (d - 1)(1 - p) / d
  double stderr_p = 0.0;  // from the local quadratic model at the optimum
  int n_points = 0;
};

/// Least-squares decay fit by profiling over p (coarse grid + golden
/// section) with the linear coefficients solved in closed form at each p.
/// A and B are clamped to [0, 1] and p to [0, 1]; all-constant data
/// degenerates to p = 1, A = 0, B = the constant. Optional per-point
/// weights (e.g. inverse binomial variances); unweighted by default.
DecayFit fit_decay(const std::vector<SurvivalPoint>& points, int dim,
                   const std::vector<double>* weights = nullptr);

/// (d - 1)(1 - p) / d.
double rb_number(double p, int dim);

}  // namespace qcvv
