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

#include <doctest.h>

#include "qcvv/gates.hpp"
#include "qcvv/metrics.hpp"
#include "qcvv/tomo.hpp"

namespace qcvv {
namespace {

// Exact measurement data for an arbitrary state: plug the state into the
// ideal fiducial register and evaluate every design circuit.
TomoData exact_state_data(const TomographyDesign& design, const DensityMatrix& rho) {
  GateSet gs = fiducial_gateset(design.n_qubits);
  gs.prep = rho;
  return tomo_data_from_probs(design, run_design_exact(gs, design.circuits));
}

// Exact data for a process: the ideal register with the probed channel
// installed under the label "G".
TomoData exact_process_data(const TomographyDesign& design, const QuantumChannel& g) {
  GateSet gs = fiducial_gateset(design.n_qubits);
  gs.gates["G"] = g;
  return tomo_data_from_probs(design, run_design_exact(gs, design.circuits));
}

DensityMatrix bloch_state(double x, double y, double z) {
  CMat m = 0.5 * (CMat::Identity(2, 2) + x * mat_x() + y * mat_y() + z * mat_z());
  return DensityMatrix(m);
}

QuantumChannel depolarizing(double q) {
  const double keep = std::sqrt(1.0 - 3.0 * q / 4.0);
  const double leak = std::sqrt(q / 4.0);
  return QuantumChannel::from_kraus(
      {keep * mat_id(), leak * mat_x(), leak * mat_y(), leak * mat_z()});
}

// Clips stray negative spectrum and renormalizes so near-physical
// estimates can enter state metrics.
DensityMatrix as_density(const CMat& m) {
  CMat h = psd_clip(hermitize(m));
  h /= h.trace().real();
  return DensityMatrix(h);
}

// Log-likelihood of the design's data under a candidate superoperator,
// with the 0 log 0 = 0 convention, for dominance checks against the fit.
double process_data_loglik(const TomographyDesign& design, const TomoData& data,
                           const CMat& superop) {
  const int block = design.n_settings * design.outcomes_per_setting();
  double ll = 0.0;
  for (int j = 0; j < design.n_preps; ++j) {
    const CVec out = superop * vec(design.prep_states[static_cast<std::size_t>(j)]);
    for (int r = 0; r < block; ++r) {
      const Eigen::Index row = static_cast<Eigen::Index>(j) * block + r;
      const double f = data.freq(row);
      if (f <= 0.0) continue;
      const double p = vec(design.effects[static_cast<std::size_t>(r)]).dot(out).real();
      ll += data.weight(row) * f * std::log(std::max(p, 1e-300));
    }
  }
  return ll;
}

TEST_CASE("state design shape: 3^n circuits and 6^n effect rows") {
  const TomographyDesign d1 = standard_state_design(1);
  CHECK(d1.circuits.size() == 3);
  CHECK(d1.effects.size() == 6);
  CHECK(d1.n_rows() == 6);
  CHECK(d1.circuits[0].id == "meas_X");
  CHECK(d1.circuits[1].id == "meas_Y");
  CHECK(d1.circuits[2].id == "meas_Z");
  CHECK_NOTHROW(d1.validate_spanning());

  const TomographyDesign d2 = standard_state_design(2);
  CHECK(d2.circuits.size() == 9);
  CHECK(d2.effects.size() == 36);
  CHECK(d2.circuits[0].id == "meas_XX");

  CHECK_THROWS_AS(standard_state_design(0), ValidationError);
  CHECK_THROWS_AS(standard_state_design(4), ValidationError);
}

TEST_CASE("state design effects are the advertised projectors") {
  const TomographyDesign d = standard_state_design(1);
  // Setting X, outcome 0: |+><+|.
  CMat plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(max_abs(d.effects[0] - plus) < 1e-12);
  // Setting Y, outcome 0: |+i><+i| = [[1, -i], [i, 1]] / 2.
  CMat plus_i(2, 2);
  plus_i << Complex(0.5, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(0.5, 0);
  CHECK(max_abs(d.effects[2] - plus_i) < 1e-12);
  // Setting Z, outcome 1: |1><1|.
  CMat one = CMat::Zero(2, 2);
  one(1, 1) = 1.0;
  CHECK(max_abs(d.effects[5] - one) < 1e-12);
  // Each setting's outcome pair forms a complete measurement.
  for (int s = 0; s < 3; ++s) {
    CHECK(max_abs(d.effects[2 * s] + d.effects[2 * s + 1] - CMat::Identity(2, 2)) < 1e-12);
  }
}

TEST_CASE("effect matrix condition numbers are sqrt(3)^n") {
  CHECK(standard_state_design(1).condition_number() ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(standard_state_design(2).condition_number() ==
        doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("process design shape: 12^n circuits around the probed gate") {
  const TomographyDesign d = standard_process_design(1);
  CHECK(d.n_preps == 4);
  CHECK(d.n_settings == 3);
  CHECK(d.circuits.size() == 12);
  CHECK(d.n_rows() == 24);
  CHECK(d.circuits[0].id == "prep_0_meas_X");
  CHECK(d.circuits[11].id == "prep_i_meas_Z");
  for (const Circuit& c : d.circuits) {
    CHECK(std::count(c.layers.begin(), c.layers.end(), "G") == 1);
  }
  // Input states |0>, |1>, |+>, |+i| in declared order.
  CHECK(d.prep_states[0](0, 0) == Complex(1, 0));
  CHECK(d.prep_states[1](1, 1) == Complex(1, 0));
  CHECK(d.prep_states[2](0, 1).real() == doctest::Approx(0.5));
  CHECK(std::abs(d.prep_states[3](1, 0) - Complex(0, 0.5)) < 1e-12);
  CHECK_NOTHROW(d.validate_spanning());
  CHECK(standard_process_design(2).circuits.size() == 144);
  CHECK_THROWS_AS(standard_process_design(3), ValidationError);
}

TEST_CASE("count alignment is strict") {
  const TomographyDesign d = standard_state_design(1);
  GateSet gs = fiducial_gateset(1);
  std::vector<CountData> counts = run_design(gs, d.circuits, 100, 4);
  CHECK_NOTHROW(tomo_data_from_counts(d, counts));

  std::vector<CountData> missing(counts.begin(), counts.end() - 1);
  CHECK_THROWS_AS(tomo_data_from_counts(d, missing), ValidationError);

  std::vector<CountData> swapped = counts;
  std::swap(swapped[0], swapped[1]);
  CHECK_THROWS_AS(tomo_data_from_counts(d, swapped), ValidationError);

  std::vector<CountData> empty = counts;
  empty[0].shots = 0;
  empty[0].counts = {0, 0};
  CHECK_THROWS_AS(tomo_data_from_counts(d, empty), ValidationError);
}

TEST_CASE("frequencies land in design row order with shot weights") {
  const TomographyDesign d = standard_state_design(1);
  std::vector<CountData> counts(3);
  for (int s = 0; s < 3; ++s) {
    counts[s].circuit_id = d.circuits[s].id;
    counts[s].shots = 100 * (s + 1);
    counts[s].counts = {25LL * (s + 1), 75LL * (s + 1)};
  }
  const TomoData data = tomo_data_from_counts(d, counts);
  REQUIRE(data.freq.size() == 6);
  for (int s = 0; s < 3; ++s) {
    CHECK(data.freq(2 * s) == doctest::Approx(0.25));
    CHECK(data.freq(2 * s + 1) == doctest::Approx(0.75));
    CHECK(data.weight(2 * s) == doctest::Approx(100.0 * (s + 1)));
  }
}

TEST_CASE("linear state tomography is exact on exact data") {
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_density_matrix(2, rng);
    const TomographyDesign d = standard_state_design(1);
    const StateEstimate est = state_tomography_linear(d, exact_state_data(d, rho));
    CHECK(max_abs(est.rho_hat - rho.mat) < 1e-9);
    CHECK(est.physical);
    CHECK(est.method == "linear");
  }
  // Two qubits.
  const DensityMatrix rho2 = random_density_matrix(4, rng);
  const TomographyDesign d2 = standard_state_design(2);
  const StateEstimate est2 = state_tomography_linear(d2, exact_state_data(d2, rho2));
  CHECK(max_abs(est2.rho_hat - rho2.mat) < 1e-9);
}

TEST_CASE("linear estimate flags unphysical reconstructions") {
  // Frequencies claiming perfect +X, +Y and +Z at once lie outside the
  // Bloch ball at radius sqrt(3).
  const TomographyDesign d = standard_state_design(1);
  TomoData data;
  data.freq.resize(6);
  data.freq << 1.0, 0.0, 1.0, 0.0, 1.0, 0.0;
  data.weight = RVec::Ones(6);
  const StateEstimate est = state_tomography_linear(d, data);
  CHECK_FALSE(est.physical);
  CHECK(min_eigenvalue(est.rho_hat) < -kPhysicalTol);
  CHECK(est.rho_hat.trace().real() == doctest::Approx(1.0).epsilon(1e-10));

  // The raw linear point predicts every observed row with probability one,
  // so no physical state can match its likelihood. The best physical
  // explanation is the pure state along (1,1,1)/sqrt(3), whose
  // log-likelihood has a closed form; the fit must land there. The
  // projected seed is already optimal, so zero iterations is legitimate.
  const StateEstimate mle = state_tomography_mle(d, data);
  CHECK(mle.physical);
  CHECK(min_eigenvalue(mle.rho_hat) >= -1e-9);
  CHECK(mle.method == "mle");
  CHECK(mle.iterations >= 0);
  const double s = 1.0 / std::sqrt(3.0);
  CHECK(mle.loglikelihood == doctest::Approx(3.0 * std::log((1.0 + s) / 2.0)).epsilon(1e-9));
  CHECK((mle.rho_hat * mat_x()).trace().real() == doctest::Approx(s).epsilon(1e-9));
  CHECK((mle.rho_hat * mat_y()).trace().real() == doctest::Approx(s).epsilon(1e-9));
  CHECK((mle.rho_hat * mat_z()).trace().real() == doctest::Approx(s).epsilon(1e-9));
}

TEST_CASE("mle matches the truth on exact data") {
  Rng rng(31);
  const DensityMatrix rho = random_density_matrix(2, rng);
  const TomographyDesign d = standard_state_design(1);
  const StateEstimate est = state_tomography_mle(d, exact_state_data(d, rho));
  CHECK(state_fidelity(as_density(est.rho_hat), rho) > 1.0 - 1e-8);
}

TEST_CASE("mle raises a typed error when starved of iterations") {
  // The linear inverse of these frequencies sits outside the Bloch ball at
  // a point whose clip is not the constrained optimum, so the first ascent
  // step strictly improves and a one-iteration budget cannot converge.
  const TomographyDesign d = standard_state_design(1);
  TomoData data;
  data.freq.resize(6);
  data.freq << 0.9, 0.1, 0.8, 0.2, 0.7, 0.3;
  data.weight = RVec::Ones(6);
  MleOptions opts;
  opts.max_iters = 1;
  opts.tol = 0.0;
  try {
    state_tomography_mle(d, data, opts);
    FAIL("expected TomoNonConvergence");
  } catch (const TomoNonConvergence& e) {
    CHECK(e.best_iterate.rows() == 2);
    CHECK(std::isfinite(e.loglikelihood));
  }
  // The same data converges comfortably under the default budget.
  CHECK_NOTHROW(state_tomography_mle(d, data));
}

TEST_CASE("linear process tomography recovers known channels exactly") {
  const TomographyDesign d = standard_process_design(1);

  const ProcessEstimate id_est =
      process_tomography_linear(d, exact_process_data(d, identity_channel(2)));
  CHECK(max_abs(id_est.superop_hat - CMat::Identity(4, 4)) < 1e-9);
  CHECK(id_est.physical);

  const QuantumChannel h = unitary_channel(mat_h());
  const ProcessEstimate h_est = process_tomography_linear(d, exact_process_data(d, h));
  CHECK(max_abs(h_est.superop_hat - h.superop) < 1e-9);

  const QuantumChannel noisy = depolarizing(0.1);
  const ProcessEstimate n_est =
      process_tomography_linear(d, exact_process_data(d, noisy));
  CHECK(max_abs(n_est.superop_hat - noisy.superop) < 1e-9);
  const RMat ptm = QuantumChannel::from_superop(n_est.superop_hat).ptm();
  CHECK(ptm(1, 1) == doctest::Approx(0.9).epsilon(1e-8));
}

TEST_CASE("two-qubit linear process tomography is exact") {
  const TomographyDesign d = standard_process_design(2);
  const QuantumChannel cx = unitary_channel(mat_cnot());
  const ProcessEstimate est = process_tomography_linear(d, exact_process_data(d, cx));
  CHECK(max_abs(est.superop_hat - cx.superop) < 1e-8);
}

TEST_CASE("process mle projects corrupted data back into the physical set") {
  const TomographyDesign d = standard_process_design(1);
  TomoData data = exact_process_data(d, depolarizing(0.15));
  // Corrupt a handful of rows so the linear inverse leaves the CP cone.
  data.freq(0) = std::min(1.0, data.freq(0) + 0.2);
  data.freq(1) = 1.0 - data.freq(0);
  data.freq(6) = std::max(0.0, data.freq(6) - 0.2);
  data.freq(7) = 1.0 - data.freq(6);

  const ProcessEstimate linear = process_tomography_linear(d, data);
  CHECK_FALSE(linear.physical);
  const ProcessEstimate mle = process_tomography_mle(d, data);
  CHECK(mle.physical);
  const CMat choi = superop_to_choi(mle.superop_hat);
  CHECK(min_eigenvalue(choi) >= -1e-9);
  // Trace preservation: the output-space partial trace is the identity.
  CHECK(max_abs(partial_trace_second(choi, 2, 2) - CMat::Identity(2, 2)) < 1e-6);
  // The likelihood is concave over the convex physical set, so the fit must
  // explain the data at least as well as the channel it was corrupted from.
  const double truth_ll = process_data_loglik(d, data, depolarizing(0.15).superop);
  CHECK(mle.loglikelihood >= truth_ll - 1e-9);
}

TEST_CASE("measurement tomography reconstructs effects from known probes") {
  const TomographyDesign d = standard_process_design(1);
  std::vector<DensityMatrix> probes;
  for (const CMat& rho : d.prep_states) {
    probes.emplace_back(rho);
  }
  // Exact counts for the ideal computational measurement.
  std::vector<CountData> counts(4);
  const long long shots = 1000;
  std::vector<std::vector<long long>> table = {
      {1000, 0}, {0, 1000}, {500, 500}, {500, 500}};
  for (std::size_t i = 0; i < 4; ++i) {
    counts[i].circuit_id = "probe" + std::to_string(i);
    counts[i].shots = shots;
    counts[i].counts = table[i];
  }
  const MeasurementEstimate est = measurement_tomography(probes, counts);
  REQUIRE(est.effects.size() == 2);
  CMat e0 = CMat::Zero(2, 2);
  e0(0, 0) = 1.0;
  CHECK(max_abs(est.effects[0] - e0) < 1e-9);
  CHECK(est.physical[0]);
  CHECK(est.physical[1]);
  CHECK(max_abs(est.effects[0] + est.effects[1] - CMat::Identity(2, 2)) < 1e-9);

  // Readout confusion 5%: diagonal effects 0.95 / 0.05.
  std::vector<std::vector<long long>> confused = {
      {950, 50}, {50, 950}, {500, 500}, {500, 500}};
  for (std::size_t i = 0; i < 4; ++i) {
    counts[i].counts = confused[i];
  }
  const MeasurementEstimate noisy = measurement_tomography(probes, counts);
  CHECK(noisy.effects[0](0, 0).real() == doctest::Approx(0.95).epsilon(1e-9));
  CHECK(noisy.effects[0](1, 1).real() == doctest::Approx(0.05).epsilon(1e-9));

  std::vector<DensityMatrix> too_few(probes.begin(), probes.begin() + 2);
  std::vector<CountData> two_counts(counts.begin(), counts.begin() + 2);
  CHECK_THROWS_AS(measurement_tomography(too_few, two_counts), ValidationError);
}

TEST_CASE("sampled data lands near the truth at realistic shot counts") {
  const TomographyDesign d = standard_state_design(1);
  const DensityMatrix truth = bloch_state(0.3, -0.2, 0.4);
  GateSet gs = fiducial_gateset(1);
  gs.prep = truth;
  const std::vector<CountData> counts = run_design(gs, d.circuits, 20000, 17);
  const TomoData data = tomo_data_from_counts(d, counts);
  const StateEstimate mle = state_tomography_mle(d, data);
  CHECK(state_fidelity(as_density(mle.rho_hat), truth) > 0.999);
}

}  // namespace
}  // namespace qcvv
