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

// Release gate for the toolkit: nine independently checkable properties of
// the benchmarking, tomography and metric stack, each scored against an
// oracle computed outside the code path under test. Prints one PASS/FAIL
// line per property; the exit code is the number of failures.

#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qcvv/cli.hpp"
#include "qcvv/dfe.hpp"
#include "qcvv/gates.hpp"
#include "qcvv/holistic.hpp"
#include "qcvv/io.hpp"
#include "qcvv/metrics.hpp"
#include "qcvv/rb.hpp"
#include "qcvv/tomo.hpp"

namespace {

using namespace qcvv;

// Pinned tolerances and statistical thresholds.
constexpr double kDecayTol = 1e-6;        // fitted p and r against the closed form
constexpr double kSpamShiftMin = 1e-3;    // amplitude must visibly absorb SPAM
constexpr double kExactTol = 1e-9;        // linear inversion on exact data
constexpr double kEigFloor = -1e-9;       // estimator positivity floor
constexpr double kLoglikSlack = 1e-9;     // float slack in likelihood comparisons
constexpr double kMetricTol = 1e-9;       // closed-form metric identities
constexpr double kChi2Q1 = 49.7282324664315;    // chi-square 0.999 quantile, 23 dof
constexpr double kChi2Q2 = 11993.74924492576;   // chi-square 0.999 quantile, 11519 dof
constexpr int kUniformityDraws = 100000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 10) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << v;
  return ss.str();
}

// ---------------------------------------------------------------------------
// 1. One-qubit Clifford benchmarking under gate-independent depolarizing
//    noise must reproduce the closed-form decay: every survival curve is
//    F(m) = 1/2 + (1-q)^{m+1}/2, so the fit must land on p = 1 - q and
//    r = (1 - p)/2 up to solver precision.
// ---------------------------------------------------------------------------
Outcome rb_depolarizing_decay() {
  RbDesign d;
  d.n_qubits = 1;
  d.lengths = {1, 2, 4, 8, 16, 32};
  d.k_sequences = 30;
  d.seed = 101;
  const std::vector<Circuit> circuits = sample_rb_sequences(d);
  const GateSet gs = rb_gateset(d, circuits, {NoiseSpec::depolarizing(0.02)});
  const std::vector<SurvivalPoint> points = run_rb(d, gs, 0, 0);
  const DecayFit fit = fit_decay(points, 2);
  const double dp = std::abs(fit.p - 0.98);
  const double dr = std::abs(fit.r - 0.01);
  Outcome o;
  o.pass = dp <= kDecayTol && dr <= kDecayTol;
  o.detail = "p=" + fmt(fit.p) + " (|dp|=" + fmt(dp, 3) + "), r=" + fmt(fit.r) +
             " (|dr|=" + fmt(dr, 3) + "), 6 lengths x 30 sequences, exact mode";
  return o;
}

// ---------------------------------------------------------------------------
// 2. Preparation and readout flips may move only the decay amplitude; the
//    fitted p (and with it r) must be invariant.
// ---------------------------------------------------------------------------
Outcome rb_spam_invariance() {
  RbDesign d;
  d.n_qubits = 1;
  d.lengths = {1, 2, 4, 8, 16, 32};
  d.k_sequences = 30;
  d.seed = 101;
  const std::vector<Circuit> circuits = sample_rb_sequences(d);

  const GateSet clean = rb_gateset(d, circuits, {NoiseSpec::depolarizing(0.02)});
  const DecayFit ideal = fit_decay(run_rb(d, clean, 0, 0), 2);

  const GateSet spam = rb_gateset(
      d, circuits, {NoiseSpec::depolarizing(0.02), NoiseSpec::spam(0.02, 0.05)});
  const DecayFit shifted = fit_decay(run_rb(d, spam, 0, 0), 2);

  const double dp = std::abs(shifted.p - 0.98);
  const double da = std::abs(shifted.a - ideal.a);
  Outcome o;
  o.pass = dp <= kDecayTol && da >= kSpamShiftMin;
  o.detail = "p=" + fmt(shifted.p) + " (|dp|=" + fmt(dp, 3) + "), amplitude " +
             fmt(ideal.a, 6) + " -> " + fmt(shifted.a, 6) + ", offset " +
             fmt(shifted.b, 6);
  return o;
}

// ---------------------------------------------------------------------------
// 3. Linear inversion on exact probabilities is a left inverse of the
//    forward model: reconstructions of random states and channels must
//    match entrywise.
// ---------------------------------------------------------------------------
Outcome linear_inversion_exactness() {
  Rng rng(2024);
  double worst_state = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = trial < 100 ? 1 : 2;
    const TomographyDesign design = standard_state_design(n);
    const DensityMatrix truth = random_density_matrix(design.dim(), rng);
    GateSet gs = fiducial_gateset(n);
    gs.prep = truth;
    const TomoData data =
        tomo_data_from_probs(design, run_design_exact(gs, design.circuits));
    const StateEstimate est = state_tomography_linear(design, data);
    worst_state = std::max(worst_state, max_abs(est.rho_hat - truth.mat));
  }

  double worst_channel = 0.0;
  const TomographyDesign pdesign = standard_process_design(1);
  for (int trial = 0; trial < 50; ++trial) {
    const QuantumChannel truth = random_channel(2, 1 + trial % 4, rng);
    GateSet gs = fiducial_gateset(1);
    gs.gates["G"] = truth;
    const TomoData data =
        tomo_data_from_probs(pdesign, run_design_exact(gs, pdesign.circuits));
    const ProcessEstimate est = process_tomography_linear(pdesign, data);
    worst_channel = std::max(worst_channel, max_abs(est.superop_hat - truth.superop));
  }

  Outcome o;
  o.pass = worst_state < kExactTol && worst_channel < kExactTol;
  o.detail = "200 states (100 one-qubit, 100 two-qubit) max |err| " +
             fmt(worst_state, 3) + ", 50 one-qubit channels max |err| " +
             fmt(worst_channel, 3);
  return o;
}

// ---------------------------------------------------------------------------
// 4. The iterative estimator must stay in the physical cone and dominate
//    both the projected linear estimate and a dense grid of candidate
//    states in likelihood.
// ---------------------------------------------------------------------------

// Same likelihood convention as the estimators: sum_r w_r f_r log p_r.
double data_loglik(const TomographyDesign& design, const TomoData& data, const CMat& rho) {
  const CVec p = design.effect_matrix * vec(rho);
  double total = 0.0;
  for (Eigen::Index r = 0; r < data.freq.size(); ++r) {
    if (data.freq(r) <= 0.0) continue;
    if (p(r).real() <= 0.0) return -std::numeric_limits<double>::infinity();
    total += data.weight(r) * data.freq(r) * std::log(p(r).real());
  }
  return total;
}

Outcome mle_positivity_and_optimality() {
  const TomographyDesign design = standard_state_design(1);
  MleOptions options;
  options.max_iters = 20000;

  int found = 0;
  double worst_eig = 0.0;
  int beaten = 0;  // datasets where the projected linear estimate won
  TomoData first_data;
  double first_mle_loglik = 0.0;

  for (uint64_t attempt = 0; attempt < 2000 && found < 100; ++attempt) {
    Rng rng(9000 + attempt);
    GateSet gs = fiducial_gateset(1);
    gs.prep = pure_density(random_pure_state(2, rng));
    const std::vector<CountData> counts =
        run_design(gs, design.circuits, 100, derive_seed(4000, attempt));
    const TomoData data = tomo_data_from_counts(design, counts);
    const StateEstimate li = state_tomography_linear(design, data);
    if (min_eigenvalue(li.rho_hat) >= -kPhysicalTol) {
      continue;  // keep only datasets whose direct inversion is unphysical
    }
    ++found;

    const StateEstimate mle = state_tomography_mle(design, data, options);
    worst_eig = std::min(worst_eig, min_eigenvalue(mle.rho_hat));

    CMat projected = psd_clip(hermitize(li.rho_hat));
    projected /= projected.trace().real();
    if (mle.loglikelihood + kLoglikSlack < data_loglik(design, data, projected)) {
      ++beaten;
    }
    if (found == 1) {
      first_data = data;
      first_mle_loglik = mle.loglikelihood;
    }
  }

  // Dense oracle: every state is 1/2 (I + x X + y Y + z Z); the six row
  // probabilities are (1 +- v)/2 per axis, so the likelihood separates
  // into per-axis tables over the 0.01-spaced component grid.
  bool grid_ok = found >= 1;
  const int kSteps = 201;
  std::vector<std::array<double, 3>> axis_term(kSteps);
  for (int i = 0; i < kSteps && grid_ok; ++i) {
    const double v = -1.0 + 0.01 * i;  // -1.00, -0.99, ..., 1.00
    for (int axis = 0; axis < 3; ++axis) {
      double c = 0.0;
      const double pp = (1.0 + v) / 2.0;
      const double pm = (1.0 - v) / 2.0;
      const Eigen::Index rp = 2 * axis, rm = 2 * axis + 1;
      if (first_data.freq(rp) > 0.0) {
        c = pp <= 0.0 ? -std::numeric_limits<double>::infinity()
                      : c + first_data.weight(rp) * first_data.freq(rp) * std::log(pp);
      }
      if (std::isfinite(c) && first_data.freq(rm) > 0.0) {
        c = pm <= 0.0 ? -std::numeric_limits<double>::infinity()
                      : c + first_data.weight(rm) * first_data.freq(rm) * std::log(pm);
      }
      axis_term[static_cast<std::size_t>(i)][static_cast<std::size_t>(axis)] = c;
    }
  }
  double grid_best = -std::numeric_limits<double>::infinity();
  for (int ix = 0; ix < kSteps && grid_ok; ++ix) {
    const double x = -1.0 + 0.01 * ix;
    for (int iy = 0; iy < kSteps; ++iy) {
      const double y = -1.0 + 0.01 * iy;
      if (x * x + y * y > 1.0 + 1e-12) continue;
      const double partial = axis_term[static_cast<std::size_t>(ix)][0] +
                             axis_term[static_cast<std::size_t>(iy)][1];
      for (int iz = 0; iz < kSteps; ++iz) {
        const double z = -1.0 + 0.01 * iz;
        if (x * x + y * y + z * z > 1.0 + 1e-12) continue;
        const double ll = partial + axis_term[static_cast<std::size_t>(iz)][2];
        if (ll > grid_best) grid_best = ll;
      }
    }
  }
  grid_ok = grid_ok && first_mle_loglik + kLoglikSlack >= grid_best;

  Outcome o;
  o.pass = found == 100 && worst_eig >= kEigFloor && beaten == 0 && grid_ok;
  o.detail = std::to_string(found) +
             " unphysical-inversion datasets, min eigenvalue " + fmt(worst_eig, 3) +
             ", projected-linear wins " + std::to_string(beaten) +
             ", grid-oracle gap " + fmt(first_mle_loglik - grid_best, 6);
  return o;
}

// ---------------------------------------------------------------------------
// 5. Closed-form metric identities, including the entanglement-fidelity
//    value of the depolarizing channel checked against an independently
//    assembled Choi overlap.
// ---------------------------------------------------------------------------
Outcome metric_identities() {
  Rng rng(55);
  std::vector<std::string> failures;

  const DensityMatrix rho = random_density_matrix(4, rng);
  if (std::abs(state_fidelity(rho, rho) - 1.0) > kMetricTol) {
    failures.push_back("self-fidelity");
  }

  CVec zero(2), one(2);
  zero << 1, 0;
  one << 0, 1;
  if (std::abs(trace_distance(pure_density(PureState(zero)), pure_density(PureState(one))) -
               1.0) > kMetricTol) {
    failures.push_back("orthogonal trace distance");
  }

  if (std::abs(avg_gate_fidelity(0.925, 2) - 0.95) > kMetricTol) {
    failures.push_back("average-fidelity map");
  }

  const double q = 0.1;
  const double keep = std::sqrt(1.0 - 3.0 * q / 4.0);
  const double leak = std::sqrt(q / 4.0);
  const QuantumChannel depol = QuantumChannel::from_kraus(
      {keep * mat_id(), leak * mat_x(), leak * mat_y(), leak * mat_z()});
  const double f = process_fidelity(depol, identity_channel(2));
  // Independent oracle: overlap of the unit-trace Choi matrix with the
  // maximally entangled projector.
  CVec phi = CVec::Zero(4);
  phi(0) = 1.0 / std::sqrt(2.0);
  phi(3) = 1.0 / std::sqrt(2.0);
  const CMat choi = superop_to_choi(depol.superop) / 2.0;
  const double oracle = (phi.adjoint() * choi * phi)(0, 0).real();
  if (std::abs(f - oracle) > kMetricTol || std::abs(f - 0.925) > kMetricTol) {
    failures.push_back("depolarizing process fidelity");
  }

  const DiamondBounds b =
      diamond_bounds(unitary_channel(mat_z()), identity_channel(2), 16, 0);
  if (std::abs(b.lower - 1.0) > kMetricTol || std::abs(b.upper - 1.0) > kMetricTol) {
    failures.push_back("phase-flip diamond bracket");
  }

  Outcome o;
  o.pass = failures.empty();
  std::ostringstream ss;
  ss << "process fidelity " << fmt(f) << " vs Choi oracle " << fmt(oracle)
     << ", diamond bracket [" << fmt(b.lower) << ", " << fmt(b.upper) << "]";
  if (!failures.empty()) {
    ss << "; failed:";
    for (const std::string& s : failures) ss << " " << s;
  }
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------------------
// 6. The heavy-output protocol must certify a clean simulated device
//    through width 4 and reject a fully depolarized one at width 2.
// ---------------------------------------------------------------------------
Outcome quantum_volume_pass_fail() {
  const auto t0 = std::chrono::steady_clock::now();
  const QvResult clean = run_quantum_volume(4, 200, {}, 0, 7);
  const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool clean_ok = clean.quantum_volume == 16 && clean.per_width.size() == 3;
  for (const QvWidthResult& w : clean.per_width) {
    clean_ok = clean_ok && w.pass && w.n_circuits == 200;
  }

  const QvResult dead = run_quantum_volume(2, 200, {NoiseSpec::depolarizing(1.0)}, 0, 8);
  const bool dead_ok = dead.per_width.size() == 1 && !dead.per_width[0].pass &&
                       dead.per_width[0].mean_hop <= 0.5 && dead.quantum_volume == 1;

  Outcome o;
  o.pass = clean_ok && dead_ok;
  std::ostringstream ss;
  ss << "clean device volume " << clean.quantum_volume << " (widths";
  for (const QvWidthResult& w : clean.per_width) {
    ss << " " << w.n_qubits << ":" << fmt(w.mean_hop, 4);
  }
  ss << ") in " << fmt(seconds, 3) << " s; depolarized width-2 mean heavy mass "
     << fmt(dead.per_width[0].mean_hop, 4) << ", volume " << dead.quantum_volume;
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------------------
// 7. Exhaustive direct fidelity estimation with exact expectations is the
//    same number as the state-fidelity metric.
// ---------------------------------------------------------------------------
Outcome dfe_matches_state_fidelity() {
  Rng rng(808);
  double worst = 0.0;
  int checked = 0;

  auto zero_target = [](int n) {
    std::vector<PauliString> gens;
    for (int j = 0; j < n; ++j) {
      std::vector<uint8_t> x(static_cast<std::size_t>(n), 0);
      std::vector<uint8_t> z(static_cast<std::size_t>(n), 0);
      z[static_cast<std::size_t>(j)] = 1;
      gens.push_back(hermitian_pauli(x, z));
    }
    return StabilizerTarget::from_generators(gens);
  };
  const StabilizerTarget bell = StabilizerTarget::from_generators(
      {hermitian_pauli({1, 1}, {0, 0}), hermitian_pauli({0, 0}, {1, 1})});

  struct Case {
    StabilizerTarget target;
    int count;
  };
  const std::vector<Case> cases = {
      {zero_target(1), 10}, {zero_target(2), 10}, {bell, 15}, {zero_target(3), 15}};
  for (const Case& c : cases) {
    const DensityMatrix psi = pure_density(c.target.state());
    for (int trial = 0; trial < c.count; ++trial) {
      const DensityMatrix rho = random_density_matrix(1 << c.target.n_qubits, rng);
      const DfeResult res = dfe_exhaustive(c.target, density_matrix_sampler(rho));
      const double truth = state_fidelity(rho, psi);
      worst = std::max(worst, std::abs(res.f_hat - truth));
      ++checked;
    }
  }

  Outcome o;
  o.pass = checked == 50 && worst < kMetricTol;
  o.detail = std::to_string(checked) +
             " random states vs computational and entangled-pair targets, max |err| " +
             fmt(worst, 3);
  return o;
}

// ---------------------------------------------------------------------------
// 8. Group algebra: enumerated orders, exact sequence inversion, and
//    uniformity of the element sampler at the 1e-3 chi-square level.
// ---------------------------------------------------------------------------
Outcome clifford_group_algebra() {
  const CliffordGroup& g1 = CliffordGroup::instance(1);
  const CliffordGroup& g2 = CliffordGroup::instance(2);
  const bool orders_ok = g1.order() == 24 && g2.order() == 11520;

  auto sequences_invert = [](int n, const std::vector<int>& lengths, int k) {
    RbDesign d;
    d.n_qubits = n;
    d.lengths = lengths;
    d.k_sequences = k;
    d.seed = 424242;
    const CliffordGroup& g = CliffordGroup::instance(n);
    const std::size_t id_idx = g.index_of(CliffordElement::identity(n));
    for (const Circuit& c : sample_rb_sequences(d)) {
      std::size_t acc = id_idx;
      for (const std::string& label : c.layers) {
        acc = g.compose(std::stoul(label.substr(1)), acc);
      }
      if (acc != id_idx) return false;
    }
    return true;
  };
  const bool invert_ok =
      sequences_invert(1, {1, 2, 4, 8, 16}, 10) && sequences_invert(2, {1, 2, 3}, 5);

  auto chi_square = [](const CliffordGroup& g, uint64_t seed) {
    Rng rng(seed);
    std::vector<long long> hits(g.order(), 0);
    for (int i = 0; i < kUniformityDraws; ++i) {
      hits[g.sample(rng)]++;
    }
    const double expected = static_cast<double>(kUniformityDraws) / static_cast<double>(g.order());
    double stat = 0.0;
    for (long long h : hits) {
      const double d = static_cast<double>(h) - expected;
      stat += d * d / expected;
    }
    return stat;
  };
  const double stat1 = chi_square(g1, 31337);
  const double stat2 = chi_square(g2, 31338);
  const bool uniform_ok = stat1 < kChi2Q1 && stat2 < kChi2Q2;

  Outcome o;
  o.pass = orders_ok && invert_ok && uniform_ok;
  o.detail = "orders " + std::to_string(g1.order()) + "/" + std::to_string(g2.order()) +
             ", sequences invert: " + (invert_ok ? "yes" : "NO") +
             ", chi-square " + fmt(stat1, 6) + " < " + fmt(kChi2Q1, 6) + " and " +
             fmt(stat2, 8) + " < " + fmt(kChi2Q2, 8);
  return o;
}

// ---------------------------------------------------------------------------
// 9. Running the whole command pipeline twice with identical flags must
//    reproduce every artifact byte for byte.
// ---------------------------------------------------------------------------
Outcome pipeline_byte_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qcvv_acceptance_pipeline";
  fs::create_directories(dir);
  const std::string design = (dir / "design.json").string();
  const std::string counts = (dir / "counts.json").string();
  const std::string report = (dir / "report.json").string();

  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto run_all = [&]() {
    int rc = 0;
    rc |= cli::run({"design", "--protocol", "rb", "--qubits", "1", "--lengths",
                    "1,2,4,8", "--k", "10", "--seed", "5", "--out", design});
    rc |= cli::run({"simulate", design, "--shots", "200", "--seed", "3", "--noise",
                    "depolarizing:0.02", "--out", counts});
    rc |= cli::run({"analyze", design, counts, "--protocol", "rb", "--out", report});
    return rc;
  };

  const int rc1 = run_all();
  const std::string design1 = slurp(design);
  const std::string counts1 = slurp(counts);
  const std::string report1 = slurp(report);
  const int rc2 = run_all();
  const bool identical =
      design1 == slurp(design) && counts1 == slurp(counts) && report1 == slurp(report);

  Outcome o;
  o.pass = rc1 == 0 && rc2 == 0 && identical && !report1.empty();
  o.detail = std::string("exit codes ") + std::to_string(rc1) + "/" + std::to_string(rc2) +
             ", artifacts identical across reruns: " + (identical ? "yes" : "NO") +
             " (" + std::to_string(report1.size()) + "-byte report)";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria = {
      {"rb-depolarizing-decay", rb_depolarizing_decay},
      {"rb-spam-invariance", rb_spam_invariance},
      {"linear-inversion-exactness", linear_inversion_exactness},
      {"mle-positivity-and-optimality", mle_positivity_and_optimality},
      {"metric-identities", metric_identities},
      {"quantum-volume-pass-fail", quantum_volume_pass_fail},
      {"dfe-matches-state-fidelity", dfe_matches_state_fidelity},
      {"clifford-group-algebra", clifford_group_algebra},
      {"pipeline-byte-determinism", pipeline_byte_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " - " << c.name << ": " << o.detail
              << std::endl;
  }
  if (failures == 0) {
    std::cout << "all " << criteria.size() << " acceptance criteria passed" << std::endl;
  } else {
    std::cout << failures << " of " << criteria.size() << " acceptance criteria failed"
              << std::endl;
  }
  return failures;
}
