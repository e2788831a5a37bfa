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

#include "qcvv/rb.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace qcvv {

void RbDesign::validate() const {
  if (n_qubits != 1 && n_qubits != 2) {
    throw ValidationError(detail::cat("RbDesign: n_qubits must be 1 or 2, got ", n_qubits));
  }
  if (lengths.size() < 3) {
    throw ValidationError(detail::cat("RbDesign: need at least 3 lengths for a 3-parameter fit, got ",
                                      lengths.size()));
  }
  std::set<int> seen;
  int prev = 0;
  for (int m : lengths) {
    if (m < 1) throw ValidationError(detail::cat("RbDesign: lengths must be positive, got ", m));
    if (m <= prev) throw ValidationError("RbDesign: lengths must be strictly ascending");
    if (!seen.insert(m).second) throw ValidationError(detail::cat("RbDesign: duplicate length ", m));
    prev = m;
  }
  if (k_sequences < 1) {
    throw ValidationError(detail::cat("RbDesign: k_sequences must be >= 1, got ", k_sequences));
  }
}

std::vector<Circuit> sample_rb_sequences(const RbDesign& design) {
  design.validate();
  const CliffordGroup& group = CliffordGroup::instance(design.n_qubits);
  Rng rng(design.seed);
  std::vector<Circuit> circuits;
  circuits.reserve(design.lengths.size() * static_cast<std::size_t>(design.k_sequences));
  for (int m : design.lengths) {
    for (int s = 0; s < design.k_sequences; ++s) {
      Circuit c;
      c.id = detail::cat("m", m, "_s", s);
      c.n_qubits = design.n_qubits;
      std::size_t net = group.index_of(CliffordElement::identity(design.n_qubits));
      for (int step = 0; step < m; ++step) {
        std::size_t idx = group.sample(rng);
        c.layers.push_back("C" + std::to_string(idx));
        net = group.compose(idx, net);
      }
      c.layers.push_back("C" + std::to_string(group.inverse(net)));
      circuits.push_back(std::move(c));
    }
  }
  return circuits;
}

namespace {

std::size_t parse_clifford_label(const std::string& label, std::size_t order) {
  if (label.size() < 2 || label[0] != 'C') {
    throw ValidationError(detail::cat("\"", label, "\" is not a Clifford label (expected C<index>)"));
  }
  std::size_t idx = 0;
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] < '0' || label[i] > '9') {
      throw ValidationError(detail::cat("\"", label, "\" is not a Clifford label (expected C<index>)"));
    }
    idx = idx * 10 + static_cast<std::size_t>(label[i] - '0');
  }
  if (idx >= order) {
    throw ValidationError(detail::cat("Clifford label \"", label, "\" exceeds group order ", order));
  }
  return idx;
}

}  // namespace

GateSet rb_gateset(const RbDesign& design, const std::vector<Circuit>& circuits,
                   const std::vector<NoiseSpec>& noise) {
  design.validate();
  const CliffordGroup& group = CliffordGroup::instance(design.n_qubits);
  GateSet gs;
  gs.n_qubits = design.n_qubits;
  gs.prep = computational_prep(design.n_qubits);
  gs.meas = computational_povm(design.n_qubits);
  std::set<std::string> labels;
  for (const Circuit& c : circuits) {
    for (const std::string& label : c.layers) labels.insert(label);
  }
  for (const std::string& label : labels) {
    std::size_t idx = parse_clifford_label(label, group.order());
    gs.gates[label] = unitary_channel(group.unitary(idx));
  }
  for (const NoiseSpec& spec : noise) gs = build_noisy_gateset(gs, spec);
  return gs;
}

std::vector<SurvivalPoint> run_rb(const RbDesign& design, const GateSet& gs, long long shots,
                                  uint64_t seed) {
  design.validate();
  if (shots < 0) throw ValidationError(detail::cat("run_rb: shots must be >= 0, got ", shots));
  std::vector<Circuit> circuits = sample_rb_sequences(design);
  std::vector<double> survival(circuits.size(), 0.0);
  parallel_for(circuits.size(), [&](std::size_t i) {
    RVec p = circuit_probabilities(gs, circuits[i]);
    if (shots == 0) {
      survival[i] = p(0);
    } else {
      CountData counts = sample_counts(p, shots, derive_seed(seed, i), circuits[i].id);
      survival[i] = static_cast<double>(counts.counts[0]) / static_cast<double>(shots);
    }
  });
  std::vector<SurvivalPoint> table;
  table.reserve(design.lengths.size());
  std::size_t k = static_cast<std::size_t>(design.k_sequences);
  for (std::size_t li = 0; li < design.lengths.size(); ++li) {
    double mean = 0.0;
    for (std::size_t s = 0; s < k; ++s) mean += survival[li * k + s];
    table.push_back({design.lengths[li], mean / static_cast<double>(k)});
  }
  return table;
}

double rb_number(double p, int dim) {
  if (dim < 2) throw ValidationError(detail::cat("rb_number: dimension must be >= 2, got ", dim));
  return (static_cast<double>(dim) - 1.0) * (1.0 - p) / static_cast<double>(dim);
}

namespace {

struct ProfileResult {
  double ssr = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// Closed-form weighted least squares for (A, B) at fixed p.
ProfileResult profile_at(double p, const std::vector<SurvivalPoint>& pts,
                         const std::vector<double>& w) {
  double suu = 0, su = 0, sw = 0, suy = 0, sy = 0;
  std::vector<double> u(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    u[i] = std::pow(p, pts[i].m);
    suu += w[i] * u[i] * u[i];
    su += w[i] * u[i];
    sw += w[i];
    suy += w[i] * u[i] * pts[i].f;
    sy += w[i] * pts[i].f;
  }
  ProfileResult res;
  double det = suu * sw - su * su;
  if (std::abs(det) < 1e-14 * std::max(1.0, suu * sw)) {
    // Collinear columns (p at 0 with equal powers, or p = 1): constant model.
    res.a = 0.0;
    res.b = sy / sw;
  } else {
    res.a = (suy * sw - su * sy) / det;
    res.b = (suu * sy - su * suy) / det;
  }
  res.ssr = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double rres = res.a * u[i] + res.b - pts[i].f;
    res.ssr += w[i] * rres * rres;
  }
  return res;
}

}  // namespace

DecayFit fit_decay(const std::vector<SurvivalPoint>& points, int dim,
                   const std::vector<double>* weights) {
  if (dim < 2) throw ValidationError(detail::cat("fit_decay: dimension must be >= 2, got ", dim));
  std::size_t n = points.size();
  if (n < 3) {
    throw ValidationError(detail::cat("fit_decay: need at least 3 points for a 3-parameter fit, got ", n));
  }
  std::set<int> distinct;
  for (const SurvivalPoint& pt : points) {
    if (pt.m < 1) throw ValidationError(detail::cat("fit_decay: lengths must be positive, got ", pt.m));
    if (!distinct.insert(pt.m).second) {
      throw ValidationError(detail::cat("fit_decay: duplicate length ", pt.m));
    }
  }
  std::vector<double> w(n, 1.0);
  if (weights != nullptr) {
    if (weights->size() != n) {
      throw ValidationError(detail::cat("fit_decay: ", weights->size(), " weights for ", n, " points"));
    }
    for (double wi : *weights) {
      if (!(wi > 0.0)) throw ValidationError("fit_decay: weights must be positive");
    }
    w = *weights;
  }

  DecayFit fit;
  fit.n_points = static_cast<int>(n);

  double fmin = points[0].f, fmax = points[0].f;
  for (const SurvivalPoint& pt : points) {
    fmin = std::min(fmin, pt.f);
    fmax = std::max(fmax, pt.f);
  }
  if (fmax - fmin <= 1e-12) {
    // All-constant survival: no decay information.
    fit.a = 0.0;
    fit.b = std::min(1.0, std::max(0.0, points[0].f));
    fit.p = 1.0;
    fit.r = 0.0;
    fit.stderr_p = 0.0;
    return fit;
  }

  // Coarse scan of the profiled residual over p, then golden-section
  // refinement around the best grid point.
  const int kGrid = 1000;
  double best_p = 0.0;
  double best_ssr = std::numeric_limits<double>::infinity();
  for (int g = 0; g <= kGrid; ++g) {
    double p = static_cast<double>(g) / kGrid;
    double ssr = profile_at(p, points, w).ssr;
    if (ssr < best_ssr) {
      best_ssr = ssr;
      best_p = p;
    }
  }
  double lo = std::max(0.0, best_p - 1.0 / kGrid);
  double hi = std::min(1.0, best_p + 1.0 / kGrid);
  const double kGolden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - kGolden * (hi - lo);
  double x2 = lo + kGolden * (hi - lo);
  double f1 = profile_at(x1, points, w).ssr;
  double f2 = profile_at(x2, points, w).ssr;
  while (hi - lo > 1e-12) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kGolden * (hi - lo);
      f1 = profile_at(x1, points, w).ssr;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kGolden * (hi - lo);
      f2 = profile_at(x2, points, w).ssr;
    }
  }
  double p_hat = 0.5 * (lo + hi);
  ProfileResult res = profile_at(p_hat, points, w);
  double ssr = res.ssr;

  // Clamp the linear coefficients into their physical boxes; when one
  // saturates, re-solve the other in closed form.
  double a_hat = res.a, b_hat = res.b;
  if (a_hat < 0.0 || a_hat > 1.0 || b_hat < 0.0 || b_hat > 1.0) {
    a_hat = std::min(1.0, std::max(0.0, a_hat));
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double u = std::pow(p_hat, points[i].m);
      num += w[i] * (points[i].f - a_hat * u);
      den += w[i];
    }
    b_hat = std::min(1.0, std::max(0.0, num / den));
    ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double u = std::pow(p_hat, points[i].m);
      double rres = a_hat * u + b_hat - points[i].f;
      ssr += w[i] * rres * rres;
    }
  }

  fit.a = a_hat;
  fit.b = b_hat;
  fit.p = p_hat;
  fit.r = rb_number(p_hat, dim);

  // Local quadratic (Gauss-Newton) uncertainty for p.
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    double u = std::pow(p_hat, points[i].m);
    double dp = (points[i].m >= 1 && p_hat > 0.0)
                    ? a_hat * points[i].m * std::pow(p_hat, points[i].m - 1)
                    : ((points[i].m == 1) ? a_hat : 0.0);
    Eigen::Vector3d j(u, 1.0, dp);
    h += w[i] * j * j.transpose();
  }
  int dof = static_cast<int>(n) - 3;
  double sigma2 = dof > 0 ? ssr / dof : 0.0;
  Eigen::FullPivLU<Eigen::Matrix3d> lu(h);
  if (lu.isInvertible() && sigma2 >= 0.0) {
    double var_p = sigma2 * lu.inverse()(2, 2);
    fit.stderr_p = var_p > 0.0 ? std::sqrt(var_p) : 0.0;
  } else {
    fit.stderr_p = 0.0;
  }
  return fit;
}

}  // namespace qcvv
