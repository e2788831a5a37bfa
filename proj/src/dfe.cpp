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

#include "qcvv/dfe.hpp"

#include <map>

#include "qcvv/simcore.hpp"

namespace qcvv {

namespace {

uint64_t pauli_key(const PauliString& p) {
  uint64_t k = 0;
  for (int j = 0; j < p.n(); ++j) k = (k << 2) | (static_cast<uint64_t>(p.x[j]) << 1) | p.z[j];
  return k;
}

// Sign of a Hermitian phased Pauli relative to its canonical + form.
int pauli_sign(const PauliString& p) {
  int xz = 0;
  for (int j = 0; j < p.n(); ++j) xz += p.x[j] & p.z[j];
  int rel = ((p.phase - xz) % 4 + 4) % 4;
  if (rel == 0) return 1;
  if (rel == 2) return -1;
  throw ValidationError("StabilizerTarget: group element is not Hermitian");
}

PauliString strip_sign(const PauliString& p) { return hermitian_pauli(p.x, p.z); }

}  // namespace

StabilizerTarget StabilizerTarget::from_generators(const std::vector<PauliString>& generators) {
  if (generators.empty()) throw ValidationError("StabilizerTarget: no generators");
  int n = generators[0].n();
  if (static_cast<int>(generators.size()) != n) {
    throw ValidationError(detail::cat("StabilizerTarget: ", generators.size(), " generators for ", n,
                                      " qubits; a pure stabilizer state needs exactly n"));
  }
  if (n > 5) throw ValidationError(detail::cat("StabilizerTarget: at most 5 qubits, got ", n));
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].n() != n) throw ValidationError("StabilizerTarget: generator sizes differ");
    if (!generators[i].is_hermitian()) {
      throw ValidationError(detail::cat("StabilizerTarget: generator ", i, " is not Hermitian"));
    }
    for (std::size_t k = i + 1; k < generators.size(); ++k) {
      if (!generators[i].commutes_with(generators[k])) {
        throw ValidationError(detail::cat("StabilizerTarget: generators ", i, " and ", k, " anticommute"));
      }
    }
  }
  StabilizerTarget t;
  t.n_qubits = n;
  t.generators = generators;
  std::size_t count = std::size_t(1) << n;
  std::map<uint64_t, std::size_t> seen;
  for (std::size_t mask = 0; mask < count; ++mask) {
    PauliString prod = PauliString::identity(n);
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if ((mask >> g) & 1) prod = pauli_mul(prod, generators[g]);
    }
    int sign = pauli_sign(prod);
    PauliString base = strip_sign(prod);
    uint64_t key = pauli_key(base);
    if (seen.count(key)) {
      throw ValidationError("StabilizerTarget: generators are not independent (duplicate subset product)");
    }
    if (mask != 0 && key == 0) {
      throw ValidationError("StabilizerTarget: generators multiply to the identity (not independent)");
    }
    seen[key] = mask;
    t.elements.push_back(std::move(base));
    t.signs.push_back(sign);
  }
  if (t.signs[0] != 1) {
    throw ValidationError("StabilizerTarget: the identity carries sign -1; the group stabilizes nothing");
  }
  return t;
}

int StabilizerTarget::expectation(const PauliString& base) const {
  if (base.n() != n_qubits) {
    throw ValidationError(detail::cat("StabilizerTarget: Pauli has ", base.n(), " qubits, target has ", n_qubits));
  }
  uint64_t key = pauli_key(base);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (pauli_key(elements[i]) == key) return signs[i];
  }
  return 0;
}

CMat StabilizerTarget::projector() const {
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  CMat proj = CMat::Zero(d, d);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    proj += static_cast<double>(signs[i]) * elements[i].matrix();
  }
  return proj / static_cast<double>(d);
}

PureState StabilizerTarget::state() const {
  auto [vals, vecs] = eigh(projector());
  Eigen::Index top = vals.size() - 1;
  if (std::abs(vals(top) - 1.0) > 1e-9) {
    throw NumericalError(detail::cat("StabilizerTarget: projector top eigenvalue ", vals(top),
                                     " differs from 1"));
  }
  return PureState(vecs.col(top));
}

PauliSampler density_matrix_sampler(const DensityMatrix& rho) {
  return [rho](const PauliString& base, long long shots, uint64_t seed) -> double {
    if ((Eigen::Index(1) << base.n()) != rho.dim()) {
      throw ValidationError(detail::cat("Pauli sampler: Pauli on ", base.n(), " qubits vs state dimension ",
                                        rho.dim()));
    }
    double e = (base.matrix() * rho.mat).trace().real();
    if (e < -1.0 - kDefaultTol || e > 1.0 + kDefaultTol) {
      throw NumericalError(detail::cat("Pauli sampler: expectation ", e, " outside [-1, 1]"));
    }
    e = std::min(1.0, std::max(-1.0, e));
    if (shots == 0) return e;
    RVec pr(2);
    pr << 0.5 * (1.0 + e), 0.5 * (1.0 - e);
    CountData counts = sample_counts(pr, shots, seed);
    return static_cast<double>(counts.counts[0] - counts.counts[1]) / static_cast<double>(shots);
  };
}

DfeResult dfe_stabilizer(const StabilizerTarget& target, const PauliSampler& sampler,
                         int n_settings, long long shots_per_setting, uint64_t seed) {
  if (n_settings < 1) {
    throw ValidationError(detail::cat("dfe_stabilizer: n_settings must be >= 1, got ", n_settings));
  }
  if (shots_per_setting < 0) {
    throw ValidationError(detail::cat("dfe_stabilizer: shots must be >= 0, got ", shots_per_setting));
  }
  Rng rng(seed);
  std::vector<double> vals(static_cast<std::size_t>(n_settings));
  for (int s = 0; s < n_settings; ++s) {
    std::size_t idx = static_cast<std::size_t>(rng.uniform_int(target.group_size()));
    double e = sampler(target.elements[idx], shots_per_setting,
                       derive_seed(seed, static_cast<uint64_t>(s)));
    vals[static_cast<std::size_t>(s)] = static_cast<double>(target.signs[idx]) * e;
  }
  DfeResult res;
  res.n_settings = n_settings;
  res.shots_per_setting = shots_per_setting;
  double mean = 0.0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  res.f_hat = mean;
  res.f_clamped = std::min(1.0, std::max(0.0, mean));
  if (vals.size() > 1) {
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= static_cast<double>(vals.size() - 1);
    res.stderr_f = std::sqrt(std::max(0.0, var) / static_cast<double>(vals.size()));
  }
  return res;
}

DfeResult dfe_exhaustive(const StabilizerTarget& target, const PauliSampler& sampler) {
  double mean = 0.0;
  for (std::size_t i = 0; i < target.group_size(); ++i) {
    mean += static_cast<double>(target.signs[i]) * sampler(target.elements[i], 0, 0);
  }
  mean /= static_cast<double>(target.group_size());
  DfeResult res;
  res.n_settings = static_cast<int>(target.group_size());
  res.shots_per_setting = 0;
  res.f_hat = mean;
  res.f_clamped = std::min(1.0, std::max(0.0, mean));
  res.stderr_f = 0.0;
  return res;
}

}  // namespace qcvv
