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

#include "qcvv/simcore.hpp"

#include <algorithm>
#include <charconv>

#include "qcvv/gates.hpp"
#include "qcvv/pauli.hpp"

namespace qcvv {

NoiseSpec NoiseSpec::depolarizing(double q) {
  NoiseSpec s;
  s.kind = Kind::kDepolarizing;
  s.q = q;
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::amplitude_damping(double gamma) {
  NoiseSpec s;
  s.kind = Kind::kAmplitudeDamping;
  s.gamma = gamma;
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::coherent_rotation(char axis, double angle) {
  NoiseSpec s;
  s.kind = Kind::kCoherentRotation;
  s.axis = axis;
  s.angle = angle;
  s.validate();
  return s;
}

NoiseSpec NoiseSpec::spam(double prep_flip, double readout_flip) {
  NoiseSpec s;
  s.kind = Kind::kSpam;
  s.prep_flip = prep_flip;
  s.readout_flip = readout_flip;
  s.validate();
  return s;
}

namespace {

double parse_double(const std::string& text, const std::string& full) {
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ValidationError(detail::cat("noise spec \"", full, "\": \"", text, "\" is not a number"));
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

NoiseSpec NoiseSpec::parse(const std::string& text) {
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw ValidationError(detail::cat("noise spec \"", text, "\" is missing ':' (expected kind:param[,param])"));
  }
  std::string kind = text.substr(0, colon);
  std::vector<std::string> params = split(text.substr(colon + 1), ',');
  if (kind == "depolarizing") {
    if (params.size() != 1) {
      throw ValidationError(detail::cat("noise spec \"", text, "\": depolarizing takes one parameter"));
    }
    return depolarizing(parse_double(params[0], text));
  }
  if (kind == "amplitude_damping") {
    if (params.size() != 1) {
      throw ValidationError(detail::cat("noise spec \"", text, "\": amplitude_damping takes one parameter"));
    }
    return amplitude_damping(parse_double(params[0], text));
  }
  if (kind == "coherent_rotation") {
    if (params.size() == 1) return coherent_rotation('Z', parse_double(params[0], text));
    if (params.size() == 2) {
      if (params[0].size() != 1 || (params[0] != "X" && params[0] != "Y" && params[0] != "Z")) {
        throw ValidationError(detail::cat("noise spec \"", text, "\": axis must be X, Y or Z"));
      }
      return coherent_rotation(params[0][0], parse_double(params[1], text));
    }
    throw ValidationError(detail::cat("noise spec \"", text, "\": coherent_rotation takes [axis,]angle"));
  }
  if (kind == "spam") {
    if (params.size() == 1) {
      double p = parse_double(params[0], text);
      return spam(p, p);
    }
    if (params.size() == 2) {
      return spam(parse_double(params[0], text), parse_double(params[1], text));
    }
    throw ValidationError(detail::cat("noise spec \"", text, "\": spam takes prep_flip[,readout_flip]"));
  }
  throw ValidationError(detail::cat("unknown noise kind \"", kind,
                                    "\" (expected depolarizing, amplitude_damping, coherent_rotation or spam)"));
}

void NoiseSpec::validate() const {
  switch (kind) {
    case Kind::kDepolarizing:
      if (q < 0.0 || q > 1.0) {
        throw ValidationError(detail::cat("depolarizing probability must be in [0, 1], got ", q));
      }
      return;
    case Kind::kAmplitudeDamping:
      if (gamma < 0.0 || gamma > 1.0) {
        throw ValidationError(detail::cat("damping probability must be in [0, 1], got ", gamma));
      }
      return;
    case Kind::kCoherentRotation:
      if (axis != 'X' && axis != 'Y' && axis != 'Z') {
        throw ValidationError(detail::cat("rotation axis must be X, Y or Z, got '", std::string(1, axis), "'"));
      }
      if (!std::isfinite(angle)) throw ValidationError("rotation angle must be finite");
      return;
    case Kind::kSpam:
      if (prep_flip < 0.0 || prep_flip > 1.0 || readout_flip < 0.0 || readout_flip > 1.0) {
        throw ValidationError(detail::cat("spam flip probabilities must be in [0, 1], got ",
                                          prep_flip, " and ", readout_flip));
      }
      return;
  }
  throw ValidationError("invalid noise kind");
}

namespace {

// Shortest decimal string that parses back to exactly the same double, so
// describe() -> parse() is lossless and renderings are byte-stable.
std::string shortest_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string NoiseSpec::describe() const {
  switch (kind) {
    case Kind::kDepolarizing: return detail::cat("depolarizing:", shortest_double(q));
    case Kind::kAmplitudeDamping: return detail::cat("amplitude_damping:", shortest_double(gamma));
    case Kind::kCoherentRotation:
      return detail::cat("coherent_rotation:", axis, ",", shortest_double(angle));
    case Kind::kSpam:
      return detail::cat("spam:", shortest_double(prep_flip), ",", shortest_double(readout_flip));
  }
  throw ValidationError("invalid noise kind");
}

namespace {

// All 2^n tensor combinations of two single-qubit Kraus operators.
std::vector<CMat> tensor_power_kraus(const CMat& k0, const CMat& k1, int n_qubits) {
  std::vector<CMat> out;
  out.reserve(std::size_t(1) << n_qubits);
  for (std::size_t mask = 0; mask < (std::size_t(1) << n_qubits); ++mask) {
    CMat acc = ((mask >> (n_qubits - 1)) & 1) ? k1 : k0;
    for (int j = 1; j < n_qubits; ++j) {
      acc = kron(acc, ((mask >> (n_qubits - 1 - j)) & 1) ? k1 : k0);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace

QuantumChannel noise_channel(const NoiseSpec& spec, int n_qubits) {
  spec.validate();
  if (n_qubits < 1 || n_qubits > 5) {
    throw ValidationError(detail::cat("noise_channel: n_qubits must be in [1, 5], got ", n_qubits));
  }
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  switch (spec.kind) {
    case NoiseSpec::Kind::kDepolarizing: {
      // rho -> (1 - q) rho + q I/d. Kraus form: Pauli mixture with weight
      // q/d^2 on each non-identity Pauli; matrix form is the rank-1 update
      // (1 - q) Id + (q/d) vec(I) vec(I)^dag.
      double dd = static_cast<double>(d) * static_cast<double>(d);
      std::vector<CMat> basis = pauli_basis(n_qubits);
      std::vector<CMat> kraus;
      kraus.reserve(basis.size());
      kraus.push_back(std::sqrt(1.0 - spec.q * (dd - 1.0) / dd) * basis[0]);
      for (std::size_t i = 1; i < basis.size(); ++i) {
        kraus.push_back(std::sqrt(spec.q / dd) * basis[i]);
      }
      CVec vi = vec(CMat::Identity(d, d));
      CMat superop = (1.0 - spec.q) * CMat::Identity(d * d, d * d) +
                     (spec.q / static_cast<double>(d)) * (vi * vi.adjoint());
      return QuantumChannel::from_parts(std::move(kraus), std::move(superop));
    }
    case NoiseSpec::Kind::kAmplitudeDamping: {
      CMat a0(2, 2), a1(2, 2);
      a0 << 1, 0, 0, std::sqrt(1.0 - spec.gamma);
      a1 << 0, std::sqrt(spec.gamma), 0, 0;
      return QuantumChannel::from_kraus(tensor_power_kraus(a0, a1, n_qubits));
    }
    case NoiseSpec::Kind::kCoherentRotation: {
      CMat r1 = mat_rotation(spec.axis, spec.angle);
      CMat r = r1;
      for (int j = 1; j < n_qubits; ++j) r = kron(r, r1);
      return unitary_channel(r);
    }
    case NoiseSpec::Kind::kSpam:
      throw ValidationError("spam noise modifies preparation and measurement, not gates; it has no gate channel");
  }
  throw ValidationError("invalid noise kind");
}

GateSet build_noisy_gateset(const GateSet& ideal, const NoiseSpec& spec) {
  ideal.validate();
  spec.validate();
  GateSet out = ideal;
  if (spec.kind != NoiseSpec::Kind::kSpam) {
    QuantumChannel err = noise_channel(spec, ideal.n_qubits);
    for (auto& [label, g] : out.gates) g = compose_channels(err, g);
    return out;
  }
  // Preparation: independent bit-flip with probability prep_flip per qubit.
  CMat f0(2, 2), f1(2, 2);
  f0 << std::sqrt(1.0 - spec.prep_flip), 0, 0, std::sqrt(1.0 - spec.prep_flip);
  f1 = std::sqrt(spec.prep_flip) * mat_x();
  QuantumChannel flip = QuantumChannel::from_kraus(tensor_power_kraus(f0, f1, ideal.n_qubits));
  out.prep = apply_channel(flip, ideal.prep);
  // Measurement: classical confusion, observed k given true l with
  // probability prod_j (readout_flip if bits differ else 1 - readout_flip).
  int n_out = ideal.meas.n_outcomes();
  int d = ideal.dim();
  if (n_out != d) {
    throw ValidationError(detail::cat("spam noise needs a computational-basis measurement with ", d,
                                      " outcomes, got ", n_out));
  }
  std::vector<CMat> effects(n_out, CMat::Zero(d, d));
  for (int k = 0; k < n_out; ++k) {
    for (int l = 0; l < n_out; ++l) {
      int differing = 0;
      for (int j = 0; j < ideal.n_qubits; ++j) {
        if (((k ^ l) >> j) & 1) ++differing;
      }
      double c = std::pow(spec.readout_flip, differing) *
                 std::pow(1.0 - spec.readout_flip, ideal.n_qubits - differing);
      effects[k] += c * ideal.meas.effects[l];
    }
  }
  out.meas = Povm(std::move(effects));
  return out;
}

RVec circuit_probabilities(const GateSet& gs, const Circuit& circuit) {
  if (circuit.n_qubits != gs.n_qubits) {
    throw ValidationError(detail::cat("circuit \"", circuit.id, "\" has ", circuit.n_qubits,
                                      " qubits but the gate set has ", gs.n_qubits));
  }
  DensityMatrix rho = gs.prep;
  for (const std::string& label : circuit.layers) {
    auto it = gs.gates.find(label);
    if (it == gs.gates.end()) {
      throw ValidationError(detail::cat("circuit \"", circuit.id, "\" uses label \"", label,
                                        "\" which is not in the gate set"));
    }
    rho = apply_channel(it->second, rho);
  }
  RVec p = gs.meas.probabilities(rho);
  double sum = p.sum();
  if (std::abs(sum - 1.0) > 1e-9) {
    throw NumericalError(detail::cat("circuit \"", circuit.id, "\": outcome probabilities sum to ",
                                     sum, " instead of 1"));
  }
  return p;
}

CountData sample_counts(const RVec& probs, long long shots, uint64_t seed,
                        const std::string& circuit_id) {
  if (shots < 1) throw ValidationError(detail::cat("sample_counts: shots must be >= 1, got ", shots));
  if (probs.size() == 0) throw ValidationError("sample_counts: empty distribution");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    if (probs(i) < -kDefaultTol) {
      throw ValidationError(detail::cat("sample_counts: negative probability at index ", i));
    }
    sum += std::max(0.0, probs(i));
  }
  if (std::abs(sum - 1.0) > 1e-6) {
    throw ValidationError(detail::cat("sample_counts: probabilities sum to ", sum, " instead of 1"));
  }
  std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    acc += std::max(0.0, probs(i)) / sum;
    cdf[static_cast<std::size_t>(i)] = acc;
  }
  cdf.back() = 1.0;

  CountData out;
  out.circuit_id = circuit_id;
  out.shots = shots;
  out.counts.assign(static_cast<std::size_t>(probs.size()), 0);
  Rng rng(seed);
  for (long long s = 0; s < shots; ++s) {
    double u = rng.uniform();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t k = std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    ++out.counts[k];
  }
  return out;
}

std::vector<CountData> run_design(const GateSet& gs, const std::vector<Circuit>& circuits,
                                  long long shots, uint64_t seed) {
  std::vector<CountData> out(circuits.size());
  parallel_for(circuits.size(), [&](std::size_t i) {
    RVec p = circuit_probabilities(gs, circuits[i]);
    out[i] = sample_counts(p, shots, derive_seed(seed, i), circuits[i].id);
  });
  return out;
}

std::vector<RVec> run_design_exact(const GateSet& gs, const std::vector<Circuit>& circuits) {
  std::vector<RVec> out(circuits.size());
  parallel_for(circuits.size(), [&](std::size_t i) {
    out[i] = circuit_probabilities(gs, circuits[i]);
  });
  return out;
}

DensityMatrix computational_prep(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 5) {
    throw ValidationError(detail::cat("computational_prep: n_qubits must be in [1, 5], got ", n_qubits));
  }
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  CMat rho = CMat::Zero(d, d);
  rho(0, 0) = 1.0;
  return DensityMatrix(std::move(rho));
}

Povm computational_povm(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 5) {
    throw ValidationError(detail::cat("computational_povm: n_qubits must be in [1, 5], got ", n_qubits));
  }
  Eigen::Index d = Eigen::Index(1) << n_qubits;
  std::vector<CMat> effects;
  effects.reserve(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    CMat e = CMat::Zero(d, d);
    e(k, k) = 1.0;
    effects.push_back(std::move(e));
  }
  return Povm(std::move(effects));
}

GateSet fiducial_gateset(int n_qubits) {
  GateSet gs;
  gs.n_qubits = n_qubits;
  gs.prep = computational_prep(n_qubits);
  gs.meas = computational_povm(n_qubits);
  for (int j = 0; j < n_qubits; ++j) {
    std::string suffix = "@" + std::to_string(j);
    gs.gates["H" + suffix] = unitary_channel(embed_unitary(mat_h(), {j}, n_qubits));
    gs.gates["S" + suffix] = unitary_channel(embed_unitary(mat_s(), {j}, n_qubits));
    gs.gates["Sdg" + suffix] = unitary_channel(embed_unitary(mat_sdg(), {j}, n_qubits));
    gs.gates["X" + suffix] = unitary_channel(embed_unitary(mat_x(), {j}, n_qubits));
  }
  gs.gates["G"] = identity_channel(1 << n_qubits);
  return gs;
}

}  // namespace qcvv
