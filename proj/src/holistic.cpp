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

#include "qcvv/holistic.hpp"

#include <algorithm>
#include <numeric>

#include "qcvv/gates.hpp"

namespace qcvv {

std::vector<QvCircuit> generate_qv_circuits(int n_qubits, int n_circuits, uint64_t seed) {
  if (n_qubits < 2 || n_qubits > 5) {
    throw ValidationError(detail::cat("generate_qv_circuits: n_qubits must be in [2, 5], got ", n_qubits));
  }
  if (n_circuits < 1) {
    throw ValidationError(detail::cat("generate_qv_circuits: n_circuits must be >= 1, got ", n_circuits));
  }
  std::vector<QvCircuit> circuits(static_cast<std::size_t>(n_circuits));
  for (int c = 0; c < n_circuits; ++c) {
    Rng rng(derive_seed(seed, static_cast<uint64_t>(c)));
    QvCircuit qc;
    qc.id = detail::cat("qv_n", n_qubits, "_c", c);
    qc.n_qubits = n_qubits;
    for (int layer = 0; layer < n_qubits; ++layer) {
      QvLayer ql;
      ql.permutation.resize(static_cast<std::size_t>(n_qubits));
      std::iota(ql.permutation.begin(), ql.permutation.end(), 0);
      // Fisher-Yates with the portable uniform_int draw.
      for (int i = n_qubits - 1; i > 0; --i) {
        int j = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(i) + 1));
        std::swap(ql.permutation[static_cast<std::size_t>(i)], ql.permutation[static_cast<std::size_t>(j)]);
      }
      for (int b = 0; b + 1 < n_qubits; b += 2) {
        QvBlock block;
        block.qubit_a = ql.permutation[static_cast<std::size_t>(b)];
        block.qubit_b = ql.permutation[static_cast<std::size_t>(b) + 1];
        block.unitary = haar_unitary(4, rng);
        ql.blocks.push_back(std::move(block));
      }
      qc.layers.push_back(std::move(ql));
    }
    circuits[static_cast<std::size_t>(c)] = std::move(qc);
  }
  return circuits;
}

std::vector<int> heavy_outputs(const RVec& ideal_probs) {
  Eigen::Index d = ideal_probs.size();
  if (d < 2 || (d & (d - 1)) != 0) {
    throw ValidationError(detail::cat("heavy_outputs: distribution size ", d, " is not a power of 2"));
  }
  std::vector<double> sorted(ideal_probs.data(), ideal_probs.data() + d);
  std::sort(sorted.begin(), sorted.end());
  double median = 0.5 * (sorted[static_cast<std::size_t>(d / 2 - 1)] + sorted[static_cast<std::size_t>(d / 2)]);
  std::vector<int> heavy;
  for (Eigen::Index x = 0; x < d; ++x) {
    if (ideal_probs(x) > median) heavy.push_back(static_cast<int>(x));
  }
  return heavy;
}

QvCompiled compile_qv_circuit(const QvCircuit& qc, const std::vector<NoiseSpec>& noise) {
  if (qc.n_qubits < 2 || qc.n_qubits > 5) {
    throw ValidationError(detail::cat("compile_qv_circuit: n_qubits must be in [2, 5], got ", qc.n_qubits));
  }
  QvCompiled out;
  out.gs.n_qubits = qc.n_qubits;
  out.gs.prep = computational_prep(qc.n_qubits);
  out.gs.meas = computational_povm(qc.n_qubits);
  out.circuit.id = qc.id;
  out.circuit.n_qubits = qc.n_qubits;
  for (std::size_t l = 0; l < qc.layers.size(); ++l) {
    const QvLayer& layer = qc.layers[l];
    for (std::size_t b = 0; b < layer.blocks.size(); ++b) {
      const QvBlock& block = layer.blocks[b];
      std::string label = detail::cat("L", l, "B", b);
      CMat u = embed_unitary(block.unitary, {block.qubit_a, block.qubit_b}, qc.n_qubits);
      out.gs.gates[label] = unitary_channel(u);
      out.circuit.layers.push_back(std::move(label));
    }
  }
  for (const NoiseSpec& spec : noise) out.gs = build_noisy_gateset(out.gs, spec);
  return out;
}

QvResult run_quantum_volume(int n_max, int n_circuits, const std::vector<NoiseSpec>& noise,
                            long long shots, uint64_t seed) {
  if (n_max < 2 || n_max > 5) {
    throw ValidationError(detail::cat("run_quantum_volume: n_max must be in [2, 5], got ", n_max));
  }
  if (n_circuits < 2) {
    throw ValidationError(detail::cat("run_quantum_volume: need >= 2 circuits for the confidence bound, got ",
                                      n_circuits));
  }
  if (shots < 0) throw ValidationError(detail::cat("run_quantum_volume: shots must be >= 0, got ", shots));
  QvResult result;
  for (int n = 2; n <= n_max; ++n) {
    std::vector<QvCircuit> circuits =
        generate_qv_circuits(n, n_circuits, derive_seed(seed, 2 * static_cast<uint64_t>(n)));
    uint64_t sample_seed = derive_seed(seed, 2 * static_cast<uint64_t>(n) + 1);
    std::vector<double> hops(circuits.size(), 0.0);
    parallel_for(circuits.size(), [&](std::size_t c) {
      QvCompiled ideal = compile_qv_circuit(circuits[c], {});
      RVec p_ideal = circuit_probabilities(ideal.gs, ideal.circuit);
      std::vector<int> heavy = heavy_outputs(p_ideal);
      RVec p_model = p_ideal;
      if (!noise.empty()) {
        QvCompiled noisy = compile_qv_circuit(circuits[c], noise);
        p_model = circuit_probabilities(noisy.gs, noisy.circuit);
      }
      if (shots == 0) {
        double mass = 0.0;
        for (int x : heavy) mass += p_model(x);
        hops[c] = mass;
      } else {
        CountData counts = sample_counts(p_model, shots, derive_seed(sample_seed, c), circuits[c].id);
        long long hits = 0;
        for (int x : heavy) hits += counts.counts[static_cast<std::size_t>(x)];
        hops[c] = static_cast<double>(hits) / static_cast<double>(shots);
      }
    });
    QvWidthResult wr;
    wr.n_qubits = n;
    wr.n_circuits = n_circuits;
    double mean = 0.0;
    for (double h : hops) mean += h;
    mean /= static_cast<double>(hops.size());
    double var = 0.0;
    for (double h : hops) var += (h - mean) * (h - mean);
    var /= static_cast<double>(hops.size() - 1);
    wr.mean_hop = mean;
    wr.std_hop = std::sqrt(std::max(0.0, var));
    wr.lcb = mean - kQvConfidenceZ * wr.std_hop / std::sqrt(static_cast<double>(hops.size()));
    wr.pass = wr.lcb > kQvThreshold;
    if (wr.pass) result.quantum_volume = 1 << n;
    result.per_width.push_back(wr);
  }
  return result;
}

double linear_xeb(const std::vector<long long>& counts, const RVec& ideal_probs) {
  if (static_cast<Eigen::Index>(counts.size()) != ideal_probs.size()) {
    throw ValidationError(detail::cat("linear_xeb: ", counts.size(), " counts for ",
                                      ideal_probs.size(), " outcomes"));
  }
  long long total = 0;
  double acc = 0.0;
  for (std::size_t x = 0; x < counts.size(); ++x) {
    if (counts[x] < 0) throw ValidationError(detail::cat("linear_xeb: negative count at outcome ", x));
    total += counts[x];
    acc += static_cast<double>(counts[x]) * ideal_probs(static_cast<Eigen::Index>(x));
  }
  if (total < 1) throw ValidationError("linear_xeb: no samples");
  return static_cast<double>(ideal_probs.size()) * acc / static_cast<double>(total) - 1.0;
}

double linear_xeb_exact(const RVec& probs, const RVec& ideal_probs) {
  if (probs.size() != ideal_probs.size()) {
    throw ValidationError(detail::cat("linear_xeb_exact: ", probs.size(), " probabilities for ",
                                      ideal_probs.size(), " outcomes"));
  }
  return static_cast<double>(ideal_probs.size()) * probs.dot(ideal_probs) - 1.0;
}

}  // namespace qcvv
