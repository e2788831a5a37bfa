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

#include "qcvv/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qcvv/io.hpp"
#include "qcvv/metrics.hpp"

namespace qcvv {
namespace cli {
namespace {

using io::Json;

struct DesignArgs {
  std::string protocol;
  int qubits = 1;
  std::vector<int> lengths;
  int k_sequences = 0;
  int n_circuits = 0;
  uint64_t seed = 0;
  std::string out;
};

struct SimulateArgs {
  std::string design_path;
  std::string gateset_path;
  std::vector<std::string> noise;
  long long shots = 1024;
  uint64_t seed = 0;
  bool exact = false;
  std::string out;
};

struct AnalyzeArgs {
  std::string protocol;
  std::string design_path;
  std::string counts_path;
  std::string method = "linear";
  std::string target_path;
  std::string out;
};

struct MetricsArgs {
  std::string model_a;
  std::string model_b;
  std::vector<std::string> which;
  int restarts = 4;
  uint64_t seed = 0;
  std::string out;
};

// ---------------------------------------------------------------------------
// design
// ---------------------------------------------------------------------------

void cmd_design(const DesignArgs& a) {
  Json payload;
  std::size_t n_circuits = 0;
  if (a.protocol == "state_tomo") {
    const TomographyDesign d = standard_state_design(a.qubits);
    payload = io::tomo_design_payload("state_tomo", d);
    n_circuits = d.circuits.size();
  } else if (a.protocol == "process_tomo") {
    const TomographyDesign d = standard_process_design(a.qubits);
    payload = io::tomo_design_payload("process_tomo", d);
    n_circuits = d.circuits.size();
  } else if (a.protocol == "rb") {
    if (a.lengths.empty()) {
      throw ValidationError("rb designs need --lengths (e.g. --lengths 1,2,4,8)");
    }
    if (a.k_sequences < 1) {
      throw ValidationError("rb designs need --k >= 1 sequences per length");
    }
    RbDesign d;
    d.n_qubits = a.qubits;
    d.lengths = a.lengths;
    d.k_sequences = a.k_sequences;
    d.seed = a.seed;
    d.validate();
    const std::vector<Circuit> circuits = sample_rb_sequences(d);
    payload = io::rb_design_payload(d, circuits);
    n_circuits = circuits.size();
  } else {  // qv
    if (a.n_circuits < 1) {
      throw ValidationError("qv designs need --circuits >= 1");
    }
    const std::vector<QvCircuit> circuits = generate_qv_circuits(a.qubits, a.n_circuits, a.seed);
    payload = io::qv_design_payload(a.qubits, a.seed, circuits);
    n_circuits = circuits.size();
  }
  io::write_artifact(a.out, "design", payload);
  std::cout << "wrote " << a.protocol << " design (" << n_circuits << " circuits) to " << a.out
            << "\n";
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

/// Device model for the tomography protocols. The device under test is the
/// preparation (state tomography) or the probed gate "G" (process
/// tomography); fiducial rotations stay ideal, so gate noise ingredients
/// land on the tested object only. Spam ingredients always rewrite
/// preparation and measurement.
GateSet tomo_model(const io::DesignFile& df, const std::vector<NoiseSpec>& specs) {
  GateSet gs = fiducial_gateset(df.n_qubits);
  for (const NoiseSpec& spec : specs) {
    if (spec.kind == NoiseSpec::Kind::kSpam) {
      gs = build_noisy_gateset(gs, spec);
      continue;
    }
    const QuantumChannel err = noise_channel(spec, df.n_qubits);
    if (df.protocol == "state_tomo") {
      gs.prep = apply_channel(err, gs.prep);
    } else {
      gs.gates["G"] = compose_channels(err, gs.gate("G"));
    }
  }
  return gs;
}

void cmd_simulate(const SimulateArgs& a) {
  const io::DesignFile df = io::load_design(a.design_path);
  std::vector<NoiseSpec> specs;
  specs.reserve(a.noise.size());
  for (const std::string& text : a.noise) {
    specs.push_back(NoiseSpec::parse(text));
  }
  if (!a.exact && a.shots < 1) {
    throw ValidationError(detail::cat("--shots must be >= 1 when sampling, found ", a.shots));
  }

  io::CountsFile cf;
  cf.protocol = df.protocol;
  cf.n_qubits = df.n_qubits;
  cf.exact = a.exact;
  cf.shots = a.exact ? 0 : a.shots;
  cf.seed = a.exact ? 0 : a.seed;
  for (const NoiseSpec& s : specs) {
    cf.noise.push_back(s.describe());
  }

  std::size_t n_circuits = 0;
  if (df.protocol == "qv") {
    if (!a.gateset_path.empty()) {
      throw ValidationError(
          "qv circuits define their own gates; use --noise rather than --gateset");
    }
    const std::vector<QvCircuit> qcs = io::qv_circuits_from_payload(df.payload);
    n_circuits = qcs.size();
    if (a.exact) {
      cf.prob_ids.resize(n_circuits);
      cf.probs.resize(n_circuits);
    } else {
      cf.records.resize(n_circuits);
    }
    parallel_for(n_circuits, [&](std::size_t i) {
      const QvCompiled compiled = compile_qv_circuit(qcs[i], specs);
      const RVec probs = circuit_probabilities(compiled.gs, compiled.circuit);
      if (a.exact) {
        cf.prob_ids[i] = qcs[i].id;
        cf.probs[i] = probs;
      } else {
        cf.records[i] = sample_counts(probs, a.shots, derive_seed(a.seed, i), qcs[i].id);
      }
    });
  } else {
    const std::vector<Circuit> circuits = io::label_circuits_from_design(df);
    n_circuits = circuits.size();
    GateSet gs;
    if (!a.gateset_path.empty()) {
      gs = io::load_gateset(a.gateset_path);
      if (gs.n_qubits != df.n_qubits) {
        throw ValidationError(detail::cat("gate set acts on ", gs.n_qubits,
                                          " qubit(s) but the design needs ", df.n_qubits));
      }
    } else if (df.protocol == "rb") {
      gs = rb_gateset(io::rb_design_from_payload(df.payload), circuits, specs);
    } else {
      gs = tomo_model(df, specs);
    }
    if (a.exact) {
      cf.probs = run_design_exact(gs, circuits);
      for (const Circuit& c : circuits) {
        cf.prob_ids.push_back(c.id);
      }
    } else {
      cf.records = run_design(gs, circuits, a.shots, a.seed);
    }
  }

  io::save_counts(a.out, cf);
  std::cout << "wrote " << (a.exact ? "exact probabilities" : "counts") << " for " << n_circuits
            << " circuits to " << a.out << "\n";
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

void check_alignment(const std::vector<std::string>& design_ids,
                     const std::vector<std::string>& counts_ids) {
  if (design_ids.size() != counts_ids.size()) {
    throw ValidationError(detail::cat("design lists ", design_ids.size(),
                                      " circuits but the counts file has ", counts_ids.size()));
  }
  for (std::size_t i = 0; i < design_ids.size(); ++i) {
    if (design_ids[i] != counts_ids[i]) {
      throw ValidationError(detail::cat("circuit_id mismatch at position ", i, ": design \"",
                                        design_ids[i], "\" vs counts \"", counts_ids[i], "\""));
    }
  }
}

void check_standard_layout(const io::DesignFile& df, const TomographyDesign& td,
                           const std::string& what) {
  const std::vector<Circuit> file_circuits = io::label_circuits_from_design(df);
  if (file_circuits.size() != td.circuits.size()) {
    throw ValidationError(detail::cat("design file lists ", file_circuits.size(),
                                      " circuits but the standard ", what, " layout on ",
                                      df.n_qubits, " qubit(s) has ", td.circuits.size()));
  }
  for (std::size_t i = 0; i < file_circuits.size(); ++i) {
    if (file_circuits[i].id != td.circuits[i].id ||
        file_circuits[i].layers != td.circuits[i].layers) {
      throw ValidationError(detail::cat("design circuit ", i, " (\"", file_circuits[i].id,
                                        "\") does not match the standard ", what, " layout"));
    }
  }
}

/// Clips to the PSD cone and renormalizes, the projection used for
/// reporting fidelities of possibly unphysical estimates.
DensityMatrix physical_state(const CMat& rho) {
  CMat c = psd_clip(hermitize(rho));
  const double tr = c.trace().real();
  const Eigen::Index d = c.rows();
  if (tr <= 1e-12) {
    c = CMat::Identity(d, d) / static_cast<double>(d);
  } else {
    c /= tr;
  }
  return DensityMatrix(c, kPhysicalTol);
}

Json analyze_state_tomo(const io::DesignFile& df, const io::CountsFile& cf,
                        const AnalyzeArgs& a) {
  const TomographyDesign td = standard_state_design(df.n_qubits);
  check_standard_layout(df, td, "state tomography");
  const TomoData data =
      cf.exact ? tomo_data_from_probs(td, cf.probs) : tomo_data_from_counts(td, cf.records);
  const StateEstimate est =
      a.method == "mle" ? state_tomography_mle(td, data) : state_tomography_linear(td, data);
  Json res;
  res["method"] = est.method;
  res["estimate"] = io::cmat_to_json(est.rho_hat);
  res["physical"] = est.physical;
  res["min_eigenvalue"] = min_eigenvalue(est.rho_hat);
  res["log_likelihood"] = est.loglikelihood;
  res["iterations"] = est.iterations;
  if (!a.target_path.empty()) {
    const GateSet target = io::load_gateset(a.target_path);
    if (target.n_qubits != df.n_qubits) {
      throw ValidationError(detail::cat("target model acts on ", target.n_qubits,
                                        " qubit(s) but the design needs ", df.n_qubits));
    }
    res["fidelity_to_target"] = state_fidelity(physical_state(est.rho_hat), target.prep);
  }
  return res;
}

Json analyze_process_tomo(const io::DesignFile& df, const io::CountsFile& cf,
                          const AnalyzeArgs& a) {
  const TomographyDesign td = standard_process_design(df.n_qubits);
  check_standard_layout(df, td, "process tomography");
  const TomoData data =
      cf.exact ? tomo_data_from_probs(td, cf.probs) : tomo_data_from_counts(td, cf.records);
  const ProcessEstimate est =
      a.method == "mle" ? process_tomography_mle(td, data) : process_tomography_linear(td, data);
  const int d = td.dim();
  const CMat choi = hermitize(superop_to_choi(est.superop_hat));
  Json res;
  res["method"] = est.method;
  res["estimate_choi"] = io::cmat_to_json(choi);
  res["physical"] = est.physical;
  res["min_choi_eigenvalue"] = min_eigenvalue(choi);
  res["tp_deviation"] =
      max_abs(partial_trace_second(choi, d, d) - CMat::Identity(d, d));
  res["log_likelihood"] = est.loglikelihood;
  res["iterations"] = est.iterations;
  if (!a.target_path.empty()) {
    const GateSet target = io::load_gateset(a.target_path);
    if (target.n_qubits != df.n_qubits) {
      throw ValidationError(detail::cat("target model acts on ", target.n_qubits,
                                        " qubit(s) but the design needs ", df.n_qubits));
    }
    const double f = state_fidelity(physical_state(choi), target.gate("G").choi_state());
    res["process_fidelity_to_target"] = f;
    res["avg_gate_fidelity_to_target"] = avg_gate_fidelity(f, d);
  }
  return res;
}

Json analyze_rb(const io::DesignFile& df, const io::CountsFile& cf) {
  const RbDesign rd = io::rb_design_from_payload(df.payload);
  const std::vector<Circuit> circuits = io::label_circuits_from_design(df);
  const std::size_t expected =
      rd.lengths.size() * static_cast<std::size_t>(rd.k_sequences);
  if (circuits.size() != expected) {
    throw ValidationError(detail::cat("rb design should hold lengths x k = ", expected,
                                      " circuits, found ", circuits.size()));
  }
  std::vector<double> survival(circuits.size());
  for (std::size_t i = 0; i < circuits.size(); ++i) {
    if (cf.exact) {
      survival[i] = cf.probs[i](0);
    } else {
      survival[i] = static_cast<double>(cf.records[i].counts[0]) /
                    static_cast<double>(cf.records[i].shots);
    }
  }
  std::vector<SurvivalPoint> points;
  std::vector<double> means;
  for (std::size_t li = 0; li < rd.lengths.size(); ++li) {
    double mean = 0.0;
    for (int s = 0; s < rd.k_sequences; ++s) {
      mean += survival[li * static_cast<std::size_t>(rd.k_sequences) +
                       static_cast<std::size_t>(s)];
    }
    mean /= static_cast<double>(rd.k_sequences);
    points.push_back({rd.lengths[li], mean});
    means.push_back(mean);
  }
  const DecayFit fit = fit_decay(points, 1 << rd.n_qubits);
  Json res;
  res["a"] = fit.a;
  res["b"] = fit.b;
  res["p"] = fit.p;
  res["r"] = fit.r;
  res["stderr_p"] = fit.stderr_p;
  res["n_points"] = fit.n_points;
  res["lengths"] = rd.lengths;
  res["survival_means"] = means;
  return res;
}

Json analyze_qv(const io::DesignFile& df, const io::CountsFile& cf) {
  const std::vector<QvCircuit> qcs = io::qv_circuits_from_payload(df.payload);
  const std::size_t n = qcs.size();
  if (n < 2) {
    throw ValidationError(
        "quantum volume analysis needs at least 2 circuits for the confidence bound");
  }
  std::vector<double> hops(n);
  parallel_for(n, [&](std::size_t i) {
    const QvCompiled compiled = compile_qv_circuit(qcs[i], {});
    const RVec ideal = circuit_probabilities(compiled.gs, compiled.circuit);
    const std::vector<int> heavy = heavy_outputs(ideal);
    double h = 0.0;
    if (cf.exact) {
      for (const int x : heavy) {
        h += cf.probs[i](x);
      }
    } else {
      long long in_set = 0;
      for (const int x : heavy) {
        in_set += cf.records[i].counts[static_cast<std::size_t>(x)];
      }
      h = static_cast<double>(in_set) / static_cast<double>(cf.records[i].shots);
    }
    hops[i] = h;
  });
  double mean = 0.0;
  for (const double h : hops) {
    mean += h;
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const double h : hops) {
    ss += (h - mean) * (h - mean);
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double lcb = mean - kQvConfidenceZ * sd / std::sqrt(static_cast<double>(n));
  const bool pass = lcb > kQvThreshold;
  Json res;
  res["n_qubits"] = df.n_qubits;
  res["n_circuits"] = static_cast<long long>(n);
  res["mean_hop"] = mean;
  res["std_hop"] = sd;
  res["lcb"] = lcb;
  res["threshold"] = kQvThreshold;
  res["pass"] = pass;
  res["qv"] = pass ? (1LL << df.n_qubits) : 1LL;
  res["hops"] = hops;
  return res;
}

void cmd_analyze(const AnalyzeArgs& a) {
  const io::DesignFile df = io::load_design(a.design_path);
  if (df.protocol != a.protocol) {
    throw ValidationError(detail::cat("--protocol says \"", a.protocol,
                                      "\" but the design file is for \"", df.protocol, "\""));
  }
  const io::CountsFile cf = io::load_counts(a.counts_path);
  if (cf.protocol != df.protocol) {
    throw ValidationError(detail::cat("counts were simulated for protocol \"", cf.protocol,
                                      "\" but the design is for \"", df.protocol, "\""));
  }
  if (cf.n_qubits != df.n_qubits) {
    throw ValidationError(detail::cat("counts act on ", cf.n_qubits,
                                      " qubit(s) but the design needs ", df.n_qubits));
  }

  std::vector<std::string> design_ids;
  if (df.protocol == "qv") {
    for (const QvCircuit& qc : io::qv_circuits_from_payload(df.payload)) {
      design_ids.push_back(qc.id);
    }
  } else {
    for (const Circuit& c : io::label_circuits_from_design(df)) {
      design_ids.push_back(c.id);
    }
  }
  check_alignment(design_ids, cf.circuit_ids());

  Json results;
  if (a.protocol == "state_tomo") {
    results = analyze_state_tomo(df, cf, a);
  } else if (a.protocol == "process_tomo") {
    results = analyze_process_tomo(df, cf, a);
  } else if (a.protocol == "rb") {
    results = analyze_rb(df, cf);
  } else {
    results = analyze_qv(df, cf);
  }

  Json invocation;
  invocation["command"] = "analyze";
  invocation["protocol"] = a.protocol;
  invocation["design"] = a.design_path;
  invocation["counts"] = a.counts_path;
  invocation["method"] = a.method;
  invocation["target"] = a.target_path;
  invocation["out"] = a.out;

  Json payload;
  payload["protocol"] = a.protocol;
  payload["invocation"] = std::move(invocation);
  payload["results"] = std::move(results);
  io::save_report(a.out, payload);
  std::cout << "wrote " << a.protocol << " report to " << a.out << "\n";
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

void cmd_metrics(const MetricsArgs& a) {
  const GateSet ga = io::load_gateset(a.model_a);
  const GateSet gb = io::load_gateset(a.model_b);
  if (ga.n_qubits != gb.n_qubits) {
    throw ValidationError(detail::cat("models act on different register sizes: ", ga.n_qubits,
                                      " vs ", gb.n_qubits, " qubit(s)"));
  }

  static const std::vector<std::string> kKnown = {
      "state_fidelity", "trace_distance", "process_fidelity", "avg_gate_fidelity",
      "diamond_bounds"};
  std::set<std::string> requested;
  for (const std::string& w : a.which) {
    if (std::find(kKnown.begin(), kKnown.end(), w) == kKnown.end()) {
      throw ValidationError(
          detail::cat("unknown metric \"", w,
                      "\"; choose from state_fidelity, trace_distance, process_fidelity, "
                      "avg_gate_fidelity, diamond_bounds"));
    }
    requested.insert(w);
  }
  if (requested.empty()) {
    throw ValidationError("no metrics requested; pass --which with at least one metric");
  }

  const bool needs_gates = requested.count("process_fidelity") > 0 ||
                           requested.count("avg_gate_fidelity") > 0 ||
                           requested.count("diamond_bounds") > 0;
  std::vector<std::pair<std::string, std::pair<const QuantumChannel*, const QuantumChannel*>>>
      pairs;
  if (needs_gates) {
    if (ga.gates.size() != gb.gates.size()) {
      throw ValidationError(detail::cat("cannot pair gates for channel metrics: model a has ",
                                        ga.gates.size(), " gates, model b has ",
                                        gb.gates.size()));
    }
    auto ita = ga.gates.begin();
    auto itb = gb.gates.begin();
    for (; ita != ga.gates.end(); ++ita, ++itb) {
      const std::string key =
          ita->first == itb->first ? ita->first : ita->first + "|" + itb->first;
      pairs.emplace_back(key, std::make_pair(&ita->second, &itb->second));
    }
  }

  const int d = ga.dim();
  Json res;
  if (requested.count("state_fidelity") > 0) {
    res["state_fidelity"] = state_fidelity(ga.prep, gb.prep);
  }
  if (requested.count("trace_distance") > 0) {
    res["trace_distance"] = trace_distance(ga.prep, gb.prep);
  }
  if (requested.count("process_fidelity") > 0 || requested.count("avg_gate_fidelity") > 0) {
    Json fp = Json::object();
    Json fa = Json::object();
    for (const auto& [key, gates] : pairs) {
      const double f = process_fidelity(*gates.first, *gates.second);
      fp[key] = f;
      fa[key] = avg_gate_fidelity(f, d);
    }
    if (requested.count("process_fidelity") > 0) {
      res["process_fidelity"] = std::move(fp);
    }
    if (requested.count("avg_gate_fidelity") > 0) {
      res["avg_gate_fidelity"] = std::move(fa);
    }
  }
  if (requested.count("diamond_bounds") > 0) {
    Json db = Json::object();
    std::size_t index = 0;
    for (const auto& [key, gates] : pairs) {
      const DiamondBounds bounds =
          diamond_bounds(*gates.first, *gates.second, a.restarts, derive_seed(a.seed, index));
      ++index;
      Json entry;
      entry["lower"] = bounds.lower;
      entry["upper"] = bounds.upper;
      db[key] = std::move(entry);
    }
    res["diamond_bounds"] = std::move(db);
  }

  Json invocation;
  invocation["command"] = "metrics";
  invocation["model_a"] = a.model_a;
  invocation["model_b"] = a.model_b;
  invocation["which"] = a.which;
  invocation["restarts"] = a.restarts;
  invocation["seed"] = a.seed;
  invocation["out"] = a.out;

  Json payload;
  payload["protocol"] = "metrics";
  payload["invocation"] = std::move(invocation);
  payload["results"] = std::move(res);
  io::save_report(a.out, payload);
  std::cout << "wrote metrics report to " << a.out << "\n";
}

}  // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"Quantum characterization, verification and validation toolkit", "qcvv"};
  app.require_subcommand(1);

  DesignArgs dargs;
  SimulateArgs sargs;
  AnalyzeArgs aargs;
  MetricsArgs margs;

  const std::vector<std::string> protocols = {"state_tomo", "process_tomo", "rb", "qv"};

  CLI::App* design_cmd =
      app.add_subcommand("design", "Generate a protocol design file enumerating every circuit");
  design_cmd->add_option("--protocol", dargs.protocol, "Protocol to design for")
      ->required()
      ->check(CLI::IsMember(protocols));
  design_cmd->add_option("--qubits", dargs.qubits, "Register width")->required();
  design_cmd->add_option("--lengths", dargs.lengths, "Comma-separated rb sequence lengths")
      ->delimiter(',');
  design_cmd->add_option("--k", dargs.k_sequences, "Random sequences per rb length");
  design_cmd->add_option("--circuits", dargs.n_circuits, "Number of qv circuits");
  design_cmd->add_option("--seed", dargs.seed, "Sampling seed for randomized designs");
  design_cmd->add_option("--out", dargs.out, "Output design path")->required();

  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Run a design on the simulator, writing counts or exact probabilities");
  sim_cmd->add_option("design", sargs.design_path, "Design artifact path")->required();
  CLI::Option* gs_opt = sim_cmd->add_option(
      "--gateset", sargs.gateset_path,
      "Device model artifact; default builds the protocol's ideal model");
  CLI::Option* noise_opt = sim_cmd->add_option(
      "--noise", sargs.noise,
      "Noise ingredient kind:param[,param] (depolarizing, amplitude_damping, "
      "coherent_rotation, spam); repeatable, applied in order");
  gs_opt->excludes(noise_opt);
  sim_cmd->add_option("--shots", sargs.shots, "Shots per circuit (ignored with --exact)");
  sim_cmd->add_option("--seed", sargs.seed, "Sampling seed (ignored with --exact)");
  sim_cmd->add_flag("--exact", sargs.exact,
                    "Record exact outcome probabilities instead of sampled counts");
  sim_cmd->add_option("--out", sargs.out, "Output counts path")->required();

  CLI::App* an_cmd =
      app.add_subcommand("analyze", "Estimate protocol results from a design and its counts");
  an_cmd->add_option("--protocol", aargs.protocol, "Protocol the artifacts belong to")
      ->required()
      ->check(CLI::IsMember(protocols));
  an_cmd->add_option("design", aargs.design_path, "Design artifact path")->required();
  an_cmd->add_option("counts", aargs.counts_path, "Counts artifact path")->required();
  an_cmd->add_option("--method", aargs.method, "Tomography estimator")
      ->check(CLI::IsMember({"linear", "mle"}));
  an_cmd->add_option("--target", aargs.target_path,
                     "Reference gate set for fidelity-to-target fields");
  an_cmd->add_option("--out", aargs.out, "Output report path")->required();

  CLI::App* me_cmd = app.add_subcommand("metrics", "Compare two device model files");
  me_cmd->add_option("model_a", margs.model_a, "First gate set artifact")->required();
  me_cmd->add_option("model_b", margs.model_b, "Second gate set artifact")->required();
  me_cmd->add_option("--which", margs.which,
                     "Comma-separated metrics: state_fidelity, trace_distance, "
                     "process_fidelity, avg_gate_fidelity, diamond_bounds")
      ->required()
      ->delimiter(',');
  me_cmd->add_option("--restarts", margs.restarts,
                     "Random restarts of the diamond-distance lower-bound search");
  me_cmd->add_option("--seed", margs.seed, "Seed for the diamond-distance search");
  me_cmd->add_option("--out", margs.out, "Output report path")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (design_cmd->parsed()) {
      cmd_design(dargs);
    } else if (sim_cmd->parsed()) {
      cmd_simulate(sargs);
    } else if (an_cmd->parsed()) {
      cmd_analyze(aargs);
    } else {
      cmd_metrics(margs);
    }
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? static_cast<std::size_t>(argc - 1) : 0);
  for (int i = 1; i < argc; ++i) {
    args.emplace_back(argv[i]);
  }
  return run(std::move(args));
}

}  // namespace cli
}  // namespace qcvv
