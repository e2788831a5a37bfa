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

#include "qcvv/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

namespace qcvv {
namespace io {

namespace {

const std::set<std::string>& known_protocols() {
  static const std::set<std::string> kProtocols = {"state_tomo", "process_tomo", "rb", "qv"};
  return kProtocols;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError(detail::cat("cannot open \"", path, "\" for reading"));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (!in.good() && !in.eof()) {
    throw ValidationError(detail::cat("read failure on \"", path, "\""));
  }
  return buf.str();
}

}  // namespace

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json cmat_to_json(const CMat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Json rvec_to_json(const RVec& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back(v(i));
  }
  return arr;
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError(detail::cat(field, ": complex values must be [re, im] number pairs"));
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

CMat cmat_from_json(const Json& j, const std::string& field, Eigen::Index rows,
                    Eigen::Index cols) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError(detail::cat(field, ": expected a non-empty array of matrix rows"));
  }
  const Eigen::Index n_rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) {
    throw ValidationError(detail::cat(field, ": matrix rows must be non-empty arrays"));
  }
  const Eigen::Index n_cols = static_cast<Eigen::Index>(j[0].size());
  if (rows >= 0 && n_rows != rows) {
    throw ValidationError(
        detail::cat(field, ": expected ", rows, " rows, found ", n_rows));
  }
  if (cols >= 0 && n_cols != cols) {
    throw ValidationError(
        detail::cat(field, ": expected ", cols, " columns, found ", n_cols));
  }
  CMat m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols) {
      throw ValidationError(detail::cat(field, ": row ", r, " is not an array of length ",
                                        n_cols));
    }
    for (Eigen::Index c = 0; c < n_cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  detail::cat(field, "[", r, "][", c, "]"));
    }
  }
  return m;
}

RVec rvec_from_json(const Json& j, const std::string& field, Eigen::Index size) {
  if (!j.is_array()) {
    throw ValidationError(detail::cat(field, ": expected an array of numbers"));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(j.size());
  if (size >= 0 && n != size) {
    throw ValidationError(detail::cat(field, ": expected ", size, " entries, found ", n));
  }
  RVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Json& e = j[static_cast<std::size_t>(i)];
    if (!e.is_number()) {
      throw ValidationError(detail::cat(field, "[", i, "]: expected a number"));
    }
    v(i) = e.get<double>();
  }
  return v;
}

const Json& require_field(const Json& obj, const std::string& key, const std::string& context) {
  if (!obj.is_object()) {
    throw ValidationError(detail::cat(context, ": expected an object"));
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(detail::cat(context, ": missing field \"", key, "\""));
  }
  return *it;
}

std::string get_string(const Json& obj, const std::string& key, const std::string& context) {
  const Json& v = require_field(obj, key, context);
  if (!v.is_string()) {
    throw ValidationError(detail::cat(context, ": field \"", key, "\" must be a string"));
  }
  return v.get<std::string>();
}

long long get_int(const Json& obj, const std::string& key, const std::string& context) {
  const Json& v = require_field(obj, key, context);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw ValidationError(detail::cat(context, ": field \"", key, "\" must be an integer"));
  }
  return v.get<long long>();
}

uint64_t get_u64(const Json& obj, const std::string& key, const std::string& context) {
  const Json& v = require_field(obj, key, context);
  const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
  if (!ok) {
    throw ValidationError(
        detail::cat(context, ": field \"", key, "\" must be a non-negative integer"));
  }
  return v.get<uint64_t>();
}

double get_double(const Json& obj, const std::string& key, const std::string& context) {
  const Json& v = require_field(obj, key, context);
  if (!v.is_number()) {
    throw ValidationError(detail::cat(context, ": field \"", key, "\" must be a number"));
  }
  return v.get<double>();
}

bool get_bool(const Json& obj, const std::string& key, const std::string& context) {
  const Json& v = require_field(obj, key, context);
  if (!v.is_boolean()) {
    throw ValidationError(detail::cat(context, ": field \"", key, "\" must be a boolean"));
  }
  return v.get<bool>();
}

std::string canonical_dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json make_artifact(const std::string& kind, Json payload) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = kind;
  doc["payload"] = std::move(payload);
  return doc;
}

Json payload_from_text(const std::string& text, const std::string& expected_kind) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(detail::cat("malformed JSON artifact: ", e.what()));
  }
  const std::string context = "artifact";
  const std::string version = get_string(doc, "format_version", context);
  if (version != kFormatVersion) {
    throw ValidationError(detail::cat("unsupported format_version \"", version,
                                      "\" (this tool reads version \"", kFormatVersion, "\")"));
  }
  const std::string kind = get_string(doc, "kind", context);
  if (kind != expected_kind) {
    throw ValidationError(
        detail::cat("expected a \"", expected_kind, "\" artifact, found kind \"", kind, "\""));
  }
  return require_field(doc, "payload", context);
}

void write_text_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw ValidationError(detail::cat("cannot open \"", tmp.string(), "\" for writing"));
    }
    out << text;
    out.flush();
    if (!out.good()) {
      throw ValidationError(detail::cat("write failure on \"", tmp.string(), "\""));
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code cleanup;
    fs::remove(tmp, cleanup);
    throw ValidationError(
        detail::cat("cannot move temporary file onto \"", path, "\": ", ec.message()));
  }
}

void write_artifact(const std::string& path, const std::string& kind, const Json& payload) {
  write_text_atomic(path, canonical_dump(make_artifact(kind, payload)));
}

Json read_artifact(const std::string& path, const std::string& expected_kind) {
  try {
    return payload_from_text(read_file(path), expected_kind);
  } catch (const ValidationError& e) {
    throw ValidationError(detail::cat(path, ": ", e.what()));
  }
}

// ---------------------------------------------------------------------------
// Gate sets
// ---------------------------------------------------------------------------

Json gateset_to_payload(const GateSet& gs) {
  Json gates = Json::object();
  for (const auto& [label, channel] : gs.gates) {
    Json kraus = Json::array();
    for (const CMat& k : channel.kraus) {
      kraus.push_back(cmat_to_json(k));
    }
    gates[label] = Json{{"kraus", std::move(kraus)}};
  }
  Json meas = Json::array();
  for (const CMat& effect : gs.meas.effects) {
    meas.push_back(cmat_to_json(effect));
  }
  Json payload;
  payload["n_qubits"] = gs.n_qubits;
  payload["prep"] = cmat_to_json(gs.prep.mat);
  payload["gates"] = std::move(gates);
  payload["meas"] = std::move(meas);
  return payload;
}

GateSet gateset_from_payload(const Json& payload) {
  const std::string context = "gateset";
  const long long n_qubits = get_int(payload, "n_qubits", context);
  if (n_qubits < 1 || n_qubits > 5) {
    throw ValidationError(detail::cat("gateset: n_qubits must lie in [1, 5], found ", n_qubits));
  }
  const Eigen::Index d = Eigen::Index(1) << n_qubits;

  GateSet gs;
  gs.n_qubits = static_cast<int>(n_qubits);
  try {
    gs.prep = DensityMatrix(cmat_from_json(require_field(payload, "prep", context),
                                           "gateset.prep", d, d));
  } catch (const ValidationError& e) {
    throw ValidationError(detail::cat("gateset preparation: ", e.what()));
  }

  const Json& gates = require_field(payload, "gates", context);
  if (!gates.is_object()) {
    throw ValidationError("gateset: field \"gates\" must be an object keyed by label");
  }
  for (auto it = gates.begin(); it != gates.end(); ++it) {
    const std::string& label = it.key();
    const Json& kraus_json = require_field(it.value(), "kraus", detail::cat("gate \"", label, "\""));
    if (!kraus_json.is_array() || kraus_json.empty()) {
      throw ValidationError(
          detail::cat("gate \"", label, "\": field \"kraus\" must be a non-empty array"));
    }
    std::vector<CMat> kraus;
    kraus.reserve(kraus_json.size());
    for (std::size_t i = 0; i < kraus_json.size(); ++i) {
      kraus.push_back(cmat_from_json(kraus_json[i],
                                     detail::cat("gate \"", label, "\".kraus[", i, "]"), d, d));
    }
    try {
      gs.gates[label] = QuantumChannel::from_kraus(std::move(kraus));
    } catch (const ValidationError& e) {
      throw ValidationError(detail::cat("gate \"", label, "\": ", e.what()));
    }
  }

  const Json& meas = require_field(payload, "meas", context);
  if (!meas.is_array() || meas.empty()) {
    throw ValidationError("gateset: field \"meas\" must be a non-empty array of effects");
  }
  std::vector<CMat> effects;
  effects.reserve(meas.size());
  for (std::size_t i = 0; i < meas.size(); ++i) {
    effects.push_back(cmat_from_json(meas[i], detail::cat("gateset.meas[", i, "]"), d, d));
  }
  try {
    gs.meas = Povm(std::move(effects));
  } catch (const ValidationError& e) {
    throw ValidationError(detail::cat("gateset measurement: ", e.what()));
  }

  gs.validate();
  return gs;
}

void save_gateset(const std::string& path, const GateSet& gs) {
  write_artifact(path, "gateset", gateset_to_payload(gs));
}

GateSet load_gateset(const std::string& path) {
  const Json payload = read_artifact(path, "gateset");
  try {
    return gateset_from_payload(payload);
  } catch (const ValidationError& e) {
    throw ValidationError(detail::cat(path, ": ", e.what()));
  }
}

// ---------------------------------------------------------------------------
// Designs
// ---------------------------------------------------------------------------

namespace {

Json label_circuit_to_json(const Circuit& c) {
  Json layers = Json::array();
  for (const std::string& label : c.layers) {
    layers.push_back(label);
  }
  Json rec;
  rec["circuit_id"] = c.id;
  rec["layers"] = std::move(layers);
  return rec;
}

Circuit label_circuit_from_json(const Json& rec, int n_qubits, std::size_t index) {
  const std::string context = detail::cat("circuits[", index, "]");
  Circuit c;
  c.id = get_string(rec, "circuit_id", context);
  c.n_qubits = n_qubits;
  const Json& layers = require_field(rec, "layers", context);
  if (!layers.is_array()) {
    throw ValidationError(detail::cat(context, ": field \"layers\" must be an array"));
  }
  for (const Json& label : layers) {
    if (!label.is_string()) {
      throw ValidationError(
          detail::cat(context, " (\"", c.id, "\"): layers must be gate-label strings"));
    }
    c.layers.push_back(label.get<std::string>());
  }
  return c;
}

void check_unique_ids(const std::vector<std::string>& ids) {
  std::set<std::string> seen;
  for (const std::string& id : ids) {
    if (!seen.insert(id).second) {
      throw ValidationError(detail::cat("duplicate circuit_id \"", id, "\""));
    }
  }
}

}  // namespace

Json tomo_design_payload(const std::string& protocol, const TomographyDesign& design) {
  Json circuits = Json::array();
  for (const Circuit& c : design.circuits) {
    circuits.push_back(label_circuit_to_json(c));
  }
  Json payload;
  payload["protocol"] = protocol;
  payload["n_qubits"] = design.n_qubits;
  payload["circuits"] = std::move(circuits);
  return payload;
}

Json rb_design_payload(const RbDesign& design, const std::vector<Circuit>& circuits) {
  Json circuit_arr = Json::array();
  for (const Circuit& c : circuits) {
    circuit_arr.push_back(label_circuit_to_json(c));
  }
  Json payload;
  payload["protocol"] = "rb";
  payload["n_qubits"] = design.n_qubits;
  payload["lengths"] = design.lengths;
  payload["k_sequences"] = design.k_sequences;
  payload["seed"] = design.seed;
  payload["circuits"] = std::move(circuit_arr);
  return payload;
}

Json qv_design_payload(int n_qubits, uint64_t seed, const std::vector<QvCircuit>& circuits) {
  Json circuit_arr = Json::array();
  for (const QvCircuit& qc : circuits) {
    Json layers = Json::array();
    for (const QvLayer& layer : qc.layers) {
      Json blocks = Json::array();
      for (const QvBlock& block : layer.blocks) {
        Json b;
        b["qubits"] = Json::array({block.qubit_a, block.qubit_b});
        b["unitary"] = cmat_to_json(block.unitary);
        blocks.push_back(std::move(b));
      }
      Json l;
      l["permutation"] = layer.permutation;
      l["blocks"] = std::move(blocks);
      layers.push_back(std::move(l));
    }
    Json rec;
    rec["circuit_id"] = qc.id;
    rec["layers"] = std::move(layers);
    circuit_arr.push_back(std::move(rec));
  }
  Json payload;
  payload["protocol"] = "qv";
  payload["n_qubits"] = n_qubits;
  payload["n_circuits"] = static_cast<long long>(circuits.size());
  payload["seed"] = seed;
  payload["circuits"] = std::move(circuit_arr);
  return payload;
}

DesignFile load_design(const std::string& path) {
  DesignFile d;
  d.payload = read_artifact(path, "design");
  try {
    const std::string context = "design";
    d.protocol = get_string(d.payload, "protocol", context);
    if (known_protocols().count(d.protocol) == 0) {
      throw ValidationError(
          detail::cat("unknown protocol \"", d.protocol,
                      "\" (expected state_tomo, process_tomo, rb or qv)"));
    }
    const long long n = get_int(d.payload, "n_qubits", context);
    if (n < 1 || n > 5) {
      throw ValidationError(detail::cat("design: n_qubits must lie in [1, 5], found ", n));
    }
    d.n_qubits = static_cast<int>(n);
    const Json& circuits = require_field(d.payload, "circuits", context);
    if (!circuits.is_array()) {
      throw ValidationError("design: field \"circuits\" must be an array");
    }
  } catch (const ValidationError& e) {
    throw ValidationError(detail::cat(path, ": ", e.what()));
  }
  return d;
}

std::vector<Circuit> label_circuits_from_design(const DesignFile& design) {
  if (design.protocol == "qv") {
    throw ValidationError(
        "qv designs carry block-structured circuits; use qv_circuits_from_payload");
  }
  const Json& arr = design.payload.at("circuits");
  std::vector<Circuit> circuits;
  circuits.reserve(arr.size());
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    circuits.push_back(label_circuit_from_json(arr[i], design.n_qubits, i));
    ids.push_back(circuits.back().id);
  }
  check_unique_ids(ids);
  return circuits;
}

RbDesign rb_design_from_payload(const Json& payload) {
  const std::string context = "rb design";
  RbDesign d;
  d.n_qubits = static_cast<int>(get_int(payload, "n_qubits", context));
  const Json& lengths = require_field(payload, "lengths", context);
  if (!lengths.is_array() || lengths.empty()) {
    throw ValidationError("rb design: field \"lengths\" must be a non-empty integer array");
  }
  for (const Json& m : lengths) {
    if (!m.is_number_integer() && !m.is_number_unsigned()) {
      throw ValidationError("rb design: sequence lengths must be integers");
    }
    d.lengths.push_back(m.get<int>());
  }
  d.k_sequences = static_cast<int>(get_int(payload, "k_sequences", context));
  d.seed = get_u64(payload, "seed", context);
  d.validate();
  return d;
}

std::vector<QvCircuit> qv_circuits_from_payload(const Json& payload) {
  const std::string context = "qv design";
  const int n_qubits = static_cast<int>(get_int(payload, "n_qubits", context));
  if (n_qubits < 2 || n_qubits > 5) {
    throw ValidationError(
        detail::cat("qv design: n_qubits must lie in [2, 5], found ", n_qubits));
  }
  const Json& arr = require_field(payload, "circuits", context);
  if (!arr.is_array()) {
    throw ValidationError("qv design: field \"circuits\" must be an array");
  }
  std::vector<QvCircuit> circuits;
  circuits.reserve(arr.size());
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const Json& rec = arr[i];
    const std::string rec_context = detail::cat("qv circuits[", i, "]");
    QvCircuit qc;
    qc.id = get_string(rec, "circuit_id", rec_context);
    qc.n_qubits = n_qubits;
    const Json& layers = require_field(rec, "layers", rec_context);
    if (!layers.is_array()) {
      throw ValidationError(detail::cat(rec_context, ": field \"layers\" must be an array"));
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const Json& lrec = layers[l];
      const std::string l_context = detail::cat(rec_context, ".layers[", l, "]");
      QvLayer layer;
      const Json& perm = require_field(lrec, "permutation", l_context);
      if (!perm.is_array() || static_cast<int>(perm.size()) != n_qubits) {
        throw ValidationError(
            detail::cat(l_context, ": permutation must list all ", n_qubits, " qubits"));
      }
      std::set<int> perm_seen;
      for (const Json& q : perm) {
        if (!q.is_number_integer() && !q.is_number_unsigned()) {
          throw ValidationError(detail::cat(l_context, ": permutation entries must be integers"));
        }
        const int qi = q.get<int>();
        if (qi < 0 || qi >= n_qubits || !perm_seen.insert(qi).second) {
          throw ValidationError(
              detail::cat(l_context, ": permutation is not a permutation of 0..",
                          n_qubits - 1));
        }
        layer.permutation.push_back(qi);
      }
      const Json& blocks = require_field(lrec, "blocks", l_context);
      if (!blocks.is_array()) {
        throw ValidationError(detail::cat(l_context, ": field \"blocks\" must be an array"));
      }
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const Json& brec = blocks[b];
        const std::string b_context = detail::cat(l_context, ".blocks[", b, "]");
        const Json& qubits = require_field(brec, "qubits", b_context);
        if (!qubits.is_array() || qubits.size() != 2 || !qubits[0].is_number_integer() ||
            !qubits[1].is_number_integer()) {
          throw ValidationError(detail::cat(b_context, ": qubits must be a pair of indices"));
        }
        QvBlock block;
        block.qubit_a = qubits[0].get<int>();
        block.qubit_b = qubits[1].get<int>();
        if (block.qubit_a < 0 || block.qubit_a >= n_qubits || block.qubit_b < 0 ||
            block.qubit_b >= n_qubits || block.qubit_a == block.qubit_b) {
          throw ValidationError(detail::cat(b_context, ": qubit indices out of range"));
        }
        block.unitary = cmat_from_json(require_field(brec, "unitary", b_context),
                                       detail::cat(b_context, ".unitary"), 4, 4);
        layer.blocks.push_back(std::move(block));
      }
      qc.layers.push_back(std::move(layer));
    }
    ids.push_back(qc.id);
    circuits.push_back(std::move(qc));
  }
  check_unique_ids(ids);
  return circuits;
}

// ---------------------------------------------------------------------------
// Counts
// ---------------------------------------------------------------------------

std::vector<std::string> CountsFile::circuit_ids() const {
  if (exact) {
    return prob_ids;
  }
  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const CountData& r : records) {
    ids.push_back(r.circuit_id);
  }
  return ids;
}

Json counts_to_payload(const CountsFile& f) {
  Json results = Json::array();
  if (f.exact) {
    if (f.prob_ids.size() != f.probs.size()) {
      throw ValidationError("counts file: id list and probability list sizes differ");
    }
    for (std::size_t i = 0; i < f.probs.size(); ++i) {
      Json rec;
      rec["circuit_id"] = f.prob_ids[i];
      rec["probs"] = rvec_to_json(f.probs[i]);
      results.push_back(std::move(rec));
    }
  } else {
    for (const CountData& r : f.records) {
      Json rec;
      rec["circuit_id"] = r.circuit_id;
      rec["counts"] = r.counts;
      results.push_back(std::move(rec));
    }
  }
  Json payload;
  payload["protocol"] = f.protocol;
  payload["n_qubits"] = f.n_qubits;
  payload["exact"] = f.exact;
  payload["shots"] = f.shots;
  payload["seed"] = f.seed;
  payload["noise"] = f.noise;
  payload["results"] = std::move(results);
  return payload;
}

CountsFile counts_from_payload(const Json& payload) {
  const std::string context = "counts";
  CountsFile f;
  f.protocol = get_string(payload, "protocol", context);
  if (known_protocols().count(f.protocol) == 0) {
    throw ValidationError(detail::cat("counts: unknown protocol \"", f.protocol, "\""));
  }
  const long long n = get_int(payload, "n_qubits", context);
  if (n < 1 || n > 5) {
    throw ValidationError(detail::cat("counts: n_qubits must lie in [1, 5], found ", n));
  }
  f.n_qubits = static_cast<int>(n);
  f.exact = get_bool(payload, "exact", context);
  f.shots = get_int(payload, "shots", context);
  f.seed = get_u64(payload, "seed", context);
  if (!f.exact && f.shots < 1) {
    throw ValidationError(detail::cat("counts: sampled data needs shots >= 1, found ", f.shots));
  }
  const Json& noise = require_field(payload, "noise", context);
  if (!noise.is_array()) {
    throw ValidationError("counts: field \"noise\" must be an array of strings");
  }
  for (const Json& s : noise) {
    if (!s.is_string()) {
      throw ValidationError("counts: field \"noise\" must be an array of strings");
    }
    f.noise.push_back(s.get<std::string>());
  }

  const Json& results = require_field(payload, "results", context);
  if (!results.is_array()) {
    throw ValidationError("counts: field \"results\" must be an array");
  }
  const Eigen::Index n_outcomes = Eigen::Index(1) << f.n_qubits;
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Json& rec = results[i];
    const std::string rec_context = detail::cat("counts.results[", i, "]");
    const std::string id = get_string(rec, "circuit_id", rec_context);
    ids.push_back(id);
    if (f.exact) {
      const RVec p = rvec_from_json(require_field(rec, "probs", rec_context),
                                    detail::cat("circuit \"", id, "\" probs"), n_outcomes);
      double total = 0.0;
      for (Eigen::Index k = 0; k < p.size(); ++k) {
        if (p(k) < -kDefaultTol) {
          throw ValidationError(detail::cat("circuit \"", id, "\": negative probability ", p(k),
                                            " at outcome ", k));
        }
        total += p(k);
      }
      if (std::abs(total - 1.0) > 1e-6) {
        throw ValidationError(
            detail::cat("circuit \"", id, "\": probabilities sum to ", total, ", expected 1"));
      }
      f.prob_ids.push_back(id);
      f.probs.push_back(p);
    } else {
      const Json& counts = require_field(rec, "counts", rec_context);
      if (!counts.is_array() || static_cast<Eigen::Index>(counts.size()) != n_outcomes) {
        throw ValidationError(detail::cat("circuit \"", id, "\": counts must list all ",
                                          n_outcomes, " outcomes"));
      }
      CountData cd;
      cd.circuit_id = id;
      long long total = 0;
      for (const Json& c : counts) {
        if (!c.is_number_integer() && !c.is_number_unsigned()) {
          throw ValidationError(detail::cat("circuit \"", id, "\": counts must be integers"));
        }
        const long long value = c.get<long long>();
        if (value < 0) {
          throw ValidationError(
              detail::cat("circuit \"", id, "\": negative count ", value));
        }
        cd.counts.push_back(value);
        total += value;
      }
      if (total != f.shots) {
        throw ValidationError(detail::cat("circuit \"", id, "\": counts sum to ", total,
                                          " but the file declares ", f.shots, " shots"));
      }
      cd.shots = total;
      f.records.push_back(std::move(cd));
    }
  }
  check_unique_ids(ids);
  return f;
}

void save_counts(const std::string& path, const CountsFile& f) {
  write_artifact(path, "counts", counts_to_payload(f));
}

CountsFile load_counts(const std::string& path) {
  const Json payload = read_artifact(path, "counts");
  try {
    return counts_from_payload(payload);
  } catch (const ValidationError& e) {
    throw ValidationError(detail::cat(path, ": ", e.what()));
  }
}

void save_report(const std::string& path, const Json& payload) {
  write_artifact(path, "report", payload);
}

Json load_report(const std::string& path) { return read_artifact(path, "report"); }

}  // namespace io
}  // namespace qcvv
