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

#include <string>
#include <vector>

#include <json.hpp>

#include "qcvv/holistic.hpp"
#include "qcvv/rb.hpp"
#include "qcvv/simcore.hpp"
#include "qcvv/tomo.hpp"

namespace qcvv {
namespace io {

/// Canonical document type: objects keep their keys sorted, which together
/// with shortest round-trip float printing makes serialization byte-stable.
using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

// ---------------------------------------------------------------------------
// Primitive encodings. Complex numbers are [re, im] pairs; matrices are
// row-major nested arrays of such pairs.
// ---------------------------------------------------------------------------

Json complex_to_json(const Complex& z);
Json cmat_to_json(const CMat& m);
Json rvec_to_json(const RVec& v);

/// Decoders validate shape and element types; `field` names the offending
/// location in error messages. Pass rows/cols >= 0 to enforce dimensions.
Complex complex_from_json(const Json& j, const std::string& field);
CMat cmat_from_json(const Json& j, const std::string& field, Eigen::Index rows = -1,
                    Eigen::Index cols = -1);
RVec rvec_from_json(const Json& j, const std::string& field, Eigen::Index size = -1);

// ---------------------------------------------------------------------------
// Typed field access with location-bearing errors.
// ---------------------------------------------------------------------------

const Json& require_field(const Json& obj, const std::string& key, const std::string& context);
std::string get_string(const Json& obj, const std::string& key, const std::string& context);
long long get_int(const Json& obj, const std::string& key, const std::string& context);
uint64_t get_u64(const Json& obj, const std::string& key, const std::string& context);
double get_double(const Json& obj, const std::string& key, const std::string& context);
bool get_bool(const Json& obj, const std::string& key, const std::string& context);

// ---------------------------------------------------------------------------
// Artifact envelope { format_version, kind, payload }.
// ---------------------------------------------------------------------------

/// Serializes with two-space indentation, sorted keys and a trailing
/// newline; parsing this text and dumping it again reproduces the bytes.
std::string canonical_dump(const Json& doc);

Json make_artifact(const std::string& kind, Json payload);

/// Parses an artifact document and returns its payload after checking the
/// version and kind. Malformed JSON or a wrong kind raise validation
/// errors carrying the parser diagnostics.
Json payload_from_text(const std::string& text, const std::string& expected_kind);

/// Writes text atomically: a sibling temporary file is renamed over the
/// destination so readers never observe a partial artifact.
void write_text_atomic(const std::string& path, const std::string& text);

void write_artifact(const std::string& path, const std::string& kind, const Json& payload);
Json read_artifact(const std::string& path, const std::string& expected_kind);

// ---------------------------------------------------------------------------
// Gate set files (kind "gateset"): preparation density matrix, per-label
// Kraus operators, measurement effects. Channels are reconstructed through
// their validating constructors on load, so a tampered file fails loudly.
// ---------------------------------------------------------------------------

Json gateset_to_payload(const GateSet& gs);
GateSet gateset_from_payload(const Json& payload);
void save_gateset(const std::string& path, const GateSet& gs);
GateSet load_gateset(const std::string& path);

// ---------------------------------------------------------------------------
// Design files (kind "design"). Tomography and benchmarking designs store
// their circuits as label lists; quantum volume designs store the full
// per-layer block specification (permutation plus 4x4 unitaries), since the
// blocks themselves define the gates.
// ---------------------------------------------------------------------------

struct DesignFile {
  std::string protocol;  // state_tomo | process_tomo | rb | qv
  int n_qubits = 0;
  Json payload;  // complete payload, for protocol-specific fields
};

Json tomo_design_payload(const std::string& protocol, const TomographyDesign& design);
Json rb_design_payload(const RbDesign& design, const std::vector<Circuit>& circuits);
Json qv_design_payload(int n_qubits, uint64_t seed, const std::vector<QvCircuit>& circuits);

DesignFile load_design(const std::string& path);

/// Label circuits of a state_tomo, process_tomo or rb design, in file
/// order. Rejects qv designs, whose circuits are block-structured.
std::vector<Circuit> label_circuits_from_design(const DesignFile& design);

RbDesign rb_design_from_payload(const Json& payload);
std::vector<QvCircuit> qv_circuits_from_payload(const Json& payload);

// ---------------------------------------------------------------------------
// Counts files (kind "counts"): one record per circuit, either sampled
// counts (with file-level shot count and seed) or exact probabilities.
// ---------------------------------------------------------------------------

struct CountsFile {
  std::string protocol;
  int n_qubits = 0;
  bool exact = false;
  long long shots = 0;  // 0 in exact mode
  uint64_t seed = 0;    // 0 in exact mode
  std::vector<std::string> noise;  // canonical noise descriptions, in order

  // Sampled mode: records, aligned with the design. Exact mode: per-circuit
  // distributions plus their ids, same order.
  std::vector<CountData> records;
  std::vector<std::string> prob_ids;
  std::vector<RVec> probs;

  /// Circuit ids in file order, whichever mode is active.
  std::vector<std::string> circuit_ids() const;
};

Json counts_to_payload(const CountsFile& f);
CountsFile counts_from_payload(const Json& payload);
void save_counts(const std::string& path, const CountsFile& f);
CountsFile load_counts(const std::string& path);

// ---------------------------------------------------------------------------
// Report files (kind "report"): free-form payload assembled by the
// analysis commands; every report embeds the invocation that produced it.
// ---------------------------------------------------------------------------

void save_report(const std::string& path, const Json& payload);
Json load_report(const std::string& path);

}  // namespace io
}  // namespace qcvv
