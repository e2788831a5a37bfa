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

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qcvv/pauli.hpp"

namespace qcvv {

/// A Clifford group element represented by its stabilizer tableau: the
/// signed Pauli images of the generators X_0..X_{n-1}, Z_0..Z_{n-1} under
/// conjugation U P U^dag. This quotients out the global phase of U, so
/// tableau identity is exact group identity.
struct CliffordElement {
  int n_qubits = 0;
  /// Rows 0..n-1: images of X_j; rows n..2n-1: images of Z_j. Every row is
  /// Hermitian, i.e. phase - x.z = 0 (+ sign) or 2 (- sign) mod 4.
  std::vector<PauliString> images;

  static CliffordElement identity(int n_qubits);

  /// Image of an arbitrary phased Pauli under conjugation, with exact sign
  /// tracking.
  PauliString conjugate(const PauliString& p) const;

  /// Checks row Hermiticity and that conjugation preserves the commutation
  /// relations of the generators (the tableau is symplectic).
  void validate() const;

  /// Packs the tableau into 64 bits; unique per element for n_qubits <= 2.
  uint64_t key() const;

  bool operator==(const CliffordElement& other) const {
    return n_qubits == other.n_qubits && images == other.images;
  }
};

/// Tableau of (after . before): conjugation by U_after U_before.
CliffordElement clifford_compose(const CliffordElement& after, const CliffordElement& before);

/// Exact group inverse. The bit part inverts via the symplectic identity
/// M^{-1} = Lambda M^T Lambda over GF(2); the sign part is fixed by
/// solving the linear system that cancels the sign defect of the
/// zero-sign candidate.
CliffordElement clifford_inverse(const CliffordElement& e);

/// The full n-qubit Clifford group (n in {1, 2}), enumerated once by
/// breadth-first closure over {H, S} (+ CNOT for n = 2) and cached for the
/// life of the process. Enumeration order is deterministic: queue order of
/// the BFS with the fixed generator order, so element indices are stable
/// across runs and platforms.
class CliffordGroup {
 public:
  static const CliffordGroup& instance(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t order() const { return elements_.size(); }
  const CliffordElement& element(std::size_t idx) const;

  /// Index of a tableau; throws if it is not a group element.
  std::size_t index_of(const CliffordElement& e) const;

  /// Index of element(a) composed after element(b).
  std::size_t compose(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;

  /// A concrete unitary whose conjugation action realizes the tableau
  /// (the generator-word product from the enumeration; global phase is a
  /// fixed artifact of that word).
  const CMat& unitary(std::size_t idx) const;

  /// Uniform element index.
  std::size_t sample(Rng& rng) const;

 private:
  explicit CliffordGroup(int n_qubits);

  int n_qubits_;
  std::vector<CliffordElement> elements_;
  std::vector<CMat> unitaries_;
  std::unordered_map<uint64_t, std::size_t> index_;
};

}  // namespace qcvv
