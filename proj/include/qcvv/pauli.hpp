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
#include <string>
#include <vector>

#include "qcvv/linalg.hpp"

namespace qcvv {

/// A phased n-qubit Pauli operator  i^phase * X^x Z^z, where
/// X^x Z^z = (x) over qubits j of X^{x_j} Z^{z_j}  and phase is mod 4.
///
/// The operator is Hermitian iff phase = x.z (mod 2); the canonical
/// Hermitian representative of a string has phase = x.z (mod 4) (so Y shows
/// up as i * XZ), and its negation has phase = x.z + 2 (mod 4).
struct PauliString {
  std::vector<uint8_t> x;
  std::vector<uint8_t> z;
  int phase = 0;  // exponent of i, mod 4

  int n() const { return static_cast<int>(x.size()); }

  static PauliString identity(int n_qubits);

  /// Parses labels like "XX", "+YZ", "-IZX". Qubit 0 is the leftmost
  /// character and the most significant index of the register.
  static PauliString from_label(const std::string& label);

  /// Renders a Hermitian string as "+..."/"-...". Throws for non-Hermitian
  /// phases, which have no +/- label.
  std::string label() const;

  bool is_hermitian() const;

  bool commutes_with(const PauliString& other) const;

  /// Dense 2^n x 2^n matrix, including the i^phase prefactor.
  CMat matrix() const;

  bool operator==(const PauliString& other) const {
    return x == other.x && z == other.z && phase == other.phase;
  }
};

/// Product p1 * p2 with exact phase tracking:
/// (i^a X^x1 Z^z1)(i^b X^x2 Z^z2) = i^{a+b+2 z1.x2} X^{x1+x2} Z^{z1+z2}.
PauliString pauli_mul(const PauliString& p1, const PauliString& p2);

/// Hermitian Pauli with the given bit patterns (phase = x.z mod 4) and an
/// optional overall sign flip.
PauliString hermitian_pauli(std::vector<uint8_t> x, std::vector<uint8_t> z, bool negated = false);

/// The 4^n Hermitian Pauli operators ordered base-4 with per-qubit digits
/// I=0, X=1, Y=2, Z=3 and qubit 0 as the most significant digit,
/// so for one qubit: I, X, Y, Z.
std::vector<CMat> pauli_basis(int n_qubits);

/// Unitary basis-change matrix whose columns are vec(P_a) / sqrt(d) in the
/// pauli_basis order. The transfer-matrix view of a superoperator S is
/// W^dag S W.
CMat pauli_basis_change(int n_qubits);

}  // namespace qcvv
