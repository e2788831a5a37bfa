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

#include "qcvv/gates.hpp"

#include <algorithm>

namespace qcvv {

CMat mat_id(int dim) { return CMat::Identity(dim, dim); }

CMat mat_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMat mat_y() {
  CMat m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

CMat mat_z() {
  CMat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMat mat_h() {
  CMat m(2, 2);
  double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

CMat mat_s() {
  CMat m(2, 2);
  m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 1);
  return m;
}

CMat mat_sdg() {
  CMat m(2, 2);
  m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, -1);
  return m;
}

CMat mat_cnot() {
  CMat m = CMat::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

CMat mat_rotation(char axis, double angle) {
  CMat a;
  switch (axis) {
    case 'X': a = mat_x(); break;
    case 'Y': a = mat_y(); break;
    case 'Z': a = mat_z(); break;
    default:
      throw ValidationError(detail::cat("rotation axis must be X, Y or Z, got '",
                                        std::string(1, axis), "'"));
  }
  double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  return c * mat_id(2) - Complex(0, 1) * s * a;
}

CMat embed_unitary(const CMat& u, const std::vector<int>& qubits, int n_qubits) {
  int k = static_cast<int>(qubits.size());
  if (k < 1 || n_qubits < 1) throw ValidationError("embed_unitary: empty qubit list or register");
  Eigen::Index du = Eigen::Index(1) << k;
  if (u.rows() != du || u.cols() != du) {
    throw ValidationError(detail::cat("embed_unitary: matrix is ", u.rows(), "x", u.cols(),
                                      " but ", k, " qubits need ", du, "x", du));
  }
  std::vector<int> seen;
  for (int q : qubits) {
    if (q < 0 || q >= n_qubits) {
      throw ValidationError(detail::cat("embed_unitary: qubit ", q, " outside register of size ", n_qubits));
    }
    if (std::find(seen.begin(), seen.end(), q) != seen.end()) {
      throw ValidationError(detail::cat("embed_unitary: qubit ", q, " listed twice"));
    }
    seen.push_back(q);
  }

  Eigen::Index d = Eigen::Index(1) << n_qubits;
  CMat out = CMat::Zero(d, d);
  // Qubit q holds bit (n_qubits - 1 - q) of the basis index.
  auto bit_of = [&](Eigen::Index idx, int q) -> int {
    return static_cast<int>((idx >> (n_qubits - 1 - q)) & 1);
  };
  for (Eigen::Index col = 0; col < d; ++col) {
    Eigen::Index ucol = 0;
    for (int a = 0; a < k; ++a) ucol = (ucol << 1) | bit_of(col, qubits[a]);
    for (Eigen::Index urow = 0; urow < du; ++urow) {
      Complex amp = u(urow, ucol);
      if (amp == Complex(0, 0)) continue;
      Eigen::Index row = col;
      for (int a = 0; a < k; ++a) {
        int bit = static_cast<int>((urow >> (k - 1 - a)) & 1);
        Eigen::Index mask = Eigen::Index(1) << (n_qubits - 1 - qubits[a]);
        row = (row & ~mask) | (bit ? mask : 0);
      }
      out(row, col) += amp;
    }
  }
  return out;
}

}  // namespace qcvv
