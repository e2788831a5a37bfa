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

#include "qcvv/pauli.hpp"

namespace qcvv {

namespace {

int dot_mod2(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] & b[i];
  return s;
}

// Single-qubit X^x Z^z without phase.
CMat xz_factor(int x, int z) {
  CMat m(2, 2);
  if (x == 0 && z == 0) {
    m << 1, 0, 0, 1;
  } else if (x == 1 && z == 0) {
    m << 0, 1, 1, 0;
  } else if (x == 0 && z == 1) {
    m << 1, 0, 0, -1;
  } else {
    m << 0, -1, 1, 0;  // XZ = -iY
  }
  return m;
}

}  // namespace

PauliString PauliString::identity(int n_qubits) {
  if (n_qubits < 1) throw ValidationError("PauliString: need at least one qubit");
  PauliString p;
  p.x.assign(n_qubits, 0);
  p.z.assign(n_qubits, 0);
  p.phase = 0;
  return p;
}

PauliString PauliString::from_label(const std::string& label) {
  std::string body = label;
  bool negated = false;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    negated = (body[0] == '-');
    body = body.substr(1);
  }
  if (body.empty()) throw ValidationError(detail::cat("Pauli label \"", label, "\" has no body"));
  std::vector<uint8_t> x(body.size(), 0), z(body.size(), 0);
  for (std::size_t i = 0; i < body.size(); ++i) {
    switch (body[i]) {
      case 'I': break;
      case 'X': x[i] = 1; break;
      case 'Y': x[i] = 1; z[i] = 1; break;
      case 'Z': z[i] = 1; break;
      default:
        throw ValidationError(detail::cat("Pauli label \"", label, "\" has invalid character '",
                                          std::string(1, body[i]), "'"));
    }
  }
  return hermitian_pauli(std::move(x), std::move(z), negated);
}

std::string PauliString::label() const {
  int rel = ((phase - dot_mod2(x, z)) % 4 + 4) % 4;
  if (rel != 0 && rel != 2) {
    throw ValidationError(detail::cat("Pauli with phase exponent ", phase, " is not Hermitian"));
  }
  std::string out(rel == 0 ? "+" : "-");
  for (int j = 0; j < n(); ++j) {
    if (x[j] && z[j]) {
      out += 'Y';
    } else if (x[j]) {
      out += 'X';
    } else if (z[j]) {
      out += 'Z';
    } else {
      out += 'I';
    }
  }
  return out;
}

bool PauliString::is_hermitian() const {
  return ((phase - dot_mod2(x, z)) % 2 + 2) % 2 == 0;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n() != other.n()) {
    throw ValidationError(detail::cat("Pauli size mismatch: ", n(), " vs ", other.n()));
  }
  return ((dot_mod2(x, other.z) + dot_mod2(z, other.x)) % 2) == 0;
}

CMat PauliString::matrix() const {
  CMat m = xz_factor(x[0], z[0]);
  for (int j = 1; j < n(); ++j) m = kron(m, xz_factor(x[j], z[j]));
  static const Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[((phase % 4) + 4) % 4] * m;
}

PauliString pauli_mul(const PauliString& p1, const PauliString& p2) {
  if (p1.n() != p2.n()) {
    throw ValidationError(detail::cat("Pauli size mismatch: ", p1.n(), " vs ", p2.n()));
  }
  PauliString out;
  out.x.resize(p1.x.size());
  out.z.resize(p1.z.size());
  // Commuting Z^z1 past X^x2 contributes (-1)^{z1.x2}.
  out.phase = (p1.phase + p2.phase + 2 * dot_mod2(p1.z, p2.x)) % 4;
  for (std::size_t i = 0; i < out.x.size(); ++i) {
    out.x[i] = p1.x[i] ^ p2.x[i];
    out.z[i] = p1.z[i] ^ p2.z[i];
  }
  return out;
}

PauliString hermitian_pauli(std::vector<uint8_t> x, std::vector<uint8_t> z, bool negated) {
  if (x.size() != z.size() || x.empty()) {
    throw ValidationError("hermitian_pauli: x and z must be equal-length and non-empty");
  }
  PauliString p;
  p.phase = (dot_mod2(x, z) + (negated ? 2 : 0)) % 4;
  p.x = std::move(x);
  p.z = std::move(z);
  return p;
}

std::vector<CMat> pauli_basis(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 5) {
    throw ValidationError(detail::cat("pauli_basis: n_qubits must be in [1, 5], got ", n_qubits));
  }
  std::size_t count = 1;
  for (int j = 0; j < n_qubits; ++j) count *= 4;
  std::vector<CMat> basis;
  basis.reserve(count);
  for (std::size_t a = 0; a < count; ++a) {
    std::vector<uint8_t> x(n_qubits, 0), z(n_qubits, 0);
    std::size_t rest = a;
    for (int j = n_qubits - 1; j >= 0; --j) {
      int digit = static_cast<int>(rest % 4);
      rest /= 4;
      if (digit == 1 || digit == 2) x[j] = 1;
      if (digit == 2 || digit == 3) z[j] = 1;
    }
    basis.push_back(hermitian_pauli(std::move(x), std::move(z)).matrix());
  }
  return basis;
}

CMat pauli_basis_change(int n_qubits) {
  std::vector<CMat> basis = pauli_basis(n_qubits);
  Eigen::Index d = basis[0].rows();
  double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  CMat w(d * d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    w.col(static_cast<Eigen::Index>(a)) = vec(basis[a]) * inv_sqrt_d;
  }
  return w;
}

}  // namespace qcvv
