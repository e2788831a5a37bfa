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

#include "qcvv/clifford.hpp"

#include "qcvv/gates.hpp"

namespace qcvv {

namespace {

int row_dot(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] & b[i];
  return s;
}

// 0 for a + row, 1 for a - row; rows are Hermitian so phase - x.z is 0 or 2.
int sign_bit(const PauliString& p) {
  int rel = ((p.phase - row_dot(p.x, p.z)) % 4 + 4) % 4;
  if (rel != 0 && rel != 2) {
    throw ValidationError("CliffordElement: tableau row is not Hermitian");
  }
  return rel == 2 ? 1 : 0;
}

// Symplectic bit vector (x | z) of length 2n for a tableau row.
std::vector<uint8_t> symp_vector(const PauliString& p) {
  std::vector<uint8_t> v(p.x);
  v.insert(v.end(), p.z.begin(), p.z.end());
  return v;
}

}  // namespace

CliffordElement CliffordElement::identity(int n_qubits) {
  if (n_qubits < 1) throw ValidationError("CliffordElement: need at least one qubit");
  CliffordElement e;
  e.n_qubits = n_qubits;
  for (int g = 0; g < 2 * n_qubits; ++g) {
    std::vector<uint8_t> x(n_qubits, 0), z(n_qubits, 0);
    if (g < n_qubits) {
      x[g] = 1;
    } else {
      z[g - n_qubits] = 1;
    }
    e.images.push_back(hermitian_pauli(std::move(x), std::move(z)));
  }
  return e;
}

PauliString CliffordElement::conjugate(const PauliString& p) const {
  if (p.n() != n_qubits) {
    throw ValidationError(detail::cat("CliffordElement: Pauli has ", p.n(), " qubits, tableau has ", n_qubits));
  }
  // p = i^phase prod_j X_j^{x_j} prod_j Z_j^{z_j}; conjugation maps each
  // factor to its image, in the same order.
  PauliString acc = PauliString::identity(n_qubits);
  acc.phase = p.phase;
  for (int j = 0; j < n_qubits; ++j) {
    if (p.x[j]) acc = pauli_mul(acc, images[j]);
  }
  for (int j = 0; j < n_qubits; ++j) {
    if (p.z[j]) acc = pauli_mul(acc, images[n_qubits + j]);
  }
  return acc;
}

void CliffordElement::validate() const {
  if (static_cast<int>(images.size()) != 2 * n_qubits) {
    throw ValidationError(detail::cat("CliffordElement: ", images.size(), " rows, expected ", 2 * n_qubits));
  }
  for (const PauliString& row : images) {
    if (row.n() != n_qubits) throw ValidationError("CliffordElement: row size mismatch");
    sign_bit(row);  // throws when not Hermitian
  }
  // Conjugation preserves commutation: rows g and g + n anticommute
  // (images of X_j, Z_j), every other pair commutes.
  for (int a = 0; a < 2 * n_qubits; ++a) {
    for (int b = a + 1; b < 2 * n_qubits; ++b) {
      bool should_commute = (b - a != n_qubits);
      if (images[a].commutes_with(images[b]) != should_commute) {
        throw ValidationError(detail::cat("CliffordElement: rows ", a, " and ", b,
                                          " violate the symplectic condition"));
      }
    }
  }
}

uint64_t CliffordElement::key() const {
  if (n_qubits > 2) throw ValidationError("CliffordElement::key supports at most 2 qubits");
  uint64_t k = 0;
  for (const PauliString& row : images) {
    for (int j = 0; j < n_qubits; ++j) k = (k << 1) | row.x[j];
    for (int j = 0; j < n_qubits; ++j) k = (k << 1) | row.z[j];
    k = (k << 1) | static_cast<uint64_t>(sign_bit(row));
  }
  return k;
}

CliffordElement clifford_compose(const CliffordElement& after, const CliffordElement& before) {
  if (after.n_qubits != before.n_qubits) {
    throw ValidationError(detail::cat("clifford_compose: qubit mismatch ", after.n_qubits,
                                      " vs ", before.n_qubits));
  }
  CliffordElement out;
  out.n_qubits = after.n_qubits;
  out.images.reserve(before.images.size());
  for (const PauliString& row : before.images) out.images.push_back(after.conjugate(row));
  return out;
}

CliffordElement clifford_inverse(const CliffordElement& e) {
  int n = e.n_qubits;
  int m = 2 * n;
  // Bit matrix M: row g = symplectic vector of image g. The inverse bit
  // matrix is N = Lambda M^T Lambda, i.e. N[a][b] = M[swap(b)][swap(a)]
  // with swap exchanging the x and z halves.
  std::vector<std::vector<uint8_t>> mat(m);
  for (int g = 0; g < m; ++g) mat[g] = symp_vector(e.images[g]);
  auto swap_half = [n](int i) { return i < n ? i + n : i - n; };
  std::vector<std::vector<uint8_t>> inv(m, std::vector<uint8_t>(m, 0));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) inv[a][b] = mat[swap_half(b)][swap_half(a)];
  }
  // Zero-sign candidate with the inverted bit part.
  CliffordElement cand;
  cand.n_qubits = n;
  for (int g = 0; g < m; ++g) {
    std::vector<uint8_t> x(inv[g].begin(), inv[g].begin() + n);
    std::vector<uint8_t> z(inv[g].begin() + n, inv[g].end());
    cand.images.push_back(hermitian_pauli(std::move(x), std::move(z)));
  }
  // Sign defect of cand . e; flipping candidate rows f changes row g of
  // the composition by <M_g, f>, so solve M f = defect via f = N defect.
  CliffordElement probe = clifford_compose(cand, e);
  std::vector<uint8_t> defect(m);
  for (int g = 0; g < m; ++g) defect[g] = static_cast<uint8_t>(sign_bit(probe.images[g]));
  for (int g = 0; g < m; ++g) {
    int f = 0;
    for (int b = 0; b < m; ++b) f ^= inv[g][b] & defect[b];
    if (f) cand.images[g].phase = (cand.images[g].phase + 2) % 4;
  }
  CliffordElement check = clifford_compose(cand, e);
  if (!(check == CliffordElement::identity(n))) {
    throw NumericalError("clifford_inverse: inverse verification failed");
  }
  return cand;
}

namespace {

struct Generator {
  CliffordElement tableau;
  CMat unitary;
};

// Tableau of a single-qubit generator on qubit q of an n-qubit register,
// given the images of X_q and Z_q as 1-qubit labels.
CliffordElement embed_1q(int n, int q, const std::string& x_image, const std::string& z_image) {
  CliffordElement e = CliffordElement::identity(n);
  auto place = [&](const std::string& label) {
    PauliString one = PauliString::from_label(label);
    std::vector<uint8_t> x(n, 0), z(n, 0);
    x[q] = one.x[0];
    z[q] = one.z[0];
    return hermitian_pauli(std::move(x), std::move(z), sign_bit(one) == 1);
  };
  e.images[q] = place(x_image);
  e.images[n + q] = place(z_image);
  return e;
}

std::vector<Generator> make_generators(int n) {
  std::vector<Generator> gens;
  for (int q = 0; q < n; ++q) {
    // H: X -> Z, Z -> X.
    gens.push_back({embed_1q(n, q, "+Z", "+X"), embed_unitary(mat_h(), {q}, n)});
    // S: X -> Y, Z -> Z.
    gens.push_back({embed_1q(n, q, "+Y", "+Z"), embed_unitary(mat_s(), {q}, n)});
  }
  if (n == 2) {
    // CNOT (control 0, target 1): X0 -> X0 X1, X1 -> X1, Z0 -> Z0,
    // Z1 -> Z0 Z1.
    CliffordElement cx = CliffordElement::identity(2);
    cx.images[0] = PauliString::from_label("+XX");
    cx.images[3] = PauliString::from_label("+ZZ");
    gens.push_back({cx, embed_unitary(mat_cnot(), {0, 1}, 2)});
  }
  return gens;
}

}  // namespace

CliffordGroup::CliffordGroup(int n_qubits) : n_qubits_(n_qubits) {
  std::vector<Generator> gens = make_generators(n_qubits);
  std::size_t expected = (n_qubits == 1) ? 24 : 11520;
  elements_.reserve(expected);
  unitaries_.reserve(expected);
  elements_.push_back(CliffordElement::identity(n_qubits));
  unitaries_.push_back(CMat::Identity(1 << n_qubits, 1 << n_qubits));
  index_.emplace(elements_[0].key(), 0);
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    for (const Generator& gen : gens) {
      CliffordElement next = clifford_compose(gen.tableau, elements_[head]);
      uint64_t k = next.key();
      if (index_.find(k) != index_.end()) continue;
      if (elements_.size() >= expected) {
        throw NumericalError("CliffordGroup: closure exceeded the known group order");
      }
      index_.emplace(k, elements_.size());
      elements_.push_back(std::move(next));
      unitaries_.push_back(gen.unitary * unitaries_[head]);
    }
  }
  if (elements_.size() != expected) {
    throw NumericalError(detail::cat("CliffordGroup: closure found ", elements_.size(),
                                     " elements, expected ", expected));
  }
}

const CliffordGroup& CliffordGroup::instance(int n_qubits) {
  if (n_qubits == 1) {
    static const CliffordGroup group1(1);
    return group1;
  }
  if (n_qubits == 2) {
    static const CliffordGroup group2(2);
    return group2;
  }
  throw ValidationError(detail::cat("CliffordGroup: only 1 and 2 qubits are enumerable, got ", n_qubits));
}

const CliffordElement& CliffordGroup::element(std::size_t idx) const {
  if (idx >= elements_.size()) {
    throw ValidationError(detail::cat("CliffordGroup: index ", idx, " out of range ", elements_.size()));
  }
  return elements_[idx];
}

std::size_t CliffordGroup::index_of(const CliffordElement& e) const {
  if (e.n_qubits != n_qubits_) {
    throw ValidationError(detail::cat("CliffordGroup: element has ", e.n_qubits, " qubits, group has ", n_qubits_));
  }
  auto it = index_.find(e.key());
  if (it == index_.end()) throw ValidationError("CliffordGroup: tableau is not a group element");
  return it->second;
}

std::size_t CliffordGroup::compose(std::size_t a, std::size_t b) const {
  return index_of(clifford_compose(element(a), element(b)));
}

std::size_t CliffordGroup::inverse(std::size_t a) const {
  return index_of(clifford_inverse(element(a)));
}

const CMat& CliffordGroup::unitary(std::size_t idx) const {
  if (idx >= unitaries_.size()) {
    throw ValidationError(detail::cat("CliffordGroup: index ", idx, " out of range ", unitaries_.size()));
  }
  return unitaries_[idx];
}

std::size_t CliffordGroup::sample(Rng& rng) const { return rng.uniform_int(order()); }

}  // namespace qcvv
