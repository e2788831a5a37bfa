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

#include <doctest.h>

#include "qcvv/gates.hpp"
#include "qcvv/qmodel.hpp"

namespace qcvv {
namespace {

PureState ket(std::initializer_list<Complex> amps) {
  CVec v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const Complex& a : amps) {
    v(i++) = a;
  }
  return PureState(v);
}

std::vector<CMat> depolarizing_kraus(double q) {
  const double keep = std::sqrt(1.0 - 3.0 * q / 4.0);
  const double leak = std::sqrt(q / 4.0);
  return {keep * mat_id(), leak * mat_x(), leak * mat_y(), leak * mat_z()};
}

TEST_CASE("density matrix validation") {
  CMat good(2, 2);
  good << Complex(0.5, 0), Complex(0, 0.25), Complex(0, -0.25), Complex(0.5, 0);
  CHECK_NOTHROW(DensityMatrix(good));

  CMat bad_trace = 0.9 * good;
  CHECK_THROWS_AS(DensityMatrix{bad_trace}, ValidationError);

  CMat not_psd(2, 2);
  not_psd << Complex(1.2, 0), Complex(0, 0), Complex(0, 0), Complex(-0.2, 0);
  CHECK_THROWS_AS(DensityMatrix{not_psd}, ValidationError);

  CMat not_herm(2, 2);
  not_herm << Complex(0.5, 0), Complex(0.3, 0), Complex(0, 0), Complex(0.5, 0);
  CHECK_THROWS_AS(DensityMatrix{not_herm}, ValidationError);
}

TEST_CASE("pure_density projectors") {
  const DensityMatrix zero = pure_density(ket({1, 0}));
  CHECK(zero.mat(0, 0) == Complex(1, 0));
  CHECK(zero.mat(1, 1) == Complex(0, 0));

  const double s = 1 / std::sqrt(2.0);
  const DensityMatrix plus = pure_density(ket({s, s}));
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      CHECK(plus.mat(r, c).real() == doctest::Approx(0.5).epsilon(1e-12));
    }
  }

  const DensityMatrix bell = pure_density(ket({s, 0, 0, s}));
  CHECK(bell.mat.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  const RVec evals = eigh_values(bell.mat);
  CHECK(evals(3) == doctest::Approx(1.0).epsilon(1e-12));  // rank 1
  CHECK(std::abs(evals(2)) < 1e-12);

  CVec unnormalized(2);
  unnormalized << 1.0, 1.0;
  CHECK_THROWS_AS(PureState{unnormalized}, ValidationError);
}

TEST_CASE("unitary channel action") {
  const QuantumChannel id = unitary_channel(mat_id());
  CHECK(max_abs(id.superop - CMat::Identity(4, 4)) == 0.0);

  const QuantumChannel x = unitary_channel(mat_x());
  const DensityMatrix one = apply_channel(x, pure_density(ket({1, 0})));
  CHECK(one.mat(1, 1).real() == doctest::Approx(1.0).epsilon(1e-12));

  const QuantumChannel h = unitary_channel(mat_h());
  const DensityMatrix plus = apply_channel(h, pure_density(ket({1, 0})));
  CHECK(plus.mat(0, 1).real() == doctest::Approx(0.5).epsilon(1e-12));

  CMat not_unitary = 2.0 * mat_x();
  CHECK_THROWS_AS(unitary_channel(not_unitary), ValidationError);
}

TEST_CASE("kraus_to_superop matches vec convention") {
  // S vec(rho) = vec(sum K rho K^dag) for a random channel-like pair.
  const std::vector<CMat> kraus = depolarizing_kraus(0.3);
  const CMat s = kraus_to_superop(kraus);
  CMat rho(2, 2);
  rho << Complex(0.7, 0), Complex(0.1, 0.2), Complex(0.1, -0.2), Complex(0.3, 0);
  CMat direct = CMat::Zero(2, 2);
  for (const CMat& k : kraus) {
    direct += k * rho * dagger(k);
  }
  CHECK(max_abs(unvec(s * vec(rho)) - direct) < 1e-14);
}

TEST_CASE("depolarizing pauli transfer matrix is diag(1, 1-q, 1-q, 1-q)") {
  const QuantumChannel depol = QuantumChannel::from_kraus(depolarizing_kraus(0.2));
  const RMat ptm = depol.ptm();
  REQUIRE(ptm.rows() == 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const double expected = (r == c) ? (r == 0 ? 1.0 : 0.8) : 0.0;
      CHECK(ptm(r, c) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("choi reshuffle is an involution and identity choi is maximally entangled") {
  const QuantumChannel depol = QuantumChannel::from_kraus(depolarizing_kraus(0.37));
  const CMat choi = depol.choi_matrix();
  CHECK(max_abs(choi_to_superop(choi) - depol.superop) < 1e-14);
  CHECK(choi.trace().real() == doctest::Approx(2.0).epsilon(1e-12));

  const CMat id_choi = identity_channel(2).choi_matrix();
  CMat expected = CMat::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 1.0;
  CHECK(max_abs(id_choi - expected) == 0.0);
}

TEST_CASE("trace preservation shows as the partial trace of the choi matrix") {
  Rng rng(31);
  const QuantumChannel ch = random_channel(4, 3, rng);
  const CMat reduced = partial_trace_second(ch.choi_matrix(), 4, 4);
  CHECK(max_abs(reduced - CMat::Identity(4, 4)) < 1e-10);
}

TEST_CASE("choi_to_kraus rebuilds the channel") {
  Rng rng(8);
  const QuantumChannel ch = random_channel(2, 2, rng);
  const std::vector<CMat> kraus = choi_to_kraus(ch.choi_matrix());
  CHECK(max_abs(kraus_to_superop(kraus) - ch.superop) < 1e-10);
}

TEST_CASE("from_kraus rejects trace-increasing sets") {
  CHECK_THROWS_AS(QuantumChannel::from_kraus({mat_x(), mat_id()}), ValidationError);
}

TEST_CASE("from_superop rejects non-completely-positive maps") {
  // The transpose map: vec(rho^T) = S vec(rho) is a permutation; its Choi
  // matrix is the SWAP operator with eigenvalue -1.
  CMat transpose_superop = CMat::Zero(4, 4);
  transpose_superop(0, 0) = 1.0;
  transpose_superop(1, 2) = 1.0;
  transpose_superop(2, 1) = 1.0;
  transpose_superop(3, 3) = 1.0;
  CHECK_THROWS_AS(QuantumChannel::from_superop(transpose_superop), ValidationError);
}

TEST_CASE("from_parts demands representation coherence") {
  const std::vector<CMat> kraus = depolarizing_kraus(0.2);
  const CMat wrong = CMat::Identity(4, 4);
  CHECK_THROWS_AS(QuantumChannel::from_parts(kraus, wrong), ValidationError);
  CHECK_NOTHROW(QuantumChannel::from_parts(kraus, kraus_to_superop(kraus)));
}

TEST_CASE("amplitude damping sends the excited state down") {
  const double gamma = 0.3;
  CMat a0(2, 2), a1(2, 2);
  a0 << 1, 0, 0, std::sqrt(1 - gamma);
  a1 << 0, std::sqrt(gamma), 0, 0;
  const QuantumChannel ad = QuantumChannel::from_kraus({a0, a1});
  const DensityMatrix out = apply_channel(ad, pure_density(ket({0, 1})));
  CHECK(out.mat(0, 0).real() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(out.mat(1, 1).real() == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("compose_channels multiplies superoperators in application order") {
  const QuantumChannel x = unitary_channel(mat_x());
  const QuantumChannel xx = compose_channels(x, x);
  CHECK(max_abs(xx.superop - CMat::Identity(4, 4)) < 1e-14);

  // Two depolarizings compose into one with 1 - q = (1 - q1)(1 - q2).
  const QuantumChannel d1 = QuantumChannel::from_kraus(depolarizing_kraus(0.1));
  const QuantumChannel d2 = QuantumChannel::from_kraus(depolarizing_kraus(0.2));
  const QuantumChannel both = compose_channels(d2, d1);
  const RMat ptm = both.ptm();
  CHECK(ptm(1, 1) == doctest::Approx(0.9 * 0.8).epsilon(1e-12));
}

TEST_CASE("born probabilities") {
  const DensityMatrix plus = pure_density(ket({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}));
  CMat e0 = CMat::Zero(2, 2);
  e0(0, 0) = 1.0;
  CHECK(born_probability(e0, plus) == doctest::Approx(0.5).epsilon(1e-12));
  CMat not_effect = 2.0 * e0;  // spectrum above 1
  CHECK_THROWS_AS(born_probability(not_effect, plus), ValidationError);
}

TEST_CASE("povm validation and probabilities") {
  CMat e0 = CMat::Zero(2, 2), e1 = CMat::Zero(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  const Povm povm({e0, e1});
  const RVec p = povm.probabilities(pure_density(ket({1, 0})));
  CHECK(p(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p(1) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(Povm({e0, e0}), ValidationError);        // does not sum to I
  CMat neg = -0.5 * e0;
  CMat comp = CMat::Identity(2, 2) - neg;
  CHECK_THROWS_AS(Povm({neg, comp}), ValidationError);     // negative effect
}

TEST_CASE("gate set lookup and validation") {
  GateSet gs;
  gs.n_qubits = 1;
  gs.prep = pure_density(ket({1, 0}));
  gs.gates["X"] = unitary_channel(mat_x());
  CMat e0 = CMat::Zero(2, 2), e1 = CMat::Zero(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  gs.meas = Povm({e0, e1});
  CHECK_NOTHROW(gs.validate());
  CHECK_NOTHROW(gs.gate("X"));
  CHECK_THROWS_AS(gs.gate("Y"), ValidationError);

  GateSet wrong = gs;
  wrong.gates["CX"] = unitary_channel(mat_cnot());  // dimension mismatch
  CHECK_THROWS_AS(wrong.validate(), ValidationError);
}

TEST_CASE("random models satisfy their invariants") {
  Rng rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    CHECK(rho.mat.trace().real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(min_eigenvalue(rho.mat) > -1e-12);

    const QuantumChannel ch = random_channel(2, 2, rng);
    CMat acc = CMat::Zero(2, 2);
    for (const CMat& k : ch.kraus) {
      acc += dagger(k) * k;
    }
    CHECK(max_abs(acc - CMat::Identity(2, 2)) < 1e-10);
    CHECK(min_eigenvalue(ch.choi_matrix()) > -1e-10);
  }
}

}  // namespace
}  // namespace qcvv
