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

#include "qcvv/dfe.hpp"
#include "qcvv/gates.hpp"
#include "qcvv/metrics.hpp"

namespace qcvv {
namespace {

StabilizerTarget zero_state(int n) {
  std::vector<PauliString> gens;
  for (int j = 0; j < n; ++j) {
    std::vector<uint8_t> x(static_cast<std::size_t>(n), 0);
    std::vector<uint8_t> z(static_cast<std::size_t>(n), 0);
    z[static_cast<std::size_t>(j)] = 1;
    gens.push_back(hermitian_pauli(x, z));  // + Z_j
  }
  return StabilizerTarget::from_generators(gens);
}

StabilizerTarget bell_state() {
  // Stabilizers of (|00> + |11>) / sqrt(2): +XX and +ZZ.
  return StabilizerTarget::from_generators(
      {hermitian_pauli({1, 1}, {0, 0}), hermitian_pauli({0, 0}, {1, 1})});
}

TEST_CASE("group expansion of the all-zeros target") {
  const StabilizerTarget t = zero_state(2);
  CHECK(t.group_size() == 4);  // I, Z0, Z1, Z0 Z1
  CHECK(t.expectation(hermitian_pauli({0, 0}, {0, 0})) == 1);
  CHECK(t.expectation(hermitian_pauli({0, 0}, {1, 0})) == 1);
  CHECK(t.expectation(hermitian_pauli({0, 0}, {1, 1})) == 1);
  CHECK(t.expectation(hermitian_pauli({1, 0}, {0, 0})) == 0);  // X not in group

  const PureState psi = t.state();
  CHECK(std::abs(psi.amp(0)) == doctest::Approx(1.0).epsilon(1e-12));

  const CMat proj = t.projector();
  CHECK(proj(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs(proj * proj - proj) < 1e-12);  // idempotent
  CHECK(proj.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bell target reproduces the bell projector") {
  const StabilizerTarget t = bell_state();
  CHECK(t.group_size() == 4);
  // The product element XX * ZZ = -YY carries a minus sign.
  CHECK(t.expectation(hermitian_pauli({1, 1}, {1, 1})) == -1);

  CVec bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  const CMat expected = bell * bell.adjoint();
  CHECK(max_abs(t.projector() - expected) < 1e-12);
}

TEST_CASE("signed generators pick the matching eigenstate") {
  // -Z stabilizes |1>.
  const StabilizerTarget minus_z =
      StabilizerTarget::from_generators({hermitian_pauli({0}, {1}, true)});
  CMat one = CMat::Zero(2, 2);
  one(1, 1) = 1.0;
  CHECK(max_abs(minus_z.projector() - one) < 1e-12);

  // +Y stabilizes (|0> + i|1>)/sqrt(2).
  const StabilizerTarget plus_y =
      StabilizerTarget::from_generators({hermitian_pauli({1}, {1})});
  CMat plus_i(2, 2);
  plus_i << Complex(0.5, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(0.5, 0);
  CHECK(max_abs(plus_y.projector() - plus_i) < 1e-12);
}

TEST_CASE("generator validation") {
  // Anticommuting generators cannot stabilize a common state.
  CHECK_THROWS_AS(StabilizerTarget::from_generators(
                      {hermitian_pauli({1}, {0}), hermitian_pauli({0}, {1})}),
                  ValidationError);
  // Dependent generators collapse the group.
  CHECK_THROWS_AS(StabilizerTarget::from_generators(
                      {hermitian_pauli({0, 0}, {1, 0}), hermitian_pauli({0, 0}, {1, 0})}),
                  ValidationError);
  // Wrong generator count for the qubit number.
  CHECK_THROWS_AS(StabilizerTarget::from_generators({hermitian_pauli({0, 0}, {1, 0})}),
                  ValidationError);
  CHECK_THROWS_AS(StabilizerTarget::from_generators({}), ValidationError);
  // Non-Hermitian phase is rejected.
  PauliString y_raw;
  y_raw.x = {1};
  y_raw.z = {1};
  y_raw.phase = 0;  // XZ = -iY, not Hermitian
  CHECK_THROWS_AS(StabilizerTarget::from_generators({y_raw}), ValidationError);
}

TEST_CASE("exhaustive estimation equals the state overlap") {
  Rng rng(41);
  const StabilizerTarget t = bell_state();
  const CMat proj = t.projector();
  for (int trial = 0; trial < 5; ++trial) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    const DfeResult res = dfe_exhaustive(t, density_matrix_sampler(rho));
    const double truth = (proj * rho.mat).trace().real();
    CHECK(res.f_hat == doctest::Approx(truth).epsilon(1e-9));
    CHECK(res.n_settings == 4);
    CHECK(res.shots_per_setting == 0);
  }
}

TEST_CASE("exhaustive estimation on the target itself gives one") {
  const StabilizerTarget t = zero_state(1);
  const DensityMatrix rho = pure_density(t.state());
  const DfeResult res = dfe_exhaustive(t, density_matrix_sampler(rho));
  CHECK(res.f_hat == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.f_clamped == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampled estimation is deterministic in the seed and near the truth") {
  const StabilizerTarget t = zero_state(2);
  // A mildly depolarized version of the target.
  const CMat rho_mat =
      0.9 * t.projector() + 0.1 * CMat::Identity(4, 4) / 4.0;
  const DensityMatrix rho(rho_mat);
  const double truth = (t.projector() * rho_mat).trace().real();  // 0.925

  const DfeResult a = dfe_stabilizer(t, density_matrix_sampler(rho), 200, 400, 6);
  const DfeResult b = dfe_stabilizer(t, density_matrix_sampler(rho), 200, 400, 6);
  CHECK(a.f_hat == b.f_hat);
  CHECK(a.n_settings == 200);
  CHECK(a.shots_per_setting == 400);
  CHECK(truth == doctest::Approx(0.925).epsilon(1e-12));
  CHECK(std::abs(a.f_hat - truth) < 5 * a.stderr_f + 1e-3);
  CHECK(a.stderr_f > 0.0);
  CHECK(a.f_clamped >= 0.0);
  CHECK(a.f_clamped <= 1.0);

  const DfeResult c = dfe_stabilizer(t, density_matrix_sampler(rho), 200, 400, 7);
  CHECK(a.f_hat != c.f_hat);
}

TEST_CASE("exact per-setting expectations remove shot noise") {
  const StabilizerTarget t = zero_state(1);
  CMat tilted = 0.5 * (CMat::Identity(2, 2) + 0.6 * mat_z());
  const DensityMatrix rho(tilted);
  // shots 0: each drawn setting contributes its exact expectation.
  const DfeResult res = dfe_stabilizer(t, density_matrix_sampler(rho), 50, 0, 3);
  // Settings are I (contributes 1) or Z (contributes 0.6); the mean lies
  // between and the truth 0.8 within the sampling spread of the settings.
  CHECK(res.f_hat >= 0.6);
  CHECK(res.f_hat <= 1.0);
  CHECK(std::abs(res.f_hat - 0.8) < 5 * 0.2 / std::sqrt(50.0) + 1e-9);
}

TEST_CASE("estimation input validation") {
  const StabilizerTarget t = zero_state(1);
  const PauliSampler s = density_matrix_sampler(pure_density(t.state()));
  CHECK_THROWS_AS(dfe_stabilizer(t, s, 0, 10, 1), ValidationError);
  CHECK_THROWS_AS(dfe_stabilizer(t, s, 10, -1, 1), ValidationError);
}

TEST_CASE("sampler rejects paulis of the wrong width") {
  const PauliSampler s = density_matrix_sampler(pure_density(zero_state(1).state()));
  CHECK_THROWS_AS(s(hermitian_pauli({0, 0}, {1, 0}), 0, 0), ValidationError);
}

}  // namespace
}  // namespace qcvv
