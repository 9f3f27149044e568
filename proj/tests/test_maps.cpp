// Copyright 2026 The qcorr Authors
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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qcorr/maps.hpp"
#include "qcorr/quantumness.hpp"
#include "support.hpp"

using namespace qcorr;

namespace {
const ComplexMatrix kReferenceB{{1.0, 0.0, 0.0, 0.5}, {0.0, 0.0, 0.5, 0.0}, {0.0, 0.5, 0.0, 0.0}, {0.5, 0.0, 0.0, 1.0}};

std::vector<ComplexMatrix> amplitude_damping(double g) {
  return {ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1 - g)}}, ComplexMatrix{{0.0, std::sqrt(g)}, {0.0, 0.0}}};
}
}  // namespace

TEST_CASE("identity map") {
  const AMap id = identity_amap(2);
  const auto rho = random_density({2}, 1).matrix();
  CHECK(max_abs(apply_amap(id, rho) - rho) < 1e-15);
  const auto cls = classify(realign_a_to_b(id));
  CHECK(cls.verdict == MapVerdict::CP);
}

TEST_CASE("Kraus maps round-trip through B and spectral decomposition") {
  const auto kraus = amplitude_damping(0.35);
  const AMap a = amap_from_kraus(kraus);
  const auto cond = check_amap_conditions(a);
  CHECK(cond.hermiticity_residual < 1e-14);
  CHECK(cond.trace_residual < 1e-14);
  const BMap b = realign_a_to_b(a);
  CHECK(classify(b).verdict == MapVerdict::CP);
  const auto dec = spectral_decompose(b);
  for (const auto& rho : {random_density({2}, 2).matrix(), random_density({2}, 3).matrix()}) {
    const ComplexMatrix direct = kraus[0] * rho * kraus[0].adjoint() + kraus[1] * rho * kraus[1].adjoint();
    CHECK(max_abs(apply_amap(a, rho) - direct) < 1e-14);
    CHECK(max_abs(apply_kraus(dec, rho) - direct) < 1e-12);
  }
  CHECK(realign_b_to_a(b).tensor == a.tensor);
}

TEST_CASE("transpose map is positive but not completely positive") {
  ComplexMatrix t(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) t(i * 2 + j, j * 2 + i) = 1.0;
  const AMap a = make_amap(t);
  const auto rho = random_density({2}, 8).matrix();
  CHECK(max_abs(apply_amap(a, rho) - rho.transpose()) < 1e-15);
  const auto cls = classify(realign_a_to_b(a));
  CHECK(cls.verdict == MapVerdict::NCP);
  CHECK(std::abs(cls.min_eigenvalue + 1.0) < 1e-12);
}

TEST_CASE("map construction rejects non-square-dimension tensors") {
  CHECK_THROWS_AS(make_amap(ComplexMatrix(3)), Error);
  CHECK_THROWS_AS(make_bmap(ComplexMatrix(6)), Error);
}

TEST_CASE("dual basis satisfies the biorthogonality relations") {
  const auto p = qubit_basis_P();
  const auto q = dual_Q(p);
  ComplexMatrix sum(2);
  for (std::size_t a = 0; a < 4; ++a) {
    sum += q[a];
    for (std::size_t b = 0; b < 4; ++b) {
      const Complex t = (p[a] * q[b]).trace();
      CHECK(std::abs(t - Complex(a == b ? 1.0 : 0.0, 0.0)) < 1e-13);
    }
  }
  CHECK(max_abs(sum - ComplexMatrix::identity(2)) < 1e-13);
  CHECK(max_abs(q[2] - pauli::z()) < 1e-13);
  CHECK(max_abs(q[1] - pauli::y()) < 1e-13);
}

TEST_CASE("dual basis errors") {
  const std::vector<ComplexMatrix> singular{ComplexMatrix::identity(2), ComplexMatrix::identity(2), pauli::x(), pauli::z()};
  try {
    (void)dual_Q(singular);
    FAIL("expected SingularBasis");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularBasis);
  }
  const std::vector<ComplexMatrix> unnormalized{ComplexMatrix::identity(2), pauli::x(), pauli::y(), pauli::z()};
  try {
    (void)dual_Q(unnormalized);
    FAIL("expected DualsDoNotResolveIdentity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DualsDoNotResolveIdentity);
  }
}

TEST_CASE("assignment map examples") {
  const auto am = example_assignment_map();
  const auto& p = am.basis();
  CHECK(max_abs(assignment_apply(am, p[2]) - tensor_product(am.assigned()[2].matrix(), p[2])) < 1e-14);
  const ComplexMatrix mix = 0.5 * (p[0] + p[2]);
  const ComplexMatrix expected =
      0.5 * (tensor_product(am.assigned()[0].matrix(), p[0]) + tensor_product(am.assigned()[2].matrix(), p[2]));
  CHECK(max_abs(assignment_apply(am, mix) - expected) < 1e-14);
  CHECK_THROWS_AS(assignment_apply(am, ComplexMatrix::identity(3)), Error);
}

TEST_CASE("worked example maps") {
  const auto maps = build_measurement_maps(example_assignment_map(), example_extended_projectors());
  CHECK(max_abs(maps.b.tensor - kReferenceB) < 1e-12);
  const ComplexMatrix a_expected{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.5, 0.5, 0.0}, {0.0, 0.5, 0.5, 0.0}, {0.0, 0.0, 0.0, 1.0}};
  CHECK(max_abs(maps.a.tensor - a_expected) < 1e-12);
  CHECK(maps.conditions.hermiticity_residual < 1e-12);
  CHECK(maps.conditions.trace_residual < 1e-12);
  const auto cls = classify(maps.b);
  CHECK(cls.verdict == MapVerdict::NCP);
  CHECK(std::abs(cls.min_eigenvalue + 0.5) < 1e-10);
  // Maps the σ₂ eigenstate ½(I + σ₂) to I/2.
  const ComplexMatrix y_plus = 0.5 * (ComplexMatrix::identity(2) + pauli::y());
  CHECK(max_abs(apply_amap(maps.a, y_plus) - ComplexMatrix::identity(2) * 0.5) < 1e-13);
}

TEST_CASE("map route agrees with the explicit extension route") {
  const auto am = example_assignment_map();
  const auto m = example_extended_projectors();
  const auto maps = build_measurement_maps(am, m);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_density({2}, 60 + s).matrix();
    CHECK(max_abs(apply_amap(maps.a, rho) - measured_via_extension(am, m, rho)) < 1e-12);
  }
}

TEST_CASE("constructed maps preserve trace and Hermiticity on the random corpus") {
  const auto maps = build_measurement_maps(example_assignment_map(), example_extended_projectors());
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto rho = random_density({2}, 800 + s).matrix();
    const ComplexMatrix out = apply_amap(maps.a, rho);
    CHECK(std::abs(out.trace() - Complex(1.0, 0.0)) < 1e-12);
    CHECK(hermiticity_residual(out) < 1e-12);
  }
}
