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

#include "qcorr/projective.hpp"
#include "qcorr/states.hpp"

using namespace qcorr;

namespace {
ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::OutOfRange;
}
}  // namespace

TEST_CASE("validate_density accepts states and rejects non-states") {
  CHECK_NOTHROW(validate_density(ComplexMatrix::identity(4) * 0.25, {2, 2}));
  CHECK(kind_of([] { validate_density(ComplexMatrix::identity(4) * 0.25, {2, 3}); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { validate_density(ComplexMatrix::identity(2), {2}); }) == ErrorKind::NotDensity);
  const ComplexMatrix neg{{1.2, 0.0}, {0.0, -0.2}};
  CHECK(kind_of([&] { validate_density(neg, {2}); }) == ErrorKind::NotDensity);
  const ComplexMatrix skew{{0.5, Complex(0, 0.1)}, {Complex(0, 0.1), 0.5}};
  CHECK(kind_of([&] { validate_density(skew, {2}); }) == ErrorKind::NotDensity);
}

TEST_CASE("validate_density clips round-off negatives") {
  const ComplexMatrix m{{1.0 + 1e-12, 0.0}, {0.0, -1e-12}};
  const auto rho = validate_density(m, {2});
  CHECK(rho(1, 1).real() >= 0.0);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-15);
}

TEST_CASE("kets and pure states") {
  CHECK_THROWS_AS(Ket({1.0, 1.0}), Error);
  const auto bell = pure_state(Ket({kInvSqrt2, 0.0, 0.0, kInvSqrt2}), {2, 2});
  CHECK(std::abs(bell(0, 3).real() - 0.5) < 1e-15);
  CHECK(max_abs(reduce(bell, {0}).matrix() - ComplexMatrix::identity(2) * 0.5) < 1e-15);
}

TEST_CASE("worked example states") {
  const auto rho = example_separable(0.5);
  CHECK(std::abs(rho(0, 0).real() - 0.625) < 1e-15);
  CHECK(std::abs(rho(3, 3).real() - 0.125) < 1e-15);
  const auto ext = example_extension(0.3);
  CHECK(max_abs(reduce(ext, {1, 2}).matrix() - example_separable(0.3).matrix()) < 1e-15);
  CHECK_THROWS_AS(example_separable(1.5), Error);
  CHECK_THROWS_AS(example_separable(-0.01), Error);
}

TEST_CASE("classical_correlated builds a block-diagonal state") {
  const auto m = ProjectiveMeasurement::computational_basis(2);
  const std::vector<double> w{0.3, 0.7};
  const std::vector<DensityMatrix> t{pure_state(kets::plus(), {2}), maximally_mixed({2})};
  const auto rho = classical_correlated(w, m, t);
  CHECK(rho.dims() == Dims{2, 2});
  CHECK(std::abs(rho(0, 1).real() - 0.15) < 1e-15);
  CHECK(rho(0, 2) == Complex{});
  const std::vector<double> bad{0.3, 0.6};
  CHECK_THROWS_AS(classical_correlated(bad, m, t), Error);
}

TEST_CASE("random states are valid and reproducible") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = random_density({2, 2}, s);
    CHECK_NOTHROW(validate_density(rho.matrix(), {2, 2}));
    CHECK(rho.matrix() == random_density({2, 2}, s).matrix());
  }
  CHECK_THROWS_AS(random_density({3, 3}, 0), Error);
  const ComplexMatrix u = random_unitary(3, 9);
  CHECK(max_abs(u * u.adjoint() - ComplexMatrix::identity(3)) < 1e-12);
}

TEST_CASE("projective measurement validation") {
  CHECK_NOTHROW(bloch_projectors(0.7, 2.1));
  const auto b = bloch_projectors(0.7, 2.1);
  CHECK(b[0] + b[1] == ComplexMatrix::identity(2));
  const ComplexMatrix half = ComplexMatrix::identity(2) * 0.5;
  CHECK_THROWS_AS(ProjectiveMeasurement({half, half}), Error);
  CHECK_THROWS_AS(ProjectiveMeasurement({pure_state(kets::zero(), {2}).matrix()}), Error);
  const auto triv = ProjectiveMeasurement::trivial(4, 2);
  CHECK(triv.outcomes() == 1);
  CHECK(triv.leading_subsystems() == 2);
}
