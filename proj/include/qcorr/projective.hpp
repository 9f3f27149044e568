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

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr {

// A complete set of mutually orthogonal Hermitian projectors acting on the
// leading `leading_subsystems` factors of a state's dimension signature
// (1 = subsystem A of an A⊗B state, 2 = block A'A of an A'⊗A⊗B state).
class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::vector<ComplexMatrix> projectors, std::size_t leading_subsystems = 1,
                                 double tolerance = tol::kValidation)
      : projectors_(std::move(projectors)), leading_(leading_subsystems) {
    if (projectors_.empty()) throw Error(ErrorKind::NotProjective, "empty projector set");
    if (leading_ == 0) throw Error(ErrorKind::NotProjective, "measurement must cover at least one subsystem");
    const std::size_t d = projectors_.front().dim();
    ComplexMatrix sum(d);
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
      const auto& pi = projectors_[i];
      if (pi.dim() != d) throw Error(ErrorKind::DimensionMismatch, "projectors of unequal dimension");
      if (hermiticity_residual(pi) > tolerance) {
        throw Error(ErrorKind::NotProjective, "projector " + std::to_string(i) + " is not Hermitian");
      }
      if (max_abs(pi * pi - pi) > tolerance) {
        throw Error(ErrorKind::NotProjective, "projector " + std::to_string(i) + " is not idempotent");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (max_abs(pi * projectors_[j]) > tolerance) {
          throw Error(ErrorKind::NotProjective,
                      "projectors " + std::to_string(j) + " and " + std::to_string(i) + " are not orthogonal");
        }
      }
      sum += pi;
    }
    if (max_abs(sum - ComplexMatrix::identity(d)) > tolerance) {
      throw Error(ErrorKind::NotProjective, "projectors do not sum to the identity");
    }
  }

  // Rank-1 projectors onto an orthonormal set of kets.
  static ProjectiveMeasurement from_kets(const std::vector<std::vector<Complex>>& kets,
                                         std::size_t leading_subsystems = 1) {
    std::vector<ComplexMatrix> ps;
    ps.reserve(kets.size());
    for (const auto& k : kets) ps.push_back(outer(k));
    return ProjectiveMeasurement(std::move(ps), leading_subsystems);
  }

  static ProjectiveMeasurement computational_basis(std::size_t dim) {
    std::vector<ComplexMatrix> ps;
    for (std::size_t i = 0; i < dim; ++i) {
      ComplexMatrix p(dim);
      p(i, i) = 1.0;
      ps.push_back(std::move(p));
    }
    return ProjectiveMeasurement(std::move(ps));
  }

  // The one-outcome measurement {I}.
  static ProjectiveMeasurement trivial(std::size_t dim, std::size_t leading_subsystems = 1) {
    return ProjectiveMeasurement({ComplexMatrix::identity(dim)}, leading_subsystems);
  }

  std::size_t dim() const noexcept { return projectors_.front().dim(); }
  std::size_t outcomes() const noexcept { return projectors_.size(); }
  std::size_t leading_subsystems() const noexcept { return leading_; }
  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  const ComplexMatrix& operator[](std::size_t i) const { return projectors_.at(i); }

 private:
  std::vector<ComplexMatrix> projectors_;
  std::size_t leading_;
};

// Qubit measurement along the Bloch direction (sinθcosφ, sinθsinφ, cosθ).
// The complementary projector is assembled so that Π₊ + Π₋ = I holds in
// floating point without rounding: the larger diagonal entry d and its
// partner 1 - d are both exact.
inline ProjectiveMeasurement bloch_projectors(double theta, double phi) {
  const double c2 = std::cos(theta / 2.0);
  const double s2 = std::sin(theta / 2.0);
  double up = c2 * c2;
  double down = s2 * s2;
  if (up >= 0.5) {
    down = 1.0 - up;
  } else {
    up = 1.0 - down;
  }
  const Complex coherence = c2 * s2 * std::polar(1.0, -phi);  // <0|n+><n+|1>
  ComplexMatrix plus{{up, coherence}, {std::conj(coherence), down}};
  ComplexMatrix minus{{down, -coherence}, {-std::conj(coherence), up}};
  return ProjectiveMeasurement({std::move(plus), std::move(minus)});
}

}  // namespace qcorr
