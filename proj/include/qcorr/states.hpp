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
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/projective.hpp"

namespace qcorr {

// Hermitian, positive semidefinite, unit-trace matrix together with its
// subsystem dimension signature. Instances are only produced by
// validate_density() or by library routines whose outputs are density
// matrices by construction.
class DensityMatrix {
 public:
  const Dims& dims() const noexcept { return dims_; }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return matrix_(i, j); }

  // For outputs that are density matrices by construction (marginals,
  // pinched states, convex mixtures). Hermiticity is re-imposed exactly;
  // no spectral check is made.
  static DensityMatrix trusted(Dims dims, const ComplexMatrix& m) {
    if (total_dim(dims) != m.dim()) {
      throw Error(ErrorKind::DimensionMismatch, "dims product does not match matrix dimension");
    }
    return DensityMatrix(std::move(dims), hermitian_part(m));
  }

  friend DensityMatrix validate_density(const ComplexMatrix& m, const Dims& dims);

 private:
  DensityMatrix(Dims dims, ComplexMatrix m) : dims_(std::move(dims)), matrix_(std::move(m)) {}

  Dims dims_;
  ComplexMatrix matrix_;
};

// Checks Hermiticity, positivity and unit trace at the validation tolerance.
// Eigenvalues in (-tol, 0) are clipped to zero and the result renormalized.
inline DensityMatrix validate_density(const ComplexMatrix& m, const Dims& dims) {
  if (dims.empty() || total_dim(dims) != m.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "dims product " + std::to_string(total_dim(dims)) +
                                                  " does not match matrix dimension " + std::to_string(m.dim()));
  }
  const double herm = hermiticity_residual(m);
  if (herm > tol::kValidation) {
    throw Error(ErrorKind::NotDensity, "not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol::kValidation) {
    throw Error(ErrorKind::NotDensity, "trace " + std::to_string(tr) + " differs from 1");
  }
  const auto es = hermitian_eig(m, tol::kValidation);
  const double min_eig = es.eigenvalues.front();
  if (min_eig < -tol::kValidation) {
    throw Error(ErrorKind::NotDensity, "negative eigenvalue " + std::to_string(min_eig));
  }
  ComplexMatrix out = m;
  if (min_eig < 0.0) {
    out = spectral_apply(es, [](double lambda) { return std::max(lambda, 0.0); });
  }
  out = hermitian_part(out);
  const double new_tr = out.trace().real();
  if (new_tr != 1.0) out *= 1.0 / new_tr;
  return DensityMatrix(dims, std::move(out));
}

// Normalized state vector.
class Ket {
 public:
  explicit Ket(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    double n = 0.0;
    for (const auto& a : amps_) n += std::norm(a);
    if (amps_.empty() || std::abs(std::sqrt(n) - 1.0) > 1e-12) {
      throw Error(ErrorKind::OutOfRange, "ket is not unit norm");
    }
  }

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  ComplexMatrix projector() const { return outer(amps_); }

  friend Ket operator*(const Ket& a, const Ket& b) {  // tensor product
    return Ket(tensor_product(a.amplitudes(), b.amplitudes()));
  }

 private:
  std::vector<Complex> amps_;
};

namespace kets {
inline Ket zero() { return Ket({1.0, 0.0}); }
inline Ket one() { return Ket({0.0, 1.0}); }
inline Ket plus() { return Ket({kInvSqrt2, kInvSqrt2}); }
inline Ket minus() { return Ket({kInvSqrt2, -kInvSqrt2}); }
}  // namespace kets

inline DensityMatrix pure_state(const Ket& k, Dims dims) {
  return DensityMatrix::trusted(std::move(dims), k.projector());
}

inline DensityMatrix maximally_mixed(Dims dims) {
  const std::size_t n = total_dim(dims);
  return DensityMatrix::trusted(std::move(dims), (1.0 / static_cast<double>(n)) * ComplexMatrix::identity(n));
}

inline DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityMatrix::trusted(std::move(dims), tensor_product(a.matrix(), b.matrix()));
}

// Marginal on the listed subsystems.
inline DensityMatrix reduce(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  Dims dims;
  for (std::size_t s = 0; s < rho.dims().size(); ++s)
    if (std::find(keep.begin(), keep.end(), s) != keep.end()) dims.push_back(rho.dims()[s]);
  return DensityMatrix::trusted(std::move(dims), partial_trace(rho.matrix(), rho.dims(), keep));
}

inline void require_unit_interval(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "p = " + std::to_string(p) + " not in [0, 1]");
}

// p |00><00| + (1 - p) |++><++|: separable, yet with non-zero discord for 0 < p < 1.
inline DensityMatrix example_separable(double p) {
  require_unit_interval(p);
  const ComplexMatrix m = p * (kets::zero() * kets::zero()).projector() +
                          (1.0 - p) * (kets::plus() * kets::plus()).projector();
  return DensityMatrix::trusted({2, 2}, m);
}

// Three-qubit extension A'⊗A⊗B of example_separable(p):
// p |1,0,0><1,0,0| + (1 - p) |0,+,+><0,+,+|.
inline DensityMatrix example_extension(double p) {
  require_unit_interval(p);
  const ComplexMatrix m = p * (kets::one() * kets::zero() * kets::zero()).projector() +
                          (1.0 - p) * (kets::zero() * kets::plus() * kets::plus()).projector();
  return DensityMatrix::trusted({2, 2, 2}, m);
}

inline void require_probability_vector(std::span<const double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error(ErrorKind::NotProbability, "negative or NaN weight");
    sum += w;
  }
  if (weights.empty() || std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorKind::NotProbability, "weights sum to " + std::to_string(sum));
  }
}

// Σ_α q_α Π_α ⊗ τ_α. Zero-weight terms are skipped.
inline DensityMatrix classical_correlated(std::span<const double> weights, const ProjectiveMeasurement& projectors,
                                         std::span<const DensityMatrix> states) {
  if (weights.size() != projectors.outcomes() || weights.size() != states.size()) {
    throw Error(ErrorKind::DimensionMismatch, "weight, projector and state counts differ");
  }
  require_probability_vector(weights);
  const Dims& b_dims = states.front().dims();
  for (const auto& s : states) {
    if (s.dims() != b_dims) throw Error(ErrorKind::DimensionMismatch, "conditional states of unequal dims");
  }
  Dims dims{projectors.dim()};
  dims.insert(dims.end(), b_dims.begin(), b_dims.end());
  ComplexMatrix m(total_dim(dims));
  for (std::size_t a = 0; a < weights.size(); ++a) {
    if (weights[a] == 0.0) continue;
    m += weights[a] * tensor_product(projectors[a], states[a].matrix());
  }
  return DensityMatrix::trusted(std::move(dims), m);
}

namespace detail {
inline ComplexMatrix gaussian_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(n);
  for (auto& x : g.entries()) {
    const double re = normal(rng);
    const double im = normal(rng);
    x = Complex(re, im);
  }
  return g;
}
}  // namespace detail

// G G^H / Tr(G G^H), G drawn entrywise from a seeded standard complex normal.
inline DensityMatrix random_density(const Dims& dims, std::uint64_t seed) {
  const std::size_t n = total_dim(dims);
  if (dims.empty() || n == 0 || n > 8) {
    throw Error(ErrorKind::DimensionMismatch, "random states are limited to total dimension <= 8");
  }
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = detail::gaussian_matrix(n, rng);
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return DensityMatrix::trusted(dims, m);
}

// Haar-ish random unitary: the eigenvector matrix of a random Hermitian matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = detail::gaussian_matrix(n, rng);
  return hermitian_eig(hermitian_part(g)).eigenvectors;
}

// Orthonormal-basis measurement whose projectors are the columns of u.
inline ProjectiveMeasurement basis_measurement(const ComplexMatrix& u, std::size_t leading_subsystems = 1) {
  std::vector<std::vector<Complex>> kets(u.dim(), std::vector<Complex>(u.dim()));
  for (std::size_t k = 0; k < u.dim(); ++k)
    for (std::size_t i = 0; i < u.dim(); ++i) kets[k][i] = u(i, k);
  return ProjectiveMeasurement::from_kets(kets, leading_subsystems);
}

}  // namespace qcorr
