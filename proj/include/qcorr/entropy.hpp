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
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// All entropies are in bits.

inline double shannon_entropy(std::span<const double> p) {
  require_probability_vector(p);
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return std::max(h, 0.0);
}

// Joint distribution P(a, b), rows indexed by a.
class ProbabilityTable {
 public:
  ProbabilityTable(std::size_t rows, std::size_t cols, std::vector<double> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    if (values_.size() != rows_ * cols_) throw Error(ErrorKind::DimensionMismatch, "table shape mismatch");
    require_probability_vector(values_);
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t a, std::size_t b) const noexcept { return values_[a * cols_ + b]; }
  std::span<const double> joint() const noexcept { return values_; }

  std::vector<double> marginal_a() const {
    std::vector<double> out(rows_, 0.0);
    for (std::size_t a = 0; a < rows_; ++a)
      for (std::size_t b = 0; b < cols_; ++b) out[a] += (*this)(a, b);
    return out;
  }

  std::vector<double> marginal_b() const {
    std::vector<double> out(cols_, 0.0);
    for (std::size_t a = 0; a < rows_; ++a)
      for (std::size_t b = 0; b < cols_; ++b) out[b] += (*this)(a, b);
    return out;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

// H(A) + H(B) - H(A,B)
inline double shannon_mutual_information(const ProbabilityTable& p) {
  const double value = shannon_entropy(p.marginal_a()) + shannon_entropy(p.marginal_b()) -
                       shannon_entropy(p.joint());
  return std::max(value, 0.0);
}

namespace detail {
inline double spectrum_entropy(std::span<const double> eigenvalues) {
  double h = 0.0;
  for (double x : eigenvalues)
    if (x > tol::kSupportCutoff) h -= x * std::log2(x);
  return std::max(h, 0.0);
}
}  // namespace detail

inline double von_neumann_entropy(const ComplexMatrix& rho) {
  return detail::spectrum_entropy(hermitian_eig(rho).eigenvalues);
}

inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

// S(rho || sigma) = Tr[rho log rho] - Tr[rho log sigma], evaluated on the
// support of sigma. Returns +infinity when rho puts more than 1e-8 weight
// outside supp(sigma). Arguments equal to within 1e-14 give exactly 0.
inline double relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "relative entropy of unequal dims");
  if (max_abs(rho - sigma) <= tol::kConstruction) return 0.0;
  const auto sig = hermitian_eig(sigma);
  const std::size_t n = sigma.dim();
  double outside = 0.0;
  double cross = 0.0;  // Tr[rho log sigma]
  for (std::size_t k = 0; k < n; ++k) {
    // <v_k| rho |v_k>
    Complex w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += rho(i, j) * sig.eigenvectors(j, k);
      w += std::conj(sig.eigenvectors(i, k)) * row;
    }
    const double lambda = sig.eigenvalues[k];
    if (lambda > tol::kSupportCutoff) {
      cross += w.real() * std::log2(lambda);
    } else {
      outside += w.real();
    }
  }
  if (outside > tol::kSupportWeight) return std::numeric_limits<double>::infinity();
  const double value = -von_neumann_entropy(rho) - cross;
  return std::max(value, 0.0);
}

inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy(rho.matrix(), sigma.matrix());
}

inline void require_bipartite(const DensityMatrix& rho) {
  if (rho.dims().size() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "expected a bipartite state, got " +
                                                  std::to_string(rho.dims().size()) + " subsystems");
  }
}

// S(A) + S(B) - S(AB)
inline double mutual_information(const DensityMatrix& rho) {
  require_bipartite(rho);
  const double value = von_neumann_entropy(reduce(rho, {0})) + von_neumann_entropy(reduce(rho, {1})) -
                       von_neumann_entropy(rho);
  return std::max(value, 0.0);
}

}  // namespace qcorr
