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

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "qcorr/qcorr.hpp"

namespace testing_support {

inline Eigen::MatrixXcd to_eigen(const qcorr::ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

inline qcorr::ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  qcorr::ComplexMatrix m(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

// Seeded random two-qubit corpus shared by property tests.
inline std::vector<qcorr::DensityMatrix> random_two_qubit_corpus(std::size_t n, std::uint64_t first_seed = 1000) {
  std::vector<qcorr::DensityMatrix> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(qcorr::random_density({2, 2}, first_seed + k));
  return out;
}

inline qcorr::DensityMatrix random_product(std::uint64_t seed) {
  return qcorr::tensor_product(qcorr::random_density({2}, 2 * seed + 1), qcorr::random_density({2}, 2 * seed + 2));
}

// Σ_α q_α Π_α ⊗ τ_α with Π from a random basis on A and τ_α diagonal in a
// second random basis on B, so that both marginal eigenbases are shared by
// every term.
inline qcorr::DensityMatrix random_classical(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const double q = u(rng);
  const double t0 = u(rng);
  const double t1 = u(rng);
  const qcorr::ComplexMatrix ua = qcorr::random_unitary(2, seed + 7001);
  const qcorr::ComplexMatrix ub = qcorr::random_unitary(2, seed + 9001);
  auto diag_state = [&](double t) {
    const std::vector<double> d{t, 1.0 - t};
    return qcorr::DensityMatrix::trusted({2}, ub * qcorr::ComplexMatrix::diagonal(d) * ub.adjoint());
  };
  const std::vector<double> weights{q, 1.0 - q};
  const std::vector<qcorr::DensityMatrix> states{diag_state(t0), diag_state(t1)};
  return qcorr::classical_correlated(weights, qcorr::basis_measurement(ua), states);
}

}  // namespace testing_support
