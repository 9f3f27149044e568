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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/maps.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// Σ_i p_i ρᴬ_i ⊗ ρᴮ_i
struct SeparableEnsemble {
  std::vector<double> weights;
  std::vector<DensityMatrix> a_states;
  std::vector<DensityMatrix> b_states;

  std::size_t size() const noexcept { return weights.size(); }

  DensityMatrix assemble() const {
    if (weights.empty() || a_states.size() != weights.size() || b_states.size() != weights.size()) {
      throw Error(ErrorKind::DimensionMismatch, "ensemble term counts differ");
    }
    require_probability_vector(weights);
    Dims dims = a_states.front().dims();
    dims.insert(dims.end(), b_states.front().dims().begin(), b_states.front().dims().end());
    ComplexMatrix m(total_dim(dims));
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] == 0.0) continue;
      m += weights[i] * tensor_product(a_states[i].matrix(), b_states[i].matrix());
    }
    return DensityMatrix::trusted(std::move(dims), m);
  }
};

namespace detail {
inline void require_extended_measurement(const DensityMatrix& rho_ext, const ProjectiveMeasurement& m) {
  if (rho_ext.dims().size() < 3 || m.leading_subsystems() != 2) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected an A'⊗A⊗B state and a measurement on the leading A'A block");
  }
}

inline std::vector<std::size_t> range_from(std::size_t first, std::size_t end) {
  std::vector<std::size_t> out;
  for (std::size_t s = first; s < end; ++s) out.push_back(s);
  return out;
}
}  // namespace detail

// Tr_{A'}[Σ_i (Π_i ⊗ I_B) rho_ext (Π_i ⊗ I_B)]
inline DensityMatrix residual_state(const DensityMatrix& rho_ext, const ProjectiveMeasurement& m) {
  detail::require_extended_measurement(rho_ext, m);
  return reduce(pinch(rho_ext, m), detail::range_from(1, rho_ext.dims().size()));
}

// The residual state written as Σ_i p_i Tr_{A'}[Π_i] ⊗ ρᴮ_i. Requires rank-1
// projectors; outcomes with p_i < 1e-12 are dropped.
inline SeparableEnsemble separable_decomposition(const DensityMatrix& rho_ext, const ProjectiveMeasurement& m) {
  detail::require_extended_measurement(rho_ext, m);
  const Dims& dims = rho_ext.dims();
  const Dims block_dims{dims[0], dims[1]};
  const Dims a_dims{dims[1]};
  for (std::size_t i = 0; i < m.outcomes(); ++i) {
    const double rank = m[i].trace().real();
    if (std::abs(rank - 1.0) > 1e-10) {
      throw Error(ErrorKind::NotRankOne, "projector " + std::to_string(i) + " has rank " + std::to_string(rank));
    }
  }
  const auto outcome = measure_subsystem(rho_ext, m);
  SeparableEnsemble ens;
  for (std::size_t i = 0; i < m.outcomes(); ++i) {
    if (!outcome.conditional_states[i]) continue;
    ens.weights.push_back(outcome.probabilities[i]);
    ens.a_states.push_back(DensityMatrix::trusted(a_dims, partial_trace(m[i], block_dims, {1})));
    ens.b_states.push_back(*outcome.conditional_states[i]);
  }
  // Renormalize away the dropped outcomes' weight.
  double total = 0.0;
  for (double w : ens.weights) total += w;
  for (double& w : ens.weights) w /= total;
  return ens;
}

struct InsensitivityReport {
  double residual_tripartite = 0.0;  // ‖pinch(ρ_A'AB) − ρ_A'AB‖_F
  double residual_bipartite = 0.0;   // ‖ρ^R_AB − ρ_AB‖_F
  double relative_entropy = 0.0;     // S(ρ_AB ‖ ρ^R_AB)
  bool quantumness_zero = false;
};

// Runs the worked example: example_extension(p) measured with
// example_extended_projectors().
inline InsensitivityReport verify_example_insensitivity(double p) {
  require_unit_interval(p);
  const DensityMatrix ext = example_extension(p);
  const DensityMatrix target = example_separable(p);
  const ProjectiveMeasurement m = example_extended_projectors();
  InsensitivityReport r;
  r.residual_tripartite = is_insensitive(ext, m).residual;
  const DensityMatrix residual = residual_state(ext, m);
  r.residual_bipartite = frobenius_norm(residual.matrix() - target.matrix());
  r.relative_entropy = relative_entropy(target, residual);
  r.quantumness_zero = r.relative_entropy < 1e-10;
  return r;
}

struct QuantumnessOptions {
  int terms = 8;
  int restarts = 8;
  std::uint64_t seed = 0;
  // Separable decomposition of the input known from how it was built. It is
  // evaluated as restart 0 and pins the zero cases exactly.
  std::optional<SeparableEnsemble> witness;
};

struct RestartResult {
  int index = 0;  // 0 = direct witness, 1.. = seeded random restarts
  double bound = std::numeric_limits<double>::infinity();
  double marginal_residual = std::numeric_limits<double>::infinity();
  bool feasible = false;
};

struct QuantumnessEstimate {
  double upper_bound = 0.0;  // S(ρ ‖ witness), an upper bound on the quantumness
  SeparableEnsemble witness;
  double marginal_residual = 0.0;  // ‖Tr_A witness − ρ_B‖_F
  int restarts_used = 0;
  std::vector<RestartResult> restarts;
};

namespace detail {

inline constexpr double kFeasibleMarginal = 1e-4;

inline ComplexMatrix bloch_state(double theta, double phi, double radius) {
  const double x = radius * std::sin(theta) * std::cos(phi);
  const double y = radius * std::sin(theta) * std::sin(phi);
  const double z = radius * std::cos(theta);
  return ComplexMatrix{{0.5 * (1.0 + z), Complex(0.5 * x, -0.5 * y)}, {Complex(0.5 * x, 0.5 * y), 0.5 * (1.0 - z)}};
}

// Parameter layout per term: weight, (θ, φ, r) for A, (θ, φ, r) for B.
inline constexpr std::size_t kParamsPerTerm = 7;

inline bool is_radius(std::size_t k) {
  const std::size_t slot = k % kParamsPerTerm;
  return slot == 3 || slot == 6;
}

inline bool is_weight(std::size_t k) { return k % kParamsPerTerm == 0; }

inline SeparableEnsemble ensemble_from_params(const std::vector<double>& x) {
  const std::size_t terms = x.size() / kParamsPerTerm;
  SeparableEnsemble ens;
  double total = 0.0;
  for (std::size_t t = 0; t < terms; ++t) total += x[t * kParamsPerTerm];
  for (std::size_t t = 0; t < terms; ++t) {
    const double* p = &x[t * kParamsPerTerm];
    ens.weights.push_back(total > 0.0 ? p[0] / total : 1.0 / static_cast<double>(terms));
    ens.a_states.push_back(DensityMatrix::trusted({2}, bloch_state(p[1], p[2], p[3])));
    ens.b_states.push_back(DensityMatrix::trusted({2}, bloch_state(p[4], p[5], p[6])));
  }
  return ens;
}

class PenalizedObjective {
 public:
  explicit PenalizedObjective(const DensityMatrix& rho)
      : rho_(rho), rho_b_(reduce(rho, {1}).matrix()), entropy_(von_neumann_entropy(rho)) {}

  double relative_entropy_to(const ComplexMatrix& sigma) const {
    const auto es = hermitian_eig(sigma);
    const std::size_t n = sigma.dim();
    double cross = 0.0;
    double outside = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      Complex w = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          w += std::conj(es.eigenvectors(i, k)) * rho_(i, j) * es.eigenvectors(j, k);
      if (es.eigenvalues[k] > tol::kSupportCutoff) {
        cross += w.real() * std::log2(es.eigenvalues[k]);
      } else {
        outside += w.real();
      }
    }
    if (outside > tol::kSupportWeight) return std::numeric_limits<double>::infinity();
    return std::max(-entropy_ - cross, 0.0);
  }

  double marginal_residual(const ComplexMatrix& sigma) const {
    return frobenius_norm(partial_trace(sigma, {2, 2}, {1}) - rho_b_);
  }

  double operator()(const std::vector<double>& x, double mu) const {
    const ComplexMatrix sigma = ensemble_from_params(x).assemble().matrix();
    const double s = relative_entropy_to(sigma);
    if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
    const double r = marginal_residual(sigma);
    return s + mu * r * r;
  }

 private:
  const DensityMatrix& rho_;
  ComplexMatrix rho_b_;
  double entropy_;
};

// Coordinate-wise pattern search with per-coordinate step halving; weights
// are kept nonnegative and Bloch radii inside [0, 1].
inline void coordinate_refine(const PenalizedObjective& f, std::vector<double>& x, double mu, int max_sweeps) {
  std::vector<double> step(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) step[k] = is_weight(k) ? 0.1 : (is_radius(k) ? 0.1 : 0.3);
  double fx = f(x, mu);
  auto clamp = [](std::size_t k, double v) {
    if (is_weight(k)) return std::max(v, 0.0);
    if (is_radius(k)) return std::clamp(v, 0.0, 1.0);
    return v;
  };
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double largest = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double orig = x[k];
      bool moved = false;
      for (double dir : {1.0, -1.0}) {
        x[k] = clamp(k, orig + dir * step[k]);
        if (x[k] == orig) continue;
        const double fn = f(x, mu);
        if (fn < fx) {
          fx = fn;
          moved = true;
          break;
        }
      }
      if (moved) {
        step[k] *= 1.5;
      } else {
        x[k] = orig;
        step[k] *= 0.5;
      }
      largest = std::max(largest, step[k]);
    }
    if (largest < 1e-9) break;
  }
}

inline std::vector<double> random_params(int terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x;
  for (int t = 0; t < terms; ++t) {
    x.push_back(unit(rng));
    for (int side = 0; side < 2; ++side) {
      x.push_back(std::acos(2.0 * unit(rng) - 1.0));
      x.push_back(2.0 * std::numbers::pi * unit(rng));
      x.push_back(unit(rng));
    }
  }
  return x;
}

// Witness for states that are separable by inspection: products, and states
// left unchanged by pinching A in the eigenbasis of ρ_A.
inline std::optional<SeparableEnsemble> structural_witness(const DensityMatrix& rho) {
  const DensityMatrix rho_a = reduce(rho, {0});
  const DensityMatrix rho_b = reduce(rho, {1});
  if (max_abs(tensor_product(rho_a.matrix(), rho_b.matrix()) - rho.matrix()) <= 1e-12) {
    return SeparableEnsemble{{1.0}, {rho_a}, {rho_b}};
  }
  const auto basis = basis_measurement(hermitian_eig(rho_a.matrix()).eigenvectors);
  if (is_insensitive(rho, basis, 1e-12).insensitive) {
    const auto outcome = measure_subsystem(rho, basis);
    SeparableEnsemble ens;
    for (std::size_t a = 0; a < basis.outcomes(); ++a) {
      if (!outcome.conditional_states[a]) continue;
      ens.weights.push_back(outcome.probabilities[a]);
      ens.a_states.push_back(DensityMatrix::trusted({rho.dims()[0]}, basis[a]));
      ens.b_states.push_back(*outcome.conditional_states[a]);
    }
    double total = 0.0;
    for (double w : ens.weights) total += w;
    for (double& w : ens.weights) w /= total;
    return ens;
  }
  return std::nullopt;
}

}  // namespace detail

// Upper bound on min S(ρ ‖ σ) over separable σ with Tr_A σ = ρ_B, found by
// penalized local search over K-term product ensembles from seeded random
// starts (plus a direct witness when one is known). Never the exact minimum.
inline QuantumnessEstimate quantumness_upper_bound(const DensityMatrix& rho, const QuantumnessOptions& opts = {}) {
  require_two_qubits(rho);
  if (opts.terms < 4) throw Error(ErrorKind::OutOfRange, "at least 4 ensemble terms are required");
  if (opts.restarts < 0) throw Error(ErrorKind::OutOfRange, "restarts must be >= 0");

  const detail::PenalizedObjective objective(rho);
  QuantumnessEstimate best;
  bool have_best = false;
  auto consider = [&](int index, SeparableEnsemble ens) {
    const ComplexMatrix sigma = ens.assemble().matrix();
    RestartResult r;
    r.index = index;
    r.bound = relative_entropy(rho.matrix(), sigma);
    r.marginal_residual = objective.marginal_residual(sigma);
    r.feasible = std::isfinite(r.bound) && r.marginal_residual < detail::kFeasibleMarginal;
    best.restarts.push_back(r);
    ++best.restarts_used;
    if (r.feasible && (!have_best || r.bound < best.upper_bound)) {
      have_best = true;
      best.upper_bound = r.bound;
      best.marginal_residual = r.marginal_residual;
      best.witness = std::move(ens);
    }
  };

  std::optional<SeparableEnsemble> direct = opts.witness;
  if (!direct) direct = detail::structural_witness(rho);
  if (direct) consider(0, *direct);

  if (!(have_best && best.upper_bound == 0.0)) {
    constexpr int kOuterIterations = 4;
    constexpr double kInitialPenalty = 100.0;
    constexpr int kSweeps = 300;
    for (int restart = 1; restart <= opts.restarts; ++restart) {
      std::seed_seq seq{static_cast<std::uint64_t>(opts.seed), static_cast<std::uint64_t>(restart)};
      std::mt19937_64 rng(seq);
      std::vector<double> x = detail::random_params(opts.terms, rng);
      double mu = kInitialPenalty;
      for (int outer = 0; outer < kOuterIterations; ++outer, mu *= 10.0) {
        detail::coordinate_refine(objective, x, mu, kSweeps);
      }
      consider(restart, detail::ensemble_from_params(x));
    }
  }
  if (!have_best) {
    throw Error(ErrorKind::NoFeasibleWitness, "no restart met the marginal residual target of 1e-4");
  }
  return best;
}

}  // namespace qcorr
