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
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/projective.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct OptimizerConfig {
  int grid_resolution = 64;  // θ points; φ gets twice as many
  int refine_iterations = 200;
  double tolerance = 1e-10;

  void validate() const {
    if (grid_resolution < 8) throw Error(ErrorKind::OutOfRange, "grid_resolution must be >= 8");
    if (refine_iterations < 0) throw Error(ErrorKind::OutOfRange, "refine_iterations must be >= 0");
    if (!(tolerance > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be > 0");
  }
};

// Best Bloch direction found by the angle optimizer.
struct AngleOptimum {
  double value = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

// Canonical angles: θ in [0, π], φ in [0, 2π).
inline std::pair<double, double> normalize_angles(double theta, double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta > std::numbers::pi) {
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (theta == 0.0 || theta == std::numbers::pi) phi = 0.0;
  return {theta, phi};
}

// Nelder-Mead on the 2-simplex of angles, minimizing f.
template <typename F>
AngleOptimum nelder_mead(F&& f, double theta0, double phi0, double step_theta, double step_phi, int iterations,
                         double tolerance) {
  struct Vertex {
    std::array<double, 2> x;
    double fx;
  };
  std::size_t evals = 0;
  auto eval = [&](std::array<double, 2> x) {
    ++evals;
    return Vertex{x, f(x[0], x[1])};
  };
  std::array<Vertex, 3> s{eval({theta0, phi0}), eval({theta0 + step_theta, phi0}),
                          eval({theta0, phi0 + step_phi})};
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
  for (int it = 0; it < iterations; ++it) {
    std::stable_sort(s.begin(), s.end(), by_value);
    const double spread = s[2].fx - s[0].fx;
    const double size = std::max(std::abs(s[1].x[0] - s[0].x[0]) + std::abs(s[1].x[1] - s[0].x[1]),
                                 std::abs(s[2].x[0] - s[0].x[0]) + std::abs(s[2].x[1] - s[0].x[1]));
    if (spread <= tolerance * 1e-3 && size <= 1e-10) break;
    const std::array<double, 2> centroid{(s[0].x[0] + s[1].x[0]) / 2.0, (s[0].x[1] + s[1].x[1]) / 2.0};
    auto along = [&](double t) {
      return std::array<double, 2>{centroid[0] + t * (s[2].x[0] - centroid[0]),
                                   centroid[1] + t * (s[2].x[1] - centroid[1])};
    };
    const Vertex reflected = eval(along(-1.0));
    if (reflected.fx < s[0].fx) {
      const Vertex expanded = eval(along(-2.0));
      s[2] = expanded.fx < reflected.fx ? expanded : reflected;
    } else if (reflected.fx < s[1].fx) {
      s[2] = reflected;
    } else {
      const bool outside = reflected.fx < s[2].fx;
      const Vertex contracted = eval(along(outside ? -0.5 : 0.5));
      if (contracted.fx < std::min(reflected.fx, s[2].fx)) {
        s[2] = contracted;
      } else {
        for (std::size_t k = 1; k < 3; ++k) {
          s[k] = eval({s[0].x[0] + 0.5 * (s[k].x[0] - s[0].x[0]), s[0].x[1] + 0.5 * (s[k].x[1] - s[0].x[1])});
        }
      }
    }
  }
  std::stable_sort(s.begin(), s.end(), by_value);
  return {s[0].fx, s[0].x[0], s[0].x[1], evals};
}

}  // namespace detail

// Grid search over θ ∈ [0, π] (N points, poles included) × φ ∈ [0, 2π)
// (2N points), then Nelder-Mead from the best grid point. Grid ties go to
// the lexicographically smallest (θ, φ). Returns the minimum of f.
template <typename F>
AngleOptimum minimize_over_bloch_sphere(F&& f, const OptimizerConfig& cfg) {
  cfg.validate();
  const int n_theta = cfg.grid_resolution;
  const int n_phi = 2 * cfg.grid_resolution;
  const double d_theta = std::numbers::pi / (n_theta - 1);
  const double d_phi = 2.0 * std::numbers::pi / n_phi;
  AngleOptimum best;
  best.value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_theta; ++i) {
    const double theta = i * d_theta;
    for (int j = 0; j < n_phi; ++j) {
      const double phi = j * d_phi;
      const double v = f(theta, phi);
      ++best.evaluations;
      if (v < best.value) {
        best.value = v;
        best.theta = theta;
        best.phi = phi;
      }
    }
  }
  if (cfg.refine_iterations > 0) {
    const AngleOptimum refined =
        detail::nelder_mead(f, best.theta, best.phi, d_theta, d_phi, cfg.refine_iterations, cfg.tolerance);
    best.evaluations += refined.evaluations;
    if (refined.value < best.value) {
      best.value = refined.value;
      best.theta = refined.theta;
      best.phi = refined.phi;
    }
  }
  std::tie(best.theta, best.phi) = detail::normalize_angles(best.theta, best.phi);
  return best;
}

inline void require_two_qubits(const DensityMatrix& rho) {
  if (rho.dims() != Dims{2, 2}) {
    throw Error(ErrorKind::UnsupportedDimension, "optimization over Bloch directions needs a two-qubit state");
  }
}

// S(rho_B) - Σ_α p_α S(rho_{B|α}) for a measurement on the leading block.
inline double measured_mutual_information(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  const auto outcome = measure_subsystem(rho, m);
  std::vector<std::size_t> rest;
  for (std::size_t s = m.leading_subsystems(); s < rho.dims().size(); ++s) rest.push_back(s);
  double value = von_neumann_entropy(reduce(rho, rest));
  for (std::size_t a = 0; a < outcome.probabilities.size(); ++a) {
    if (outcome.conditional_states[a]) {
      value -= outcome.probabilities[a] * von_neumann_entropy(*outcome.conditional_states[a]);
    }
  }
  return value;
}

// Maximizes the measured mutual information over rank-1 projective
// measurements on qubit A. Discord and the HV classical correlation are both
// read off this single optimum.
inline AngleOptimum optimize_measured_information(const DensityMatrix& rho, const OptimizerConfig& cfg) {
  require_two_qubits(rho);
  auto negated = [&rho](double theta, double phi) {
    return -measured_mutual_information(rho, bloch_projectors(theta, phi));
  };
  AngleOptimum best = minimize_over_bloch_sphere(negated, cfg);
  best.value = -best.value;
  return best;
}

struct OptimizedMeasure {
  double value = 0.0;      // reported, clipped at zero when within tolerance
  double raw = 0.0;        // before clipping
  double theta = 0.0;      // optimal Bloch direction
  double phi = 0.0;
  std::size_t evaluations = 0;

  ProjectiveMeasurement measurement() const { return bloch_projectors(theta, phi); }
};

namespace detail {
inline double clip_small_negative(double raw, double tolerance) {
  return (raw < 0.0 && raw >= -tolerance) ? 0.0 : raw;
}
}  // namespace detail

inline OptimizedMeasure quantum_discord(const DensityMatrix& rho, const OptimizerConfig& cfg = {}) {
  const AngleOptimum opt = optimize_measured_information(rho, cfg);
  const double raw = mutual_information(rho) - opt.value;
  return {detail::clip_small_negative(raw, cfg.tolerance), raw, opt.theta, opt.phi, opt.evaluations};
}

inline OptimizedMeasure classical_correlation_hv(const DensityMatrix& rho, const OptimizerConfig& cfg = {}) {
  const AngleOptimum opt = optimize_measured_information(rho, cfg);
  return {detail::clip_small_negative(opt.value, cfg.tolerance), opt.value, opt.theta, opt.phi, opt.evaluations};
}

// min over measurements of S(pinch(rho)) - S(rho)
inline OptimizedMeasure oneway_deficit(const DensityMatrix& rho, const OptimizerConfig& cfg = {}) {
  require_two_qubits(rho);
  const double s_rho = von_neumann_entropy(rho);
  auto increase = [&](double theta, double phi) {
    return von_neumann_entropy(pinch(rho, bloch_projectors(theta, phi))) - s_rho;
  };
  const AngleOptimum opt = minimize_over_bloch_sphere(increase, cfg);
  return {detail::clip_small_negative(opt.value, cfg.tolerance), opt.value, opt.theta, opt.phi, opt.evaluations};
}

struct QuantumDeficit {
  double value = 0.0;
  double raw = 0.0;
  DensityMatrix decohered;  // Σ P(a,b) Π_a ⊗ Π_b
  std::vector<std::string> warnings;
};

// S(rho || rho_d) with rho_d the state decohered in the product of the
// marginal eigenbases. Degenerate marginals are handled with the eigensolver's
// deterministic basis and flagged with a DegenerateMarginal warning.
inline QuantumDeficit quantum_deficit(const DensityMatrix& rho, double tolerance = 1e-10) {
  require_bipartite(rho);
  const auto es_a = hermitian_eig(reduce(rho, {0}).matrix());
  const auto es_b = hermitian_eig(reduce(rho, {1}).matrix());
  std::vector<std::string> warnings;
  auto check_gap = [&warnings](const HermitianEigenSystem& es, const char* name) {
    for (std::size_t k = 1; k < es.eigenvalues.size(); ++k) {
      if (es.eigenvalues[k] - es.eigenvalues[k - 1] < 1e-8) {
        warnings.push_back(std::string("DegenerateMarginal: rho_") + name +
                           " has an eigenvalue gap below 1e-8; eigenbasis choice is not unique");
        return;
      }
    }
  };
  check_gap(es_a, "A");
  check_gap(es_b, "B");

  const std::size_t da = rho.dims()[0];
  const std::size_t db = rho.dims()[1];
  ComplexMatrix decohered(rho.dim());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b) {
      std::vector<Complex> va(da), vb(db);
      for (std::size_t i = 0; i < da; ++i) va[i] = es_a.eigenvectors(i, a);
      for (std::size_t i = 0; i < db; ++i) vb[i] = es_b.eigenvectors(i, b);
      const auto v = tensor_product(std::span<const Complex>(va), std::span<const Complex>(vb));
      const auto rv = multiply(rho.matrix(), v);
      Complex pab = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) pab += std::conj(v[i]) * rv[i];
      decohered += pab.real() * outer(v);
    }
  auto rho_d = DensityMatrix::trusted(rho.dims(), decohered);
  const double raw = relative_entropy(rho, rho_d);
  return {detail::clip_small_negative(raw, tolerance), raw, std::move(rho_d), std::move(warnings)};
}

struct DiscordDecomposition {
  double direct = 0.0;      // S(A:B) - J(m)
  double via_relent = 0.0;  // S(rho || rho^D) - S(rho_A || rho_A^D)
};

inline DiscordDecomposition discord_relative_entropy_decomposition(const DensityMatrix& rho,
                                                                   const ProjectiveMeasurement& m) {
  require_bipartite(rho);
  const double direct = mutual_information(rho) - measured_mutual_information(rho, m);
  const DensityMatrix rho_a = reduce(rho, {0});
  ComplexMatrix rho_a_pinched(rho_a.dim());
  for (const auto& pi : m.projectors()) rho_a_pinched += pi * rho_a.matrix() * pi;
  const double via = relative_entropy(rho, pinch(rho, m)) - relative_entropy(rho_a.matrix(), rho_a_pinched);
  return {direct, via};
}

struct MeasureReport {
  double mutual_information = 0.0;
  double discord = 0.0;
  double classical_correlation = 0.0;
  double oneway_deficit = 0.0;
  double quantum_deficit = 0.0;
  double theta = 0.0;  // shared optimum of discord and classical correlation
  double phi = 0.0;
  struct Diagnostics {
    std::size_t evaluations = 0;
    double raw_discord = 0.0;
    double raw_oneway_deficit = 0.0;
    double raw_quantum_deficit = 0.0;
    double oneway_theta = 0.0;
    double oneway_phi = 0.0;
  } diagnostics;
  std::vector<std::string> warnings;

  ProjectiveMeasurement optimal_measurement() const { return bloch_projectors(theta, phi); }
};

// Every measure for one two-qubit state, with discord and classical
// correlation sharing one optimizer run so that they add up to S(A:B).
inline MeasureReport compute_measures(const DensityMatrix& rho, const OptimizerConfig& cfg = {}) {
  require_two_qubits(rho);
  MeasureReport r;
  r.mutual_information = mutual_information(rho);
  const AngleOptimum info = optimize_measured_information(rho, cfg);
  r.classical_correlation = detail::clip_small_negative(info.value, cfg.tolerance);
  r.diagnostics.raw_discord = r.mutual_information - info.value;
  r.discord = detail::clip_small_negative(r.diagnostics.raw_discord, cfg.tolerance);
  r.theta = info.theta;
  r.phi = info.phi;
  const OptimizedMeasure oneway = oneway_deficit(rho, cfg);
  r.oneway_deficit = oneway.value;
  r.diagnostics.raw_oneway_deficit = oneway.raw;
  r.diagnostics.oneway_theta = oneway.theta;
  r.diagnostics.oneway_phi = oneway.phi;
  QuantumDeficit qd = quantum_deficit(rho, cfg.tolerance);
  r.quantum_deficit = qd.value;
  r.diagnostics.raw_quantum_deficit = qd.raw;
  r.diagnostics.evaluations = info.evaluations + oneway.evaluations;
  r.warnings = std::move(qd.warnings);
  return r;
}

}  // namespace qcorr
