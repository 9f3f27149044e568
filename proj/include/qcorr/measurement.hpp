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

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/projective.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

struct MeasurementOutcome {
  std::vector<double> probabilities;
  // Post-measurement states of the unmeasured subsystems; empty for outcomes
  // with probability below 1e-12.
  std::vector<std::optional<DensityMatrix>> conditional_states;
  DensityMatrix pinched_state;
};

struct PovmEnsemble {
  std::vector<double> probabilities;
  std::vector<std::optional<DensityMatrix>> states;
};

namespace detail {

// Splits rho's signature into the measured leading block and the rest.
struct BlockSplit {
  std::size_t measured_dim;
  Dims rest_dims;
  std::vector<std::size_t> rest_subsystems;
};

inline BlockSplit split_leading(const Dims& dims, std::size_t leading, std::size_t operator_dim) {
  if (leading >= dims.size()) {
    throw Error(ErrorKind::DimensionMismatch, "measurement must leave at least one subsystem unmeasured");
  }
  BlockSplit split{1, {}, {}};
  for (std::size_t s = 0; s < dims.size(); ++s) {
    if (s < leading) {
      split.measured_dim *= dims[s];
    } else {
      split.rest_dims.push_back(dims[s]);
      split.rest_subsystems.push_back(s);
    }
  }
  if (split.measured_dim != operator_dim) {
    throw Error(ErrorKind::DimensionMismatch, "operator dimension " + std::to_string(operator_dim) +
                                                  " does not match measured block dimension " +
                                                  std::to_string(split.measured_dim));
  }
  return split;
}

// (X ⊗ I) rho (X ⊗ I)^H for X acting on the leading block of dimension
// x.dim(), exploiting the block structure instead of forming X ⊗ I.
inline ComplexMatrix sandwich_leading(const ComplexMatrix& x, const ComplexMatrix& rho) {
  const std::size_t da = x.dim();
  const std::size_t db = rho.dim() / da;
  ComplexMatrix tmp(rho.dim());  // (X ⊗ I) rho
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t c = 0; c < da; ++c) {
      const Complex xac = x(a, c);
      if (xac == Complex{}) continue;
      for (std::size_t b = 0; b < db; ++b)
        for (std::size_t col = 0; col < rho.dim(); ++col) tmp(a * db + b, col) += xac * rho(c * db + b, col);
    }
  ComplexMatrix out(rho.dim());  // tmp (X^H ⊗ I)
  for (std::size_t row = 0; row < rho.dim(); ++row)
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t c = 0; c < da; ++c) {
        const Complex xac = std::conj(x(a, c));
        if (xac == Complex{}) continue;
        for (std::size_t b = 0; b < db; ++b) out(row, a * db + b) += tmp(row, c * db + b) * xac;
      }
  return out;
}

}  // namespace detail

inline MeasurementOutcome measure_subsystem(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  const auto split = detail::split_leading(rho.dims(), m.leading_subsystems(), m.dim());
  MeasurementOutcome out{{}, {}, DensityMatrix::trusted(rho.dims(), ComplexMatrix(rho.dim()))};
  ComplexMatrix pinched(rho.dim());
  for (const auto& pi : m.projectors()) {
    const ComplexMatrix branch = detail::sandwich_leading(pi, rho.matrix());
    pinched += branch;
    const double p = branch.trace().real();
    out.probabilities.push_back(p);
    if (p < tol::kZeroProbability) {
      out.conditional_states.emplace_back(std::nullopt);
      continue;
    }
    ComplexMatrix cond = partial_trace(branch, rho.dims(), split.rest_subsystems);
    cond *= 1.0 / p;
    out.conditional_states.emplace_back(DensityMatrix::trusted(split.rest_dims, cond));
  }
  out.pinched_state = DensityMatrix::trusted(rho.dims(), pinched);
  return out;
}

// Σ_α (Π_α ⊗ I) rho (Π_α ⊗ I)
inline DensityMatrix pinch(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  detail::split_leading(rho.dims(), m.leading_subsystems(), m.dim());
  ComplexMatrix pinched(rho.dim());
  for (const auto& pi : m.projectors()) pinched += detail::sandwich_leading(pi, rho.matrix());
  return DensityMatrix::trusted(rho.dims(), pinched);
}

// Generalized measurement in operator form {V_i} on the leading subsystem.
inline PovmEnsemble apply_povm_elements(const DensityMatrix& rho, std::span<const ComplexMatrix> elements,
                                        std::size_t leading_subsystems = 1) {
  if (elements.empty()) throw Error(ErrorKind::NotResolutionOfIdentity, "no POVM elements");
  const std::size_t d = elements.front().dim();
  ComplexMatrix resolution(d);
  for (const auto& v : elements) {
    if (v.dim() != d) throw Error(ErrorKind::DimensionMismatch, "POVM elements of unequal dimension");
    resolution += v.adjoint() * v;
  }
  const double dev = max_abs(resolution - ComplexMatrix::identity(d));
  if (dev > tol::kValidation) {
    throw Error(ErrorKind::NotResolutionOfIdentity, "sum V^H V deviates from I by " + std::to_string(dev));
  }
  const auto split = detail::split_leading(rho.dims(), leading_subsystems, d);
  PovmEnsemble out;
  for (const auto& v : elements) {
    const ComplexMatrix branch = detail::sandwich_leading(v, rho.matrix());
    const double q = branch.trace().real();
    out.probabilities.push_back(q);
    if (q < tol::kZeroProbability) {
      out.states.emplace_back(std::nullopt);
      continue;
    }
    ComplexMatrix cond = partial_trace(branch, rho.dims(), split.rest_subsystems);
    cond *= 1.0 / q;
    out.states.emplace_back(DensityMatrix::trusted(split.rest_dims, cond));
  }
  return out;
}

struct InsensitivityCheck {
  bool insensitive;
  double residual;  // ‖pinch(rho) - rho‖_F
};

inline InsensitivityCheck is_insensitive(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                         double tolerance = 1e-12) {
  const double residual = frobenius_norm(pinch(rho, m).matrix() - rho.matrix());
  return {residual <= tolerance, residual};
}

}  // namespace qcorr
