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
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/projective.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// Linear map on d×d matrices in "A" form: (rho')_{ij} = Σ_{kl} A_{ij;kl} rho_{kl},
// with the pair (i, j) stored at flat index i*d + j.
struct AMap {
  std::size_t d = 0;
  ComplexMatrix tensor;
};

// Realigned "B" form: B_{ik;jl} = A_{ij;kl}. Hermitian whenever the map
// preserves Hermiticity; its spectrum decides complete positivity.
struct BMap {
  std::size_t d = 0;
  ComplexMatrix tensor;
};

inline BMap realign_a_to_b(const AMap& a) { return {square_root_dim(a.tensor.dim()), realign(a.tensor)}; }
inline AMap realign_b_to_a(const BMap& b) { return {square_root_dim(b.tensor.dim()), realign(b.tensor)}; }

inline AMap make_amap(ComplexMatrix tensor) {
  const std::size_t d = square_root_dim(tensor.dim());
  return {d, std::move(tensor)};
}

inline BMap make_bmap(ComplexMatrix tensor) {
  const std::size_t d = square_root_dim(tensor.dim());
  return {d, std::move(tensor)};
}

inline AMap identity_amap(std::size_t d) { return {d, ComplexMatrix::identity(d * d)}; }

// A_{ij;kl} = Σ_n K_ik conj(K_jl) for the channel rho -> Σ K rho K^H.
inline AMap amap_from_kraus(std::span<const ComplexMatrix> kraus) {
  const std::size_t d = kraus.front().dim();
  ComplexMatrix a(d * d);
  for (const auto& k : kraus) {
    if (k.dim() != d) throw Error(ErrorKind::DimensionMismatch, "Kraus operators of unequal dimension");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t kk = 0; kk < d; ++kk)
          for (std::size_t l = 0; l < d; ++l) a(i * d + j, kk * d + l) += k(i, kk) * std::conj(k(j, l));
  }
  return {d, std::move(a)};
}

inline ComplexMatrix apply_amap(const AMap& a, const ComplexMatrix& rho) {
  if (rho.dim() != a.d) {
    throw Error(ErrorKind::DimensionMismatch, "map acts on dimension " + std::to_string(a.d) + ", input has " +
                                                  std::to_string(rho.dim()));
  }
  return unvectorize(multiply(a.tensor, rho.entries()));
}

struct AMapConditions {
  double hermiticity_residual = 0.0;  // max |A_{ij;kl} - conj(A_{ji;lk})|
  double trace_residual = 0.0;        // max |Σ_i A_{ii;kl} - δ_kl|
};

inline AMapConditions check_amap_conditions(const AMap& a) {
  const std::size_t d = a.d;
  AMapConditions r;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          const double dev = std::abs(a.tensor(i * d + j, k * d + l) - std::conj(a.tensor(j * d + i, l * d + k)));
          r.hermiticity_residual = std::max(r.hermiticity_residual, dev);
        }
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < d; ++i) s += a.tensor(i * d + i, k * d + l);
      r.trace_residual = std::max(r.trace_residual, std::abs(s - (k == l ? 1.0 : 0.0)));
    }
  return r;
}

// B = Σ_α λ_α vec(M_α) vec(M_α)^H, so that the map acts as Σ_α λ_α M_α rho M_α^H.
struct KrausDecomposition {
  std::vector<double> weights;
  std::vector<ComplexMatrix> operators;
};

inline KrausDecomposition spectral_decompose(const BMap& b) {
  const auto es = hermitian_eig(b.tensor);
  KrausDecomposition out;
  const std::size_t n = b.tensor.dim();
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = es.eigenvectors(i, k);
    out.weights.push_back(es.eigenvalues[k]);
    out.operators.push_back(unvectorize(column));
  }
  return out;
}

inline ComplexMatrix apply_kraus(const KrausDecomposition& k, const ComplexMatrix& rho) {
  ComplexMatrix out(rho.dim());
  for (std::size_t a = 0; a < k.weights.size(); ++a) {
    if (k.weights[a] == 0.0) continue;
    out += k.weights[a] * (k.operators[a] * rho * k.operators[a].adjoint());
  }
  return out;
}

enum class MapVerdict { CP, NCP };

inline const char* to_string(MapVerdict v) { return v == MapVerdict::CP ? "CP" : "NCP"; }

struct MapClass {
  MapVerdict verdict;
  double min_eigenvalue;
};

inline MapClass classify(const BMap& b, double tolerance = 1e-10) {
  const double min_eig = hermitian_eig(b.tensor).eigenvalues.front();
  return {min_eig >= -tolerance ? MapVerdict::CP : MapVerdict::NCP, min_eig};
}

// ½(I+σ₁), ½(I+σ₂), ½(I+σ₃), ½(I−σ₁): a basis of qubit states.
inline std::vector<ComplexMatrix> qubit_basis_P() {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  return {0.5 * (id + pauli::x()), 0.5 * (id + pauli::y()), 0.5 * (id + pauli::z()), 0.5 * (id - pauli::x())};
}

namespace detail {

// Solves M X = R by Gauss-Jordan elimination with partial pivoting.
// Returns false when M is numerically singular.
inline bool solve_linear(std::vector<std::vector<Complex>> m, std::vector<std::vector<Complex>>& rhs) {
  const std::size_t n = m.size();
  double scale = 0.0;
  for (const auto& row : m)
    for (const auto& x : row) scale = std::max(scale, std::abs(x));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    if (std::abs(m[pivot][col]) <= 1e-12 * scale) return false;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    const Complex inv = 1.0 / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (auto& x : rhs[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == Complex{}) continue;
      const Complex f = m[r][col];
      for (std::size_t c = 0; c < n; ++c) m[r][c] -= f * m[col][c];
      for (std::size_t c = 0; c < rhs[r].size(); ++c) rhs[r][c] -= f * rhs[col][c];
    }
  }
  return true;
}

}  // namespace detail

// Hermitian duals with Tr[P_α Q_β] = δ_αβ. Fails if the basis is singular or
// if the duals do not sum to the identity.
inline std::vector<ComplexMatrix> dual_Q(std::span<const ComplexMatrix> basis) {
  if (basis.empty()) throw Error(ErrorKind::SingularBasis, "empty basis");
  const std::size_t d = basis.front().dim();
  const std::size_t n = d * d;
  if (basis.size() != n) {
    throw Error(ErrorKind::SingularBasis, "need " + std::to_string(n) + " basis elements, got " +
                                              std::to_string(basis.size()));
  }
  // Tr[P_α Q] = Σ_{kl} (P_α)_{lk} Q_{kl}: row α of the system holds P_α transposed.
  std::vector<std::vector<Complex>> system(n, std::vector<Complex>(n));
  for (std::size_t a = 0; a < n; ++a) {
    if (basis[a].dim() != d) throw Error(ErrorKind::DimensionMismatch, "basis elements of unequal dimension");
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) system[a][k * d + l] = basis[a](l, k);
  }
  std::vector<std::vector<Complex>> rhs(n, std::vector<Complex>(n));
  for (std::size_t a = 0; a < n; ++a) rhs[a][a] = 1.0;
  if (!detail::solve_linear(system, rhs)) throw Error(ErrorKind::SingularBasis, "basis is linearly dependent");

  std::vector<ComplexMatrix> duals;
  ComplexMatrix sum(d);
  for (std::size_t b = 0; b < n; ++b) {
    ComplexMatrix q(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) q(k, l) = rhs[k * d + l][b];
    sum += q;
    duals.push_back(std::move(q));
  }
  const double dev = max_abs(sum - ComplexMatrix::identity(d));
  if (dev > 1e-12) {
    throw Error(ErrorKind::DualsDoNotResolveIdentity, "sum of duals deviates from I by " + std::to_string(dev));
  }
  return duals;
}

// Linear extension rho -> Σ_α Tr[rho Q_α] τ_α ⊗ P_α onto ancilla ⊗ system.
class AssignmentMap {
 public:
  AssignmentMap(std::vector<ComplexMatrix> basis, std::vector<DensityMatrix> assigned)
      : basis_(std::move(basis)), duals_(dual_Q(basis_)), assigned_(std::move(assigned)) {
    if (assigned_.size() != basis_.size()) {
      throw Error(ErrorKind::DimensionMismatch, "one ancilla state is needed per basis element");
    }
    for (const auto& t : assigned_) {
      if (t.dim() != assigned_.front().dim()) {
        throw Error(ErrorKind::DimensionMismatch, "ancilla states of unequal dimension");
      }
    }
  }

  const std::vector<ComplexMatrix>& basis() const noexcept { return basis_; }
  const std::vector<ComplexMatrix>& duals() const noexcept { return duals_; }
  const std::vector<DensityMatrix>& assigned() const noexcept { return assigned_; }
  std::size_t system_dim() const noexcept { return basis_.front().dim(); }
  std::size_t ancilla_dim() const noexcept { return assigned_.front().dim(); }

 private:
  std::vector<ComplexMatrix> basis_;
  std::vector<ComplexMatrix> duals_;
  std::vector<DensityMatrix> assigned_;
};

// Qubit basis P with τ₁ = τ₄ = |0><0| and τ₂ = τ₃ = |1><1| on the ancilla.
inline AssignmentMap example_assignment_map() {
  const auto zero = pure_state(kets::zero(), {2});
  const auto one = pure_state(kets::one(), {2});
  return AssignmentMap(qubit_basis_P(), {zero, one, one, zero});
}

// The four rank-1 projectors |0,+>, |0,->, |1,0>, |1,1> on A'A that leave
// example_extension(p) unchanged for every p.
inline ProjectiveMeasurement example_extended_projectors() {
  using namespace kets;
  auto amps = [](const Ket& k) { return std::vector<Complex>(k.amplitudes().begin(), k.amplitudes().end()); };
  return ProjectiveMeasurement::from_kets(
      {amps(zero() * plus()), amps(zero() * minus()), amps(one() * zero()), amps(one() * one())}, 2);
}

inline ComplexMatrix assignment_apply(const AssignmentMap& am, const ComplexMatrix& rho) {
  if (rho.dim() != am.system_dim()) throw Error(ErrorKind::DimensionMismatch, "system dimension mismatch");
  ComplexMatrix out(am.ancilla_dim() * am.system_dim());
  for (std::size_t a = 0; a < am.basis().size(); ++a) {
    const Complex r = (rho * am.duals()[a]).trace();
    if (r == Complex{}) continue;
    out += r * tensor_product(am.assigned()[a].matrix(), am.basis()[a]);
  }
  return out;
}

// Tr_{A'}[Σ_i Π_i Ã(rho) Π_i]: the post-measurement system state obtained by
// extending, measuring and discarding the ancilla explicitly.
inline ComplexMatrix measured_via_extension(const AssignmentMap& am, const ProjectiveMeasurement& m,
                                            const ComplexMatrix& rho) {
  const ComplexMatrix ext = assignment_apply(am, rho);
  if (m.dim() != ext.dim()) throw Error(ErrorKind::DimensionMismatch, "measurement does not act on ancilla ⊗ system");
  ComplexMatrix measured(ext.dim());
  for (const auto& pi : m.projectors()) measured += pi * ext * pi;
  return partial_trace(measured, {am.ancilla_dim(), am.system_dim()}, {1});
}

struct MeasurementMaps {
  AMap a;
  BMap b;
  std::vector<ComplexMatrix> reduced_projectors;  // ρᴬ_i = Tr_{A'}[Π_i]
  std::vector<std::vector<double>> q;             // q[i][α] = Tr[Π_i (τ_α ⊗ P_α)]
  std::vector<ComplexMatrix> eta;                 // η_α = Σ_i q[i][α] ρᴬ_i
  AMapConditions conditions;
};

// A and B maps induced on the system by a projective measurement on
// ancilla ⊗ system after the assignment extension:
//   B = Σ_α η_α ⊗ Q_αᵀ,  A = realign(B).
inline MeasurementMaps build_measurement_maps(const AssignmentMap& am, const ProjectiveMeasurement& m) {
  const std::size_t da = am.ancilla_dim();
  const std::size_t ds = am.system_dim();
  if (m.dim() != da * ds) throw Error(ErrorKind::DimensionMismatch, "measurement does not act on ancilla ⊗ system");
  const Dims ext_dims{da, ds};
  MeasurementMaps out;
  const std::size_t n_basis = am.basis().size();
  for (const auto& pi : m.projectors()) out.reduced_projectors.push_back(partial_trace(pi, ext_dims, {1}));
  for (const auto& pi : m.projectors()) {
    std::vector<double> row(n_basis);
    for (std::size_t a = 0; a < n_basis; ++a) {
      row[a] = (pi * tensor_product(am.assigned()[a].matrix(), am.basis()[a])).trace().real();
    }
    out.q.push_back(std::move(row));
  }
  ComplexMatrix b(ds * ds);
  for (std::size_t a = 0; a < n_basis; ++a) {
    ComplexMatrix eta(ds);
    for (std::size_t i = 0; i < m.outcomes(); ++i) {
      if (out.q[i][a] != 0.0) eta += out.q[i][a] * out.reduced_projectors[i];
    }
    b += tensor_product(eta, am.duals()[a].transpose());
    out.eta.push_back(std::move(eta));
  }
  out.b = {ds, std::move(b)};
  out.a = realign_b_to_a(out.b);
  out.conditions = check_amap_conditions(out.a);
  return out;
}

}  // namespace qcorr
