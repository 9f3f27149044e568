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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qcorr/error.hpp"

namespace qcorr {

using Complex = std::complex<double>;

inline constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Subsystem dimension signature, leading factor first (A' ⊗ A ⊗ B).
using Dims = std::vector<std::size_t>;

inline std::size_t total_dim(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
      : dim_(dim), data_(std::move(entries)) {
    if (data_.size() != dim_ * dim_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "entry count " + std::to_string(data_.size()) + " is not dim^2 for dim " +
                      std::to_string(dim_));
    }
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "matrix literal is not square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::span<const Complex> entries() const noexcept { return data_; }
  std::span<Complex> entries() noexcept { return data_; }

  Complex& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  Complex trace() const noexcept {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(Complex s) noexcept {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same_dim(b);
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex{}) continue;
        for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_dim(const ComplexMatrix& rhs) const {
    if (rhs.dim_ != dim_) {
      throw Error(ErrorKind::DimensionMismatch,
                  "dimensions " + std::to_string(dim_) + " and " + std::to_string(rhs.dim_));
    }
  }

  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.entries()) s += std::norm(x);
  return std::sqrt(s);
}

inline double max_abs(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& x : m.entries()) s = std::max(s, std::abs(x));
  return s;
}

inline double hermiticity_residual(const ComplexMatrix& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j) r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

// Re-imposes exact Hermiticity by averaging with the adjoint.
inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix out = m + m.adjoint();
  out *= 0.5;
  return out;
}

// |v><v|
inline ComplexMatrix outer(std::span<const Complex> v) {
  ComplexMatrix out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = v[i] * std::conj(v[j]);
  return out;
}

// Kronecker product: entry (i*db + k, j*db + l) = a(i,j) * b(k,l).
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
    }
  return out;
}

inline std::vector<Complex> tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

struct HermitianEigenSystem {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // column k belongs to eigenvalues[k]
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// One complex Jacobi rotation annihilating a(p,q). The phase of a(p,q) is
// first rotated out so the 2x2 pivot block is real symmetric.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const Complex phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  // W = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) block.
  const Complex wpp = c;
  const Complex wpq = s;
  const Complex wqp = -s * std::conj(phase);
  const Complex wqq = c * std::conj(phase);
  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {  // A <- A W
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * wpp + akq * wqp;
    a(k, q) = akp * wpq + akq * wqq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // A <- W^H A
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(wpp) * apk + std::conj(wqp) * aqk;
    a(q, k) = std::conj(wpq) * apk + std::conj(wqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  for (std::size_t k = 0; k < n; ++k) {  // V <- V W
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * wpp + vkq * wqp;
    v(k, q) = vkp * wpq + vkq * wqq;
  }
}

}  // namespace detail

// Cyclic complex Jacobi diagonalization. Eigenvalues come back ascending;
// each eigenvector is rephased so its first non-negligible component is
// real and positive, which makes the output reproducible run to run.
inline HermitianEigenSystem hermitian_eig(const ComplexMatrix& m, double tolerance = tol::kValidation) {
  const double herm = hermiticity_residual(m);
  if (herm > tolerance) {
    throw Error(ErrorKind::NotHermitian, "max |m - m^H| entry " + std::to_string(herm));
  }
  const std::size_t n = m.dim();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, frobenius_norm(a));
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= 1e-14 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 1e-300) detail::jacobi_rotate(a, v, p, q);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a(src, src).real();
    Complex phase = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v(i, src)) > 1e-12) {
        phase = std::conj(v(i, src)) / std::abs(v(i, src));
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, src) * phase;
  }
  return out;
}

// V diag(f(lambda)) V^H
template <typename F>
ComplexMatrix spectral_apply(const HermitianEigenSystem& es, F&& f) {
  const std::size_t n = es.eigenvalues.size();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(es.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = es.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(es.eigenvectors(j, k));
    }
  }
  return out;
}

// Base-2 logarithm restricted to the support: eigenvalues at or below the
// cutoff contribute zero.
inline ComplexMatrix matrix_log_on_support(const ComplexMatrix& m, double cutoff = tol::kSupportCutoff) {
  const auto es = hermitian_eig(m, cutoff);
  for (double lambda : es.eigenvalues) {
    if (lambda < -cutoff) {
      throw Error(ErrorKind::NegativeEigenvalue, "eigenvalue " + std::to_string(lambda));
    }
  }
  return spectral_apply(es, [cutoff](double lambda) { return lambda > cutoff ? std::log2(lambda) : 0.0; });
}

// Traces out every subsystem not listed in `keep`. Kept subsystems retain
// their original relative order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims, std::vector<std::size_t> keep) {
  if (total_dim(dims) != m.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "dims product " + std::to_string(total_dim(dims)) +
                                                  " does not match matrix dim " + std::to_string(m.dim()));
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty() || keep.back() >= dims.size()) {
    throw Error(ErrorKind::DimensionMismatch, "keep set must be a non-empty subset of subsystems");
  }
  const std::size_t nsub = dims.size();
  std::vector<bool> kept(nsub, false);
  for (auto k : keep) kept[k] = true;

  // Strides of the full and reduced composite indices.
  std::vector<std::size_t> stride(nsub), out_stride(nsub, 0);
  std::size_t out_dim = 1;
  for (std::size_t s = nsub; s-- > 0;) {
    stride[s] = (s + 1 < nsub) ? stride[s + 1] * dims[s + 1] : 1;
  }
  for (std::size_t s = nsub; s-- > 0;) {
    if (kept[s]) {
      out_stride[s] = out_dim;
      out_dim *= dims[s];
    }
  }
  std::size_t traced_dim = m.dim() / out_dim;

  // Enumerate kept multi-indices and traced multi-indices separately.
  auto enumerate = [&](bool want_kept, std::size_t count) {
    std::vector<std::size_t> full(count), reduced(count);
    std::vector<std::size_t> digit(nsub, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t f = 0, r = 0;
      for (std::size_t s = 0; s < nsub; ++s) {
        if (kept[s] == want_kept) {
          f += digit[s] * stride[s];
          r += digit[s] * out_stride[s];
        }
      }
      full[idx] = f;
      reduced[idx] = r;
      for (std::size_t s = nsub; s-- > 0;) {
        if (kept[s] != want_kept) continue;
        if (++digit[s] < dims[s]) break;
        digit[s] = 0;
      }
    }
    return std::pair{full, reduced};
  };
  const auto [kept_full, kept_reduced] = enumerate(true, out_dim);
  const auto [traced_full, unused] = enumerate(false, traced_dim);
  (void)unused;

  ComplexMatrix out(out_dim);
  for (std::size_t i = 0; i < out_dim; ++i)
    for (std::size_t j = 0; j < out_dim; ++j) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t) s += m(kept_full[i] + traced_full[t], kept_full[j] + traced_full[t]);
      out(kept_reduced[i], kept_reduced[j]) = s;
    }
  return out;
}

inline std::size_t square_root_dim(std::size_t n) {
  auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw Error(ErrorKind::DimensionMismatch, std::to_string(n) + " is not a perfect square");
  return d;
}

// Index realignment R[(i d + k), (j d + l)] = M[(i d + j), (k d + l)].
// Applying it twice returns the input.
inline ComplexMatrix realign(const ComplexMatrix& m) {
  const std::size_t d = square_root_dim(m.dim());
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) out(i * d + k, j * d + l) = m(i * d + j, k * d + l);
  return out;
}

// Row-major vectorization and its inverse.
inline std::vector<Complex> vectorize(const ComplexMatrix& m) {
  return {m.entries().begin(), m.entries().end()};
}

inline ComplexMatrix unvectorize(std::span<const Complex> v) {
  const std::size_t d = square_root_dim(v.size());
  return ComplexMatrix(d, std::vector<Complex>(v.begin(), v.end()));
}

inline std::vector<Complex> multiply(const ComplexMatrix& m, std::span<const Complex> v) {
  if (v.size() != m.dim()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
  std::vector<Complex> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

namespace pauli {
inline ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
inline ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace qcorr
