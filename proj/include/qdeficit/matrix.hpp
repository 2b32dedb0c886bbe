// Copyright 2026 The qdeficit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex matrices and the handful of operations needed for small
// bipartite states: products, Kronecker products, partial transpose and
// partial trace over the second factor, and a cyclic Jacobi eigensolver
// for Hermitian input.
//
// Basis ordering is |i,j> = |i>_A (x) |j>_B with the A index major, so the
// flat index of |i,j> is i * dim_b + j.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qdeficit/errors.hpp"

namespace qdeficit {

/// Square dense matrix of std::complex<Real>, row-major.
template <std::floating_point Real>
class BasicMatrix {
 public:
  using scalar_type = std::complex<Real>;
  using real_type = Real;

  /// Zero matrix of size dim x dim.
  explicit BasicMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw DimensionError("matrix dimension must be positive");
  }

  static BasicMatrix identity(std::size_t dim) {
    BasicMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = Real(1);
    return m;
  }

  static BasicMatrix diagonal(std::span<const Real> values) {
    BasicMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  static BasicMatrix diagonal(std::initializer_list<Real> values) {
    return diagonal(std::span<const Real>(values.begin(), values.size()));
  }

  /// Builds from nested rows; every row must have as many entries as there
  /// are rows.
  static BasicMatrix from_rows(
      std::initializer_list<std::initializer_list<scalar_type>> rows) {
    BasicMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != rows.size()) {
        throw DimensionError("from_rows: matrix must be square");
      }
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  /// Outer product |u><v|.
  static BasicMatrix outer(std::span<const scalar_type> u,
                           std::span<const scalar_type> v) {
    if (u.size() != v.size()) throw DimensionError("outer: length mismatch");
    BasicMatrix m(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }

  scalar_type& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * dim_ + j];
  }
  const scalar_type& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * dim_ + j];
  }

  std::span<const scalar_type> data() const noexcept { return data_; }

  scalar_type trace() const noexcept {
    scalar_type t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  BasicMatrix adjoint() const {
    BasicMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const scalar_type& z) {
      return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
  }

  BasicMatrix& operator+=(const BasicMatrix& o) {
    require_same_dim(o, "operator+=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  BasicMatrix& operator-=(const BasicMatrix& o) {
    require_same_dim(o, "operator-=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  BasicMatrix& operator*=(scalar_type c) noexcept {
    for (auto& z : data_) z *= c;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator*(BasicMatrix a, scalar_type c) { return a *= c; }
  friend BasicMatrix operator*(scalar_type c, BasicMatrix a) { return a *= c; }

  friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

 private:
  void require_same_dim(const BasicMatrix& o, const char* where) const {
    if (o.dim_ != dim_) {
      throw DimensionError(std::string(where) + ": dimension mismatch (" +
                           std::to_string(dim_) + " vs " +
                           std::to_string(o.dim_) + ")");
    }
  }

  std::size_t dim_;
  std::vector<scalar_type> data_;
};

using ComplexMatrix = BasicMatrix<double>;
using Complex = ComplexMatrix::scalar_type;

template <std::floating_point Real>
BasicMatrix<Real> matmul(const BasicMatrix<Real>& a, const BasicMatrix<Real>& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("matmul: dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
  const std::size_t n = a.dim();
  BasicMatrix<Real> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const auto aik = a(i, k);
      if (aik == std::complex<Real>{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
template <std::floating_point Real>
BasicMatrix<Real> tensor_product(const BasicMatrix<Real>& a,
                                 const BasicMatrix<Real>& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  BasicMatrix<Real> c(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) c(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return c;
}

namespace detail {
inline void require_factorization(std::size_t dim, std::size_t dim_a,
                                  std::size_t dim_b, const char* where) {
  if (dim_a == 0 || dim_b == 0 || dim != dim_a * dim_b) {
    throw DimensionError(std::string(where) + ": dimension " + std::to_string(dim) +
                         " is not " + std::to_string(dim_a) + " x " +
                         std::to_string(dim_b));
  }
}
}  // namespace detail

/// <i,j| M^{T_B} |k,l> = <i,l| M |k,j>.
template <std::floating_point Real>
BasicMatrix<Real> partial_transpose_b(const BasicMatrix<Real>& m, std::size_t dim_a,
                                      std::size_t dim_b) {
  detail::require_factorization(m.dim(), dim_a, dim_b, "partial_transpose_b");
  BasicMatrix<Real> out(m.dim());
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_b; ++j)
      for (std::size_t k = 0; k < dim_a; ++k)
        for (std::size_t l = 0; l < dim_b; ++l)
          out(i * dim_b + j, k * dim_b + l) = m(i * dim_b + l, k * dim_b + j);
  return out;
}

/// <i| Tr_B M |k> = sum_j <i,j| M |k,j>.
template <std::floating_point Real>
BasicMatrix<Real> partial_trace_b(const BasicMatrix<Real>& m, std::size_t dim_a,
                                  std::size_t dim_b) {
  detail::require_factorization(m.dim(), dim_a, dim_b, "partial_trace_b");
  BasicMatrix<Real> out(dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t k = 0; k < dim_a; ++k)
      for (std::size_t j = 0; j < dim_b; ++j) out(i, k) += m(i * dim_b + j, k * dim_b + j);
  return out;
}

/// Largest entrywise modulus of a - b.
template <std::floating_point Real>
Real max_abs_diff(const BasicMatrix<Real>& a, const BasicMatrix<Real>& b) {
  if (a.dim() != b.dim()) throw DimensionError("max_abs_diff: dimension mismatch");
  Real worst = 0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    worst = std::max(worst, std::abs(a.data()[k] - b.data()[k]));
  return worst;
}

/// max |m - m^H| over entries.
template <std::floating_point Real>
Real hermiticity_defect(const BasicMatrix<Real>& m) {
  Real worst = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

/// (m + m^H) / 2.
template <std::floating_point Real>
BasicMatrix<Real> symmetrized(const BasicMatrix<Real>& m) {
  BasicMatrix<Real> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      out(i, j) = (m(i, j) + std::conj(m(j, i))) * Real(0.5);
  return out;
}

inline constexpr double kHermitianTolerance = 1e-10;

/// Cyclic Jacobi eigensolver for Hermitian matrices. Holds its working copy
/// between calls so repeated solves of the same size do not reallocate.
template <std::floating_point Real>
class HermitianEigensolver {
 public:
  static constexpr int kMaxSweeps = 100;
  static constexpr Real kOffDiagonalTolerance = Real(1e-14);

  /// Eigenvalues in ascending order. Input must be Hermitian to within
  /// kHermitianTolerance; it is symmetrized before rotation.
  std::vector<Real> eigenvalues(const BasicMatrix<Real>& m) {
    std::vector<Real> out(m.dim());
    eigenvalues(m, out);
    return out;
  }

  void eigenvalues(const BasicMatrix<Real>& m, std::span<Real> out) {
    const std::size_t n = m.dim();
    if (out.size() != n) throw DimensionError("eigenvalues: output size mismatch");
    if (!m.all_finite()) throw ParameterError("eigenvalues: non-finite matrix entry");
    const Real defect = hermiticity_defect(m);
    if (defect > Real(kHermitianTolerance)) throw NotHermitian(static_cast<double>(defect));

    n_ = n;
    work_.assign(n * n, {});
    Real scale = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        at(i, j) = (m(i, j) + std::conj(m(j, i))) * Real(0.5);
        scale += std::norm(at(i, j));
      }
    // The convergence threshold is absolute for unit-scale input and relative
    // otherwise.
    const Real threshold = kOffDiagonalTolerance * std::max(Real(1), std::sqrt(scale));

    int sweep = 0;
    while (off_diagonal_norm(n) > threshold) {
      if (++sweep > kMaxSweeps) {
        throw NumericalError("Jacobi eigensolver did not converge in " +
                             std::to_string(kMaxSweeps) + " sweeps");
      }
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) rotate(n, p, q);
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = at(i, i).real();
    std::sort(out.begin(), out.end());
  }

 private:
  std::complex<Real>& at(std::size_t i, std::size_t j) { return work_[i * n_ + j]; }

  Real off_diagonal_norm(std::size_t n) const {
    Real s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(work_[i * n + j]);
    return std::sqrt(s);
  }

  // Zeroes the (p, q) entry: a diagonal phase makes it real, then a real
  // Givens rotation annihilates it.
  void rotate(std::size_t n, std::size_t p, std::size_t q) {
    const std::complex<Real> apq = at(p, q);
    const Real mag = std::abs(apq);
    if (mag == Real(0)) return;
    const std::complex<Real> phase = apq / mag;
    for (std::size_t k = 0; k < n; ++k) {
      at(k, q) *= std::conj(phase);
      at(q, k) *= phase;
    }
    const Real app = at(p, p).real();
    const Real aqq = at(q, q).real();
    const Real theta = (aqq - app) / (Real(2) * mag);
    const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                   (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
    const Real c = Real(1) / std::sqrt(t * t + Real(1));
    const Real s = t * c;
    for (std::size_t k = 0; k < n; ++k) {
      const auto akp = at(k, p);
      const auto akq = at(k, q);
      at(k, p) = c * akp - s * akq;
      at(k, q) = s * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto apk = at(p, k);
      const auto aqk = at(q, k);
      at(p, k) = c * apk - s * aqk;
      at(q, k) = s * apk + c * aqk;
    }
    at(p, q) = {};
    at(q, p) = {};
    at(p, p) = app - t * mag;
    at(q, q) = aqq + t * mag;
  }

  std::vector<std::complex<Real>> work_;
  std::size_t n_ = 0;
};

template <std::floating_point Real>
std::vector<Real> hermitian_eigenvalues(const BasicMatrix<Real>& m) {
  return HermitianEigensolver<Real>{}.eigenvalues(m);
}

/// Sum of |eigenvalue| for a Hermitian matrix.
template <std::floating_point Real>
Real trace_norm_hermitian(const BasicMatrix<Real>& m) {
  const auto ev = hermitian_eigenvalues(m);
  return std::accumulate(ev.begin(), ev.end(), Real(0),
                         [](Real acc, Real v) { return acc + std::abs(v); });
}

}  // namespace qdeficit
