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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qdeficit/errors.hpp"
#include "qdeficit/matrix.hpp"

namespace qdeficit {

/// A validated bipartite state on C^dim_a (x) C^dim_b: Hermitian, unit
/// trace and positive semidefinite, each to within 1e-10.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-10;
  static constexpr double kPositivityTolerance = 1e-10;

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t dim() const noexcept { return mat_.dim(); }

  /// Ascending spectrum, computed during validation.
  const std::vector<double>& spectrum() const noexcept { return spectrum_; }

  friend DensityMatrix validate_density_matrix(const ComplexMatrix& m,
                                               std::size_t dim_a,
                                               std::size_t dim_b);

 private:
  DensityMatrix(ComplexMatrix m, std::size_t dim_a, std::size_t dim_b,
                std::vector<double> spectrum)
      : mat_(std::move(m)), dim_a_(dim_a), dim_b_(dim_b), spectrum_(std::move(spectrum)) {}

  ComplexMatrix mat_;
  std::size_t dim_a_;
  std::size_t dim_b_;
  std::vector<double> spectrum_;
};

/// Checks Hermiticity, trace and positivity. The stored matrix is the
/// symmetrized input, so rounding asymmetry below the tolerance is removed.
inline DensityMatrix validate_density_matrix(const ComplexMatrix& m, std::size_t dim_a,
                                             std::size_t dim_b) {
  detail::require_factorization(m.dim(), dim_a, dim_b, "validate_density_matrix");
  if (!m.all_finite()) throw ParameterError("density matrix has non-finite entries");
  const double asym = hermiticity_defect(m);
  if (asym > kHermitianTolerance) throw NotHermitian(asym);
  ComplexMatrix sym = symmetrized(m);
  const double defect = std::abs(sym.trace() - Complex(1.0));
  if (defect > DensityMatrix::kTraceTolerance) throw TraceNotOne(defect);
  auto spectrum = hermitian_eigenvalues(sym);
  if (spectrum.front() < -DensityMatrix::kPositivityTolerance) {
    throw NotPositive(spectrum.front());
  }
  return DensityMatrix(std::move(sym), dim_a, dim_b, std::move(spectrum));
}

/// Parameters (r, t, d) of the 2 (x) d family
///   rho = r * sum_{i<2, j>=2} |ij><ij| + s (P_phi+ + P_phi- + P_psi+) + t P_psi-
/// with s = (1 - 2(d-2) r - t) / 3 derived from the normalization.
class TwoParamState {
 public:
  /// Slack allowed on the boundary of the parameter region; values inside
  /// the slack are snapped onto the boundary.
  static constexpr double kBoundarySlack = 1e-12;

  static TwoParamState make(double r, double t, int d) {
    if (d < 3) {
      throw ParameterError("two-parameter family needs d >= 3, got d = " +
                           std::to_string(d));
    }
    if (!std::isfinite(r) || !std::isfinite(t)) throw ParameterError("non-finite r or t");
    const double r_max = 1.0 / (2.0 * d - 4.0);
    r = snap(r, 0.0, r_max, "r");
    t = snap(t, 0.0, 1.0, "t");
    double s = (1.0 - 2.0 * (d - 2) * r - t) / 3.0;
    if (s < 0.0) {
      if (s < -kBoundarySlack) {
        throw ParameterError("normalization forces s = " + detail::sci(s) +
                             " < 0; need 2(d-2)r + t <= 1");
      }
      s = 0.0;
    }
    return TwoParamState(r, s, t, d);
  }

  /// Same family addressed by (s, t); r = (1 - 3s - t) / (2(d-2)).
  static TwoParamState from_s_t(double s, double t, int d) {
    if (d < 3) {
      throw ParameterError("two-parameter family needs d >= 3, got d = " +
                           std::to_string(d));
    }
    return make((1.0 - 3.0 * s - t) / (2.0 * (d - 2)), t, d);
  }

  double r() const noexcept { return r_; }
  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  int d() const noexcept { return d_; }

  /// The multiset {r x 2(d-2), s x 3, t}, ascending.
  std::vector<double> spectrum() const {
    std::vector<double> ev(static_cast<std::size_t>(2 * (d_ - 2)), r_);
    ev.insert(ev.end(), 3, s_);
    ev.push_back(t_);
    std::sort(ev.begin(), ev.end());
    return ev;
  }

 private:
  TwoParamState(double r, double s, double t, int d) : r_(r), s_(s), t_(t), d_(d) {}

  static double snap(double v, double lo, double hi, const char* name) {
    if (v < lo - kBoundarySlack || v > hi + kBoundarySlack) {
      throw ParameterError(std::string(name) + " = " + detail::sci(v) +
                           " outside [" + detail::sci(lo) + ", " + detail::sci(hi) + "]");
    }
    return std::clamp(v, lo, hi);
  }

  double r_, s_, t_;
  int d_;
};

enum class BellLabel { phi_plus, phi_minus, psi_plus, psi_minus };

inline const char* to_string(BellLabel b) {
  switch (b) {
    case BellLabel::phi_plus: return "phi+";
    case BellLabel::phi_minus: return "phi-";
    case BellLabel::psi_plus: return "psi+";
    case BellLabel::psi_minus: return "psi-";
  }
  return "?";
}

/// Rank-one projector onto a Bell vector, embedded in the qubit (x) qudit
/// space through the |00>, |01>, |10>, |11> sector.
inline ComplexMatrix bell_projector(BellLabel which, int d) {
  if (d < 2) throw ParameterError("bell_projector needs d >= 2");
  const auto n = static_cast<std::size_t>(2 * d);
  const auto idx = [d](int i, int j) { return static_cast<std::size_t>(i * d + j); };
  const double h = 1.0 / std::sqrt(2.0);
  std::vector<Complex> v(n);
  switch (which) {
    case BellLabel::phi_plus:  v[idx(0, 0)] = h; v[idx(1, 1)] = h;  break;
    case BellLabel::phi_minus: v[idx(0, 0)] = h; v[idx(1, 1)] = -h; break;
    case BellLabel::psi_plus:  v[idx(0, 1)] = h; v[idx(1, 0)] = h;  break;
    case BellLabel::psi_minus: v[idx(0, 1)] = h; v[idx(1, 0)] = -h; break;
  }
  return ComplexMatrix::outer(v, v);
}

inline DensityMatrix build_two_param_state(const TwoParamState& st) {
  const int d = st.d();
  ComplexMatrix m(static_cast<std::size_t>(2 * d));
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < d; ++j) {
      const auto k = static_cast<std::size_t>(i * d + j);
      m(k, k) = st.r();
    }
  m += st.s() * bell_projector(BellLabel::phi_plus, d);
  m += st.s() * bell_projector(BellLabel::phi_minus, d);
  m += st.s() * bell_projector(BellLabel::psi_plus, d);
  m += st.t() * bell_projector(BellLabel::psi_minus, d);
  return validate_density_matrix(m, 2, static_cast<std::size_t>(d));
}

inline DensityMatrix build_two_param_state(double r, double t, int d) {
  return build_two_param_state(TwoParamState::make(r, t, d));
}

}  // namespace qdeficit
