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

// Entropies, one-way deficit (numerical and closed form), and negativity.
// All logarithms are base 2; entropies are in bits.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qdeficit/decoherence.hpp"
#include "qdeficit/errors.hpp"
#include "qdeficit/matrix.hpp"
#include "qdeficit/measurement.hpp"
#include "qdeficit/nelder_mead.hpp"
#include "qdeficit/state_family.hpp"

namespace qdeficit {

/// Weights at or below this are treated as exact zeros (0 log 0 = 0).
inline constexpr double kZeroWeight = 1e-15;

/// w * log2(arg), or 0 when the weight vanishes.
inline double weighted_log2(double weight, double arg) {
  return weight <= kZeroWeight ? 0.0 : weight * std::log2(arg);
}

inline double xlog2x(double p) { return weighted_log2(p, p); }

/// -sum p log2 p over a spectrum; small negative rounding is clamped to 0.
inline double entropy_bits(std::span<const double> eigenvalues) {
  double h = 0.0;
  for (double p : eigenvalues) h -= xlog2x(std::max(p, 0.0));
  return h;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_bits(rho.spectrum());
}

/// S(sum_j (P_j (x) I) rho (P_j (x) I)) - S(rho) for a fixed basis.
inline double projective_entropy_increase(const DensityMatrix& rho, const MeasurementBasis& b) {
  return von_neumann_entropy(projective_post_state(rho, b)) - von_neumann_entropy(rho);
}

/// S(weak post-measurement state) - S(rho).
inline double weak_entropy_increase(const DensityMatrix& rho, const WeakMeasurement& w) {
  return von_neumann_entropy(weak_post_state(rho, w)) - von_neumann_entropy(rho);
}

struct DeficitResult {
  double value = 0.0;               // bits
  MeasurementBasis argmin_basis{};
  double spread = 0.0;              // max - min of the objective over the grid, bits
};

struct DeficitSearch {
  int grid_n = 64;
  double refine_tol = 1e-10;
};

namespace detail {

// Entropy increase as a function of raw Bloch angles, with every buffer
// allocated once.
class ProjectiveObjective {
 public:
  explicit ProjectiveObjective(const DensityMatrix& rho)
      : rho_(rho.matrix()),
        dim_b_(rho.dim_b()),
        base_entropy_(von_neumann_entropy(rho)),
        post_(rho.dim()),
        spectrum_(rho.dim()) {}

  double operator()(double theta, double phi) {
    const auto proj = projectors_from_angles(theta, phi);
    apply_local_qubit_ops(proj, rho_, dim_b_, post_);
    solver_.eigenvalues(post_, spectrum_);
    return entropy_bits(spectrum_) - base_entropy_;
  }

 private:
  const ComplexMatrix& rho_;
  std::size_t dim_b_;
  double base_entropy_;
  ComplexMatrix post_;
  std::vector<double> spectrum_;
  HermitianEigensolver<double> solver_;
};

}  // namespace detail

/// Minimizes the entropy increase caused by a projective measurement on the
/// qubit: a grid_n x grid_n scan of theta in [0, pi] (endpoints included) and
/// phi in [0, 2pi), then Nelder-Mead from the best grid point down to simplex
/// diameter refine_tol. Grid ties go to the smallest theta, then phi; the
/// refinement is kept only if it beats the grid by more than the tie margin.
inline DeficitResult deficit_numerical(const DensityMatrix& rho, DeficitSearch search = {}) {
  detail::require_qubit_first(rho, "deficit_numerical");
  if (search.grid_n < 8) throw ParameterError("deficit_numerical: grid_n must be >= 8");
  if (!(search.refine_tol > 0.0)) throw ParameterError("deficit_numerical: refine_tol must be > 0");

  constexpr double kTie = 1e-13;
  const int n = search.grid_n;
  const double dtheta = std::numbers::pi / (n - 1);
  const double dphi = 2.0 * std::numbers::pi / n;

  detail::ProjectiveObjective objective(rho);
  double best = 0.0, lowest = 0.0, highest = 0.0;
  std::array<double, 2> best_angles{0.0, 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double theta = i * dtheta;
      const double phi = j * dphi;
      const double v = objective(theta, phi);
      if (i == 0 && j == 0) {
        best = lowest = highest = v;
        continue;
      }
      lowest = std::min(lowest, v);
      highest = std::max(highest, v);
      if (v < best - kTie) {
        best = v;
        best_angles = {theta, phi};
      }
    }
  auto refined = nelder_mead<2>(
      [&](const std::array<double, 2>& a) { return objective(a[0], a[1]); }, best_angles,
      dtheta, search.refine_tol);

  DeficitResult out;
  out.spread = highest - lowest;
  if (refined.value < best - kTie) {
    out.value = refined.value;
    out.argmin_basis = MeasurementBasis::canonical(refined.point[0], refined.point[1]);
  } else {
    out.value = best;
    out.argmin_basis = MeasurementBasis::canonical(best_angles[0], best_angles[1]);
  }
  return out;
}

// Closed forms for the two-parameter family.

/// s log2(2s) + t log2(2t) - (s+t) log2(s+t).
inline double deficit_closed_form(const TwoParamState& st) {
  const double s = st.s(), t = st.t();
  return weighted_log2(s, 2.0 * s) + weighted_log2(t, 2.0 * t) - weighted_log2(s + t, s + t);
}

/// Spectral weights Lambda_i = (s + t + (-1)^i (s - t) c) / 2 for a residual
/// coherence factor c.
inline std::array<double, 2> split_pair(double s, double t, double c) {
  return {0.5 * (s + t + (s - t) * c), 0.5 * (s + t - (s - t) * c)};
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

namespace detail {
inline void require_strength(double x) {
  if (!(x >= 0.0 && x <= WeakMeasurement::kMaxStrength)) {
    throw ParameterError("weak measurement strength x = " + sci(x) + " outside [0, 500]");
  }
}
inline void require_qutrit(const TwoParamState& st, const char* where) {
  if (st.d() != 3) {
    throw ParameterError(std::string(where) + " is defined for qubit-qutrit states (d = 3), got d = " +
                         std::to_string(st.d()));
  }
}
}  // namespace detail

/// -sum_i Lambda_i log2 Lambda_i + s log2 s + t log2 t with c = sech x.
inline double weak_deficit_closed_form(const TwoParamState& st, double x) {
  detail::require_strength(x);
  const double s = st.s(), t = st.t();
  const auto lambda = split_pair(s, t, sech(x));
  return -xlog2x(lambda[0]) - xlog2x(lambda[1]) + xlog2x(s) + xlog2x(t);
}

/// max{0, 2(r + t) - 1}, qubit-qutrit only.
inline double negativity_closed_form(const TwoParamState& st) {
  detail::require_qutrit(st, "negativity_closed_form");
  return std::max(0.0, 2.0 * (st.r() + st.t()) - 1.0);
}

/// Deficit after dephasing: sum_j lambda_j log2 lambda_j - (s+t) log2((s+t)/2)
/// with lambda from the coherence factor sqrt((1-ga)(1-gb)).
inline double dephased_deficit_closed_form(const TwoParamState& st, const DephasingParams& p) {
  detail::require_qutrit(st, "dephased_deficit_closed_form");
  const auto checked = DephasingParams::make(p.gamma_a, p.gamma_b);
  const double s = st.s(), t = st.t();
  const auto lambda = split_pair(s, t, checked.coherence_factor());
  return xlog2x(lambda[0]) + xlog2x(lambda[1]) - weighted_log2(s + t, 0.5 * (s + t));
}

/// Weak deficit after dephasing: sum_j [eta_j log2 eta_j - xi_j log2 xi_j],
/// eta from the dephasing factor alone and xi with an extra sech x.
inline double dephased_weak_deficit_closed_form(const TwoParamState& st, const DephasingParams& p,
                                                double x) {
  detail::require_qutrit(st, "dephased_weak_deficit_closed_form");
  detail::require_strength(x);
  const auto checked = DephasingParams::make(p.gamma_a, p.gamma_b);
  const double s = st.s(), t = st.t();
  const double c = checked.coherence_factor();
  const auto eta = split_pair(s, t, c);
  const auto xi = split_pair(s, t, sech(x) * c);
  return xlog2x(eta[0]) - xlog2x(xi[0]) + xlog2x(eta[1]) - xlog2x(xi[1]);
}

/// max{0, [2(2r + t - 1) + (2r + 4t - 1) sqrt((1-ga)(1-gb))] / 3}.
inline double dephased_negativity_closed_form(const TwoParamState& st, const DephasingParams& p) {
  detail::require_qutrit(st, "dephased_negativity_closed_form");
  const auto checked = DephasingParams::make(p.gamma_a, p.gamma_b);
  const double r = st.r(), t = st.t();
  return std::max(0.0, (2.0 * (2.0 * r + t - 1.0) +
                        (2.0 * r + 4.0 * t - 1.0) * checked.coherence_factor()) / 3.0);
}

/// max{0, ||rho^{T_B}||_1 - 1}.
inline double negativity(const DensityMatrix& rho) {
  const auto pt = partial_transpose_b(rho.matrix(), rho.dim_a(), rho.dim_b());
  return std::max(0.0, trace_norm_hermitian(pt) - 1.0);
}

}  // namespace qdeficit
