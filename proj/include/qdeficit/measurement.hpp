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

// Local measurements on the qubit factor of a 2 (x) d state.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "qdeficit/errors.hpp"
#include "qdeficit/matrix.hpp"
#include "qdeficit/state_family.hpp"

namespace qdeficit {

/// Bloch angles of a qubit projective basis, theta in [0, pi], phi in
/// [0, 2 pi). The basis vectors are
///   |0'> = cos(theta/2)|0> - e^{-i phi} sin(theta/2)|1>
///   |1'> = e^{i phi} sin(theta/2)|0> + cos(theta/2)|1>.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  static MeasurementBasis make(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
      throw ParameterError("theta = " + detail::sci(theta) + " outside [0, pi]");
    }
    if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) {
      throw ParameterError("phi = " + detail::sci(phi) + " outside [0, 2pi)");
    }
    return {theta, phi};
  }

  static MeasurementBasis computational() { return {0.0, 0.0}; }

  /// Maps arbitrary real angles onto the canonical ranges. The resulting
  /// basis spans the same pair of rays (possibly with outcomes relabelled).
  static MeasurementBasis canonical(double theta, double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    theta = std::fmod(theta, two_pi);
    if (theta < 0.0) theta += two_pi;
    if (theta > std::numbers::pi) {
      theta = two_pi - theta;
      phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;
    return {theta, phi};
  }

  friend bool operator==(const MeasurementBasis&, const MeasurementBasis&) = default;
};

using ProjectorPair = std::array<ComplexMatrix, 2>;

namespace detail {

// No range checks; the minimizer walks through unconstrained angles.
inline ProjectorPair projectors_from_angles(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e_minus = std::polar(1.0, -phi);
  const std::array<Complex, 2> v0{Complex(c), -e_minus * s};
  const std::array<Complex, 2> v1{std::conj(e_minus) * s, Complex(c)};
  return {ComplexMatrix::outer(v0, v0), ComplexMatrix::outer(v1, v1)};
}

// out = sum_k (K_k (x) I) rho (K_k (x) I)^H for 2x2 operators K_k. Writes
// into `out` so callers in tight loops can reuse the buffer.
inline void apply_local_qubit_ops(std::span<const ComplexMatrix> ops,
                                  const ComplexMatrix& rho, std::size_t dim_b,
                                  ComplexMatrix& out) {
  const std::size_t n = rho.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = Complex{};
  for (const auto& k : ops) {
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t a2 = 0; a2 < 2; ++a2)
          for (std::size_t b2 = 0; b2 < 2; ++b2) {
            const Complex coeff = k(a, a2) * std::conj(k(b, b2));
            if (coeff == Complex{}) continue;
            for (std::size_t j = 0; j < dim_b; ++j)
              for (std::size_t l = 0; l < dim_b; ++l)
                out(a * dim_b + j, b * dim_b + l) += coeff * rho(a2 * dim_b + j, b2 * dim_b + l);
          }
  }
}

inline void require_qubit_first(const DensityMatrix& rho, const char* where) {
  if (rho.dim_a() != 2) {
    throw DimensionError(std::string(where) + ": measured subsystem must be a qubit, got dim_a = " +
                         std::to_string(rho.dim_a()));
  }
}

}  // namespace detail

/// P_k = |k'><k'| for the basis.
inline ProjectorPair projectors_from_basis(const MeasurementBasis& b) {
  const auto checked = MeasurementBasis::make(b.theta, b.phi);
  return detail::projectors_from_angles(checked.theta, checked.phi);
}

/// sum_j (P_j (x) I) rho (P_j (x) I).
inline DensityMatrix projective_post_state(const DensityMatrix& rho, const MeasurementBasis& b) {
  detail::require_qubit_first(rho, "projective_post_state");
  const auto proj = projectors_from_basis(b);
  ComplexMatrix out(rho.dim());
  detail::apply_local_qubit_ops(proj, rho.matrix(), rho.dim_b(), out);
  return validate_density_matrix(out, rho.dim_a(), rho.dim_b());
}

/// Two-outcome measurement of strength x built on the projectors M0, M1 of
/// `basis`. x = 0 is the identity channel; large x approaches the projective
/// measurement in the same basis.
struct WeakMeasurement {
  static constexpr double kMaxStrength = 500.0;

  double x = 0.0;
  MeasurementBasis basis = MeasurementBasis::computational();

  static WeakMeasurement make(double x, MeasurementBasis basis = MeasurementBasis::computational()) {
    if (!(x >= 0.0 && x <= kMaxStrength)) {
      throw ParameterError("weak measurement strength x = " + detail::sci(x) +
                           " outside [0, 500]");
    }
    return {x, MeasurementBasis::make(basis.theta, basis.phi)};
  }
};

/// q(+x) = sqrt((1 - tanh x)/2) M0 + sqrt((1 + tanh x)/2) M1 and q(-x) with
/// the coefficients exchanged.
inline ProjectorPair weak_operators(const WeakMeasurement& w) {
  const auto checked = WeakMeasurement::make(w.x, w.basis);
  const auto [m0, m1] = projectors_from_basis(checked.basis);
  // (1 -+ tanh x)/2 written without cancellation.
  const double small = std::sqrt(1.0 / (1.0 + std::exp(2.0 * checked.x)));
  const double large = std::sqrt(1.0 / (1.0 + std::exp(-2.0 * checked.x)));
  return {small * m0 + large * m1, large * m0 + small * m1};
}

/// sum_{+x,-x} (q (x) I) rho (q (x) I)^H.
inline DensityMatrix weak_post_state(const DensityMatrix& rho, const WeakMeasurement& w) {
  detail::require_qubit_first(rho, "weak_post_state");
  const auto ops = weak_operators(w);
  ComplexMatrix out(rho.dim());
  detail::apply_local_qubit_ops(ops, rho.matrix(), rho.dim_b(), out);
  return validate_density_matrix(out, rho.dim_a(), rho.dim_b());
}

}  // namespace qdeficit
