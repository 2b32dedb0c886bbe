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

// Local dephasing of a qubit (x) qutrit pair.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qdeficit/errors.hpp"
#include "qdeficit/matrix.hpp"
#include "qdeficit/state_family.hpp"

namespace qdeficit {

/// Dephasing probabilities for the qubit (gamma_a) and the qudit (gamma_b).
struct DephasingParams {
  double gamma_a = 0.0;
  double gamma_b = 0.0;

  static DephasingParams make(double gamma_a, double gamma_b) {
    check(gamma_a, "gamma_a");
    check(gamma_b, "gamma_b");
    return {gamma_a, gamma_b};
  }

  /// sqrt((1 - gamma_a)(1 - gamma_b)): the factor applied to every
  /// qubit-off-diagonal coherence of the two-parameter family.
  double coherence_factor() const { return std::sqrt((1.0 - gamma_a) * (1.0 - gamma_b)); }

 private:
  static void check(double g, const char* name) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw ParameterError(std::string(name) + " = " + detail::sci(g) + " outside [0, 1]");
    }
  }
};

/// Elapsed time and per-subsystem decay rates.
struct DecayRates {
  double tau = 0.0;
  double rate_a = 0.0;
  double rate_b = 0.0;
};

/// gamma = 1 - exp(-tau * rate), componentwise.
inline DephasingParams gamma_from_decay(const DecayRates& r) {
  if (!(r.tau >= 0.0) || !(r.rate_a >= 0.0) || !(r.rate_b >= 0.0)) {
    throw ParameterError("decay time and rates must be nonnegative");
  }
  return DephasingParams::make(-std::expm1(-r.tau * r.rate_a), -std::expm1(-r.tau * r.rate_b));
}

struct KrausSet {
  std::vector<ComplexMatrix> qubit;  // E_i
  std::vector<ComplexMatrix> qudit;  // F_j
};

/// Qubit operators E0 = diag(1, sqrt(1-ga)), E1 = diag(0, sqrt(ga)) and the
/// qutrit operators F0 = diag(1, sqrt(1-gb), sqrt(1-gb)), F1 = sqrt(gb)|1><1|,
/// F2 = sqrt(gb)|2><2|. Only d = 3 is defined.
inline KrausSet dephasing_kraus(const DephasingParams& p, int d) {
  const auto checked = DephasingParams::make(p.gamma_a, p.gamma_b);
  if (d != 3) {
    throw ParameterError("dephasing_kraus is defined for a qutrit partner only (d = 3), got d = " +
                         std::to_string(d) + "; see generalized_dephasing_kraus");
  }
  const double ka = std::sqrt(1.0 - checked.gamma_a);
  const double ga = std::sqrt(checked.gamma_a);
  const double kb = std::sqrt(1.0 - checked.gamma_b);
  const double gb = std::sqrt(checked.gamma_b);
  KrausSet set;
  set.qubit.push_back(ComplexMatrix::diagonal({1.0, ka}));
  set.qubit.push_back(ComplexMatrix::diagonal({0.0, ga}));
  set.qudit.push_back(ComplexMatrix::diagonal({1.0, kb, kb}));
  set.qudit.push_back(ComplexMatrix::diagonal({0.0, gb, 0.0}));
  set.qudit.push_back(ComplexMatrix::diagonal({0.0, 0.0, gb}));
  return set;
}

/// Experimental: extends the qutrit operators to d levels as
/// F0 = diag(1, sqrt(1-gb), ..., sqrt(1-gb)) and Fk = sqrt(gb)|k><k| for
/// k = 1..d-1. Agrees with dephasing_kraus at d = 3.
inline KrausSet generalized_dephasing_kraus(const DephasingParams& p, int d) {
  if (d < 2) throw ParameterError("generalized_dephasing_kraus needs d >= 2");
  if (d == 3) return dephasing_kraus(p, d);
  const auto checked = DephasingParams::make(p.gamma_a, p.gamma_b);
  KrausSet set;
  set.qubit.push_back(ComplexMatrix::diagonal({1.0, std::sqrt(1.0 - checked.gamma_a)}));
  set.qubit.push_back(ComplexMatrix::diagonal({0.0, std::sqrt(checked.gamma_a)}));
  const auto n = static_cast<std::size_t>(d);
  ComplexMatrix f0(n);
  f0(0, 0) = 1.0;
  for (std::size_t k = 1; k < n; ++k) f0(k, k) = std::sqrt(1.0 - checked.gamma_b);
  set.qudit.push_back(f0);
  for (std::size_t k = 1; k < n; ++k) {
    ComplexMatrix fk(n);
    fk(k, k) = std::sqrt(checked.gamma_b);
    set.qudit.push_back(fk);
  }
  return set;
}

/// sum_{i,j} (E_i (x) F_j) rho (E_i (x) F_j)^H with the output symmetrized
/// and revalidated.
inline DensityMatrix apply_kraus_product(const DensityMatrix& rho, const KrausSet& ops) {
  if (ops.qubit.empty() || ops.qudit.empty()) throw ParameterError("empty Kraus set");
  if (ops.qubit.front().dim() != rho.dim_a() || ops.qudit.front().dim() != rho.dim_b()) {
    throw DimensionError("Kraus operators do not match the state's factor dimensions");
  }
  ComplexMatrix out(rho.dim());
  for (const auto& e : ops.qubit)
    for (const auto& f : ops.qudit) {
      const auto k = tensor_product(e, f);
      out += matmul(matmul(k, rho.matrix()), k.adjoint());
    }
  return validate_density_matrix(symmetrized(out), rho.dim_a(), rho.dim_b());
}

/// Dephasing of a qubit (x) qutrit state.
inline DensityMatrix apply_dephasing(const DensityMatrix& rho, const DephasingParams& p) {
  if (rho.dim_a() != 2 || rho.dim_b() != 3) {
    throw DimensionError("apply_dephasing expects a 2 x 3 state, got " +
                         std::to_string(rho.dim_a()) + " x " + std::to_string(rho.dim_b()));
  }
  return apply_kraus_product(rho, dephasing_kraus(p, 3));
}

}  // namespace qdeficit
