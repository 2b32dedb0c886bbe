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

// Locates the dephasing strength at which the entanglement of the
// r = 0.03, t = 0.58 qubit-qutrit state vanishes, once from the closed form
// and once by bisection on the partial-transpose trace norm.

#include <cstdio>

#include "qdeficit/qdeficit.hpp"

int main() {
  using namespace qdeficit;
  const auto st = TwoParamState::make(0.03, 0.58, 3);
  const auto rho = build_two_param_state(st);

  const auto entangled = [&](double gamma) {
    return negativity(apply_dephasing(rho, DephasingParams::make(gamma, gamma))) > 0.0;
  };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (entangled(mid) ? lo : hi) = mid;
  }

  // Closed form vanishes where 2(2r + t - 1) + (2r + 4t - 1)(1 - gamma) = 0.
  const double r = st.r(), t = st.t();
  const double closed = 1.0 + 2.0 * (2.0 * r + t - 1.0) / (2.0 * r + 4.0 * t - 1.0);

  std::printf("s = %.6f\n", st.s());
  std::printf("sudden death (closed form): gamma* = %.9f\n", closed);
  std::printf("sudden death (trace norm):  gamma* = %.9f\n", lo);
  for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const auto p = DephasingParams::make(g, g);
    std::printf("gamma %.2f  deficit %.6f  weak %.6f  negativity %.6f\n", g,
                dephased_deficit_closed_form(st, p), dephased_weak_deficit_closed_form(st, p, 0.8),
                dephased_negativity_closed_form(st, p));
  }
}
