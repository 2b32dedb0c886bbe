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

#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "qdeficit/correlations.hpp"
#include "qdeficit/state_family.hpp"
#include "qdeficit/verify.hpp"

using namespace qdeficit;
using Catch::Approx;

TEST_CASE("build_two_param_state", "[state]") {
  SECTION("r = 0.05, t = 0.45, d = 3") {
    const auto st = TwoParamState::make(0.05, 0.45, 3);
    REQUIRE(st.s() == Approx(0.15).margin(1e-15));
    const auto rho = build_two_param_state(st);
    const std::vector<double> expect{0.05, 0.05, 0.15, 0.15, 0.15, 0.45};
    for (std::size_t i = 0; i < expect.size(); ++i)
      REQUIRE(rho.spectrum()[i] == Approx(expect[i]).margin(1e-12));
    REQUIRE(rho.matrix().trace().real() == Approx(1.0).margin(1e-15));
  }
  SECTION("t = 1 is the pure singlet") {
    const auto rho = build_two_param_state(0.0, 1.0, 3);
    REQUIRE(max_abs_diff(rho.matrix(), bell_projector(BellLabel::psi_minus, 3)) < 1e-15);
    REQUIRE(rho.spectrum().back() == Approx(1.0).margin(1e-14));
    REQUIRE(std::abs(rho.spectrum().front()) < 1e-14);
  }
  SECTION("Fig. 2 state has s = 0.12") {
    REQUIRE(TwoParamState::make(0.03, 0.58, 3).s() == Approx(0.12).margin(1e-15));
  }
  SECTION("matches the explicit-ket reference construction") {
    for (int d = 3; d <= 6; ++d) {
      const auto st = TwoParamState::make(0.4 / (2 * d - 4), 0.3, d);
      const auto ref = oracle::family(st.r(), st.s(), st.t(), d);
      REQUIRE((oracle::to_eigen(build_two_param_state(st).matrix()) - ref).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  SECTION("parameter errors") {
    REQUIRE_THROWS_AS(TwoParamState::make(0.1, 0.5, 2), ParameterError);
    REQUIRE_THROWS_AS(TwoParamState::make(0.3, 0.5, 3), ParameterError);   // s < 0
    REQUIRE_THROWS_AS(TwoParamState::make(-0.01, 0.5, 3), ParameterError);
    REQUIRE_THROWS_AS(TwoParamState::make(0.1, 1.2, 3), ParameterError);
    REQUIRE_THROWS_AS(TwoParamState::make(0.6, 0.0, 3), ParameterError);   // r > 1/(2d-4)
  }
  SECTION("boundary rounding is snapped, not rejected") {
    const auto st = TwoParamState::from_s_t(0.15, 0.55, 3);
    REQUIRE(st.r() >= 0.0);
    REQUIRE(st.r() < 1e-15);
  }
}

TEST_CASE("family spectrum and entropy over a grid", "[state]") {
  for (int d = 3; d <= 6; ++d)
    for (const auto& st : family_grid(d, 20)) {
      const auto rho = build_two_param_state(st);
      const auto expect = st.spectrum();
      for (std::size_t i = 0; i < expect.size(); ++i)
        REQUIRE(std::abs(rho.spectrum()[i] - expect[i]) < 1e-10);
      const double formula =
          -(3.0 * xlog2x(st.s()) + xlog2x(st.t()) + 2.0 * (d - 2) * xlog2x(st.r()));
      REQUIRE(std::abs(von_neumann_entropy(rho) - formula) < 1e-9);
      REQUIRE(build_two_param_state(st).matrix() == rho.matrix());
    }
}

TEST_CASE("validate_density_matrix", "[state]") {
  REQUIRE_NOTHROW(validate_density_matrix(ComplexMatrix::identity(6) * Complex(1.0 / 6.0), 2, 3));
  std::vector<double> pure(6, 0.0);
  pure[0] = 1.0;
  REQUIRE_NOTHROW(validate_density_matrix(ComplexMatrix::diagonal(pure), 2, 3));

  std::vector<double> bad(6, 0.0);
  bad[0] = 1.5;
  bad[1] = -0.5;
  try {
    validate_density_matrix(ComplexMatrix::diagonal(bad), 2, 3);
    FAIL("expected NotPositive");
  } catch (const NotPositive& e) {
    REQUIRE(e.magnitude() == Approx(-0.5));
  }

  auto twice = ComplexMatrix::identity(6) * Complex(2.0 / 6.0);
  REQUIRE_THROWS_AS(validate_density_matrix(twice, 2, 3), TraceNotOne);

  auto skew = ComplexMatrix::identity(6) * Complex(1.0 / 6.0);
  skew(0, 1) = 0.01;
  REQUIRE_THROWS_AS(validate_density_matrix(skew, 2, 3), NotHermitian);

  REQUIRE_THROWS_AS(validate_density_matrix(ComplexMatrix::identity(6), 2, 2), DimensionError);
}

TEST_CASE("bell_projector", "[state]") {
  const auto psi = bell_projector(BellLabel::psi_minus, 2);
  const auto expect = ComplexMatrix::from_rows(
      {{0, 0, 0, 0}, {0, 0.5, -0.5, 0}, {0, -0.5, 0.5, 0}, {0, 0, 0, 0}});
  REQUIRE(max_abs_diff(psi, expect) < 1e-15);

  REQUIRE(max_abs_diff(matmul(bell_projector(BellLabel::phi_plus, 3),
                              bell_projector(BellLabel::psi_minus, 3)),
                       ComplexMatrix(6)) < 1e-15);

  const std::array labels{BellLabel::phi_plus, BellLabel::phi_minus, BellLabel::psi_plus,
                          BellLabel::psi_minus};
  ComplexMatrix sum(6);
  for (auto b : labels) {
    const auto p = bell_projector(b, 3);
    REQUIRE(max_abs_diff(matmul(p, p), p) < 1e-15);
    REQUIRE(p.trace().real() == Approx(1.0));
    sum += p;
  }
  // Projector onto span{|00>, |01>, |10>, |11>} in the 2 x 3 ordering.
  REQUIRE(max_abs_diff(sum, ComplexMatrix::diagonal({1.0, 1.0, 0.0, 1.0, 1.0, 0.0})) < 1e-15);
  REQUIRE(sum.trace().real() == Approx(4.0));
  REQUIRE_THROWS_AS(bell_projector(BellLabel::phi_plus, 1), ParameterError);
}
