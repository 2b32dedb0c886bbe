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

#include <numbers>

#include "oracle.hpp"
#include "qdeficit/decoherence.hpp"
#include "qdeficit/verify.hpp"

using namespace qdeficit;
using Catch::Approx;

namespace {

double completeness_defect(const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix sum(ops.front().dim());
  for (const auto& k : ops) sum += matmul(k.adjoint(), k);
  return max_abs_diff(sum, ComplexMatrix::identity(sum.dim()));
}

}  // namespace

TEST_CASE("dephasing_kraus", "[decoherence]") {
  SECTION("gamma_a = 0") {
    const auto set = dephasing_kraus(DephasingParams::make(0.0, 0.3), 3);
    REQUIRE(set.qubit[0] == ComplexMatrix::identity(2));
    REQUIRE(set.qubit[1] == ComplexMatrix(2));
  }
  SECTION("gamma_a = 1") {
    const auto set = dephasing_kraus(DephasingParams::make(1.0, 0.3), 3);
    REQUIRE(set.qubit[0] == ComplexMatrix::diagonal({1.0, 0.0}));
    REQUIRE(set.qubit[1] == ComplexMatrix::diagonal({0.0, 1.0}));
  }
  SECTION("gamma_b = 0.75") {
    const auto set = dephasing_kraus(DephasingParams::make(0.0, 0.75), 3);
    const double g = std::sqrt(0.75);
    REQUIRE(max_abs_diff(set.qudit[0], ComplexMatrix::diagonal({1.0, 0.5, 0.5})) < 1e-15);
    REQUIRE(max_abs_diff(set.qudit[1], ComplexMatrix::diagonal({0.0, g, 0.0})) < 1e-15);
    REQUIRE(max_abs_diff(set.qudit[2], ComplexMatrix::diagonal({0.0, 0.0, g})) < 1e-15);
    REQUIRE(completeness_defect(set.qudit) < 1e-12);
  }
  SECTION("completeness on a gamma grid") {
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) {
        const auto set = dephasing_kraus(DephasingParams::make(i / 10.0, j / 10.0), 3);
        REQUIRE(completeness_defect(set.qubit) < 1e-12);
        REQUIRE(completeness_defect(set.qudit) < 1e-12);
      }
  }
  SECTION("errors") {
    REQUIRE_THROWS_AS(DephasingParams::make(-0.1, 0.0), ParameterError);
    REQUIRE_THROWS_AS(DephasingParams::make(0.0, 1.1), ParameterError);
    REQUIRE_THROWS_AS(dephasing_kraus({0.2, 0.2}, 4), ParameterError);
    REQUIRE_THROWS_AS(dephasing_kraus({1.5, 0.2}, 3), ParameterError);
  }
}

TEST_CASE("generalized_dephasing_kraus", "[decoherence][experimental]") {
  const DephasingParams p{0.4, 0.6};
  const auto three = generalized_dephasing_kraus(p, 3);
  const auto reference = dephasing_kraus(p, 3);
  REQUIRE(three.qudit == reference.qudit);
  for (int d : {2, 4, 6}) {
    const auto set = generalized_dephasing_kraus(p, d);
    REQUIRE(set.qudit.size() == static_cast<std::size_t>(d));
    REQUIRE(completeness_defect(set.qudit) < 1e-12);
  }
  SampleSource rng(41);
  const auto rho = rng.bipartite_density(2, 4);
  const auto out = apply_kraus_product(rho, generalized_dephasing_kraus(p, 4));
  for (std::size_t i = 0; i < 8; ++i) REQUIRE(std::abs(out.matrix()(i, i) - rho.matrix()(i, i)) < 1e-12);
}

TEST_CASE("apply_dephasing", "[decoherence]") {
  SampleSource rng(43);

  SECTION("zero noise is the identity channel") {
    const auto rho = rng.bipartite_density(2, 3);
    REQUIRE(max_abs_diff(apply_dephasing(rho, {}).matrix(), rho.matrix()) < 1e-15);
  }
  SECTION("diagonal states are fixed") {
    const auto rho = validate_density_matrix(ComplexMatrix::diagonal({0.1, 0.2, 0.3, 0.15, 0.05, 0.2}), 2, 3);
    for (double g : {0.2, 0.7, 1.0})
      REQUIRE(max_abs_diff(apply_dephasing(rho, DephasingParams::make(g, 1.0 - g)).matrix(),
                           rho.matrix()) < 1e-15);
  }
  SECTION("Fig. 2 state at gamma = 0.5 halves the singlet coherence") {
    const auto st = TwoParamState::make(0.03, 0.58, 3);
    const auto rho = build_two_param_state(st);
    const auto out = apply_dephasing(rho, DephasingParams::make(0.5, 0.5));
    // <01| rho |10> = (s - t) / 2 = -0.23.
    REQUIRE(rho.matrix()(1, 3).real() == Approx(-0.23).margin(1e-15));
    REQUIRE(out.matrix()(1, 3).real() == Approx(-0.115).margin(1e-15));
    // Eigenvalues {lambda_0, lambda_1, s, s, r, r} with c = 0.5.
    std::vector<double> expect{0.5 * (0.7 - 0.46 * 0.5), 0.5 * (0.7 + 0.46 * 0.5), 0.12, 0.12, 0.03, 0.03};
    std::sort(expect.begin(), expect.end());
    for (std::size_t i = 0; i < 6; ++i) REQUIRE(out.spectrum()[i] == Approx(expect[i]).margin(1e-12));
  }
  SECTION("agrees with the Kronecker-product reference") {
    for (int k = 0; k < 20; ++k) {
      const auto rho = rng.bipartite_density(2, 3);
      const double ga = rng.uniform(0.0, 1.0), gb = rng.uniform(0.0, 1.0);
      const auto ref = oracle::dephase(oracle::to_eigen(rho.matrix()), ga, gb);
      REQUIRE((oracle::to_eigen(apply_dephasing(rho, {ga, gb}).matrix()) - ref).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SECTION("valid output, trace and diagonal preserved on random inputs") {
    for (int k = 0; k < 100; ++k) {
      const auto rho = rng.bipartite_density(2, 3);
      for (double ga : {0.0, 0.5, 1.0})
        for (double gb : {0.0, 0.5, 1.0}) {
          const auto out = apply_dephasing(rho, {ga, gb});
          REQUIRE(std::abs(out.matrix().trace().real() - 1.0) < 1e-12);
          for (std::size_t i = 0; i < 6; ++i)
            REQUIRE(std::abs(out.matrix()(i, i) - rho.matrix()(i, i)) < 1e-12);
        }
    }
  }
  SECTION("family coherence damping law") {
    for (int k = 0; k < 100; ++k) {
      const auto rho = build_two_param_state(rng.family_state(3));
      const auto p = DephasingParams::make(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
      const auto out = apply_dephasing(rho, p);
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
          if (i != j)
            REQUIRE(std::abs(out.matrix()(i, j) - p.coherence_factor() * rho.matrix()(i, j)) < 1e-12);
    }
  }
  SECTION("only 2 x 3 states") {
    const auto rho = rng.bipartite_density(2, 4);
    REQUIRE_THROWS_AS(apply_dephasing(rho, {0.1, 0.1}), DimensionError);
  }
}

TEST_CASE("gamma_from_decay", "[decoherence]") {
  const auto zero = gamma_from_decay({0.0, 1.3, 0.4});
  REQUIRE(zero.gamma_a == 0.0);
  REQUIRE(zero.gamma_b == 0.0);
  const auto frozen = gamma_from_decay({5.0, 0.0, 0.0});
  REQUIRE(frozen.gamma_a == 0.0);
  const auto half = gamma_from_decay({1.0, std::numbers::ln2, std::numbers::ln2});
  REQUIRE(half.gamma_a == Approx(0.5).margin(1e-15));
  REQUIRE(half.gamma_b == Approx(0.5).margin(1e-15));
  REQUIRE_THROWS_AS(gamma_from_decay({-1.0, 1.0, 1.0}), ParameterError);

  double previous = 0.0;
  for (double tau = 0.0; tau < 20.0; tau += 0.5) {
    const double g = gamma_from_decay({tau, 0.7, 0.7}).gamma_a;
    REQUIRE(g >= previous);
    REQUIRE(g < 1.0);
    previous = g;
  }

  SECTION("composes as a semigroup in time") {
    SampleSource rng(47);
    for (int k = 0; k < 5; ++k) {
      const double t1 = rng.uniform(0.0, 2.0), t2 = rng.uniform(0.0, 2.0), rate = rng.uniform(0.0, 2.0);
      const auto rho = rng.bipartite_density(2, 3);
      const auto once = apply_dephasing(rho, gamma_from_decay({t1 + t2, rate, rate}));
      const auto twice = apply_dephasing(apply_dephasing(rho, gamma_from_decay({t1, rate, rate})),
                                         gamma_from_decay({t2, rate, rate}));
      REQUIRE(max_abs_diff(once.matrix(), twice.matrix()) < 1e-10);
    }
  }
}
