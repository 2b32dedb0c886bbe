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

#include <random>

#include "oracle.hpp"
#include "qdeficit/matrix.hpp"
#include "qdeficit/state_family.hpp"
#include "qdeficit/verify.hpp"

using namespace qdeficit;
using Catch::Approx;

namespace {

const ComplexMatrix kSigmaX = ComplexMatrix::from_rows({{0, 1}, {1, 0}});

ComplexMatrix psi_minus_2x2() { return bell_projector(BellLabel::psi_minus, 2); }

void require_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("matmul", "[matrix]") {
  const auto i2 = ComplexMatrix::identity(2);
  REQUIRE(matmul(i2, i2) == i2);
  REQUIRE(matmul(ComplexMatrix::diagonal({1.0, 2.0}), ComplexMatrix::diagonal({3.0, 4.0})) ==
          ComplexMatrix::diagonal({3.0, 8.0}));
  REQUIRE(matmul(kSigmaX, kSigmaX) == i2);
  REQUIRE_THROWS_AS(matmul(i2, ComplexMatrix::identity(3)), DimensionError);
}

TEST_CASE("tensor_product", "[matrix]") {
  REQUIRE(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(3)) ==
          ComplexMatrix::identity(6));
  REQUIRE(tensor_product(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({1.0, 2.0, 3.0})) ==
          ComplexMatrix::diagonal({1.0, 2.0, 3.0, 0.0, 0.0, 0.0}));

  SECTION("projector on A annihilates |1,k>") {
    const auto p = tensor_product(ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::identity(3));
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t row = 0; row < 6; ++row) REQUIRE(p(row, 3 + k) == Complex{});
  }
  SECTION("dimension law") {
    for (std::size_t a = 1; a <= 4; ++a)
      for (std::size_t b = 1; b <= 4; ++b)
        REQUIRE(tensor_product(ComplexMatrix(a), ComplexMatrix(b)).dim() == a * b);
  }
}

TEST_CASE("partial_transpose_b", "[matrix]") {
  REQUIRE(partial_transpose_b(ComplexMatrix::identity(6), 2, 3) == ComplexMatrix::identity(6));
  require_close(hermitian_eigenvalues(partial_transpose_b(psi_minus_2x2(), 2, 2)),
                {-0.5, 0.5, 0.5, 0.5}, 1e-14);
  REQUIRE_THROWS_AS(partial_transpose_b(ComplexMatrix::identity(6), 2, 2), DimensionError);

  SECTION("involution and commutes with adjoint on random Hermitian input") {
    SampleSource rng(7);
    for (int k = 0; k < 100; ++k) {
      const auto m = rng.hermitian(6);
      const auto pt = partial_transpose_b(m, 2, 3);
      REQUIRE(max_abs_diff(partial_transpose_b(pt, 2, 3), m) < 1e-12);
      REQUIRE(max_abs_diff(pt.adjoint(), partial_transpose_b(m.adjoint(), 2, 3)) < 1e-12);
      REQUIRE(hermiticity_defect(pt) < 1e-12);
    }
  }
  SECTION("matches the reference index shuffle") {
    SampleSource rng(8);
    const auto m = rng.density(8);
    REQUIRE((oracle::to_eigen(partial_transpose_b(m, 2, 4)) - oracle::partial_transpose_b(oracle::to_eigen(m), 2, 4))
                .cwiseAbs()
                .maxCoeff() == 0.0);
  }
}

TEST_CASE("partial_trace_b", "[matrix]") {
  REQUIRE(partial_trace_b(ComplexMatrix::identity(6), 2, 3) == 3.0 * ComplexMatrix::identity(2));
  REQUIRE(max_abs_diff(partial_trace_b(psi_minus_2x2(), 2, 2), 0.5 * ComplexMatrix::identity(2)) <
          1e-15);
  SampleSource rng(3);
  const auto rho_a = rng.density(2);
  const auto rho_b = rng.density(3);
  REQUIRE(max_abs_diff(partial_trace_b(tensor_product(rho_a, rho_b), 2, 3), rho_a) < 1e-14);
  REQUIRE_THROWS_AS(partial_trace_b(ComplexMatrix::identity(5), 2, 3), DimensionError);
}

TEST_CASE("hermitian_eigenvalues", "[matrix]") {
  REQUIRE(hermitian_eigenvalues(ComplexMatrix::diagonal({3.0, 1.0, 2.0})) ==
          std::vector<double>{1.0, 2.0, 3.0});
  require_close(hermitian_eigenvalues(kSigmaX), {-1.0, 1.0}, 1e-15);

  SECTION("family spectrum at d = 3") {
    const auto rho = build_two_param_state(0.05, 0.45, 3);
    require_close(hermitian_eigenvalues(rho.matrix()), {0.05, 0.05, 0.15, 0.15, 0.15, 0.45}, 1e-12);
  }
  SECTION("agrees with Eigen on random complex Hermitian matrices") {
    SampleSource rng(11);
    for (int k = 0; k < 200; ++k) {
      const auto n = static_cast<std::size_t>(rng.integer(1, 16));
      const auto m = rng.hermitian(n);
      require_close(hermitian_eigenvalues(m), oracle::eigenvalues(m), 1e-11);
    }
  }
  SECTION("degenerate and scaled spectra") {
    SampleSource rng(12);
    const auto m = rng.hermitian(6);
    require_close(hermitian_eigenvalues(1e6 * m), oracle::eigenvalues(1e6 * m), 1e-6);
    require_close(hermitian_eigenvalues(ComplexMatrix::identity(8)), std::vector<double>(8, 1.0), 0.0);
  }
  SECTION("eigenvalue sum equals trace") {
    SampleSource rng(13);
    for (int k = 0; k < 50; ++k) {
      const auto m = rng.hermitian(10);
      double sum = 0.0;
      for (double v : hermitian_eigenvalues(m)) sum += v;
      REQUIRE(std::abs(sum - m.trace().real()) < 1e-10);
    }
  }
  SECTION("rejects non-Hermitian input") {
    auto m = ComplexMatrix::identity(3);
    m(0, 1) = 1e-6;
    REQUIRE_THROWS_AS(hermitian_eigenvalues(m), NotHermitian);
    m(0, 1) = 1e-12;  // inside tolerance: symmetrized and accepted
    REQUIRE_NOTHROW(hermitian_eigenvalues(m));
  }
  SECTION("rejects non-finite input") {
    auto m = ComplexMatrix::identity(2);
    m(1, 1) = std::nan("");
    REQUIRE_THROWS_AS(hermitian_eigenvalues(m), ParameterError);
  }
}

TEST_CASE("trace_norm_hermitian", "[matrix]") {
  REQUIRE(trace_norm_hermitian(ComplexMatrix::identity(6)) == Approx(6.0).margin(1e-14));
  REQUIRE(trace_norm_hermitian(partial_transpose_b(psi_minus_2x2(), 2, 2)) ==
          Approx(2.0).margin(1e-14));
  SampleSource rng(21);
  for (int k = 0; k < 50; ++k) {
    const auto rho = rng.bipartite_density(2, 3);
    REQUIRE(std::abs(trace_norm_hermitian(rho.matrix()) - 1.0) < 1e-9);
  }
}

TEST_CASE("matrix construction guards", "[matrix]") {
  REQUIRE_THROWS_AS(ComplexMatrix(0), DimensionError);
  REQUIRE_THROWS_AS(ComplexMatrix::from_rows({{1, 2}, {3}}), DimensionError);
  REQUIRE_THROWS_AS(ComplexMatrix::identity(2) + ComplexMatrix::identity(3), DimensionError);
}
