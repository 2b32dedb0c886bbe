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
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

namespace qdeficit {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> point{};
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead downhill simplex with the standard coefficients (reflect 1,
/// expand 2, contract 1/2, shrink 1/2). Stops once the largest vertex
/// distance falls below `diameter_tol`.
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start, double step,
                             double diameter_tol, int max_iterations = 5000) {
  using Point = std::array<double, N>;
  std::array<std::pair<Point, double>, N + 1> simplex;
  simplex[0] = {start, f(start)};
  for (std::size_t k = 0; k < N; ++k) {
    Point p = start;
    p[k] += step;
    simplex[k + 1] = {p, f(p)};
  }

  const auto diameter = [&] {
    double worst = 0.0;
    for (std::size_t i = 0; i <= N; ++i)
      for (std::size_t j = i + 1; j <= N; ++j) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
          const double dk = simplex[i].first[k] - simplex[j].first[k];
          d2 += dk * dk;
        }
        worst = std::max(worst, d2);
      }
    return std::sqrt(worst);
  };
  const auto along = [](const Point& from, const Point& to, double t) {
    Point p;
    for (std::size_t k = 0; k < N; ++k) p[k] = from[k] + t * (to[k] - from[k]);
    return p;
  };

  SimplexResult<N> result;
  for (; result.iterations < max_iterations; ++result.iterations) {
    // Stable sort keeps earlier vertices first on ties.
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    if (diameter() < diameter_tol) {
      result.converged = true;
      break;
    }
    Point centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += simplex[i].first[k] / double(N);

    auto& worst = simplex[N];
    const Point reflected = along(worst.first, centroid, 2.0);
    const double fr = f(reflected);
    if (fr < simplex[0].second) {
      const Point expanded = along(worst.first, centroid, 3.0);
      const double fe = f(expanded);
      worst = fe < fr ? std::pair{expanded, fe} : std::pair{reflected, fr};
    } else if (fr < simplex[N - 1].second) {
      worst = {reflected, fr};
    } else {
      // Outside contraction when the reflection beat the worst vertex,
      // inside contraction otherwise.
      const bool outside = fr < worst.second;
      const Point contracted = along(worst.first, centroid, outside ? 1.5 : 0.5);
      const double fc = f(contracted);
      if (fc < (outside ? fr : worst.second)) {
        worst = {contracted, fc};
      } else {
        for (std::size_t i = 1; i <= N; ++i) {
          simplex[i].first = along(simplex[0].first, simplex[i].first, 0.5);
          simplex[i].second = f(simplex[i].first);
        }
      }
    }
  }
  std::stable_sort(simplex.begin(), simplex.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  result.point = simplex[0].first;
  result.value = simplex[0].second;
  return result;
}

}  // namespace qdeficit
