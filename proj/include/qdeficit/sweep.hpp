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

// Parameter sweeps behind the fig1 / fig2 / point commands, their CSV
// encoding, and the numerical re-check of emitted rows.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "qdeficit/correlations.hpp"
#include "qdeficit/decoherence.hpp"
#include "qdeficit/errors.hpp"
#include "qdeficit/measurement.hpp"
#include "qdeficit/state_family.hpp"

namespace qdeficit {

/// A sweep request that cannot be honoured; the message names the violated
/// constraint.
class SweepError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

enum class SweepMode { fig1, fig2, point, verify };

struct SweepSpec {
  SweepMode mode = SweepMode::fig1;
  int d = 3;
  double s = 0.15;     // fixed in fig1
  double r = 0.03;     // fixed in fig2
  double t = 0.58;     // fixed in fig2
  double x = 0.8;
  double gamma_a = 0.0;  // point only
  double gamma_b = 0.0;  // point only
  double start = 0.0;    // swept variable: t (fig1) or gamma (fig2)
  double stop = 0.0;
  int steps = 0;
  int grid_n = 64;
  int jobs = 1;

  /// s = 0.15, t over [0, 1 - 3s] in 111 rows, x = 0.8.
  static SweepSpec fig1_defaults() {
    SweepSpec spec;
    spec.mode = SweepMode::fig1;
    spec.stop = 1.0 - 3.0 * spec.s;
    spec.steps = 111;
    return spec;
  }

  /// r = 0.03, t = 0.58 (s = 0.12), x = 0.8, gamma_a = gamma_b over [0, 1]
  /// in 101 rows.
  static SweepSpec fig2_defaults() {
    SweepSpec spec;
    spec.mode = SweepMode::fig2;
    spec.stop = 1.0;
    spec.steps = 101;
    return spec;
  }
};

/// One row: the state, the noise, and the three closed-form measures.
struct CorrelationPoint {
  double param = 0.0;  // the swept value (t or gamma)
  double r = 0.0, s = 0.0, t = 0.0;
  int d = 3;
  double x = 0.0;
  double gamma_a = 0.0, gamma_b = 0.0;
  double deficit = 0.0;       // bits
  double weak_deficit = 0.0;  // bits
  double negativity = 0.0;
};

/// Closed-form measures for one state. With no dephasing, d may be any
/// value >= 3 and the negativity of d != 3 states falls back to the
/// partial-transpose trace norm.
inline CorrelationPoint evaluate_point(const TwoParamState& st, double x,
                                       const DephasingParams& p, double param = 0.0) {
  CorrelationPoint pt;
  pt.param = param;
  pt.r = st.r();
  pt.s = st.s();
  pt.t = st.t();
  pt.d = st.d();
  pt.x = x;
  pt.gamma_a = p.gamma_a;
  pt.gamma_b = p.gamma_b;
  if (p.gamma_a == 0.0 && p.gamma_b == 0.0) {
    pt.deficit = deficit_closed_form(st);
    pt.weak_deficit = weak_deficit_closed_form(st, x);
    pt.negativity = st.d() == 3 ? negativity_closed_form(st)
                                : negativity(build_two_param_state(st));
  } else {
    pt.deficit = dephased_deficit_closed_form(st, p);
    pt.weak_deficit = dephased_weak_deficit_closed_form(st, p, x);
    pt.negativity = dephased_negativity_closed_form(st, p);
  }
  return pt;
}

/// The same three measures computed from matrices: minimized entropy
/// increase, entropy increase under the weak measurement in the
/// computational basis, and the partial-transpose trace norm.
struct NumericalPoint {
  double deficit = 0.0;
  double spread = 0.0;
  double weak_deficit = 0.0;
  double negativity = 0.0;
};

inline NumericalPoint recompute_numerically(const CorrelationPoint& pt, int grid_n = 64) {
  const auto st = TwoParamState::make(pt.r, pt.t, pt.d);
  auto rho = build_two_param_state(st);
  if (pt.gamma_a != 0.0 || pt.gamma_b != 0.0) {
    rho = apply_dephasing(rho, DephasingParams::make(pt.gamma_a, pt.gamma_b));
  }
  const auto found = deficit_numerical(rho, {.grid_n = grid_n});
  NumericalPoint out;
  out.deficit = found.value;
  out.spread = found.spread;
  out.weak_deficit = weak_entropy_increase(rho, WeakMeasurement::make(pt.x));
  out.negativity = negativity(rho);
  return out;
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
/// thrown by any worker is rethrown on the caller's thread.
template <class Fn>
void parallel_for_index(std::size_t n, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, n); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

namespace detail {

inline std::vector<double> sweep_values(const SweepSpec& spec) {
  if (spec.steps < 1) throw SweepError("--steps must be >= 1");
  if (!(spec.start <= spec.stop)) throw SweepError("sweep start must not exceed stop");
  if (spec.steps == 1 && spec.start != spec.stop) {
    throw SweepError("--steps 1 needs start == stop");
  }
  std::vector<double> v(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    v[static_cast<std::size_t>(i)] =
        spec.steps == 1 ? spec.start
                        : spec.start + (spec.stop - spec.start) * i / (spec.steps - 1);
  }
  v.back() = spec.stop;
  return v;
}

inline void check_common(const SweepSpec& spec) {
  if (!(spec.x >= 0.0 && spec.x <= WeakMeasurement::kMaxStrength)) {
    throw SweepError("--x must lie in [0, 500]");
  }
  if (spec.grid_n < 8) throw SweepError("--grid-n must be >= 8");
  if (spec.jobs < 1) throw SweepError("--jobs must be >= 1");
}

}  // namespace detail

/// Fixed s, swept t. Every t must keep r = (1 - 3s - t)/(2(d-2)) >= 0.
inline std::vector<CorrelationPoint> run_fig1_sweep(const SweepSpec& spec) {
  detail::check_common(spec);
  if (spec.d < 3) throw SweepError("--d must be >= 3");
  if (!(spec.s >= 0.0 && spec.s <= 1.0 / 3.0)) throw SweepError("--s must lie in [0, 1/3]");
  const double t_max = 1.0 - 3.0 * spec.s;
  const auto ts = detail::sweep_values(spec);
  if (ts.front() < 0.0) throw SweepError("t range must start at or above 0");
  if (ts.back() > t_max + TwoParamState::kBoundarySlack) {
    throw SweepError("t range exceeds 1 - 3s = " + detail::sci(t_max) +
                     " (r would be negative)");
  }
  std::vector<TwoParamState> states;
  states.reserve(ts.size());
  for (double t : ts) states.push_back(TwoParamState::from_s_t(spec.s, t, spec.d));

  std::vector<CorrelationPoint> rows(ts.size());
  parallel_for_index(rows.size(), spec.jobs, [&](std::size_t i) {
    rows[i] = evaluate_point(states[i], spec.x, {}, ts[i]);
  });
  return rows;
}

/// Fixed (r, t) on a qubit-qutrit pair, swept gamma_a = gamma_b = gamma.
inline std::vector<CorrelationPoint> run_fig2_sweep(const SweepSpec& spec) {
  detail::check_common(spec);
  if (spec.d != 3) throw SweepError("fig2 is defined for d = 3 only");
  const auto gammas = detail::sweep_values(spec);
  if (gammas.front() < 0.0 || gammas.back() > 1.0) {
    throw SweepError("gamma range must lie within [0, 1]");
  }
  const auto st = TwoParamState::make(spec.r, spec.t, spec.d);
  std::vector<CorrelationPoint> rows(gammas.size());
  parallel_for_index(rows.size(), spec.jobs, [&](std::size_t i) {
    rows[i] = evaluate_point(st, spec.x, DephasingParams::make(gammas[i], gammas[i]), gammas[i]);
  });
  return rows;
}

/// Worst closed-form vs numerical disagreement over a set of rows.
struct CheckSummary {
  std::size_t rows = 0;
  double max_deficit_deviation = 0.0;
  double max_weak_deviation = 0.0;
  double max_negativity_deviation = 0.0;

  double max_deviation() const {
    return std::max({max_deficit_deviation, max_weak_deviation, max_negativity_deviation});
  }
};

inline CheckSummary check_rows(const std::vector<CorrelationPoint>& rows, int grid_n, int jobs) {
  std::vector<NumericalPoint> numeric(rows.size());
  parallel_for_index(rows.size(), jobs,
                     [&](std::size_t i) { numeric[i] = recompute_numerically(rows[i], grid_n); });
  CheckSummary sum;
  sum.rows = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    sum.max_deficit_deviation =
        std::max(sum.max_deficit_deviation, std::abs(rows[i].deficit - numeric[i].deficit));
    sum.max_weak_deviation =
        std::max(sum.max_weak_deviation, std::abs(rows[i].weak_deficit - numeric[i].weak_deficit));
    sum.max_negativity_deviation =
        std::max(sum.max_negativity_deviation, std::abs(rows[i].negativity - numeric[i].negativity));
  }
  return sum;
}

/// 12 significant digits.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline constexpr const char* kSweepCsvHeader = "param,deficit_bits,weak_deficit_bits,negativity";

inline void write_sweep_csv(std::ostream& os, const std::vector<CorrelationPoint>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const auto& p : rows) {
    os << format_number(p.param) << ',' << format_number(p.deficit) << ','
       << format_number(p.weak_deficit) << ',' << format_number(p.negativity) << '\n';
  }
}

inline constexpr const char* kPointCsvHeader =
    "r,s,t,d,x,gamma_a,gamma_b,deficit_bits,weak_deficit_bits,negativity";

inline void write_point_csv(std::ostream& os, const CorrelationPoint& p) {
  os << kPointCsvHeader << '\n'
     << format_number(p.r) << ',' << format_number(p.s) << ',' << format_number(p.t) << ','
     << p.d << ',' << format_number(p.x) << ',' << format_number(p.gamma_a) << ','
     << format_number(p.gamma_b) << ',' << format_number(p.deficit) << ','
     << format_number(p.weak_deficit) << ',' << format_number(p.negativity) << '\n';
}

}  // namespace qdeficit
