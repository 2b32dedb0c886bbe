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

// Self-check suite: every structural property of the library, plus the
// agreement of each closed form with its matrix-level counterpart. The
// closed forms are taken from a swappable table so that deliberately broken
// variants can be run through the same suite to confirm it rejects them.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qdeficit/correlations.hpp"
#include "qdeficit/decoherence.hpp"
#include "qdeficit/matrix.hpp"
#include "qdeficit/measurement.hpp"
#include "qdeficit/state_family.hpp"
#include "qdeficit/sweep.hpp"

namespace qdeficit {

enum class Fault {
  none,
  deficit_sign_flip,    // s log 2s - t log 2t - (s+t) log(s+t)
  weak_sech_to_tanh,    // tanh x in place of sech x
  weak_negated_sech,    // -sech x
  negativity_no_clamp,  // closed-form negativities without max{0, .}
};

inline constexpr std::array<std::pair<Fault, std::string_view>, 5> kFaultNames{{
    {Fault::none, "none"},
    {Fault::deficit_sign_flip, "deficit-sign-flip"},
    {Fault::weak_sech_to_tanh, "weak-sech-to-tanh"},
    {Fault::weak_negated_sech, "weak-negated-sech"},
    {Fault::negativity_no_clamp, "negativity-no-clamp"},
}};

inline std::string_view to_string(Fault f) {
  for (const auto& [fault, name] : kFaultNames)
    if (fault == f) return name;
  return "?";
}

inline std::optional<Fault> parse_fault(std::string_view name) {
  for (const auto& [fault, n] : kFaultNames)
    if (n == name) return fault;
  return std::nullopt;
}

/// The closed forms under test.
struct ClosedForms {
  std::function<double(const TwoParamState&)> deficit;
  std::function<double(const TwoParamState&, double)> weak_deficit;
  std::function<double(const TwoParamState&)> negativity;
  std::function<double(const TwoParamState&, const DephasingParams&)> dephased_deficit;
  std::function<double(const TwoParamState&, const DephasingParams&, double)> dephased_weak_deficit;
  std::function<double(const TwoParamState&, const DephasingParams&)> dephased_negativity;

  static ClosedForms reference() {
    return {deficit_closed_form,
            weak_deficit_closed_form,
            negativity_closed_form,
            dephased_deficit_closed_form,
            dephased_weak_deficit_closed_form,
            dephased_negativity_closed_form};
  }

  static ClosedForms with_fault(Fault fault) {
    auto forms = reference();
    switch (fault) {
      case Fault::none:
        break;
      case Fault::deficit_sign_flip:
        forms.deficit = [](const TwoParamState& st) {
          const double s = st.s(), t = st.t();
          return weighted_log2(s, 2.0 * s) - weighted_log2(t, 2.0 * t) -
                 weighted_log2(s + t, s + t);
        };
        break;
      case Fault::weak_sech_to_tanh:
      case Fault::weak_negated_sech:
        forms.weak_deficit = [fault](const TwoParamState& st, double x) {
          const double s = st.s(), t = st.t();
          const double c = fault == Fault::weak_sech_to_tanh ? std::tanh(x) : -sech(x);
          const auto lambda = split_pair(s, t, c);
          return -xlog2x(lambda[0]) - xlog2x(lambda[1]) + xlog2x(s) + xlog2x(t);
        };
        break;
      case Fault::negativity_no_clamp:
        forms.negativity = [](const TwoParamState& st) { return 2.0 * (st.r() + st.t()) - 1.0; };
        forms.dephased_negativity = [](const TwoParamState& st, const DephasingParams& p) {
          const double r = st.r(), t = st.t();
          return (2.0 * (2.0 * r + t - 1.0) + (2.0 * r + 4.0 * t - 1.0) * p.coherence_factor()) /
                 3.0;
        };
        break;
    }
    return forms;
  }
};

struct PropertyResult {
  std::string name;
  std::size_t samples = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;

  bool passed() const { return std::isfinite(max_deviation) && max_deviation <= tolerance; }
};

struct VerifyReport {
  std::vector<PropertyResult> properties;

  bool passed() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.passed(); });
  }
  const PropertyResult* find(std::string_view name) const {
    for (const auto& p : properties)
      if (p.name == name) return &p;
    return nullptr;
  }
};

struct VerifyOptions {
  int grid_n = 64;
  int family_grid = 15;
  int jobs = 1;
  std::uint64_t seed = 0x5eed2016;
  Fault fault = Fault::none;
};

/// Valid (r, t) points for dimension d: t on n equal steps of [0, 1], and for
/// each t, r on n equal steps of [0, (1 - t) / (2(d - 2))].
inline std::vector<TwoParamState> family_grid(int d, int n) {
  std::vector<TwoParamState> out;
  out.reserve(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.5 : double(i) / (n - 1);
    const double r_max = (1.0 - t) / (2.0 * (d - 2));
    for (int j = 0; j < n; ++j) {
      const double r = n == 1 ? 0.5 * r_max : r_max * j / (n - 1);
      out.push_back(TwoParamState::make(r, t, d));
    }
  }
  return out;
}

/// Deterministic random inputs for property checks.
class SampleSource {
 public:
  explicit SampleSource(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(rng_);
  }
  double normal() {
    // Box-Muller keeps the stream independent of the standard library's
    // normal_distribution implementation.
    const double u1 = 1.0 - uniform(0.0, 1.0);
    const double u2 = uniform(0.0, 1.0);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(uniform(0.0, 1.0) * (hi - lo + 1)) % (hi - lo + 1);
  }

  ComplexMatrix hermitian(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = normal();
      for (std::size_t j = i + 1; j < n; ++j) {
        m(i, j) = Complex(normal(), normal());
        m(j, i) = std::conj(m(i, j));
      }
    }
    return m;
  }

  /// G G^H / Tr for a Gaussian G (full rank with probability one).
  ComplexMatrix density(std::size_t n) {
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(normal(), normal());
    auto m = matmul(g, g.adjoint());
    m *= Complex(1.0 / m.trace().real());
    return m;
  }

  DensityMatrix bipartite_density(std::size_t dim_a, std::size_t dim_b) {
    return validate_density_matrix(density(dim_a * dim_b), dim_a, dim_b);
  }

  TwoParamState family_state(int d) {
    const double t = uniform(0.0, 1.0);
    const double r = uniform(0.0, (1.0 - t) / (2.0 * (d - 2)));
    return TwoParamState::make(r, t, d);
  }

  /// p |0><0| (x) rho_0 + (1 - p) |1><1| (x) rho_1.
  DensityMatrix classical_quantum(std::size_t dim_b) {
    const double p = uniform(0.0, 1.0);
    const auto zero = ComplexMatrix::diagonal({1.0, 0.0});
    const auto one = ComplexMatrix::diagonal({0.0, 1.0});
    auto m = Complex(p) * tensor_product(zero, density(dim_b)) +
             Complex(1.0 - p) * tensor_product(one, density(dim_b));
    return validate_density_matrix(m, 2, dim_b);
  }

  MeasurementBasis basis() {
    return MeasurementBasis::canonical(uniform(0.0, std::numbers::pi),
                                       uniform(0.0, 2.0 * std::numbers::pi));
  }

 private:
  std::mt19937_64 rng_;
};

namespace detail {

class PropertyRecorder {
 public:
  PropertyRecorder(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }
  void observe(double deviation) {
    ++result_.samples;
    if (!std::isfinite(deviation)) {
      result_.max_deviation = deviation;
      poisoned_ = true;
    } else if (!poisoned_) {
      result_.max_deviation = std::max(result_.max_deviation, deviation);
    }
  }
  /// Records an operation that threw: counted as an infinite deviation.
  void fail() { observe(std::numeric_limits<double>::infinity()); }
  PropertyResult result() const { return result_; }

 private:
  PropertyResult result_;
  bool poisoned_ = false;
};

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

/// {s, s, (s+t)/2, (s+t)/2, r x 2(d-2)}.
inline std::vector<double> projective_spectrum(const TwoParamState& st) {
  std::vector<double> v(static_cast<std::size_t>(2 * (st.d() - 2)), st.r());
  const double mid = 0.5 * (st.s() + st.t());
  v.insert(v.end(), {st.s(), st.s(), mid, mid});
  return sorted(std::move(v));
}

/// {Lambda_0, Lambda_1, s, s, r x 2(d-2)}.
inline std::vector<double> weak_spectrum(const TwoParamState& st, double x) {
  std::vector<double> v(static_cast<std::size_t>(2 * (st.d() - 2)), st.r());
  const auto lambda = split_pair(st.s(), st.t(), sech(x));
  v.insert(v.end(), {st.s(), st.s(), lambda[0], lambda[1]});
  return sorted(std::move(v));
}

}  // namespace detail

inline VerifyReport run_verify(const VerifyOptions& opt = {}) {
  using detail::PropertyRecorder;
  const auto forms = ClosedForms::with_fault(opt.fault);
  SampleSource rng(opt.seed);
  VerifyReport report;
  const auto add = [&](const PropertyRecorder& rec) { report.properties.push_back(rec.result()); };
  const DeficitSearch search{.grid_n = opt.grid_n};

  // matrix-core
  {
    PropertyRecorder rec("matrix.partial_transpose_involution", 1e-12);
    for (int k = 0; k < 100; ++k) {
      const auto m = rng.hermitian(6);
      const auto pt = partial_transpose_b(m, 2, 3);
      rec.observe(std::max(qdeficit::max_abs_diff(partial_transpose_b(pt, 2, 3), m),
                           qdeficit::max_abs_diff(pt.adjoint(),
                                                  partial_transpose_b(m.adjoint(), 2, 3))));
    }
    add(rec);
  }
  {
    PropertyRecorder rec("matrix.eigenvalue_sum_equals_trace", 1e-10);
    for (int k = 0; k < 100; ++k) {
      const auto m = rng.hermitian(static_cast<std::size_t>(rng.integer(1, 12)));
      const auto ev = hermitian_eigenvalues(m);
      double sum = 0.0;
      for (double v : ev) sum += v;
      rec.observe(std::abs(sum - m.trace().real()));
    }
    add(rec);
  }
  {
    PropertyRecorder rec("matrix.diagonal_spectrum_exact", 1e-15);
    for (int k = 0; k < 50; ++k) {
      std::vector<double> diag(static_cast<std::size_t>(rng.integer(1, 10)));
      for (auto& v : diag) v = rng.uniform(-3.0, 3.0);
      rec.observe(detail::max_abs_diff(hermitian_eigenvalues(ComplexMatrix::diagonal(diag)),
                                       detail::sorted(diag)));
    }
    add(rec);
  }
  {
    PropertyRecorder rec("matrix.trace_norm_of_state_is_one", 1e-9);
    for (int k = 0; k < 100; ++k) {
      const auto rho = rng.bipartite_density(2, static_cast<std::size_t>(rng.integer(2, 5)));
      rec.observe(std::abs(trace_norm_hermitian(rho.matrix()) - 1.0));
    }
    add(rec);
  }

  // state-family
  {
    PropertyRecorder spectrum("family.spectrum", 1e-10);
    PropertyRecorder entropy("family.entropy_formula", 1e-9);
    PropertyRecorder deterministic("family.deterministic_construction", 0.0);
    for (int d = 3; d <= 6; ++d)
      for (const auto& st : family_grid(d, 20)) {
        try {
          const auto rho = build_two_param_state(st);
          spectrum.observe(detail::max_abs_diff(rho.spectrum(), st.spectrum()));
          const double formula = -(3.0 * xlog2x(st.s()) + xlog2x(st.t()) +
                                   2.0 * (d - 2) * xlog2x(st.r()));
          entropy.observe(std::abs(von_neumann_entropy(rho) - formula));
          deterministic.observe(build_two_param_state(st).matrix() == rho.matrix() ? 0.0 : 1.0);
        } catch (const std::exception&) {
          spectrum.fail();
        }
      }
    add(spectrum);
    add(entropy);
    add(deterministic);
  }

  // measurement
  {
    PropertyRecorder rec("measurement.weak_completeness", 1e-12);
    for (int k = 0; k < 50; ++k) {
      const auto w = WeakMeasurement::make(rng.uniform(0.0, 10.0), rng.basis());
      const auto [qp, qm] = weak_operators(w);
      const auto sum = matmul(qp.adjoint(), qp) + matmul(qm.adjoint(), qm);
      rec.observe(qdeficit::max_abs_diff(sum, ComplexMatrix::identity(2)));
    }
    add(rec);
  }
  {
    PropertyRecorder trace("measurement.trace_preservation", 1e-12);
    PropertyRecorder positive("measurement.positivity_preservation", 1e-10);
    PropertyRecorder idempotent("measurement.projective_idempotence", 1e-12);
    for (int k = 0; k < 100; ++k) {
      const auto rho = rng.bipartite_density(2, k % 2 == 0 ? 3 : 4);
      const auto basis = rng.basis();
      const auto w = WeakMeasurement::make(rng.uniform(0.0, 10.0), rng.basis());
      try {
        const auto proj = projective_post_state(rho, basis);
        const auto weak = weak_post_state(rho, w);
        // Validation already enforced these; record the raw magnitudes.
        trace.observe(std::abs(proj.matrix().trace().real() - rho.matrix().trace().real()));
        trace.observe(std::abs(weak.matrix().trace().real() - rho.matrix().trace().real()));
        positive.observe(std::max(0.0, -proj.spectrum().front()));
        positive.observe(std::max(0.0, -weak.spectrum().front()));
        idempotent.observe(
            qdeficit::max_abs_diff(projective_post_state(proj, basis).matrix(), proj.matrix()));
      } catch (const std::exception&) {
        positive.fail();
      }
    }
    add(trace);
    add(positive);
    add(idempotent);
  }
  {
    PropertyRecorder proj("measurement.projective_family_spectrum", 1e-10);
    PropertyRecorder weak("measurement.weak_family_spectrum", 1e-10);
    for (int k = 0; k < 25; ++k) {
      const auto st = rng.family_state(rng.integer(3, 6));
      const auto rho = build_two_param_state(st);
      proj.observe(detail::max_abs_diff(projective_post_state(rho, rng.basis()).spectrum(),
                                        detail::projective_spectrum(st)));
      const double x = rng.uniform(0.0, 5.0);
      // Weak spectrum in the computational basis and in a random basis.
      weak.observe(detail::max_abs_diff(weak_post_state(rho, WeakMeasurement::make(x)).spectrum(),
                                        detail::weak_spectrum(st, x)));
      weak.observe(detail::max_abs_diff(
          weak_post_state(rho, WeakMeasurement::make(x, rng.basis())).spectrum(),
          detail::weak_spectrum(st, x)));
    }
    add(proj);
    add(weak);
  }
  {
    PropertyRecorder rec("measurement.weak_interpolates_to_projective", 1e-10);
    const std::array<double, 6> xs{0.0, 0.4, 0.8, 2.0, 10.0, 40.0};
    for (int d = 3; d <= 4; ++d)
      for (const auto& st : family_grid(d, 6)) {
        const auto rho = build_two_param_state(st);
        const auto target = projective_post_state(rho, MeasurementBasis::computational()).spectrum();
        double previous = std::numeric_limits<double>::infinity();
        for (double x : xs) {
          const auto spec = weak_post_state(rho, WeakMeasurement::make(x)).spectrum();
          const double distance = detail::max_abs_diff(spec, target);
          if (x == 0.0) rec.observe(detail::max_abs_diff(spec, rho.spectrum()));
          if (x == 40.0) rec.observe(distance);
          rec.observe(std::max(0.0, distance - previous));
          previous = distance;
        }
      }
    add(rec);
  }

  // decoherence
  {
    PropertyRecorder rec("decoherence.kraus_completeness", 1e-12);
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) {
        const auto set = dephasing_kraus(DephasingParams::make(i / 10.0, j / 10.0), 3);
        ComplexMatrix ea(2), fb(3);
        for (const auto& e : set.qubit) ea += matmul(e.adjoint(), e);
        for (const auto& f : set.qudit) fb += matmul(f.adjoint(), f);
        rec.observe(std::max(qdeficit::max_abs_diff(ea, ComplexMatrix::identity(2)),
                             qdeficit::max_abs_diff(fb, ComplexMatrix::identity(3))));
      }
    add(rec);
  }
  {
    PropertyRecorder valid("decoherence.output_valid_and_trace_preserving", 1e-12);
    PropertyRecorder diagonal("decoherence.diagonal_fixed", 1e-12);
    const std::array<double, 3> gammas{0.0, 0.5, 1.0};
    for (int k = 0; k < 100; ++k) {
      const auto rho = rng.bipartite_density(2, 3);
      for (double ga : gammas)
        for (double gb : gammas) {
          try {
            const auto out = apply_dephasing(rho, DephasingParams::make(ga, gb));
            valid.observe(std::max(std::abs(out.matrix().trace().real() - 1.0),
                                   std::max(0.0, -out.spectrum().front() - 1e-10)));
            double worst = 0.0;
            for (std::size_t i = 0; i < 6; ++i)
              worst = std::max(worst, std::abs(out.matrix()(i, i) - rho.matrix()(i, i)));
            diagonal.observe(worst);
          } catch (const std::exception&) {
            valid.fail();
          }
        }
    }
    add(valid);
    add(diagonal);
  }
  {
    PropertyRecorder rec("decoherence.family_coherence_damping", 1e-12);
    for (int k = 0; k < 120; ++k) {
      const auto st = rng.family_state(3);
      const auto p = DephasingParams::make(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
      const auto rho = build_two_param_state(st);
      const auto out = apply_dephasing(rho, p);
      const double c = p.coherence_factor();
      double worst = 0.0;
      for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
          if (i != j) worst = std::max(worst, std::abs(out.matrix()(i, j) - c * rho.matrix()(i, j)));
      rec.observe(worst);
    }
    add(rec);
  }
  {
    PropertyRecorder rec("decoherence.semigroup_in_time", 1e-10);
    for (int k = 0; k < 5; ++k) {
      const double t1 = rng.uniform(0.0, 2.0), t2 = rng.uniform(0.0, 2.0);
      const double rate = rng.uniform(0.0, 2.0);
      const auto rho = rng.bipartite_density(2, 3);
      const auto once = apply_dephasing(rho, gamma_from_decay({t1 + t2, rate, rate}));
      const auto twice = apply_dephasing(apply_dephasing(rho, gamma_from_decay({t1, rate, rate})),
                                         gamma_from_decay({t2, rate, rate}));
      rec.observe(qdeficit::max_abs_diff(once.matrix(), twice.matrix()));
    }
    add(rec);
  }

  // correlations
  {
    PropertyRecorder equiv("deficit.closed_form_matches_minimization", 1e-8);
    PropertyRecorder flat("deficit.measurement_independence", 1e-9);
    PropertyRecorder bound("deficit.upper_bound", 1e-9);
    std::vector<TwoParamState> states;
    for (int d = 3; d <= 5; ++d)
      for (const auto& st : family_grid(d, opt.family_grid)) states.push_back(st);
    std::vector<DeficitResult> found(states.size());
    parallel_for_index(states.size(), opt.jobs, [&](std::size_t i) {
      found[i] = deficit_numerical(build_two_param_state(states[i]), search);
    });
    for (std::size_t i = 0; i < states.size(); ++i) {
      const double closed = forms.deficit(states[i]);
      equiv.observe(std::abs(closed - found[i].value));
      flat.observe(found[i].spread);
      bound.observe(std::max({0.0, closed - 1.0, found[i].value - 1.0}));
    }
    add(equiv);
    add(flat);
    add(bound);
  }
  {
    PropertyRecorder rec("deficit.weak_closed_form_matches_entropy_increase", 1e-9);
    for (const auto& st : family_grid(3, opt.family_grid)) {
      const auto rho = build_two_param_state(st);
      for (double x : {0.1, 0.8, 2.0, 10.0})
        rec.observe(std::abs(forms.weak_deficit(st, x) -
                             weak_entropy_increase(rho, WeakMeasurement::make(x))));
      rec.observe(std::abs(forms.weak_deficit(st, 0.0)));
      rec.observe(std::abs(forms.weak_deficit(st, 40.0) - forms.deficit(st)));
    }
    add(rec);
  }
  {
    PropertyRecorder rec("deficit.weak_monotone_in_strength", 1e-12);
    for (int d = 3; d <= 5; ++d)
      for (const auto& st : family_grid(d, opt.family_grid)) {
        double previous = -std::numeric_limits<double>::infinity();
        for (double x : {0.0, 0.1, 0.5, 0.8, 2.0, 5.0, 10.0, 40.0}) {
          const double v = forms.weak_deficit(st, x);
          rec.observe(std::max(0.0, previous - v));
          previous = v;
        }
      }
    add(rec);
  }
  {
    PropertyRecorder rec("deficit.weak_not_above_projective", 1e-12);
    const std::array<double, 5> xs{0.1, 0.5, 0.8, 2.0, 5.0};
    for (int d = 3; d <= 5; ++d)
      for (const auto& st : family_grid(d, opt.family_grid))
        for (double x : xs) rec.observe(std::max(0.0, forms.weak_deficit(st, x) - forms.deficit(st)));
    for (const auto& st : family_grid(3, opt.family_grid))
      for (int g = 0; g <= 10; ++g) {
        const auto p = DephasingParams::make(g / 10.0, g / 10.0);
        for (double x : xs)
          rec.observe(std::max(0.0, forms.dephased_weak_deficit(st, p, x) -
                                        forms.dephased_deficit(st, p)));
      }
    add(rec);
  }
  {
    PropertyRecorder rec("deficit.zero_for_classical_quantum", 1e-8);
    std::vector<DensityMatrix> states;
    for (int k = 0; k < 20; ++k) states.push_back(rng.classical_quantum(3));
    std::vector<double> values(states.size());
    parallel_for_index(states.size(), opt.jobs, [&](std::size_t i) {
      values[i] = deficit_numerical(states[i], search).value;
    });
    for (double v : values) rec.observe(std::abs(v));
    add(rec);
  }
  {
    // Separable (zero negativity) yet strictly more than 0.05 bits of deficit.
    PropertyRecorder rec("deficit.nonzero_without_entanglement", 0.0);
    const auto st = TwoParamState::from_s_t(0.15, 0.40, 3);
    rec.observe(std::max(0.0, 0.05 - forms.deficit(st)) + std::abs(forms.negativity(st)) +
                negativity(build_two_param_state(st)));
    add(rec);
  }
  {
    PropertyRecorder rec("negativity.closed_forms_match_trace_norm", 1e-9);
    for (const auto& st : family_grid(3, opt.family_grid)) {
      const auto rho = build_two_param_state(st);
      rec.observe(std::abs(forms.negativity(st) - negativity(rho)));
    }
    const auto fig2 = TwoParamState::make(0.03, 0.58, 3);
    const auto grid = family_grid(3, opt.family_grid);
    for (int k = 0; k < 50; ++k) {
      const auto p = DephasingParams::make(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0));
      const auto& st = k % 2 == 0 ? fig2 : grid[static_cast<std::size_t>(k) % grid.size()];
      rec.observe(std::abs(forms.dephased_negativity(st, p) -
                           negativity(apply_dephasing(build_two_param_state(st), p))));
    }
    add(rec);
  }
  {
    PropertyRecorder deficit("dephased.deficit_matches_minimization", 1e-8);
    PropertyRecorder weak("dephased.weak_deficit_matches_entropy_increase", 1e-9);
    struct Case {
      TwoParamState st;
      DephasingParams p;
    };
    std::vector<Case> cases;
    for (const auto& st : family_grid(3, 6))
      for (double g : {0.3, 0.7}) cases.push_back({st, DephasingParams::make(g, 1.0 - g)});
    cases.push_back({TwoParamState::make(0.03, 0.58, 3), DephasingParams::make(0.3, 0.3)});
    std::vector<double> found(cases.size());
    parallel_for_index(cases.size(), opt.jobs, [&](std::size_t i) {
      found[i] = deficit_numerical(apply_dephasing(build_two_param_state(cases[i].st), cases[i].p),
                                   search)
                     .value;
    });
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& [st, p] = cases[i];
      deficit.observe(std::abs(forms.dephased_deficit(st, p) - found[i]));
      const auto noisy = apply_dephasing(build_two_param_state(st), p);
      weak.observe(std::abs(forms.dephased_weak_deficit(st, p, 0.8) -
                            weak_entropy_increase(noisy, WeakMeasurement::make(0.8))));
    }
    add(deficit);
    add(weak);
  }
  {
    PropertyRecorder rec("dephased.reduces_without_noise", 1e-12);
    const DephasingParams clean{};
    for (const auto& st : family_grid(3, opt.family_grid)) {
      rec.observe(std::abs(forms.dephased_deficit(st, clean) - forms.deficit(st)));
      rec.observe(std::abs(forms.dephased_weak_deficit(st, clean, 0.8) - forms.weak_deficit(st, 0.8)));
      rec.observe(std::abs(forms.dephased_negativity(st, clean) - forms.negativity(st)));
    }
    add(rec);
  }
  return report;
}

inline void write_report(std::ostream& os, const VerifyReport& report) {
  char line[256];
  for (const auto& p : report.properties) {
    std::snprintf(line, sizeof line, "%-52s samples=%6zu max_dev=%.3e tol=%.1e %s\n",
                  p.name.c_str(), p.samples, p.max_deviation, p.tolerance,
                  p.passed() ? "PASS" : "FAIL");
    os << line;
  }
  std::size_t failed = 0;
  for (const auto& p : report.properties) failed += p.passed() ? 0 : 1;
  os << (failed == 0 ? "verify: all " + std::to_string(report.properties.size()) + " properties passed\n"
                     : "verify: " + std::to_string(failed) + " of " +
                           std::to_string(report.properties.size()) + " properties FAILED\n");
}

}  // namespace qdeficit
