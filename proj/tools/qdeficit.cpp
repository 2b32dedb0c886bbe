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

// qdeficit: one-way deficit, weak-measurement deficit and negativity for
// 2 (x) d states.
//
//   qdeficit fig1   [--s 0.15] [--d 3] [--x 0.8] [--steps 111] [--check]
//   qdeficit fig2   [--r 0.03] [--t 0.58] [--x 0.8] [--steps 101] [--check]
//   qdeficit point  [--r R | --s S] [--t T] [--d 3] [--x 0.8] [--gamma-a G] [--gamma-b G]
//   qdeficit verify [--grid-n 64] [--jobs N]
//
// Exit status: 0 success, 1 verification failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdeficit/qdeficit.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr double kCheckTolerance = 1e-8;

struct Output {
  std::string path = "-";

  std::ostream& open() {
    if (path == "-") return std::cout;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw qdeficit::SweepError("cannot open --out file '" + path + "'");
    return *file_;
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int report_check(const qdeficit::CheckSummary& sum) {
  const bool ok = sum.max_deviation() < kCheckTolerance;
  std::fprintf(stderr,
               "check: rows=%zu max_dev deficit=%.3e weak=%.3e negativity=%.3e tol=%.0e %s\n",
               sum.rows, sum.max_deficit_deviation, sum.max_weak_deviation,
               sum.max_negativity_deviation, kCheckTolerance, ok ? "PASS" : "FAIL");
  return ok ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-way quantum deficit, weak deficit and negativity for 2 x d states"};
  app.require_subcommand(1);

  Output out;
  bool check = false;

  auto fig1_spec = qdeficit::SweepSpec::fig1_defaults();
  std::optional<double> fig1_to;
  auto* fig1 = app.add_subcommand("fig1", "sweep t at fixed s, no noise");
  fig1->add_option("--s", fig1_spec.s, "fixed s")->capture_default_str();
  fig1->add_option("--d", fig1_spec.d, "qudit dimension (>= 3)")->capture_default_str();
  fig1->add_option("--x", fig1_spec.x, "weak measurement strength")->capture_default_str();
  fig1->add_option("--steps", fig1_spec.steps, "number of rows")->capture_default_str();
  fig1->add_option("--from", fig1_spec.start, "first t")->capture_default_str();
  fig1->add_option("--to", fig1_to, "last t (default 1 - 3s)");

  auto fig2_spec = qdeficit::SweepSpec::fig2_defaults();
  auto* fig2 = app.add_subcommand("fig2", "sweep gamma_a = gamma_b at fixed (r, t), d = 3");
  fig2->add_option("--r", fig2_spec.r, "fixed r")->capture_default_str();
  fig2->add_option("--t", fig2_spec.t, "fixed t")->capture_default_str();
  fig2->add_option("--x", fig2_spec.x, "weak measurement strength")->capture_default_str();
  fig2->add_option("--steps", fig2_spec.steps, "number of rows")->capture_default_str();
  fig2->add_option("--from", fig2_spec.start, "first gamma")->capture_default_str();
  fig2->add_option("--to", fig2_spec.stop, "last gamma")->capture_default_str();

  for (auto* sub : {fig1, fig2}) {
    auto& spec = sub == fig1 ? fig1_spec : fig2_spec;
    sub->add_option("--out", out.path, "CSV output path, '-' for stdout")->capture_default_str();
    sub->add_flag("--check", check, "recompute every row numerically and compare");
    sub->add_option("--grid-n", spec.grid_n, "minimizer grid size for --check")
        ->capture_default_str();
    sub->add_option("--jobs", spec.jobs, "worker threads")->capture_default_str();
  }

  std::optional<double> point_r, point_s;
  double point_t = 0.58, point_x = 0.8, point_ga = 0.0, point_gb = 0.0;
  int point_d = 3, point_grid = 64;
  auto* point = app.add_subcommand("point", "all measures for one state");
  auto* r_opt = point->add_option("--r", point_r, "r (default 0.03 unless --s is given)");
  point->add_option("--s", point_s, "s; r is then derived from the normalization")
      ->excludes(r_opt);
  point->add_option("--t", point_t, "t")->capture_default_str();
  point->add_option("--d", point_d, "qudit dimension (>= 3)")->capture_default_str();
  point->add_option("--x", point_x, "weak measurement strength")->capture_default_str();
  point->add_option("--gamma-a", point_ga, "qubit dephasing")->capture_default_str();
  point->add_option("--gamma-b", point_gb, "qutrit dephasing")->capture_default_str();
  point->add_option("--grid-n", point_grid, "minimizer grid size for --check")
      ->capture_default_str();
  point->add_option("--out", out.path, "CSV output path, '-' for stdout")->capture_default_str();
  point->add_flag("--check", check, "recompute numerically and compare");

  qdeficit::VerifyOptions verify_opt;
  std::string fault_name = "none";
  auto* verify = app.add_subcommand("verify", "run the property and closed-form suite");
  verify->add_option("--grid-n", verify_opt.grid_n, "minimizer grid size")->capture_default_str();
  verify->add_option("--jobs", verify_opt.jobs, "worker threads")->capture_default_str();
  verify->add_option("--inject-fault", fault_name,
                     "run against a deliberately broken closed form (mutation check)")
      ->check(CLI::IsMember({"none", "deficit-sign-flip", "weak-sech-to-tanh",
                             "weak-negated-sech", "negativity-no-clamp"}))
      ->capture_default_str();
  verify->add_option("--out", out.path, "report path, '-' for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*fig1 || *fig2) {
      std::vector<qdeficit::CorrelationPoint> rows;
      const qdeficit::SweepSpec* spec = nullptr;
      if (*fig1) {
        fig1_spec.stop = fig1_to.value_or(1.0 - 3.0 * fig1_spec.s);
        rows = qdeficit::run_fig1_sweep(fig1_spec);
        spec = &fig1_spec;
      } else {
        rows = qdeficit::run_fig2_sweep(fig2_spec);
        spec = &fig2_spec;
      }
      qdeficit::write_sweep_csv(out.open(), rows);
      if (check) return report_check(qdeficit::check_rows(rows, spec->grid_n, spec->jobs));
      return 0;
    }
    if (*point) {
      const auto st = point_s ? qdeficit::TwoParamState::from_s_t(*point_s, point_t, point_d)
                              : qdeficit::TwoParamState::make(point_r.value_or(0.03), point_t,
                                                              point_d);
      const auto p = qdeficit::DephasingParams::make(point_ga, point_gb);
      if ((p.gamma_a != 0.0 || p.gamma_b != 0.0) && point_d != 3) {
        throw qdeficit::SweepError("dephasing needs --d 3");
      }
      const auto row = qdeficit::evaluate_point(st, point_x, p);
      qdeficit::write_point_csv(out.open(), row);
      if (check) return report_check(qdeficit::check_rows({row}, point_grid, 1));
      return 0;
    }
    if (*verify) {
      verify_opt.fault = *qdeficit::parse_fault(fault_name);
      if (verify_opt.grid_n < 8) throw qdeficit::SweepError("--grid-n must be >= 8");
      if (verify_opt.jobs < 1) throw qdeficit::SweepError("--jobs must be >= 1");
      const auto report = qdeficit::run_verify(verify_opt);
      auto& os = out.open();
      qdeficit::write_report(os, report);
      return report.passed() ? 0 : kExitVerifyFailed;
    }
  } catch (const std::invalid_argument& e) {
    // ParameterError, DimensionError and validation errors all land here.
    std::cerr << "qdeficit: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qdeficit: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return kExitUsage;
}
