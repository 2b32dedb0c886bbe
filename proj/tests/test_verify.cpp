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

#include <sstream>

#include "qdeficit/verify.hpp"

using namespace qdeficit;

namespace {

VerifyOptions quick(Fault fault = Fault::none) {
  VerifyOptions opt;
  opt.grid_n = 12;
  opt.family_grid = 6;
  opt.jobs = 4;
  opt.fault = fault;
  return opt;
}

std::string render(const VerifyReport& r) {
  std::ostringstream os;
  write_report(os, r);
  return os.str();
}

}  // namespace

TEST_CASE("verify passes on the reference closed forms", "[verify]") {
  const auto report = run_verify(quick());
  INFO(render(report));
  REQUIRE(report.passed());
  REQUIRE(report.properties.size() >= 25);
  for (const auto& p : report.properties) REQUIRE(p.samples > 0);
}

TEST_CASE("verify report is deterministic", "[verify]") {
  auto opt = quick();
  const auto a = render(run_verify(opt));
  opt.jobs = 1;
  const auto b = render(run_verify(opt));
  REQUIRE(a == b);
}

TEST_CASE("verify rejects each seeded fault", "[verify]") {
  struct Expect {
    Fault fault;
    const char* property;
  };
  for (const auto& [fault, property] :
       {Expect{Fault::deficit_sign_flip, "deficit.closed_form_matches_minimization"},
        Expect{Fault::weak_sech_to_tanh, "deficit.weak_closed_form_matches_entropy_increase"},
        Expect{Fault::negativity_no_clamp, "negativity.closed_forms_match_trace_norm"}}) {
    CAPTURE(to_string(fault));
    const auto report = run_verify(quick(fault));
    REQUIRE_FALSE(report.passed());
    const auto* p = report.find(property);
    REQUIRE(p != nullptr);
    REQUIRE_FALSE(p->passed());
    REQUIRE(p->max_deviation > 1e-3);
  }
}

TEST_CASE("negating sech is an equivalent mutant", "[verify]") {
  // Lambda_0 and Lambda_1 trade places, and the weak deficit is symmetric
  // in them, so no test can tell this fault from the reference.
  const auto forms = ClosedForms::with_fault(Fault::weak_negated_sech);
  for (const auto& st : family_grid(3, 8))
    for (double x : {0.1, 0.8, 3.0})
      REQUIRE(std::abs(forms.weak_deficit(st, x) - weak_deficit_closed_form(st, x)) < 1e-15);
  REQUIRE(run_verify(quick(Fault::weak_negated_sech)).passed());
}

TEST_CASE("fault names round-trip", "[verify]") {
  for (const auto& [fault, name] : kFaultNames) REQUIRE(parse_fault(name) == fault);
  REQUIRE_FALSE(parse_fault("bogus").has_value());
}
