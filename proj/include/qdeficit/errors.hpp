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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace qdeficit {

namespace detail {
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}
}  // namespace detail

/// Caller passed operands whose shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A physical parameter lies outside its admissible region.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative routine failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for density-matrix validation failures. `magnitude()` is the size of
/// the violation (asymmetry, trace defect or most negative eigenvalue).
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& what, double magnitude)
      : std::invalid_argument(what), magnitude_(magnitude) {}
  double magnitude() const noexcept { return magnitude_; }

 private:
  double magnitude_;
};

class NotHermitian : public ValidationError {
 public:
  explicit NotHermitian(double deviation)
      : ValidationError("matrix is not Hermitian (max |m - m^H| = " +
                            detail::sci(deviation) + ")",
                        deviation) {}
};

class TraceNotOne : public ValidationError {
 public:
  explicit TraceNotOne(double defect)
      : ValidationError("trace differs from one by " + detail::sci(defect),
                        defect) {}
};

class NotPositive : public ValidationError {
 public:
  explicit NotPositive(double min_eigenvalue)
      : ValidationError("negative eigenvalue " + detail::sci(min_eigenvalue),
                        min_eigenvalue) {}
};

}  // namespace qdeficit
