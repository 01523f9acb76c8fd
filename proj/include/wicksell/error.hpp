// Copyright 2026 The wicksell authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WICKSELL_ERROR_HPP_
#define WICKSELL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace wicksell {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of a geometric or measure operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad distribution specs, bad configs, bad files.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature hit its subdivision budget before meeting tolerance.
// The best estimate is kept so callers can decide what to do with it.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const { return estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

// Slice data that cannot arise from any ball process (unfolded tail far
// below zero).
class InconsistencyError : public Error {
 public:
  InconsistencyError(const std::string& what, double raw_value)
      : Error(what), raw_value_(raw_value) {}

  double raw_value() const { return raw_value_; }

 private:
  double raw_value_;
};

}  // namespace wicksell

#endif  // WICKSELL_ERROR_HPP_
