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

#ifndef WICKSELL_QUADRATURE_HPP_
#define WICKSELL_QUADRATURE_HPP_

#include <functional>
#include <span>

namespace wicksell {

enum class Singularity {
  kNone,
  // The integrand may behave like (x - a)^{-1/2} (or (x - a)^{+1/2}) at the
  // lower limit; integration runs in s with x = a + s^2.
  kInvSqrtAtLower,
};

struct QuadratureSpec {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  // Bisections allowed on top of the initial partition.
  int max_subdivisions = 200;
  Singularity singularity = Singularity::kNone;

  void validate() const;
  QuadratureSpec with(Singularity s) const {
    QuadratureSpec out = *this;
    out.singularity = s;
    return out;
  }
  // Same budget, tolerances scaled by `factor`.
  QuadratureSpec tightened(double factor) const {
    QuadratureSpec out = *this;
    out.abs_tol *= factor;
    out.rel_tol *= factor;
    return out;
  }
};

struct QuadResult {
  double value = 0.0;
  double err_est = 0.0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7, 15) quadrature of f over [a, b].
///
/// `breakpoints` (strictly inside (a, b), any order) seed the initial
/// partition, e.g. the knots of a piecewise-linear density.  The returned
/// err_est satisfies err_est <= max(abs_tol, rel_tol * |value|); otherwise
/// QuadratureError is thrown carrying the best estimate.
QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                        std::span<const double> breakpoints = {});

}  // namespace wicksell

#endif  // WICKSELL_QUADRATURE_HPP_
