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

#include "wicksell/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wicksell/error.hpp"

namespace wicksell {
namespace {

TEST(Integrate1d, Examples) {
  EXPECT_NEAR(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, {}).value, 1.0, 1e-15);
  const QuadratureSpec singular = QuadratureSpec{}.with(Singularity::kInvSqrtAtLower);
  EXPECT_NEAR(integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, singular).value,
              2.0, 1e-12);
  EXPECT_NEAR(integrate_1d([](double t) { return std::cos(t) * std::cos(t); }, 0.0,
                           std::numbers::pi / 2.0, {})
                  .value,
              std::numbers::pi / 4.0, 1e-14);
}

TEST(Integrate1d, PolynomialExactness) {
  // Gauss 7 and Kronrod 15 agree exactly up to degree 13, so one panel
  // suffices there and the error estimate vanishes.
  QuadratureSpec spec;
  spec.max_subdivisions = 1;
  for (int n = 0; n <= 13; ++n) {
    auto f = [n](double x) { return (n + 1) * std::pow(x, n); };
    const QuadResult r = integrate_1d(f, 0.0, 1.0, spec);
    EXPECT_NEAR(r.value, 1.0, 1e-13) << "degree " << n;
    EXPECT_LT(r.err_est, 1e-13) << "degree " << n;
  }
  for (int n = 14; n <= 22; ++n) {
    auto f = [n](double x) { return (n + 1) * std::pow(x, n); };
    EXPECT_NEAR(integrate_1d(f, 0.0, 1.0, {}).value, 1.0, 1e-13) << "degree " << n;
  }
}

TEST(Integrate1d, EmptyAndReversed) {
  EXPECT_EQ(integrate_1d([](double) { return 1.0; }, 2.0, 2.0, {}).value, 0.0);
  EXPECT_THROW(integrate_1d([](double) { return 1.0; }, 1.0, 0.0, {}), DomainError);
}

TEST(Integrate1d, InvalidSpec) {
  QuadratureSpec spec;
  spec.abs_tol = 0.0;
  EXPECT_THROW(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, spec), ValidationError);
  spec = {};
  spec.max_subdivisions = 0;
  EXPECT_THROW(integrate_1d([](double) { return 1.0; }, 0.0, 1.0, spec), ValidationError);
}

TEST(Integrate1d, NonConvergenceCarriesEstimate) {
  QuadratureSpec spec;
  spec.max_subdivisions = 3;
  try {
    integrate_1d([](double x) { return std::sin(1.0 / x); }, 1e-4, 1.0, spec);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    EXPECT_TRUE(std::isfinite(e.estimate()));
    EXPECT_GT(e.error_estimate(), spec.abs_tol);
  }
}

TEST(Integrate1d, NonFiniteIntegrand) {
  EXPECT_THROW(integrate_1d([](double x) { return std::log(x - 0.5); }, 0.0, 1.0, {}),
               DomainError);
}

TEST(Integrate1d, DivergentIntegralDoesNotConverge) {
  EXPECT_THROW(integrate_1d([](double x) { return 1.0 / x; }, 0.0, 1.0, {}), QuadratureError);
}

TEST(Integrate1d, BreakpointsHandleKinks) {
  auto f = [](double x) { return std::abs(x - 0.3) + (x > 0.71 ? 2.0 : 0.0); };
  const double exact = (0.3 * 0.3 + 0.7 * 0.7) / 2.0 + 2.0 * 0.29;
  const std::vector<double> cuts{0.3, 0.71};
  const QuadResult r = integrate_1d(f, 0.0, 1.0, {}, cuts);
  EXPECT_NEAR(r.value, exact, 1e-13);
}

TEST(Integrate1d, SingularSubstitutionMatchesSplitIntegral) {
  // g(x) / sqrt(x - a) with g = exp: regular quadrature on [a + eps, b]
  // plus the analytic sliver int_a^{a+eps} exp(a) / sqrt(x - a) ~ 2 exp(a) sqrt(eps).
  const double a = 0.2;
  const double b = 1.0;
  auto f = [a](double x) { return std::exp(x) / std::sqrt(x - a); };
  const QuadratureSpec singular = QuadratureSpec{}.with(Singularity::kInvSqrtAtLower);
  const double s = integrate_1d(f, a, b, singular).value;
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    QuadratureSpec spec;
    spec.max_subdivisions = 2000;
    const double body = integrate_1d(f, a + eps, b, spec).value;
    // exp(a) int_0^eps e^u / sqrt(u) du, to O(eps^{5/2}).
    const double sliver = 2.0 * std::exp(a) * std::sqrt(eps) * (1.0 + eps / 3.0);
    EXPECT_NEAR(body + sliver, s, 1e-9) << "eps=" << eps;
  }
}

TEST(Integrate1d, SingularModeToleratesBreakpointAtLowerLimit) {
  const double a = 0.24;
  const double near = std::nextafter(a, 1.0);
  const std::vector<double> cuts{near, 0.5};
  const QuadratureSpec singular = QuadratureSpec{}.with(Singularity::kInvSqrtAtLower);
  const QuadResult r =
      integrate_1d([a](double x) { return 1.0 / std::sqrt(x - a); }, a, 1.0, singular, cuts);
  EXPECT_NEAR(r.value, 2.0 * std::sqrt(1.0 - a), 1e-12);
}

TEST(Integrate1d, ErrorEstimateWithinTolerance) {
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.rel_tol = 0.0;
  const QuadResult r = integrate_1d([](double x) { return std::exp(-x * x); }, -3.0, 2.0, spec);
  EXPECT_LE(r.err_est, 1e-12);
  const double exact = std::sqrt(std::numbers::pi) / 2.0 * (std::erf(2.0) + std::erf(3.0));
  EXPECT_NEAR(r.value, exact, 1e-12);
}

}  // namespace
}  // namespace wicksell
