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

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "wicksell/error.hpp"

namespace wicksell {

namespace {

// Kronrod abscissae on [-1, 1] (non-negative half); odd indices are the
// Gauss 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * fsum;
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * fsum;
    }
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod)) {
    throw DomainError("integrate_1d: non-finite integrand on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol >= 0.0) || max_subdivisions < 1) {
    throw ValidationError("QuadratureSpec requires abs_tol > 0, rel_tol >= 0, max_subdivisions >= 1");
  }
}

QuadResult integrate_1d(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                        std::span<const double> breakpoints) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_1d: limits must be finite");
  }
  if (a > b) {
    throw DomainError("integrate_1d: lower limit above upper limit");
  }
  if (a == b) {
    return {};
  }

  const bool singular = spec.singularity == Singularity::kInvSqrtAtLower;
  Integrand g;
  double lo = a;
  double hi = b;
  if (singular) {
    g = [&f, a](double s) {
      // Nodes whose offset s^2 vanishes against a carry no weight worth
      // keeping and would hand f its singular point.
      const double x = a + s * s;
      return x == a ? 0.0 : 2.0 * s * f(x);
    };
    lo = 0.0;
    hi = std::sqrt(b - a);
  } else {
    g = f;
  }

  std::vector<double> cuts;
  cuts.reserve(breakpoints.size() + 2);
  cuts.push_back(lo);
  for (double x : breakpoints) {
    if (x > a && x < b && x - a > 0x1.0p-40 * std::max(1.0, std::abs(a))) {
      cuts.push_back(singular ? std::sqrt(x - a) : x);
    }
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> heap;
  heap.reserve(cuts.size() + 2 * static_cast<std::size_t>(spec.max_subdivisions));
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) {
      heap.push_back(gauss_kronrod(g, cuts[i], cuts[i + 1]));
      total += heap.back().value;
      error += heap.back().error;
    }
  }
  std::make_heap(heap.begin(), heap.end());

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  int splits = 0;
  while (error > tolerance() && splits < spec.max_subdivisions) {
    std::pop_heap(heap.begin(), heap.end());
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Panel is at machine resolution; nothing left to refine.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    const Panel left = gauss_kronrod(g, worst.lo, mid);
    const Panel right = gauss_kronrod(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    ++splits;
  }

  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  error = 0.0;
  for (const Panel& p : heap) {
    total += p.value;
    error += p.error;
  }
  if (error > tolerance()) {
    throw QuadratureError("integrate_1d: no convergence after " + std::to_string(splits) +
                              " subdivisions (error estimate " + std::to_string(error) + ")",
                          total, error);
  }
  return {total, error};
}

}  // namespace wicksell
