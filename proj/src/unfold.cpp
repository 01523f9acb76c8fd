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

#include "wicksell/unfold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wicksell/error.hpp"
#include "wicksell/parallel.hpp"

namespace wicksell {

namespace {

using std::numbers::pi;

// Slice law support must end below l_max for k > 0.
constexpr double kSupportSlack = 1e-14;

QuadratureSpec inner_spec(const QuadratureSpec& quad) {
  return quad.tightened(0.01).with(Singularity::kNone);
}

UnfoldValue finish(UnfoldValue v, double prefactor, double sign, int dim) {
  v.raw = prefactor * (v.first_term + sign * (dim - 1) * v.second_term);
  if (!std::isfinite(v.raw)) {
    throw DomainError("unfold: slice law is not integrable against the inversion kernel");
  }
  if (v.raw < -kConsistencyTolerance) {
    throw InconsistencyError("unfold: slice data is not realisable (unfolded tail " +
                                 std::to_string(v.raw) + ")",
                             v.raw);
  }
  v.value = std::clamp(v.raw, 0.0, 1.0);
  v.clamped = v.raw < 0.0 || v.raw > 1.0;
  v.out_of_range = v.raw > 1.0 + kConsistencyTolerance;
  return v;
}

void check_lower(double a, const SpaceParams& space) {
  if (!std::isfinite(a) || !(a > 0.0)) {
    throw DomainError("unfold: a must be positive");
  }
  if (!(a < space.l_max())) {
    throw DomainError("unfold: a must be below l_max");
  }
}

}  // namespace

void UnfoldInput::validate() const {
  if (!std::isfinite(ratio) || !(ratio > 0.0)) {
    throw ValidationError("unfold: intensity ratio must be positive and finite");
  }
  if (!positive_support(slice_radii)) {
    throw DomainError("unfold: slice radii must be positive");
  }
  if (support_max(slice_radii) > space.l_max() * (1.0 + kSupportSlack)) {
    throw DomainError("unfold: slice radii exceed l_max");
  }
}

UnfoldValue unfold_tail_negative(const UnfoldInput& in, double a, const QuadratureSpec& quad) {
  const Curvature& curv = in.space.curvature();
  if (curv.sign() >= 0) {
    throw DomainError("unfold_tail_negative: requires k < 0");
  }
  in.validate();
  check_lower(a, in.space);
  const int d = in.space.dim();
  const double s = curv.scale();
  const double cosh_a = std::cosh(s * a);
  const double upper = support_max(in.slice_radii);
  UnfoldValue v;
  if (!(upper > a)) return finish(v, 0.0, -1.0, d);

  // cosh^2(sy) - cosh^2(sa) = sinh(s(y-a)) sinh(s(y+a)), exact near y = a.
  auto gap = [s, a](double y) { return std::sinh(s * (y - a)) * std::sinh(s * (y + a)); };
  auto first = [&](double y) { return std::pow(std::cosh(s * y), d - 1) / std::sqrt(gap(y)); };
  const QuadratureSpec inner = inner_spec(quad);
  auto second = [&](double y) {
    // arcsin(cosh(sa) / cosh(sy)) without the cancellation near y = a.
    const double lo = std::atan2(cosh_a, std::sqrt(std::max(gap(y), 0.0)));
    auto cosec = [d](double theta) { return std::pow(std::sin(theta), -(d - 1)); };
    return integrate_1d(cosec, lo, pi / 2.0, inner).value;
  };
  const QuadratureSpec outer = quad.with(Singularity::kInvSqrtAtLower);
  const QuadResult t1 = integrate(in.slice_radii, first, a, upper, outer);
  const QuadResult t2 = integrate(in.slice_radii, second, a, upper, outer);
  const double scale = std::pow(cosh_a, d - 2);
  v.first_term = t1.value / scale;
  v.first_err = t1.err_est / scale;
  v.second_term = t2.value;
  v.second_err = t2.err_est;
  return finish(v, in.ratio * s / pi, -1.0, d);
}

UnfoldValue unfold_tail_positive(const UnfoldInput& in, double a, const QuadratureSpec& quad) {
  const Curvature& curv = in.space.curvature();
  if (curv.sign() <= 0) {
    throw DomainError("unfold_tail_positive: requires k > 0");
  }
  in.validate();
  check_lower(a, in.space);
  const int d = in.space.dim();
  const double s = curv.scale();
  const double cos_a = std::cos(s * a);
  const double upper = std::min(support_max(in.slice_radii), in.space.l_max());
  UnfoldValue v;
  if (!(upper > a)) return finish(v, 0.0, 1.0, d);

  // cos^2(sa) - cos^2(sy) = sin(s(y-a)) sin(s(y+a)).
  auto gap = [s, a](double y) { return std::sin(s * (y - a)) * std::sin(s * (y + a)); };
  auto first = [&](double y) {
    const double c = std::max(std::cos(s * y), 0.0);
    return std::pow(c, d - 1) / std::sqrt(gap(y));
  };
  const QuadratureSpec inner = inner_spec(quad);
  auto second = [&](double y) {
    // arccos(cos(sy) / cos(sa)) is s * alpha(y, a).
    const double top = s * alpha(curv, std::min(y, in.space.l_max()), a);
    if (d == 2) return top;
    auto cosine = [d](double theta) { return std::pow(std::cos(theta), d - 2); };
    return integrate_1d(cosine, 0.0, top, inner).value;
  };
  const QuadratureSpec outer = quad.with(Singularity::kInvSqrtAtLower);
  const QuadResult t1 = integrate(in.slice_radii, first, a, upper, outer);
  const QuadResult t2 = integrate(in.slice_radii, second, a, upper, outer);
  const double scale = std::pow(cos_a, d - 2);
  v.first_term = t1.value / scale;
  v.first_err = t1.err_est / scale;
  v.second_term = t2.value;
  v.second_err = t2.err_est;
  return finish(v, in.ratio * s / pi, 1.0, d);
}

UnfoldValue unfold_tail(const UnfoldInput& in, double a, const QuadratureSpec& quad) {
  switch (in.space.curvature().sign()) {
    case 1:
      return unfold_tail_positive(in, a, quad);
    case -1:
      return unfold_tail_negative(in, a, quad);
    default:
      break;
  }
  in.validate();
  check_lower(a, in.space);
  UnfoldValue v;
  const double upper = support_max(in.slice_radii);
  if (!(upper > a)) return finish(v, 0.0, 1.0, in.space.dim());
  auto kernel = [a](double y) { return 1.0 / std::sqrt((y - a) * (y + a)); };
  const QuadResult t1 =
      integrate(in.slice_radii, kernel, a, upper, quad.with(Singularity::kInvSqrtAtLower));
  v.first_term = t1.value;
  v.first_err = t1.err_est;
  return finish(v, in.ratio / pi, 1.0, in.space.dim());
}

std::vector<double> isotonic_nonincreasing(std::span<const double> values) {
  // Blocks of (mean, count); merge while a later block exceeds an earlier one.
  std::vector<double> means;
  std::vector<std::size_t> counts;
  for (double x : values) {
    means.push_back(x);
    counts.push_back(1);
    while (means.size() > 1 && means[means.size() - 2] < means.back()) {
      const std::size_t n1 = counts[counts.size() - 2];
      const std::size_t n2 = counts.back();
      const double merged = (means[means.size() - 2] * n1 + means.back() * n2) / (n1 + n2);
      means.pop_back();
      counts.pop_back();
      means.back() = merged;
      counts.back() = n1 + n2;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t b = 0; b < means.size(); ++b) out.insert(out.end(), counts[b], means[b]);
  return out;
}

UnfoldProfile unfold_profile(const UnfoldInput& in, std::span<const double> grid,
                             const QuadratureSpec& quad, int workers) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw ValidationError("unfold_profile: grid must be strictly increasing");
    }
  }
  UnfoldProfile out;
  out.grid.assign(grid.begin(), grid.end());
  std::vector<UnfoldValue> values(grid.size());
  parallel_for(grid.size(), workers,
               [&](std::size_t i) { values[i] = unfold_tail(in, grid[i], quad); });
  out.raw_values.reserve(values.size());
  for (const UnfoldValue& v : values) {
    out.raw_values.push_back(v.raw);
    out.any_out_of_range = out.any_out_of_range || v.out_of_range;
  }
  out.tail_values = isotonic_nonincreasing(out.raw_values);
  for (std::size_t i = 0; i < out.tail_values.size(); ++i) {
    out.max_adjustment =
        std::max(out.max_adjustment, std::abs(out.tail_values[i] - out.raw_values[i]));
    out.tail_values[i] = std::clamp(out.tail_values[i], 0.0, 1.0);
  }
  return out;
}

}  // namespace wicksell
