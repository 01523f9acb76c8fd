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

#include "wicksell/section.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <cmath>
#include <string>

#include "wicksell/error.hpp"
#include "wicksell/parallel.hpp"

namespace wicksell {

namespace {

constexpr double kSupportSlack = 1e-14;

double upper_limit(const BallProcess& proc) { return support_max(proc.radii); }

// 2 int_0^R cos_k(h)^{d-1} dh by quadrature (the generic route).
double slab_by_quadrature(const SpaceParams& space, double radius, const QuadratureSpec& quad) {
  auto weight = [&space](double h) { return volume_weight(space, h); };
  return 2.0 * integrate_1d(weight, 0.0, radius, quad.with(Singularity::kNone)).value;
}

}  // namespace

void BallProcess::validate() const {
  if (!std::isfinite(intensity) || !(intensity > 0.0)) {
    throw ValidationError("ball process intensity must be positive");
  }
  if (!positive_support(radii)) {
    throw DomainError("ball radii must be positive");
  }
  const double lim = space.l_max();
  if (support_max(radii) > lim * (1.0 + kSupportSlack)) {
    throw DomainError("ball radii exceed l_max = " + std::to_string(lim));
  }
}

double intensity_ratio(const BallProcess& proc, const QuadratureSpec& quad) {
  proc.validate();
  const QuadratureSpec inner = quad.tightened(0.1);
  auto slab = [&](double radius) {
    return slab_by_quadrature(proc.space, std::min(radius, proc.space.l_max()), inner);
  };
  return integrate(proc.radii, slab, 0.0, upper_limit(proc), quad.with(Singularity::kNone)).value;
}

double intensity_ratio_closed_form(const BallProcess& proc, const QuadratureSpec& quad) {
  proc.validate();
  const Curvature& curv = proc.space.curvature();
  const int d = proc.space.dim();
  const double s = curv.scale();
  Integrand per_radius;
  if (curv.sign() > 0) {
    per_radius = [s, d](double radius) {
      const double y = std::min(std::pow(std::sin(s * radius), 2), 1.0);
      return boost::math::beta(0.5, 0.5 * d, y) / s;
    };
  } else if (curv.sign() < 0) {
    per_radius = [s, d](double radius) {
      const int n = d - 1;
      double sum = 0.0;
      for (int i = 0; i <= n; ++i) {
        const int m = n - 2 * i;
        const double c = boost::math::binomial_coefficient<double>(n, i);
        // The m == 0 term is the limit (e^{m x} - 1) / m -> x.
        sum += c * (m == 0 ? s * radius : std::expm1(m * s * radius) / m);
      }
      return sum / (std::ldexp(1.0, d - 2) * s);
    };
  } else {
    throw DomainError("intensity_ratio_closed_form: undefined for k == 0");
  }
  return integrate(proc.radii, per_radius, 0.0, upper_limit(proc), quad.with(Singularity::kNone))
      .value;
}

SectionOperator::SectionOperator(BallProcess proc, QuadratureSpec quad)
    : proc_(std::move(proc)), quad_(quad), ratio_(intensity_ratio(proc_, quad_)) {}

double SectionOperator::tail(double r) const {
  const double lim = proc_.space.l_max();
  if (!(r >= 0.0) || !(r < lim)) {
    throw DomainError("section_tail: r must lie in [0, l_max)");
  }
  const SpaceParams& space = proc_.space;
  const Curvature& curv = space.curvature();
  // Inner integral in closed form; the outer one has a sqrt-type edge at R = r.
  auto inner = [&](double radius) { return slab_weight(space, alpha(curv, radius, r)); };
  const double upper = upper_limit(proc_);
  if (!(upper > r)) return 0.0;
  const QuadResult num =
      integrate(proc_.radii, inner, r, upper, quad_.with(Singularity::kInvSqrtAtLower));
  return std::clamp(num.value / ratio_, 0.0, 1.0);
}

double SectionOperator::expect(const Integrand& f, std::span<const double> kinks) const {
  const SpaceParams& space = proc_.space;
  const Curvature& curv = space.curvature();
  const QuadratureSpec inner_spec = quad_.tightened(0.1).with(Singularity::kInvSqrtAtLower);
  // In u = R - h the section radius alpha(R, R - u) behaves like sqrt(u)
  // near u = 0, which the substitution in the inner quadrature absorbs.
  auto inner = [&](double radius) {
    auto integrand = [&](double u) {
      const double h = std::max(radius - u, 0.0);
      return f(alpha(curv, radius, h)) * volume_weight(space, h);
    };
    // The section radius equals x at offset alpha(radius, x).
    std::vector<double> cuts;
    for (double x : kinks) {
      if (x > 0.0 && x < radius) cuts.push_back(radius - alpha(curv, radius, x));
    }
    return 2.0 * integrate_1d(integrand, 0.0, radius, inner_spec, cuts).value;
  };
  const QuadResult num = integrate(proc_.radii, inner, 0.0, upper_limit(proc_),
                                   quad_.with(Singularity::kNone), kinks);
  return num.value / ratio_;
}

SectionProfile SectionOperator::profile(std::span<const double> grid, int workers) const {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ValidationError("section_profile: grid must be strictly increasing");
    }
  }
  SectionProfile out;
  out.intensity_nd1 = ratio_ * proc_.intensity;
  out.grid.assign(grid.begin(), grid.end());
  out.tail_values.assign(grid.size(), 0.0);
  parallel_for(grid.size(), workers, [&](std::size_t i) { out.tail_values[i] = tail(grid[i]); });
  // Quadrature noise can break monotonicity at the 1e-12 level.
  for (std::size_t i = 1; i < out.tail_values.size(); ++i) {
    out.tail_values[i] = std::min(out.tail_values[i], out.tail_values[i - 1]);
  }
  out.density_values = density_from_tail(out.grid, out.tail_values);
  return out;
}

std::vector<double> refined_grid(const RadiusDistribution& radii, int per_segment) {
  if (per_segment < 1) throw ValidationError("refined_grid: per_segment must be >= 1");
  std::vector<double> ends;
  if (const auto* atoms = std::get_if<AtomMixture>(&radii)) {
    for (const Atom& a : atoms->atoms()) ends.push_back(a.radius);
  } else {
    ends.push_back(support_max(radii));
  }
  std::vector<double> grid{0.0};
  double lo = 0.0;
  for (double hi : ends) {
    for (int i = 1; i <= per_segment; ++i) {
      const double u = 1.0 - static_cast<double>(i) / per_segment;
      grid.push_back(i == per_segment ? hi : hi - (hi - lo) * u * u);
    }
    lo = hi;
  }
  return grid;
}

std::vector<double> density_from_tail(std::span<const double> grid,
                                      std::span<const double> tail) {
  const std::size_t n = grid.size();
  if (n < 2 || tail.size() != n) return {};
  std::vector<double> dens(n);
  if (n == 2) {
    const double slope = (tail[1] - tail[0]) / (grid[1] - grid[0]);
    dens[0] = dens[1] = std::max(-slope, 0.0);
    return dens;
  }
  // Derivative of the quadratic through three knots, evaluated at any of them.
  auto deriv = [&](std::size_t a, std::size_t at) {
    const double x0 = grid[a], x1 = grid[a + 1], x2 = grid[a + 2];
    const double x = grid[at];
    const double l0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
    const double l1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
    const double l2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
    return l0 * tail[a] + l1 * tail[a + 1] + l2 * tail[a + 2];
  };
  dens[0] = deriv(0, 0);
  for (std::size_t i = 1; i + 1 < n; ++i) dens[i] = deriv(i - 1, i);
  dens[n - 1] = deriv(n - 3, n - 1);
  for (double& v : dens) v = std::max(-v, 0.0);
  return dens;
}

double section_tail(const BallProcess& proc, double r, const QuadratureSpec& quad) {
  return SectionOperator(proc, quad).tail(r);
}

SectionProfile section_profile(const BallProcess& proc, std::span<const double> grid,
                               const QuadratureSpec& quad) {
  return SectionOperator(proc, quad).profile(grid, default_workers());
}

double section_expect(const BallProcess& proc, const Integrand& f, const QuadratureSpec& quad,
                      std::span<const double> kinks) {
  return SectionOperator(proc, quad).expect(f, kinks);
}

}  // namespace wicksell
