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

#include "wicksell/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "wicksell/error.hpp"

namespace wicksell {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Absorbs rounding when a caller passes |h| a few ulps above t.
double slack(double t) { return 64.0 * kEps * std::max(1.0, std::abs(t)); }

std::string fmt_pair(double t, double h) {
  return "(t=" + std::to_string(t) + ", h=" + std::to_string(h) + ")";
}

// Right-triangle leg validation shared by alpha and embed_check; returns
// |h| clamped to t when it overshoots by rounding only.
double checked_leg(const Curvature& curv, double t, double h) {
  if (!std::isfinite(t) || !std::isfinite(h)) {
    throw DomainError("alpha: non-finite argument " + fmt_pair(t, h));
  }
  double ah = std::abs(h);
  if (ah > t + slack(t)) {
    throw DomainError("alpha: offset exceeds radius, no section " + fmt_pair(t, h));
  }
  if (t > curv.l_max() + slack(t)) {
    throw DomainError("alpha: radius exceeds l_max " + fmt_pair(t, h));
  }
  return std::min(ah, t);
}

}  // namespace

Curvature::Curvature(double k) : k_(k), scale_(std::sqrt(std::abs(k))) {
  if (!std::isfinite(k)) {
    throw DomainError("curvature must be finite");
  }
}

double Curvature::l_max() const {
  if (k_ > 0.0) {
    return std::numbers::pi / (2.0 * scale_);
  }
  return std::numeric_limits<double>::infinity();
}

SpaceParams::SpaceParams(Curvature curvature, int dim) : curvature_(curvature), dim_(dim) {
  if (dim < 2) {
    throw DomainError("dimension must be at least 2, got " + std::to_string(dim));
  }
}

double cos_k(const Curvature& curv, double x) {
  switch (curv.sign()) {
    case 1:
      return std::cos(curv.scale() * x);
    case -1:
      return std::cosh(curv.scale() * x);
    default:
      return 1.0;
  }
}

// All three branches avoid acos/acosh of a ratio near 1 by rewriting
// 1 - (cos t / cos h)^2 as a product of sines of (t - h) and (t + h).
double alpha(const Curvature& curv, double t, double h) {
  const double ah = checked_leg(curv, t, h);
  const double s = curv.scale();
  switch (curv.sign()) {
    case 1: {
      const double t_s = std::min(s * t, std::numbers::pi / 2.0);
      const double h_s = s * ah;
      const double prod = std::sin(t_s - h_s) * std::sin(t_s + h_s);
      return std::atan2(std::sqrt(std::max(prod, 0.0)), std::cos(t_s)) / s;
    }
    case -1: {
      const double prod = std::sinh(s * (t - ah)) * std::sinh(s * (t + ah));
      return std::asinh(std::sqrt(std::max(prod, 0.0)) / std::cosh(s * ah)) / s;
    }
    default:
      return std::sqrt((t - ah) * (t + ah));
  }
}

double beta(const Curvature& curv, double t, double h) {
  if (!std::isfinite(t) || !std::isfinite(h) || t < 0.0) {
    throw DomainError("beta: invalid argument " + fmt_pair(t, h));
  }
  const double ah = std::abs(h);
  const double s = curv.scale();
  switch (curv.sign()) {
    case 1: {
      const double lim = curv.l_max();
      if (t > lim + slack(t) || ah > lim + slack(ah)) {
        throw DomainError("beta: argument exceeds l_max " + fmt_pair(t, h));
      }
      const double st = std::sin(s * t);
      const double ct = std::cos(s * t);
      const double sh = std::sin(s * ah);
      const double ch = std::cos(s * ah);
      return std::atan2(std::sqrt(st * st + ct * ct * sh * sh), ct * ch) / s;
    }
    case -1: {
      const double st = std::sinh(s * t);
      const double ct = std::cosh(s * t);
      const double sh = std::sinh(s * ah);
      return std::asinh(std::sqrt(st * st + ct * ct * sh * sh)) / s;
    }
    default:
      return std::hypot(t, ah);
  }
}

double volume_weight(const SpaceParams& space, double h) {
  const double ah = std::abs(h);
  if (!std::isfinite(h) || ah > space.l_max() + slack(ah)) {
    throw DomainError("volume_weight: |h| exceeds l_max");
  }
  const double c = std::max(cos_k(space.curvature(), std::min(ah, space.l_max())), 0.0);
  return std::pow(c, space.dim() - 1);
}

double slab_weight(const SpaceParams& space, double x) {
  if (!(x >= 0.0) || x > space.l_max() + slack(x)) {
    throw DomainError("slab_weight: half-width outside [0, l_max]");
  }
  const Curvature& curv = space.curvature();
  const int n = space.dim() - 1;
  if (curv.is_flat()) {
    return 2.0 * x;
  }
  const double s = curv.scale();
  const double phi = std::min(s * x, curv.sign() > 0 ? std::numbers::pi / 2.0 : s * x);
  double c, sn;
  if (curv.sign() > 0) {
    c = std::cos(phi);
    sn = std::sin(phi);
  } else {
    c = std::cosh(phi);
    sn = std::sinh(phi);
  }
  // I_m = int_0^phi c^m:  I_m = c^{m-1} sn / m + (m-1)/m I_{m-2}.  The
  // recurrence has the same form for cos and cosh.
  double lo = (n % 2 == 0) ? phi : sn;
  double cpow = (n % 2 == 0) ? c : c * c;  // c^{m-1} for the first m
  for (int m = (n % 2 == 0) ? 2 : 3; m <= n; m += 2) {
    lo = cpow * sn / m + (m - 1.0) / m * lo;
    cpow *= c * c;
  }
  return 2.0 * lo / s;
}

double embed_check(const Curvature& curv, double t, double h, int dim) {
  if (curv.is_flat()) {
    throw DomainError("embed_check: requires nonzero curvature");
  }
  if (dim < 2) {
    throw DomainError("embed_check: dimension must be at least 2");
  }
  const double leg = alpha(curv, t, h);
  const double s = curv.scale();
  const double ah = std::abs(h);
  const auto n = static_cast<std::size_t>(dim) + 1;
  // B is the pole (0, ..., 0, 1/s); A moves along e_1, C along e_2, so the
  // geodesics BA and BC leave B in orthogonal directions.
  std::vector<double> a(n, 0.0);
  std::vector<double> c(n, 0.0);
  if (curv.sign() > 0) {
    a[0] = std::sin(s * ah) / s;
    a[n - 1] = std::cos(s * ah) / s;
    c[1] = std::sin(s * leg) / s;
    c[n - 1] = std::cos(s * leg) / s;
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += a[i] * c[i];
    const double arg = std::clamp(curv.value() * dot, -1.0, 1.0);
    return std::acos(arg) / s;
  }
  a[0] = std::sinh(s * ah) / s;
  a[n - 1] = std::cosh(s * ah) / s;
  c[1] = std::sinh(s * leg) / s;
  c[n - 1] = std::cosh(s * leg) / s;
  double lorentz = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) lorentz += a[i] * c[i];
  lorentz -= a[n - 1] * c[n - 1];
  const double arg = std::max(curv.value() * lorentz, 1.0);
  return std::acosh(arg) / s;
}

}  // namespace wicksell
