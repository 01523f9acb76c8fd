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

#ifndef WICKSELL_GEOMETRY_HPP_
#define WICKSELL_GEOMETRY_HPP_

#include <limits>

namespace wicksell {

/// Sectional curvature of the ambient model space, in 1/length^2.
///
/// One runtime value covers all three geometries: k > 0 is the sphere of
/// radius k^{-1/2}, k == 0 is Euclidean space, k < 0 is the hyperboloid
/// model scaled to curvature k.
class Curvature {
 public:
  constexpr Curvature() = default;
  explicit Curvature(double k);

  double value() const { return k_; }
  int sign() const { return (k_ > 0.0) - (k_ < 0.0); }
  bool is_flat() const { return k_ == 0.0; }
  // sqrt(|k|); the natural inverse length scale.
  double scale() const { return scale_; }
  // Largest admissible ball radius: pi / (2 sqrt(k)) for k > 0, +inf otherwise.
  double l_max() const;

 private:
  double k_ = 0.0;
  double scale_ = 0.0;
};

/// Ambient dimension d together with its curvature.  d >= 2 so that a
/// (d-1)-dimensional totally geodesic section exists.
class SpaceParams {
 public:
  SpaceParams(Curvature curvature, int dim);

  const Curvature& curvature() const { return curvature_; }
  int dim() const { return dim_; }
  double l_max() const { return curvature_.l_max(); }

 private:
  Curvature curvature_;
  int dim_;
};

/// cos(sqrt(k) x) for k > 0, 1 for k == 0, cosh(sqrt(-k) x) for k < 0.
double cos_k(const Curvature& curv, double x);

/// Radius of the section of a ball of radius t whose centre lies at distance
/// |h| from the slicing hypersurface.  Requires |h| <= t <= l_max.
double alpha(const Curvature& curv, double t, double h);

/// Inverse of alpha in its first argument: the ball radius that produces a
/// section of radius t at offset |h|.
double beta(const Curvature& curv, double t, double h);

/// Equidistant-decomposition volume density cos_k(h)^{d-1}.
double volume_weight(const SpaceParams& space, double h);

/// Closed form of the slab integral  int_{-x}^{x} cos_k(h)^{d-1} dh,
/// evaluated with the power-reduction recurrence.  Requires 0 <= x <= l_max.
double slab_weight(const SpaceParams& space, double x);

/// Builds a right triangle with legs |h| and alpha(t, h) from explicit
/// points on S_k^dim or H_k^dim embedded in R^{dim+1} and returns the
/// hypotenuse length measured with the ambient (Lorentzian) scalar product.
/// Only meaningful for k != 0.
double embed_check(const Curvature& curv, double t, double h, int dim = 2);

}  // namespace wicksell

#endif  // WICKSELL_GEOMETRY_HPP_
