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

#ifndef WICKSELL_SECTION_HPP_
#define WICKSELL_SECTION_HPP_

#include <span>
#include <vector>

#include "wicksell/geometry.hpp"
#include "wicksell/measures.hpp"
#include "wicksell/quadrature.hpp"

namespace wicksell {

/// Stationary process of balls in M_k^d: centres with intensity N_d per unit
/// volume, radii i.i.d. from nu_d.
struct BallProcess {
  SpaceParams space;
  double intensity = 1.0;
  RadiusDistribution radii;

  // intensity > 0 and support(radii) inside (0, l_max].
  void validate() const;
};

/// Law of the induced section radii on a grid.
struct SectionProfile {
  double intensity_nd1 = 0.0;
  std::vector<double> grid;
  std::vector<double> tail_values;
  // Empty when the grid is too short to differentiate.
  std::vector<double> density_values;
};

/// Forward operator for one ball process.  Caches N_{d-1}/N_d so that tail
/// evaluations on a grid share one normaliser.
class SectionOperator {
 public:
  SectionOperator(BallProcess proc, QuadratureSpec quad = {});

  const BallProcess& process() const { return proc_; }
  // N_{d-1} / N_d.
  double ratio() const { return ratio_; }
  // nu_{d-1}((r, l_k]).
  double tail(double r) const;
  // E f over the slice-radius law.  `kinks` lists slice radii where f may
  // jump; they become panel boundaries of both quadrature levels.
  double expect(const Integrand& f, std::span<const double> kinks = {}) const;
  SectionProfile profile(std::span<const double> grid, int workers = 1) const;

 private:
  BallProcess proc_;
  QuadratureSpec quad_;
  double ratio_;
};

/// N_{d-1}/N_d = int int_{-R}^{R} cos_k(h)^{d-1} dh nu_d(dR), with the inner
/// integral done by adaptive quadrature.  Equals 2 * mean(nu_d) when k == 0.
double intensity_ratio(const BallProcess& proc, const QuadratureSpec& quad = {});

/// The same ratio through special functions: the non-regularised incomplete
/// beta B_{sin^2(sqrt(k) R)}(1/2, d/2) / sqrt(k) for k > 0, and the binomial
/// expansion of cosh^{d-1} for k < 0.  Throws DomainError for k == 0.
double intensity_ratio_closed_form(const BallProcess& proc, const QuadratureSpec& quad = {});

double section_tail(const BallProcess& proc, double r, const QuadratureSpec& quad = {});
SectionProfile section_profile(const BallProcess& proc, std::span<const double> grid,
                               const QuadratureSpec& quad = {});
/// int f dnu_{d-1} computed from nu_d, for non-negative f on [0, l_max].
double section_expect(const BallProcess& proc, const Integrand& f,
                      const QuadratureSpec& quad = {}, std::span<const double> kinks = {});

/// Three-point finite-difference density -d(tail)/dr on a possibly
/// non-uniform grid, clamped at zero.  Empty for grids shorter than two.
// Grid on [0, support_max] for tabulating section tails.  Each segment
// between consecutive atoms (or up to the support end) gets `per_segment`
// cells, refined quadratically toward its right end where the section tail
// behaves like a square root.
std::vector<double> refined_grid(const RadiusDistribution& radii, int per_segment);

std::vector<double> density_from_tail(std::span<const double> grid,
                                      std::span<const double> tail);

}  // namespace wicksell

#endif  // WICKSELL_SECTION_HPP_
