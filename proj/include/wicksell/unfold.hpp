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

#ifndef WICKSELL_UNFOLD_HPP_
#define WICKSELL_UNFOLD_HPP_

#include <span>
#include <vector>

#include "wicksell/geometry.hpp"
#include "wicksell/measures.hpp"
#include "wicksell/quadrature.hpp"

namespace wicksell {

/// Observed section data: the intensity ratio N_{d-1}/N_d and the law of
/// the section radii nu_{d-1}.
struct UnfoldInput {
  SpaceParams space;
  double ratio = 0.0;
  RadiusDistribution slice_radii;

  void validate() const;
};

/// One unfolded tail value nu_d((a, l_k]) with its ingredients.
///
/// raw = prefactor * (first_term + sign * (d - 1) * second_term), where the
/// sign is -1 for k < 0 and +1 for k > 0; for k == 0 the second term is zero.
struct UnfoldValue {
  double value = 0.0;  // raw clamped to [0, 1]
  double raw = 0.0;
  double first_term = 0.0;
  double second_term = 0.0;
  double first_err = 0.0;
  double second_err = 0.0;
  bool clamped = false;       // raw was outside [0, 1]
  bool out_of_range = false;  // raw was above 1 + kConsistencyTolerance
};

/// Raw values below -kConsistencyTolerance raise InconsistencyError; slice
/// data that far off cannot come from any ball process.
inline constexpr double kConsistencyTolerance = 1e-3;

UnfoldValue unfold_tail_negative(const UnfoldInput& in, double a, const QuadratureSpec& quad = {});
UnfoldValue unfold_tail_positive(const UnfoldInput& in, double a, const QuadratureSpec& quad = {});
/// Dispatches on sign(k); k == 0 uses the Euclidean Abel inversion
/// (ratio / pi) int_a^inf (y^2 - a^2)^{-1/2} nu_{d-1}(dy).
UnfoldValue unfold_tail(const UnfoldInput& in, double a, const QuadratureSpec& quad = {});

struct UnfoldProfile {
  std::vector<double> grid;
  std::vector<double> tail_values;  // isotonic (non-increasing) projection
  std::vector<double> raw_values;
  double max_adjustment = 0.0;  // sup |projected - raw|, before clamping
  bool any_out_of_range = false;
};

UnfoldProfile unfold_profile(const UnfoldInput& in, std::span<const double> grid,
                             const QuadratureSpec& quad = {}, int workers = 1);

/// Pool-adjacent-violators projection onto non-increasing sequences (least
/// squares, unit weights).
std::vector<double> isotonic_nonincreasing(std::span<const double> values);

}  // namespace wicksell

#endif  // WICKSELL_UNFOLD_HPP_
