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

#ifndef WICKSELL_SIMULATE_HPP_
#define WICKSELL_SIMULATE_HPP_

#include <cstdint>
#include <functional>
#include <optional>

#include "wicksell/measures.hpp"
#include "wicksell/section.hpp"

namespace wicksell {

struct SimulationConfig {
  std::uint64_t seed = 1;
  // Target effective number of accepted sections; also the size of the
  // resampled slice sample.
  std::size_t n_samples = 100000;
  // Half-width H of the proposal slab |h| <= H.  Zero means "use the largest
  // ball radius".
  double slab_halfwidth = 0.0;
  int workers = 1;
  // Test hook: draw every centre at this signed offset instead of U[-H, H].
  std::optional<double> fixed_offset;

  void validate(const BallProcess& proc) const;
};

struct SimulationResult {
  EmpiricalSample slice_sample;
  double ratio_estimate = 0.0;
  double std_err = 0.0;
  std::size_t draws = 0;
  double effective_sample_size = 0.0;
};

/// Importance-sampled realisation of the (offset, radius) marginal of the
/// ball process relative to the slicing hypersurface.
///
/// Each draw takes R ~ nu_d and h ~ U[-H, H] and carries the weight
/// 2H cos_k(h)^{d-1} 1{|h| < R}; the mean weight estimates N_{d-1}/N_d and
/// the accepted section radii alpha(R, h) with their weights estimate
/// nu_{d-1}.  Draws are made in fixed-size blocks, each keyed by
/// (seed, block index), until the Kish effective sample size of the accepted
/// weights reaches n_samples.  Outputs depend on (seed, n_samples) only; the
/// worker count changes wall time, never results.
SimulationResult simulate_sections(const BallProcess& proc, const SimulationConfig& cfg);

/// Two-sided Kolmogorov-Smirnov distance between the empirical tail of the
/// sample and a continuous tail function, taking both one-sided limits of
/// the empirical step function at every sample point.
double ks_distance(const EmpiricalSample& sample, const std::function<double(double)>& tail_fn);

/// Dvoretzky-Kiefer-Wolfowitz band sqrt(ln(2 / (1 - confidence)) / (2n)).
double dkw_bound(std::size_t n, double confidence);

}  // namespace wicksell

#endif  // WICKSELL_SIMULATE_HPP_
