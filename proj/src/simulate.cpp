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

#include "wicksell/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "wicksell/error.hpp"
#include "wicksell/geometry.hpp"
#include "wicksell/parallel.hpp"
#include "wicksell/rng.hpp"

namespace wicksell {

namespace {

constexpr std::size_t kBlockDraws = std::size_t{1} << 16;
constexpr std::size_t kMaxBlocks = std::size_t{1} << 15;
constexpr std::uint64_t kResampleStream = std::numeric_limits<std::uint64_t>::max();

struct Section {
  double radius;
  double weight;
};

struct Block {
  std::vector<Section> accepted;
  double sum_w = 0.0;
  double sum_w2 = 0.0;
};

Block run_block(const BallProcess& proc, const SimulationConfig& cfg, double half_width,
                std::uint64_t index) {
  CounterRng rng(cfg.seed, index);
  const Curvature& curv = proc.space.curvature();
  Block out;
  out.accepted.reserve(kBlockDraws);
  for (std::size_t i = 0; i < kBlockDraws; ++i) {
    const double radius = quantile(proc.radii, rng.uniform());
    const double u = rng.uniform();
    const double h = cfg.fixed_offset ? *cfg.fixed_offset : half_width * (2.0 * u - 1.0);
    if (!(std::abs(h) < radius)) continue;
    const double w = 2.0 * half_width * volume_weight(proc.space, h);
    const double r = alpha(curv, radius, h);
    out.sum_w += w;
    out.sum_w2 += w * w;
    if (r > 0.0 && w > 0.0) out.accepted.push_back({r, w});
  }
  return out;
}

}  // namespace

void SimulationConfig::validate(const BallProcess& proc) const {
  proc.validate();
  if (n_samples < 1) throw ValidationError("simulation: n_samples must be at least 1");
  if (workers < 1) throw ValidationError("simulation: workers must be at least 1");
  const double h = slab_halfwidth == 0.0 ? support_max(proc.radii) : slab_halfwidth;
  if (!(h >= support_max(proc.radii))) {
    throw ValidationError("simulation: slab half-width below the largest ball radius");
  }
  if (h > proc.space.l_max()) {
    throw ValidationError("simulation: slab half-width exceeds l_max");
  }
  if (fixed_offset && !(std::abs(*fixed_offset) <= h)) {
    throw ValidationError("simulation: fixed offset outside the slab");
  }
}

SimulationResult simulate_sections(const BallProcess& proc, const SimulationConfig& cfg) {
  cfg.validate(proc);
  const double half_width = cfg.slab_halfwidth == 0.0 ? support_max(proc.radii) : cfg.slab_halfwidth;
  const auto target = static_cast<double>(cfg.n_samples);
  const auto wave = static_cast<std::size_t>(cfg.workers);

  std::vector<Section> accepted;
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  double acc_w = 0.0;
  double acc_w2 = 0.0;
  std::size_t blocks_used = 0;
  bool done = false;
  while (!done) {
    if (blocks_used >= kMaxBlocks) {
      throw DomainError("simulation: effective sample size target not reached within " +
                        std::to_string(kMaxBlocks * kBlockDraws) + " draws");
    }
    const std::size_t count = std::min(wave, kMaxBlocks - blocks_used);
    std::vector<Block> batch(count);
    parallel_for(count, cfg.workers, [&](std::size_t i) {
      batch[i] = run_block(proc, cfg, half_width, blocks_used + i);
    });
    // Fold in block order and stop at the first block that reaches the
    // target, so extra blocks computed in this wave are discarded.
    for (Block& b : batch) {
      sum_w += b.sum_w;
      sum_w2 += b.sum_w2;
      for (const Section& s : b.accepted) {
        acc_w += s.weight;
        acc_w2 += s.weight * s.weight;
      }
      accepted.insert(accepted.end(), b.accepted.begin(), b.accepted.end());
      ++blocks_used;
      if (acc_w2 > 0.0 && acc_w * acc_w / acc_w2 >= target) {
        done = true;
        break;
      }
    }
    if (!done && sum_w == 0.0 && blocks_used * kBlockDraws >= cfg.n_samples) {
      throw DomainError("simulation: acceptance mass is numerically zero");
    }
  }

  const auto draws = static_cast<double>(blocks_used * kBlockDraws);
  SimulationResult out{EmpiricalSample({1.0}), 0.0, 0.0, blocks_used * kBlockDraws,
                       acc_w * acc_w / acc_w2};
  out.ratio_estimate = sum_w / draws;
  const double var = std::max(sum_w2 - draws * out.ratio_estimate * out.ratio_estimate, 0.0) /
                     (draws - 1.0);
  out.std_err = std::sqrt(var / draws);

  // Systematic resampling over radius-sorted sections: the unweighted
  // empirical CDF stays within 1/n of the weighted one everywhere.
  std::sort(accepted.begin(), accepted.end(), [](const Section& x, const Section& y) {
    return x.radius < y.radius || (x.radius == y.radius && x.weight < y.weight);
  });
  CounterRng rng(cfg.seed, kResampleStream);
  const double offset = rng.uniform();
  const double step = acc_w / target;
  std::vector<double> radii;
  radii.reserve(cfg.n_samples);
  double cumulative = 0.0;
  std::size_t k = 0;
  for (std::size_t j = 0; j < cfg.n_samples; ++j) {
    const double point = (offset + static_cast<double>(j)) * step;
    while (k + 1 < accepted.size() && cumulative + accepted[k].weight <= point) {
      cumulative += accepted[k].weight;
      ++k;
    }
    radii.push_back(accepted[k].radius);
  }
  out.slice_sample = EmpiricalSample(std::move(radii));
  return out;
}

double ks_distance(const EmpiricalSample& sample, const std::function<double(double)>& tail_fn) {
  const auto& x = sample.radii();
  const auto n = static_cast<double>(x.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j + 1 < x.size() && x[j + 1] == x[i]) ++j;
    const double t = tail_fn(x[i]);
    const double before = (n - static_cast<double>(i)) / n;
    const double after = (n - static_cast<double>(j + 1)) / n;
    worst = std::max({worst, std::abs(t - before), std::abs(t - after)});
    i = j + 1;
  }
  return worst;
}

double dkw_bound(std::size_t n, double confidence) {
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

}  // namespace wicksell
