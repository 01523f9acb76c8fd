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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  Runtime limits count towards the verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wicksell/cli.hpp"
#include "wicksell/geometry.hpp"
#include "wicksell/measures.hpp"
#include "wicksell/parallel.hpp"
#include "wicksell/section.hpp"
#include "wicksell/simulate.hpp"
#include "wicksell/unfold.hpp"

namespace {

using namespace wicksell;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<Verdict()> body;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, x);
  return buf;
}

BallProcess make(double k, int d, RadiusDistribution radii) {
  return BallProcess{SpaceParams(Curvature(k), d), 1.0, std::move(radii)};
}

RadiusDistribution delta1() { return AtomMixture::delta(1.0); }
RadiusDistribution two_atoms() { return AtomMixture({{0.5, 0.5}, {1.0, 0.5}}); }
RadiusDistribution uniform() { return TabulatedDensity::uniform(0.2, 1.0); }

const char* law_name(const RadiusDistribution& law) {
  if (const auto* m = std::get_if<AtomMixture>(&law)) {
    return m->atoms().size() == 1 ? "delta_1" : "atoms{0.5,1}";
  }
  return "U[0.2,1]";
}

std::string case_name(int d, double k, const RadiusDistribution& law) {
  std::ostringstream os;
  os << "d=" << d << " k=" << k << " " << law_name(law);
  return os.str();
}

// Random (t, h) with |h| < t < l_max.
std::pair<double, double> draw_triple(std::mt19937_64& gen, const Curvature& c) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double top = std::isinf(c.l_max()) ? 4.0 / std::max(c.scale(), 1.0) : c.l_max();
  const double t = top * (1e-3 + (1.0 - 2e-3) * unit(gen));
  const double h = t * (2.0 * unit(gen) - 1.0);
  return {t, h};
}

Verdict geometry_round_trip() {
  std::mt19937_64 gen(1);
  double worst = 0.0;
  for (double k : {-4.0, -1.0, -0.25, 0.0, 0.25, 1.0, 4.0}) {
    const Curvature c(k);
    for (int i = 0; i < 10000; ++i) {
      const auto [t, h] = draw_triple(gen, c);
      worst = std::max(worst, std::abs(beta(c, alpha(c, t, h), h) - t) / (1.0 + t));
    }
  }
  return {worst <= 1e-10, "max |beta(alpha(t,h),h)-t|/(1+t) = " + fmt("%.2e", worst) + " (limit 1e-10)"};
}

Verdict curved_pythagoras() {
  std::mt19937_64 gen(2);
  double worst = 0.0;
  for (double k : {-4.0, -1.0, 1.0, 4.0}) {
    const Curvature c(k);
    for (int i = 0; i < 1000; ++i) {
      const auto [t, h] = draw_triple(gen, c);
      worst = std::max(worst, std::abs(embed_check(c, t, h) - t));
    }
  }
  return {worst <= 1e-10, "max |embed_check - t| = " + fmt("%.2e", worst) + " (limit 1e-10)"};
}

Verdict ratio_cross_checks() {
  double worst_closed = 0.0;
  double worst_flat = 0.0;
  for (int d = 2; d <= 5; ++d) {
    for (const auto& law : {delta1(), uniform()}) {
      for (double k : {-1.0, -0.5, 0.5, 1.0}) {
        const BallProcess p = make(k, d, law);
        worst_closed = std::max(worst_closed,
                                std::abs(intensity_ratio_closed_form(p) - intensity_ratio(p)));
      }
      worst_flat = std::max(worst_flat,
                            std::abs(intensity_ratio(make(0.0, d, law)) - 2.0 * mean(law)));
    }
  }
  return {worst_closed <= 1e-8 && worst_flat <= 1e-8,
          "closed form vs quadrature " + fmt("%.2e", worst_closed) + ", flat vs 2*rho " +
              fmt("%.2e", worst_flat) + " (limit 1e-8)"};
}

// Upper bound on the KS distance between a sample and a continuous,
// non-increasing tail known exactly at the knots of `grid`: inside a cell
// the tail lies between its two knot values.
double ks_upper_bound(const EmpiricalSample& sample, std::span<const double> grid,
                      std::span<const double> knot_tail) {
  const auto& x = sample.radii();
  const auto n = static_cast<double>(x.size());
  double worst = 0.0;
  std::size_t i = 0;
  while (i < x.size()) {
    std::size_t j = i;
    while (j + 1 < x.size() && x[j + 1] == x[i]) ++j;
    const auto hi_it = std::lower_bound(grid.begin(), grid.end(), x[i]);
    const std::size_t hi = std::min<std::size_t>(hi_it - grid.begin(), grid.size() - 1);
    const std::size_t lo = hi == 0 ? 0 : (grid[hi] == x[i] ? hi : hi - 1);
    const double t_hi = knot_tail[lo];
    const double t_lo = knot_tail[hi];
    const double before = (n - static_cast<double>(i)) / n;
    const double after = (n - static_cast<double>(j + 1)) / n;
    worst = std::max({worst, std::abs(before - t_lo), std::abs(before - t_hi),
                      std::abs(after - t_lo), std::abs(after - t_hi)});
    i = j + 1;
  }
  return worst;
}

Verdict forward_vs_monte_carlo() {
  const std::size_t n = 1000000;
  const double band = dkw_bound(n, 0.999);
  Verdict v;
  double worst_ks = 0.0;
  double worst_z = 0.0;
  std::string failures;
  std::uint64_t seed = 1000;
  for (int d : {2, 3, 4}) {
    for (double k : {-1.0, 0.0, 1.0}) {
      for (const auto& law : {delta1(), uniform()}) {
        const BallProcess p = make(k, d, law);
        SimulationConfig cfg;
        cfg.seed = ++seed;
        cfg.n_samples = n;
        cfg.workers = default_workers();
        const SimulationResult sim = simulate_sections(p, cfg);
        const SectionOperator op(p);
        const auto grid = refined_grid(law, 20000);
        const SectionProfile prof = op.profile(grid, default_workers());
        const double ks = ks_upper_bound(sim.slice_sample, grid, prof.tail_values);
        // Constant weights (flat space, single radius) give std_err = 0; the
        // estimate must then be exact up to rounding.
        const double err = std::abs(sim.ratio_estimate - op.ratio());
        const double z = sim.std_err > 0.0 ? err / sim.std_err : (err <= 1e-12 ? 0.0 : HUGE_VAL);
        worst_ks = std::max(worst_ks, ks);
        worst_z = std::max(worst_z, z);
        if (!(ks < band) || !(z <= 3.0)) {
          v.ok = false;
          failures += " [" + case_name(d, k, law) + ": KS<=" + fmt("%.5f", ks) + " z=" +
                      fmt("%.2f", z) + "]";
        }
      }
    }
  }
  v.detail = "max KS bound " + fmt("%.5f", worst_ks) + " (band " + fmt("%.5f", band) +
             "), max |ratio error|/std_err " + fmt("%.2f", worst_z) + " (limit 3)" + failures;
  return v;
}

std::vector<double> query_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 50; ++i) g.push_back(0.024 * i);
  return g;
}

UnfoldInput forward(double k, int d, const RadiusDistribution& law, double* ratio_out = nullptr) {
  const BallProcess p = make(k, d, law);
  const SectionOperator op(p);
  const auto grid = refined_grid(law, 400);
  const SectionProfile prof = op.profile(grid, default_workers());
  if (ratio_out != nullptr) *ratio_out = op.ratio();
  return UnfoldInput{p.space, op.ratio(), TabulatedDensity::from_tail(grid, prof.tail_values)};
}

double sup_error(const UnfoldInput& in, const RadiusDistribution& truth) {
  const auto grid = query_grid();
  const UnfoldProfile prof = unfold_profile(in, grid, {}, default_workers());
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(prof.raw_values[i] - tail(truth, grid[i])));
  }
  return worst;
}

Verdict round_trip_inversion() {
  Verdict v;
  double worst = 0.0;
  std::string where;
  for (int d : {2, 3, 4}) {
    for (double k : {-1.0, -0.25, 0.25, 1.0}) {
      for (const auto& law : {delta1(), two_atoms(), uniform()}) {
        const double e = sup_error(forward(k, d, law), law);
        if (e > worst) {
          worst = e;
          where = case_name(d, k, law);
        }
      }
    }
  }
  // Flat Wicksell pair: slice tail sqrt(1 - r^2) with ratio 2 gives delta_1.
  const auto grid = refined_grid(delta1(), 2000);
  std::vector<double> tl;
  for (double r : grid) tl.push_back(std::sqrt(std::max(1.0 - r * r, 0.0)));
  const double flat = sup_error(
      UnfoldInput{SpaceParams(Curvature(0.0), 3), 2.0, TabulatedDensity::from_tail(grid, tl)},
      delta1());
  v.ok = worst <= 2e-3 && flat <= 2e-3;
  v.detail = "36 curved cases: max sup error " + fmt("%.2e", worst) + " (" + where +
             "); flat pair " + fmt("%.2e", flat) + " (limit 2e-3, raw values before projection)";
  return v;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

Verdict euclidean_limit() {
  const std::vector<double> mags{1.0, 0.5, 0.1, 0.01};
  const RadiusDistribution law = delta1();
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(i / 100.0);

  const SectionOperator flat_op(make(0.0, 3, law));
  const SectionProfile flat = flat_op.profile(grid, default_workers());
  // Inversion inputs held fixed: the flat slice law and ratio.
  const auto fine = refined_grid(law, 400);
  const SectionProfile flat_fine = flat_op.profile(fine, default_workers());
  const RadiusDistribution slices = TabulatedDensity::from_tail(fine, flat_fine.tail_values);
  const auto q = query_grid();
  std::vector<double> unfold_grid;
  for (double a : q) {
    if (a < 1.0) unfold_grid.push_back(a);
  }
  auto unfold_raw = [&](double k) {
    const UnfoldInput in{SpaceParams(Curvature(k), 3), flat_op.ratio(), slices};
    return unfold_profile(in, unfold_grid, {}, default_workers()).raw_values;
  };
  const std::vector<double> flat_unfold = unfold_raw(0.0);

  std::ostringstream csv;
  csv << "r";
  std::vector<std::vector<double>> curves;
  Verdict v;
  std::string summary;
  for (double sign : {-1.0, 1.0}) {
    std::vector<double> tail_dist;
    std::vector<double> unfold_dist;
    for (double m : mags) {
      const double k = sign * m;
      const SectionProfile prof = section_profile(make(k, 3, law), grid);
      double dt = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        dt = std::max(dt, std::abs(prof.tail_values[i] - flat.tail_values[i]));
      }
      const auto raw = unfold_raw(k);
      double du = 0.0;
      for (std::size_t i = 0; i < raw.size(); ++i) du = std::max(du, std::abs(raw[i] - flat_unfold[i]));
      tail_dist.push_back(dt);
      unfold_dist.push_back(du);
      csv << ",tail_k" << cli::format_number(k);
      curves.push_back(prof.tail_values);
    }
    const bool mono = strictly_decreasing(tail_dist) && strictly_decreasing(unfold_dist);
    const bool small = tail_dist.back() <= 1e-2;
    v.ok = v.ok && mono && small;
    summary += std::string(sign < 0 ? " k<0" : " k>0") + ": tail " + fmt("%.2e", tail_dist[0]) +
               ">" + fmt("%.2e", tail_dist[1]) + ">" + fmt("%.2e", tail_dist[2]) + ">" +
               fmt("%.2e", tail_dist[3]) + ", unfold " + fmt("%.2e", unfold_dist[0]) + ">" +
               fmt("%.2e", unfold_dist[1]) + ">" + fmt("%.2e", unfold_dist[2]) + ">" +
               fmt("%.2e", unfold_dist[3]) + (mono ? "" : " NOT MONOTONE") + ";";
  }
  csv << ",tail_k0\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    csv << cli::format_number(grid[i]);
    for (const auto& c : curves) csv << ',' << cli::format_number(c[i]);
    csv << ',' << cli::format_number(flat.tail_values[i]) << '\n';
  }
  std::filesystem::create_directories("acceptance_artifacts");
  std::ofstream("acceptance_artifacts/euclidean_limit_tails.csv") << csv.str();
  v.detail = "sup distance to k=0 curve," + summary + " limit at |k|=0.01 is 1e-2";
  return v;
}

Verdict flat_fixed_radius() {
  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(i / 1000.0);
  const SectionProfile prof = section_profile(make(0.0, 3, delta1()), grid);
  const double dens = prof.density_values[600];
  const double err = std::abs(dens - 0.75);
  return {err <= 1e-3, "density at r=0.6 = " + fmt("%.6f", dens) + " (0.75 within 1e-3)"};
}

Verdict spot_checks() {
  const double r2 = intensity_ratio(make(1.0, 2, AtomMixture::delta(kPi / 2.0)));
  const double r3 = intensity_ratio(make(1.0, 3, AtomMixture::delta(kPi / 2.0)));
  double worst4 = 0.0;
  double printed_gap = 0.0;
  for (double r : {0.3, 0.7, 1.0, 1.4}) {
    const double generic = intensity_ratio(make(1.0, 4, AtomMixture::delta(r)));
    const double expected = 2.0 / 3.0 * std::sin(r) * (2.0 + std::cos(r) * std::cos(r));
    worst4 = std::max(worst4, std::abs(generic - expected));
    const double printed = 2.0 / 3.0 * std::sin(r) * (2.0 + std::pow(std::cos(2.0 * r), 2));
    printed_gap = std::max(printed_gap, std::abs(generic - printed));
  }
  const bool ok = std::abs(r2 - 2.0) <= 1e-10 && std::abs(r3 - kPi / 2.0) <= 1e-10 &&
                  worst4 <= 1e-10;
  return {ok, "d=2 err " + fmt("%.1e", std::abs(r2 - 2.0)) + ", d=3 err " +
                  fmt("%.1e", std::abs(r3 - kPi / 2.0)) + ", d=4 generic err " +
                  fmt("%.1e", worst4) + " (limit 1e-10); cos^2(2R) variant differs by " +
                  fmt("%.2f", printed_gap)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "geometry round trip", 1.0, geometry_round_trip},
      {2, "curved Pythagoras", 1.0, curved_pythagoras},
      {3, "intensity-ratio cross-checks", 5.0, ratio_cross_checks},
      {4, "forward vs Monte Carlo", 60.0, forward_vs_monte_carlo},
      {5, "round-trip inversion", 30.0, round_trip_inversion},
      {6, "Euclidean limit", 30.0, euclidean_limit},
      {7, "fixed-radius flat law", 1.0, flat_fixed_radius},
      {8, "known-value spot checks", 1.0, spot_checks},
  };
  std::printf("workers: %d\n", default_workers());
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.body();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = v.ok && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %d %s: %s; %.2f s (limit %.0f s%s)\n", c.id, pass ? "PASS" : "FAIL",
                c.title, secs, c.budget_s, in_time ? "" : ", over budget");
    std::printf("    %s\n", v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
