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

#ifndef WICKSELL_MEASURES_HPP_
#define WICKSELL_MEASURES_HPP_

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wicksell/quadrature.hpp"

namespace wicksell {

struct Atom {
  double radius;
  double weight;
};

/// Finite mixture of point masses.  Weights are renormalised to sum to one
/// when the input drifts by at most 1e-3; larger drift is rejected.
class AtomMixture {
 public:
  explicit AtomMixture(std::vector<Atom> atoms);
  static AtomMixture delta(double radius) { return AtomMixture({{radius, 1.0}}); }

  // Sorted by radius, coincident radii merged.
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  std::vector<Atom> atoms_;
};

/// Piecewise-linear density on a strictly increasing grid, zero outside
/// [grid.front(), grid.back()].  Renormalised on construction so that its
/// trapezoid integral is exactly one.
class TabulatedDensity {
 public:
  TabulatedDensity(std::vector<double> grid, std::vector<double> values);

  /// Uniform law on [lo, hi] as a two-knot table.
  static TabulatedDensity uniform(double lo, double hi);

  /// Continuous piecewise-linear density whose mass on each grid cell
  /// matches the drop of a tabulated tail curve.  Each cell gets an extra
  /// midpoint knot.  Used to turn a section profile back into a law.
  static TabulatedDensity from_tail(std::span<const double> grid, std::span<const double> tail);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double density(double r) const;
  // Mass of (grid.front(), r].
  double mass_below(double r) const;
  double quantile(double p) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> cumulative_;  // mass left of each knot
};

/// Unweighted sample of radii, stored sorted.
class EmpiricalSample {
 public:
  explicit EmpiricalSample(std::vector<double> radii);

  const std::vector<double>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }

 private:
  std::vector<double> radii_;
};

using RadiusDistribution = std::variant<AtomMixture, TabulatedDensity, EmpiricalSample>;

// Tails are over open-left intervals (r, inf): an atom sitting exactly at r
// does not count.
double tail(const RadiusDistribution& dist, double r);
double cdf(const RadiusDistribution& dist, double r);
double mean(const RadiusDistribution& dist);
double support_min(const RadiusDistribution& dist);
// True when no mass sits on (-inf, 0].  A density may start at 0 itself.
bool positive_support(const RadiusDistribution& dist);
double support_max(const RadiusDistribution& dist);
// Smallest r with cdf(r) >= p, p in [0, 1].
double quantile(const RadiusDistribution& dist, double p);

/// int_{(lower, upper]} f dnu.  Atoms and samples are summed exactly; a
/// tabulated density is integrated adaptively cell by cell, with the
/// singularity mode of `quad` applied at `lower` when it lies in the support.
/// `kinks` adds panel boundaries where f is not smooth.
QuadResult integrate(const RadiusDistribution& dist, const Integrand& f, double lower,
                     double upper, const QuadratureSpec& quad,
                     std::span<const double> kinks = {});

nlohmann::json to_json(const RadiusDistribution& dist);
RadiusDistribution distribution_from_json(const nlohmann::json& j);
RadiusDistribution load_distribution(const std::string& path);

}  // namespace wicksell

#endif  // WICKSELL_MEASURES_HPP_
