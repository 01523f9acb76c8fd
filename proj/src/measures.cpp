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

#include "wicksell/measures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "wicksell/error.hpp"

namespace wicksell {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kRenormDrift = 1e-3;

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

AtomMixture::AtomMixture(std::vector<Atom> atoms) {
  require(!atoms.empty(), "atom mixture needs at least one atom");
  double total = 0.0;
  for (const Atom& a : atoms) {
    require(std::isfinite(a.radius) && a.radius > 0.0, "atom radii must be finite and positive");
    require(std::isfinite(a.weight) && a.weight > 0.0, "atom weights must be finite and positive");
    total += a.weight;
  }
  require(std::abs(total - 1.0) <= kRenormDrift,
          "atom weights must sum to 1 (got " + std::to_string(total) + ")");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.radius < y.radius; });
  for (const Atom& a : atoms) {
    if (!atoms_.empty() && atoms_.back().radius == a.radius) {
      atoms_.back().weight += a.weight / total;
    } else {
      atoms_.push_back({a.radius, a.weight / total});
    }
  }
}

TabulatedDensity::TabulatedDensity(std::vector<double> grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(grid_.size() >= 2, "tabulated density needs at least two knots");
  require(grid_.size() == values_.size(), "grid and values differ in length");
  require(std::isfinite(grid_.front()) && grid_.front() >= 0.0,
          "tabulated density grid must start at r >= 0");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    require(std::isfinite(grid_[i]), "grid values must be finite");
    require(std::isfinite(values_[i]) && values_[i] >= 0.0,
            "density values must be finite and non-negative");
    if (i > 0) require(grid_[i] > grid_[i - 1], "grid must be strictly increasing");
  }
  cumulative_.assign(grid_.size(), 0.0);
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    cumulative_[i] =
        cumulative_[i - 1] + 0.5 * (grid_[i] - grid_[i - 1]) * (values_[i] + values_[i - 1]);
  }
  const double total = cumulative_.back();
  require(total > 0.0, "tabulated density has zero mass");
  for (double& v : values_) v /= total;
  for (double& c : cumulative_) c /= total;
  cumulative_.back() = 1.0;
}

TabulatedDensity TabulatedDensity::uniform(double lo, double hi) {
  require(hi > lo, "uniform law needs lo < hi");
  return TabulatedDensity({lo, hi}, {1.0 / (hi - lo), 1.0 / (hi - lo)});
}

TabulatedDensity TabulatedDensity::from_tail(std::span<const double> grid,
                                             std::span<const double> tail) {
  require(grid.size() >= 2 && grid.size() == tail.size(),
          "tail profile needs matching grid and tail columns of length >= 2");
  const std::size_t cells = grid.size() - 1;
  std::vector<double> cell_density(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double width = grid[i + 1] - grid[i];
    require(width > 0.0, "tail profile grid must be strictly increasing");
    cell_density[i] = std::max(tail[i] - tail[i + 1], 0.0) / width;
  }
  // Knot values take the smaller neighbouring cell density; a midpoint knot
  // per cell then restores the cell mass exactly.  Mass never leaks across
  // a jump in the density, and the tail is reproduced at every input knot.
  std::vector<double> edge(grid.size());
  edge.front() = cell_density.front();
  edge.back() = cell_density.back();
  for (std::size_t j = 1; j < cells; ++j) {
    edge[j] = std::min(cell_density[j - 1], cell_density[j]);
  }
  std::vector<double> knots;
  std::vector<double> values;
  knots.reserve(2 * cells + 1);
  values.reserve(2 * cells + 1);
  for (std::size_t i = 0; i < cells; ++i) {
    knots.push_back(grid[i]);
    values.push_back(edge[i]);
    knots.push_back(0.5 * (grid[i] + grid[i + 1]));
    values.push_back(std::max(2.0 * cell_density[i] - 0.5 * (edge[i] + edge[i + 1]), 0.0));
  }
  knots.push_back(grid.back());
  values.push_back(edge.back());
  return TabulatedDensity(std::move(knots), std::move(values));
}

double TabulatedDensity::density(double r) const {
  if (r < grid_.front() || r > grid_.back()) return 0.0;
  auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  if (it == grid_.end()) return values_.back();
  const auto i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double w = (r - grid_[i]) / (grid_[i + 1] - grid_[i]);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

double TabulatedDensity::mass_below(double r) const {
  if (r <= grid_.front()) return 0.0;
  if (r >= grid_.back()) return 1.0;
  auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  const auto i = static_cast<std::size_t>(it - grid_.begin()) - 1;
  const double dx = r - grid_[i];
  return cumulative_[i] + 0.5 * dx * (values_[i] + density(r));
}

double TabulatedDensity::quantile(double p) const {
  p = std::clamp(p, 0.0, 1.0);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), p);
  if (it == cumulative_.end()) {
    // p == 1: last knot carrying mass.
    std::size_t i = grid_.size() - 1;
    while (i > 0 && cumulative_[i - 1] >= 1.0) --i;
    return grid_[i];
  }
  if (it == cumulative_.begin()) return grid_.front();
  const auto i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
  const double m = p - cumulative_[i];
  const double width = grid_[i + 1] - grid_[i];
  const double v0 = values_[i];
  const double slope = (values_[i + 1] - v0) / width;
  // Solve v0 x + slope x^2 / 2 = m for x in [0, width].
  const double disc = std::max(v0 * v0 + 2.0 * slope * m, 0.0);
  const double denom = v0 + std::sqrt(disc);
  const double x = denom > 0.0 ? 2.0 * m / denom : 0.0;
  return grid_[i] + std::clamp(x, 0.0, width);
}

EmpiricalSample::EmpiricalSample(std::vector<double> radii) : radii_(std::move(radii)) {
  require(!radii_.empty(), "empirical sample must be nonempty");
  for (double r : radii_) {
    require(std::isfinite(r) && r > 0.0, "sample radii must be finite and positive");
  }
  std::sort(radii_.begin(), radii_.end());
}

double tail(const RadiusDistribution& dist, double r) {
  return std::visit(
      Overloaded{
          [r](const AtomMixture& m) {
            double t = 0.0;
            for (const Atom& a : m.atoms()) {
              if (a.radius > r) t += a.weight;
            }
            return std::min(t, 1.0);
          },
          [r](const TabulatedDensity& t) { return 1.0 - t.mass_below(r); },
          [r](const EmpiricalSample& s) {
            const auto& x = s.radii();
            const auto above = x.end() - std::upper_bound(x.begin(), x.end(), r);
            return static_cast<double>(above) / static_cast<double>(x.size());
          },
      },
      dist);
}

double cdf(const RadiusDistribution& dist, double r) { return 1.0 - tail(dist, r); }

double mean(const RadiusDistribution& dist) {
  return std::visit(
      Overloaded{
          [](const AtomMixture& m) {
            double s = 0.0;
            for (const Atom& a : m.atoms()) s += a.radius * a.weight;
            return s;
          },
          [](const TabulatedDensity& t) {
            // Exact for piecewise-linear densities.
            const auto& g = t.grid();
            const auto& v = t.values();
            double s = 0.0;
            for (std::size_t i = 0; i + 1 < g.size(); ++i) {
              const double x0 = g[i];
              const double x1 = g[i + 1];
              const double w = x1 - x0;
              s += w * (v[i] * (2.0 * x0 + x1) + v[i + 1] * (x0 + 2.0 * x1)) / 6.0;
            }
            return s;
          },
          [](const EmpiricalSample& s) {
            const auto& x = s.radii();
            return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
          },
      },
      dist);
}

double support_min(const RadiusDistribution& dist) {
  return std::visit(Overloaded{
                        [](const AtomMixture& m) { return m.atoms().front().radius; },
                        [](const TabulatedDensity& t) {
                          const auto& g = t.grid();
                          const auto& v = t.values();
                          std::size_t i = 0;
                          while (i + 1 < g.size() && v[i] == 0.0 && v[i + 1] == 0.0) ++i;
                          return g[i];
                        },
                        [](const EmpiricalSample& s) { return s.radii().front(); },
                    },
                    dist);
}

bool positive_support(const RadiusDistribution& dist) {
  if (std::holds_alternative<TabulatedDensity>(dist)) return support_min(dist) >= 0.0;
  return support_min(dist) > 0.0;
}

double support_max(const RadiusDistribution& dist) {
  return std::visit(Overloaded{
                        [](const AtomMixture& m) { return m.atoms().back().radius; },
                        [](const TabulatedDensity& t) {
                          const auto& g = t.grid();
                          const auto& v = t.values();
                          std::size_t i = g.size() - 1;
                          while (i > 0 && v[i] == 0.0 && v[i - 1] == 0.0) --i;
                          return g[i];
                        },
                        [](const EmpiricalSample& s) { return s.radii().back(); },
                    },
                    dist);
}

double quantile(const RadiusDistribution& dist, double p) {
  p = std::clamp(p, 0.0, 1.0);
  return std::visit(
      Overloaded{
          [p](const AtomMixture& m) {
            double c = 0.0;
            for (const Atom& a : m.atoms()) {
              c += a.weight;
              if (c >= p) return a.radius;
            }
            return m.atoms().back().radius;
          },
          [p](const TabulatedDensity& t) { return t.quantile(p); },
          [p](const EmpiricalSample& s) {
            const auto n = s.size();
            auto idx = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
            idx = std::clamp<std::size_t>(idx, 1, n) - 1;
            return s.radii()[idx];
          },
      },
      dist);
}

QuadResult integrate(const RadiusDistribution& dist, const Integrand& f, double lower,
                     double upper, const QuadratureSpec& quad, std::span<const double> kinks) {
  if (!(upper > lower)) return {};
  return std::visit(
      Overloaded{
          [&](const AtomMixture& m) {
            double s = 0.0;
            for (const Atom& a : m.atoms()) {
              if (a.radius > lower && a.radius <= upper) s += a.weight * f(a.radius);
            }
            return QuadResult{s, 0.0};
          },
          [&](const TabulatedDensity& t) {
            const auto& g = t.grid();
            const double lo = std::max(lower, g.front());
            const double hi = std::min(upper, g.back());
            if (!(hi > lo)) return QuadResult{};
            QuadratureSpec spec = quad;
            if (lower < g.front()) spec.singularity = Singularity::kNone;
            auto integrand = [&](double x) { return f(x) * t.density(x); };
            if (kinks.empty()) return integrate_1d(integrand, lo, hi, spec, g);
            std::vector<double> cuts(g.begin(), g.end());
            cuts.insert(cuts.end(), kinks.begin(), kinks.end());
            return integrate_1d(integrand, lo, hi, spec, cuts);
          },
          [&](const EmpiricalSample& s) {
            const auto& x = s.radii();
            double acc = 0.0;
            for (auto it = std::upper_bound(x.begin(), x.end(), lower);
                 it != x.end() && *it <= upper; ++it) {
              acc += f(*it);
            }
            return QuadResult{acc / static_cast<double>(x.size()), 0.0};
          },
      },
      dist);
}

nlohmann::json to_json(const RadiusDistribution& dist) {
  return std::visit(Overloaded{
                        [](const AtomMixture& m) {
                          nlohmann::json points = nlohmann::json::array();
                          for (const Atom& a : m.atoms()) points.push_back({a.radius, a.weight});
                          return nlohmann::json{{"type", "atoms"}, {"points", points}};
                        },
                        [](const TabulatedDensity& t) {
                          return nlohmann::json{
                              {"type", "density"}, {"grid", t.grid()}, {"values", t.values()}};
                        },
                        [](const EmpiricalSample& s) {
                          return nlohmann::json{{"type", "sample"}, {"radii", s.radii()}};
                        },
                    },
                    dist);
}

RadiusDistribution distribution_from_json(const nlohmann::json& j) {
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "atoms") {
      std::vector<Atom> atoms;
      for (const auto& p : j.at("points")) {
        require(p.is_array() && p.size() == 2, "atom points must be [radius, weight] pairs");
        atoms.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      return AtomMixture(std::move(atoms));
    }
    if (type == "density") {
      return TabulatedDensity(j.at("grid").get<std::vector<double>>(),
                              j.at("values").get<std::vector<double>>());
    }
    if (type == "sample") {
      return EmpiricalSample(j.at("radii").get<std::vector<double>>());
    }
    throw ValidationError("unknown distribution type '" + type + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed distribution JSON: ") + e.what());
  }
}

RadiusDistribution load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open distribution file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse '" + path + "': " + e.what());
  }
  return distribution_from_json(j);
}

}  // namespace wicksell
