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

#include "wicksell/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wicksell/error.hpp"
#include "wicksell/measures.hpp"
#include "wicksell/parallel.hpp"
#include "wicksell/unfold.hpp"

namespace wicksell::cli {

namespace {

RadiusDistribution input_law(const RunManifest& m) {
  if (m.delta && !m.dist_path.empty()) {
    throw ValidationError("give either --delta or --dist, not both");
  }
  if (m.delta) return AtomMixture::delta(*m.delta);
  if (!m.dist_path.empty()) return load_distribution(m.dist_path);
  throw ValidationError("a radius law is required (--delta or --dist)");
}

SpaceParams space_of(const RunManifest& m, double k) { return SpaceParams(Curvature(k), m.d); }

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open '" + path + "' for writing");
  return file;
}

// Writes to --out when given, otherwise to `fallback`.
template <class Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file = open_output(path);
  write(file);
}

void check_grid_below_lmax(const std::vector<double>& grid, const SpaceParams& space) {
  if (!grid.empty() && !(grid.back() < space.l_max())) {
    throw ValidationError("grid max must be below l_max = " + format_number(space.l_max()));
  }
}

int run_section(const RunManifest& m, std::ostream& out) {
  BallProcess proc{space_of(m, m.k), 1.0, input_law(m)};
  proc.validate();
  const std::vector<double> grid = m.grid.points(support_max(proc.radii));
  check_grid_below_lmax(grid, proc.space);
  const SectionOperator op(proc, m.quad);
  const SectionProfile prof = op.profile(grid, m.sim.workers);
  emit(m.out_path, out, [&](std::ostream& os) {
    write_profile_csv(os, prof.grid, prof.tail_values, prof.density_values);
  });
  return 0;
}

int run_ratio(const RunManifest& m, std::ostream& out) {
  BallProcess proc{space_of(m, m.k), 1.0, input_law(m)};
  out << format_number(intensity_ratio(proc, m.quad)) << '\n';
  return 0;
}

RadiusDistribution slice_law(const RunManifest& m) {
  if (!m.profile_path.empty()) {
    if (m.delta || !m.dist_path.empty()) {
      throw ValidationError("give either --profile or a radius law, not both");
    }
    const CsvProfile p = read_profile_csv(m.profile_path);
    return TabulatedDensity::from_tail(p.r, p.tail);
  }
  return input_law(m);
}

int run_unfold(const RunManifest& m, std::ostream& out) {
  if (!m.ratio) throw ValidationError("unfold requires --ratio");
  UnfoldInput in{space_of(m, m.k), *m.ratio, slice_law(m)};
  in.validate();
  std::vector<double> grid = m.grid.points(support_max(in.slice_radii));
  if (!grid.empty() && !(grid.front() > 0.0)) {
    throw ValidationError("unfold grid must start above 0 (use --grid-min)");
  }
  check_grid_below_lmax(grid, in.space);
  const UnfoldProfile prof = unfold_profile(in, grid, m.quad, m.sim.workers);
  emit(m.out_path, out, [&](std::ostream& os) {
    write_profile_csv(os, prof.grid, prof.tail_values, {});
  });
  return 0;
}

int run_simulate(const RunManifest& m, std::ostream& out) {
  BallProcess proc{space_of(m, m.k), 1.0, input_law(m)};
  const SimulationResult res = simulate_sections(proc, m.sim);
  if (!m.out_path.empty()) {
    std::ofstream file = open_output(m.out_path);
    file << to_json(res.slice_sample).dump() << '\n';
  }
  nlohmann::ordered_json summary;
  summary["ratio_estimate"] = res.ratio_estimate;
  summary["std_err"] = res.std_err;
  summary["draws"] = res.draws;
  summary["effective_sample_size"] = res.effective_sample_size;
  summary["samples"] = res.slice_sample.size();
  out << summary.dump() << '\n';
  return 0;
}

double sup_distance(std::span<const double> x, std::span<const double> y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

std::vector<double> raw_unfold(const UnfoldInput& in, std::span<const double> grid,
                               const RunManifest& m) {
  std::vector<double> raw(grid.size());
  parallel_for(grid.size(), m.sim.workers,
               [&](std::size_t i) { raw[i] = unfold_tail(in, grid[i], m.quad).raw; });
  return raw;
}

int run_sweep(const RunManifest& m, std::ostream& out) {
  if (m.sweep_ks.empty()) throw ValidationError("sweep requires --ks");
  if (m.out_path.empty()) throw ValidationError("sweep requires --out <directory>");
  const RadiusDistribution law = input_law(m);
  const std::vector<double> grid = m.grid.points(support_max(law));
  std::filesystem::create_directories(m.out_path);

  const SectionOperator flat(BallProcess{space_of(m, 0.0), 1.0, law}, m.quad);
  const SectionProfile flat_prof = flat.profile(grid, m.sim.workers);

  // Matched unfolding input: the flat slice law and ratio, held fixed while
  // the curvature assumed for the inversion varies.
  const RadiusDistribution flat_slices = TabulatedDensity::from_tail(grid, flat_prof.tail_values);
  std::vector<double> unfold_grid;
  for (double a : grid) {
    if (a > 0.0 && a < support_max(flat_slices)) unfold_grid.push_back(a);
  }
  const std::vector<double> flat_unfold =
      raw_unfold(UnfoldInput{space_of(m, 0.0), flat.ratio(), flat_slices}, unfold_grid, m);

  std::ostringstream summary;
  summary << "k,tail_sup_distance,unfold_sup_distance\n";
  for (double k : m.sweep_ks) {
    const SpaceParams space = space_of(m, k);
    check_grid_below_lmax(grid, space);
    const SectionOperator op(BallProcess{space, 1.0, law}, m.quad);
    const SectionProfile prof = op.profile(grid, m.sim.workers);
    const std::string name = "section_k" + format_number(k) + ".csv";
    std::ofstream file = open_output((std::filesystem::path(m.out_path) / name).string());
    write_profile_csv(file, prof.grid, prof.tail_values, prof.density_values);

    const std::vector<double> unfolded =
        raw_unfold(UnfoldInput{space, flat.ratio(), flat_slices}, unfold_grid, m);
    summary << format_number(k) << ',' << format_number(sup_distance(prof.tail_values, flat_prof.tail_values))
            << ',' << format_number(sup_distance(unfolded, flat_unfold)) << '\n';
  }
  std::ofstream file = open_output((std::filesystem::path(m.out_path) / "summary.csv").string());
  file << summary.str();
  out << summary.str();
  return 0;
}

void report(std::ostream& err, const std::string& kind, const std::string& message,
            nlohmann::ordered_json extra = nlohmann::ordered_json::object()) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  err << j.dump() << '\n';
}

}  // namespace

std::vector<double> GridSpec::points(double default_max) const {
  const double hi = max.value_or(default_max);
  if (n < 2) throw ValidationError("grid needs at least 2 points");
  if (!std::isfinite(min) || !std::isfinite(hi) || !(hi > min) || min < 0.0) {
    throw ValidationError("grid needs 0 <= min < max");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = min + (hi - min) * i / (n - 1);
  }
  out.back() = hi;
  return out;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_profile_csv(std::ostream& out, std::span<const double> grid,
                       std::span<const double> tail, std::span<const double> density) {
  out << "r,tail,cdf,density\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_number(grid[i]) << ',' << format_number(tail[i]) << ','
        << format_number(1.0 - tail[i]) << ',';
    if (i < density.size()) out << format_number(density[i]);
    out << '\n';
  }
}

CsvProfile read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open profile '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty profile '" + path + "'");
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) {
      if (!cell.empty() && cell.back() == '\r') cell.pop_back();
      cells.push_back(cell);
    }
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  const auto header = split(line);
  const auto r_col = std::find(header.begin(), header.end(), "r") - header.begin();
  const auto t_col = std::find(header.begin(), header.end(), "tail") - header.begin();
  if (r_col == static_cast<long>(header.size()) || t_col == static_cast<long>(header.size())) {
    throw ValidationError("profile '" + path + "' lacks r and tail columns");
  }
  auto parse = [&](const std::string& cell) {
    double v = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
      throw ValidationError("bad number '" + cell + "' in '" + path + "'");
    }
    return v;
  };
  CsvProfile p;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = split(line);
    if (cells.size() <= static_cast<std::size_t>(std::max(r_col, t_col))) {
      throw ValidationError("short row in '" + path + "'");
    }
    p.r.push_back(parse(cells[static_cast<std::size_t>(r_col)]));
    p.tail.push_back(parse(cells[static_cast<std::size_t>(t_col)]));
  }
  return p;
}

int run(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
  try {
    manifest.quad.validate();
    switch (manifest.command) {
      case Command::kSection:
        return run_section(manifest, out);
      case Command::kRatio:
        return run_ratio(manifest, out);
      case Command::kUnfold:
        return run_unfold(manifest, out);
      case Command::kSimulate:
        return run_simulate(manifest, out);
      case Command::kSweep:
        return run_sweep(manifest, out);
    }
  } catch (const QuadratureError& e) {
    report(err, "nonconvergence", e.what(),
           {{"estimate", e.estimate()}, {"error_estimate", e.error_estimate()}});
    return 2;
  } catch (const InconsistencyError& e) {
    report(err, "inconsistent", e.what(), {{"raw_value", e.raw_value()}});
    return 1;
  } catch (const DomainError& e) {
    report(err, "domain", e.what());
    return 1;
  } catch (const ValidationError& e) {
    report(err, "validation", e.what());
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    report(err, "validation", e.what());
    return 1;
  }
  return 1;
}

int main(int argc, char** argv) {
  CLI::App app{"Wicksell section and unfolding in spaces of constant curvature"};
  app.require_subcommand(1);
  RunManifest m;
  m.sim.workers = default_workers();

  auto common = [&m](CLI::App* sub) {
    sub->add_option("--k", m.k, "Sectional curvature");
    sub->add_option("--d", m.d, "Ambient dimension (>= 2)");
    sub->add_option("--delta", m.delta, "Inline law: all radii equal to this value");
    sub->add_option("--dist", m.dist_path, "Radius law as JSON (atoms, density or sample)");
    sub->add_option("--abs-tol", m.quad.abs_tol, "Quadrature absolute tolerance");
    sub->add_option("--rel-tol", m.quad.rel_tol, "Quadrature relative tolerance");
    sub->add_option("--max-subdivisions", m.quad.max_subdivisions, "Quadrature bisection budget");
    sub->add_option("--workers", m.sim.workers, "Worker threads (default: WICKSELL_WORKERS)");
  };
  auto gridded = [&m](CLI::App* sub) {
    sub->add_option("--grid-min", m.grid.min, "First grid point");
    sub->add_option("--grid-max", m.grid.max, "Last grid point (default: largest radius)");
    sub->add_option("--grid-n", m.grid.n, "Number of grid points");
    sub->add_option("--out", m.out_path, "Output file (default: stdout)");
  };

  auto* section = app.add_subcommand("section", "Induced section-radius law on a grid (CSV)");
  common(section);
  gridded(section);
  auto* ratio = app.add_subcommand("ratio", "Print the intensity ratio N_{d-1}/N_d");
  common(ratio);
  auto* unfold = app.add_subcommand("unfold", "Recover the ball-radius tail from section data");
  common(unfold);
  gridded(unfold);
  unfold->add_option("--ratio", m.ratio, "Measured intensity ratio N_{d-1}/N_d")->required();
  unfold->add_option("--profile", m.profile_path, "Section CSV (r,tail,...) as the slice law");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo section sample and ratio estimate");
  common(simulate);
  simulate->add_option("--seed", m.sim.seed, "RNG seed");
  simulate->add_option("--n", m.sim.n_samples, "Target effective number of sections");
  simulate->add_option("--slab", m.sim.slab_halfwidth, "Proposal slab half-width (0: largest radius)");
  simulate->add_option("--out", m.out_path, "Write the slice sample as JSON here");
  auto* sweep = app.add_subcommand("sweep", "Section tails over a list of curvatures");
  common(sweep);
  gridded(sweep);
  sweep->add_option("--ks", m.sweep_ks, "Comma-separated curvatures")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report(std::cerr, "validation", e.what());
    return 1;
  }
  if (section->parsed()) m.command = Command::kSection;
  if (ratio->parsed()) m.command = Command::kRatio;
  if (unfold->parsed()) m.command = Command::kUnfold;
  if (simulate->parsed()) m.command = Command::kSimulate;
  if (sweep->parsed()) m.command = Command::kSweep;
  return run(m, std::cout, std::cerr);
}

}  // namespace wicksell::cli
