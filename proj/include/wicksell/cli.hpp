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

#ifndef WICKSELL_CLI_HPP_
#define WICKSELL_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wicksell/quadrature.hpp"
#include "wicksell/section.hpp"
#include "wicksell/simulate.hpp"

namespace wicksell::cli {

enum class Command { kSection, kUnfold, kSimulate, kRatio, kSweep };

struct GridSpec {
  double min = 0.0;
  std::optional<double> max;  // defaults to the largest radius in the input law
  int n = 101;

  std::vector<double> points(double default_max) const;
};

/// Everything one invocation needs, after flag parsing.
struct RunManifest {
  Command command = Command::kSection;
  double k = 0.0;
  int d = 3;
  // Radius law: inline atom (--delta) or JSON file (--dist).
  std::optional<double> delta;
  std::string dist_path;
  // unfold only: section CSV as the slice law, and the measured ratio.
  std::string profile_path;
  std::optional<double> ratio;
  std::string out_path;  // file or directory (sweep); empty = stdout
  GridSpec grid;
  QuadratureSpec quad;
  SimulationConfig sim;
  std::vector<double> sweep_ks;
};

/// Exit codes: 0 success, 1 validation/domain errors, 2 quadrature
/// non-convergence.  Errors are written to `err` as one JSON object.
int run(const RunManifest& manifest, std::ostream& out, std::ostream& err);

/// Parses argv into a manifest and runs it.
int main(int argc, char** argv);

/// Shortest round-trip decimal text, independent of the global locale.
std::string format_number(double x);

/// Writes `r,tail,cdf,density` rows; density cells stay blank when
/// `density` is empty.
void write_profile_csv(std::ostream& out, std::span<const double> grid,
                       std::span<const double> tail, std::span<const double> density);

struct CsvProfile {
  std::vector<double> r;
  std::vector<double> tail;
};

/// Reads the `r` and `tail` columns of a profile CSV.
CsvProfile read_profile_csv(const std::string& path);

}  // namespace wicksell::cli

#endif  // WICKSELL_CLI_HPP_
