// Copyright 2026 The nordheim-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "nordheim/collision.hpp"
#include "nordheim/grid.hpp"
#include "nordheim/initdata.hpp"
#include "nordheim/integrator.hpp"

namespace nordheim::cli {

enum class InitialKind { kBlowup, kBoseEinstein, kFile };

struct SimConfig {
  // [grid]
  std::size_t n = 128;
  double eps_max = 5.0;

  // [run]
  Scheme scheme = Scheme::kRk4;
  CollisionOperator op = CollisionOperator::kConservative;
  double dt0 = 1e-3;
  double dt_min = 1e-12;
  double cfl = 0.5;
  double f_cap = 0.0;
  double t_end = 1.0;
  std::size_t report_stride = 1;
  MomentConvention convention = MomentConvention::kPhysical;
  unsigned threads = 0;

  // [initial]
  InitialKind initial = InitialKind::kBlowup;
  // [blowup]
  double mass = 1.0;
  double energy = 1.0;
  double rho = 0.1;
  double beta = 0.9;
  // [bose_einstein]
  double be_beta = 1.0;
  double be_alpha = 1.0;
  // [file]
  std::string file_path;

  // [diagnostics]
  double theta1 = 0.5;
  double theta2 = 0.5;
  std::size_t ell_max = 8;
  double exponent_lo = 0.0;  // window unset while lo >= hi
  double exponent_hi = 0.0;
  std::vector<double> mass_radii;

  // [output]
  std::string out_dir = ".";
  std::string series_file = "series.csv";
  std::string snapshot_file = "snapshot.csv";
  std::string summary_file = "summary.json";
  bool plots = true;

  bool operator==(const SimConfig&) const = default;
};

// Sections in brackets, "key = value" lines, '#' comments. Keys match
// exactly; unknown or repeated keys are parse errors. Throws ConfigError.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

// Every key, in the order parse_config documents them.
std::string render_config(const SimConfig& cfg);

// Sets one "section.key" (or a bare key that is unique across sections) as if
// it had been read from a file. Throws ConfigError. Cross-field checks are
// left to validate(), so several overrides can be applied in any order.
void apply_override(SimConfig& cfg, std::string_view key, std::string_view value);

// Semantic checks shared by parse_config and apply_override callers.
void validate(const SimConfig& cfg);

RunParams run_params(const SimConfig& cfg);

// Grid and initial distribution described by the config. For blow-up data,
// spec_out receives the solved coefficients.
Distribution initial_distribution(const SimConfig& cfg, BlowupDataSpec* spec_out = nullptr);

// Closest known key to a misspelled one, empty if nothing is close.
std::string suggest_key(std::string_view key);

}  // namespace nordheim::cli
