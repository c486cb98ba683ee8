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

#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"
#include "nordheim/integrator.hpp"
#include "nordheim/measure.hpp"

namespace nordheim::cli {

inline constexpr int kExitCompleted = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBlowup = 10;
inline constexpr int kExitStepUnderflow = 11;
inline constexpr int kExitPositivity = 12;

int exit_code(RunStatus status);

struct SimulationReport {
  RunOutcome outcome;
  nlohmann::json summary;
  int exit_code = kExitCompleted;
};

// Runs the configured simulation and writes the series CSV, final snapshot,
// summary JSON and (optionally) plots under cfg.out_dir.
SimulationReport simulate(const SimConfig& cfg);

int cmd_simulate(const SimConfig& cfg, std::ostream& out, std::ostream& err);

// Residual of both operators on the configured initial data against their
// gain+loss scale; PASS when both are within 1e-12.
int cmd_check_equilibrium(const SimConfig& cfg, std::ostream& out);

int cmd_partition(const std::string& atoms_path, double b, double delta, double scale,
                  std::ostream& out, std::ostream& err);

int cmd_fit_exponent(const std::string& snapshot_path, double lo, double hi, std::ostream& out,
                     std::ostream& err);

// One run per value, `jobs` at a time, each writing under
// <out_dir>/<param>_<index>; a summary row per run goes to <out_dir>/sweep.csv.
int cmd_sweep(const SimConfig& cfg, const std::string& param,
              const std::vector<std::string>& values, unsigned jobs, std::ostream& out,
              std::ostream& err);

nlohmann::json partition_json(const PartitionResult& r, const CertificateCheck& check);
nlohmann::json concentration_json(const ConcentrationReport& report);

}  // namespace nordheim::cli
