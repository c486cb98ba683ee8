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

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "nordheim/error.hpp"

namespace {

using namespace nordheim;
using namespace nordheim::cli;

// Config file first, then each --set key=value in order.
SimConfig assemble_config(const std::string& path, const std::vector<std::string>& overrides) {
  SimConfig cfg = path.empty() ? SimConfig{} : load_config(path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(ConfigError::Kind::kParse, "--set expects key=value, got '" + kv + "'", 0,
                        kv);
    }
    apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  validate(cfg);
  return cfg;
}

void add_config_options(CLI::App* cmd, std::string& path, std::vector<std::string>& overrides) {
  cmd->add_option("-c,--config", path, "Configuration file")->check(CLI::ExistingFile);
  cmd->add_option("-s,--set", overrides, "Override one key, e.g. --set run.t_end=0.5");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic wave equation solver for isotropic Bose gases"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  auto* simulate = app.add_subcommand("simulate", "Run a simulation and write its outputs");
  add_config_options(simulate, config_path, overrides);

  auto* equilibrium =
      app.add_subcommand("check-equilibrium", "Collision residual of the configured initial data");
  add_config_options(equilibrium, config_path, overrides);

  auto* dump = app.add_subcommand("print-config", "Print the effective configuration");
  add_config_options(dump, config_path, overrides);

  std::string atoms_path;
  double b = 2.0;
  double delta = 0.1;
  double scale = 1.0;
  auto* partition = app.add_subcommand("partition", "Dyadic partition of a discrete measure");
  partition->add_option("-i,--input", atoms_path, "CSV of location,mass rows")
      ->required()
      ->check(CLI::ExistingFile);
  partition->add_option("--b,--base", b, "Dyadic base, > 1")->check(CLI::PositiveNumber);
  partition->add_option("--delta", delta, "Mass fraction, in (0, 2/3)")->check(CLI::Range(0.0, 2.0 / 3.0));
  partition->add_option("--scale", scale, "Interval scale")->check(CLI::PositiveNumber);

  std::string snapshot_path;
  double lo = 0.0;
  double hi = 0.0;
  auto* fit = app.add_subcommand("fit-exponent", "Power-law fit of a snapshot over a window");
  fit->add_option("-i,--input", snapshot_path, "Snapshot CSV (eps,f,g)")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--lo", lo, "Window lower energy")->required();
  fit->add_option("--hi", hi, "Window upper energy")->required();

  std::string param;
  std::vector<std::string> values;
  unsigned jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run one simulation per parameter value");
  add_config_options(sweep, config_path, overrides);
  sweep->add_option("-p,--param", param, "Key to vary, e.g. blowup.rho")->required();
  sweep->add_option("-v,--values", values, "Values to run")->required()->delimiter(',');
  sweep->add_option("-j,--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return cmd_simulate(assemble_config(config_path, overrides), std::cout, std::cerr);
    if (*equilibrium) return cmd_check_equilibrium(assemble_config(config_path, overrides), std::cout);
    if (*dump) {
      std::cout << render_config(assemble_config(config_path, overrides));
      return kExitCompleted;
    }
    if (*partition) return cmd_partition(atoms_path, b, delta, scale, std::cout, std::cerr);
    if (*fit) return cmd_fit_exponent(snapshot_path, lo, hi, std::cout, std::cerr);
    if (*sweep) {
      return cmd_sweep(assemble_config(config_path, overrides), param, values, jobs, std::cout,
                       std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InfeasibleKappa& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
