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

#include <filesystem>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "config.hpp"
#include "io.hpp"
#include "json.hpp"
#include "nordheim/error.hpp"
#include "nordheim/initdata.hpp"
#include "plot.hpp"

namespace nordheim::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("nordheim_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Config, MinimalDocumentFillsDefaults) {
  const auto cfg = parse_config("[grid]\nn = 64\n");
  SimConfig expected;
  expected.n = 64;
  EXPECT_EQ(cfg, expected);
  EXPECT_EQ(parse_config(""), SimConfig{});
}

TEST(Config, RenderRoundTrips) {
  SimConfig cfg;
  cfg.n = 77;
  cfg.eps_max = 3.25;
  cfg.dt0 = 1.0 / 3.0;
  cfg.scheme = Scheme::kExponential;
  cfg.convention = MomentConvention::kBare;
  cfg.initial = InitialKind::kBoseEinstein;
  cfg.be_alpha = 0.1;
  cfg.mass_radii = {0.1, 0.25};
  cfg.exponent_lo = 0.01;
  cfg.exponent_hi = 0.2;
  cfg.out_dir = "runs/a";
  cfg.plots = false;
  EXPECT_EQ(parse_config(render_config(cfg)), cfg);
}

TEST(Config, CommentsAndWhitespace) {
  const auto cfg = parse_config("# header\n[run]\n  t_end =  0.5   # trailing\n\n[grid]\neps_max=4\n");
  EXPECT_EQ(cfg.t_end, 0.5);
  EXPECT_EQ(cfg.eps_max, 4.0);
}

TEST(Config, NegativeStepIsValidationError) {
  try {
    parse_config("[run]\ndt0 = -1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.kind(), ConfigError::Kind::kValidation);
    EXPECT_EQ(e.field(), "run.dt0");
  }
}

TEST(Config, UnknownKeySuggestsClosest) {
  try {
    parse_config("[grid]\nn = 8\nepsmax = 3\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.kind(), ConfigError::Kind::kParse);
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("eps_max"), std::string::npos) << e.what();
  }
  EXPECT_EQ(suggest_key("t_ned"), "t_end");
  EXPECT_EQ(suggest_key("completely_unrelated"), "");
}

TEST(Config, ParseErrors) {
  EXPECT_THROW(parse_config("[grid\n"), ConfigError);
  EXPECT_THROW(parse_config("[nowhere]\n"), ConfigError);
  EXPECT_THROW(parse_config("n = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\nn\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\nn = 3\nn = 4\n"), ConfigError);
  EXPECT_THROW(parse_config("[grid]\nn = 3.5\n"), ConfigError);
  EXPECT_THROW(parse_config("[run]\nscheme = euler\n"), ConfigError);
  EXPECT_THROW(parse_config("[initial]\nkind = file\n"), ConfigError);
}

TEST(Config, Overrides) {
  SimConfig cfg;
  apply_override(cfg, "grid.n", "12");
  apply_override(cfg, "t_end", "0.25");
  apply_override(cfg, "bose_einstein.beta", "2");
  EXPECT_EQ(cfg.n, 12u);
  EXPECT_EQ(cfg.t_end, 0.25);
  EXPECT_EQ(cfg.be_beta, 2.0);
  EXPECT_THROW(apply_override(cfg, "beta", "0.5"), ConfigError);  // two sections
  EXPECT_THROW(apply_override(cfg, "grid.m", "1"), ConfigError);
}

TEST(Io, SnapshotRoundTripIsExact) {
  const auto d = make_bose_einstein(1.0, 0.7, make_grid(3.7, 41));
  const auto back = parse_snapshot(snapshot_csv(d));
  ASSERT_EQ(back.size(), d.size());
  EXPECT_EQ(back.grid().eps_max(), d.grid().eps_max());
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(back[i], d[i]);
}

TEST(Io, SnapshotRejectsNonUniformRows) {
  EXPECT_THROW(parse_snapshot("eps,f,g\n0,1,0\n0.5,1,1\n2,1,1\n"), std::runtime_error);
  EXPECT_THROW(parse_snapshot("eps,f,g\n0,1,0\n"), std::runtime_error);
  EXPECT_THROW(parse_snapshot("eps,f,g\n0,1,0\nx,1,1\n"), std::runtime_error);
}

TEST(Io, SeriesHeader) {
  MomentReport r;
  r.t = 0.5;
  r.mass = 1.0;
  r.mass_below = {0.25};
  r.exponent = 1.2;
  const auto csv = series_csv({r}, {0.1}, true);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,M,E,S,f_sup,mass_below_0.1,exponent");
  EXPECT_NE(csv.find("0.5,1,0,0,0,0.25,1.2"), std::string::npos) << csv;
}

TEST(Io, FormatNumber) {
  EXPECT_EQ(format_number(0.1, 17), "0.10000000000000001");
  EXPECT_EQ(format_number(-0.0, 10), "0");
  EXPECT_EQ(format_number(1e-300, 10), "1e-300");
}

TEST(Io, AtomsWithAndWithoutHeader) {
  EXPECT_EQ(parse_atoms("location,mass\n0.5,1\n0.25,2\n").total_mass(), 3.0);
  EXPECT_EQ(parse_atoms("0.5,1\n").total_mass(), 1.0);
  EXPECT_THROW(parse_atoms("0.5,1\nbad,row\n"), std::runtime_error);
}

TEST(Plot, SvgOutputs) {
  MomentReport r;
  r.mass = r.energy = r.entropy = r.f_sup = 1.0;
  const auto single = plot_moments({r});
  EXPECT_NE(single.find("<svg"), std::string::npos);
  EXPECT_NE(single.find("<circle"), std::string::npos);
  EXPECT_THROW(plot_moments({}), std::invalid_argument);

  const auto be = make_bose_einstein(1.0, 0.5, make_grid(4.0, 32));
  const auto loglog = plot_distribution_loglog(be);
  EXPECT_NE(loglog.find("class=\"guide\""), std::string::npos);
  EXPECT_THROW(plot_distribution_loglog(Distribution(make_grid(1.0, 4))), std::invalid_argument);

  const auto rep = concentration_report(be, 0.5, 0.5, 5, 0.0);
  EXPECT_NE(plot_dyadic_mass(rep).find("</svg>"), std::string::npos);
  EXPECT_THROW(plot_dyadic_mass(ConcentrationReport{}), std::invalid_argument);
}

SimConfig bose_einstein_config(const fs::path& dir) {
  SimConfig cfg;
  cfg.n = 32;
  cfg.initial = InitialKind::kBoseEinstein;
  cfg.t_end = 0.2;
  cfg.out_dir = dir.string();
  return cfg;
}

TEST(Commands, SimulateBoseEinsteinKeepsMass) {
  const auto dir = scratch_dir("be");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate(bose_einstein_config(dir), out, err), kExitCompleted) << err.str();
  std::istringstream csv(read_file((dir / "series.csv").string()));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("t,M,E,S,f_sup", 0), 0u);
  double first_mass = 0.0;
  int rows = 0;
  while (std::getline(csv, line)) {
    const auto a = line.find(',');
    const double m = std::stod(line.substr(a + 1, line.find(',', a + 1) - a - 1));
    if (rows++ == 0) first_mass = m;
    EXPECT_NEAR(m, first_mass, 1e-10 * first_mass);
  }
  EXPECT_GT(rows, 1);
  EXPECT_TRUE(fs::exists(dir / "snapshot.csv"));
  EXPECT_TRUE(fs::exists(dir / "moments.svg"));
  const auto summary = nlohmann::json::parse(read_file((dir / "summary.json").string()));
  EXPECT_EQ(summary["status"], "completed");
  EXPECT_TRUE(summary["t_detect"].is_null());
}

TEST(Commands, ZeroHorizonWritesOneRow) {
  const auto dir = scratch_dir("zero");
  auto cfg = bose_einstein_config(dir);
  cfg.t_end = 0.0;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate(cfg, out, err), kExitCompleted);
  const auto csv = read_file((dir / "series.csv").string());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(Commands, SimulateBlowupReportsDetection) {
  const auto dir = scratch_dir("blowup");
  SimConfig cfg;
  cfg.n = 48;
  cfg.mass = cfg.energy = 10.0;
  cfg.convention = MomentConvention::kBare;
  cfg.t_end = 0.1;
  cfg.exponent_lo = 0.1;
  cfg.exponent_hi = 1.0;
  cfg.out_dir = dir.string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate(cfg, out, err), kExitBlowup) << err.str();
  const auto summary = nlohmann::json::parse(read_file((dir / "summary.json").string()));
  EXPECT_EQ(summary["status"], "blowup_detected");
  EXPECT_TRUE(summary["t_detect"].is_number());
  EXPECT_TRUE(summary["exponent"]["slope"].is_number());
  EXPECT_DOUBLE_EQ(summary["exponent"]["references"]["seven_sixths"].get<double>(), 7.0 / 6.0);
  EXPECT_TRUE(summary["blowup_data"]["grid_kappa1"].is_number());
}

TEST(Commands, InfeasibleBlowupIsConfigError) {
  const auto dir = scratch_dir("infeasible");
  SimConfig cfg;  // unit mass and energy
  cfg.n = 32;
  cfg.out_dir = dir.string();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_simulate(cfg, out, err), kExitConfigError);
  EXPECT_NE(err.str().find("kappa"), std::string::npos);
}

TEST(Commands, CheckEquilibriumPasses) {
  const auto dir = scratch_dir("eq");
  std::ostringstream out;
  EXPECT_EQ(cmd_check_equilibrium(bose_einstein_config(dir), out), kExitCompleted);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["result"], "PASS");
  EXPECT_LE(j["conservative"]["residual"].get<double>(),
            1e-12 * j["conservative"]["scale"].get<double>());
}

TEST(Commands, PartitionTwoAtoms) {
  const auto dir = scratch_dir("partition");
  write_file((dir / "atoms.csv").string(), "location,mass\n0.9,0.5\n0.05,0.5\n");
  std::ostringstream out, err;
  EXPECT_EQ(cmd_partition((dir / "atoms.csv").string(), 2.0, 0.4, 1.0, out, err), kExitCompleted);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j["case"], "separated");
  EXPECT_NEAR(j["eta"].get<double>(), 1.0 / 15.0, 1e-16);
  EXPECT_EQ(j["certificate"]["verified"], true);
}

TEST(Commands, FitExponentOnSnapshot) {
  const auto dir = scratch_dir("fit");
  const auto d = make_bose_einstein(1.0, 0.5, make_grid(4.0, 64));
  write_file((dir / "snap.csv").string(), snapshot_csv(d));
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fit_exponent((dir / "snap.csv").string(), 0.1, 1.0, out, err), kExitCompleted);
  EXPECT_TRUE(nlohmann::json::parse(out.str())["slope"].is_number());
  std::ostringstream out2, err2;
  EXPECT_EQ(cmd_fit_exponent((dir / "snap.csv").string(), 0.1, 0.12, out2, err2), kExitFailure);
}

TEST(Commands, SweepWritesOneRowPerValue) {
  const auto dir = scratch_dir("sweep");
  auto cfg = bose_einstein_config(dir);
  cfg.n = 16;
  cfg.t_end = 0.05;
  cfg.plots = false;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_sweep(cfg, "bose_einstein.alpha", {"0.5", "1", "2"}, 2, out, err), kExitCompleted);
  const auto csv = read_file((dir / "sweep.csv").string());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_NE(csv.find("bose_einstein.alpha,2,completed"), std::string::npos) << csv;
  EXPECT_TRUE(fs::exists(dir / "bose_einstein.alpha_2" / "summary.json"));
  EXPECT_NE(out.str().find("t_detect trend: n/a"), std::string::npos);
}

TEST(Commands, ExitCodes) {
  EXPECT_EQ(exit_code(RunStatus::kCompleted), 0);
  EXPECT_EQ(exit_code(RunStatus::kBlowupDetected), 10);
  EXPECT_EQ(exit_code(RunStatus::kStepUnderflow), 11);
  EXPECT_EQ(exit_code(RunStatus::kPositivityViolation), 12);
}

}  // namespace
}  // namespace nordheim::cli
