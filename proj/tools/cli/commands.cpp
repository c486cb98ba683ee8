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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <thread>

#include "io.hpp"
#include "nordheim/collision.hpp"
#include "nordheim/error.hpp"
#include "nordheim/functionals.hpp"
#include "nordheim/measure.hpp"
#include "plot.hpp"

namespace nordheim::cli {
namespace {

using nlohmann::json;

constexpr double kSevenSixths = 7.0 / 6.0;
constexpr double kSelfSimilarExponent = 1.234;

std::string in_dir(const SimConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.out_dir) / name).string();
}

json state_json(const MomentReport& r) {
  return {{"t", r.t}, {"M", r.mass}, {"E", r.energy}, {"S", r.entropy}, {"f_sup", r.f_sup}};
}

double relative_drift(double now, double start) {
  return start != 0.0 ? std::abs(now - start) / std::abs(start) : std::abs(now - start);
}

json blowup_spec_json(const BlowupDataSpec& s) {
  return {{"M", s.mass},
          {"E", s.energy},
          {"rho", s.rho},
          {"beta", s.beta},
          {"kappa1", s.kappa1},
          {"kappa2", s.kappa2},
          {"grid_kappa1", s.grid_kappa1},
          {"grid_kappa2", s.grid_kappa2},
          {"mu1", s.mu1},
          {"mu2", s.mu2}};
}

json exponent_json(const Distribution& d, const SimConfig& cfg) {
  json j = {{"references", {{"seven_sixths", kSevenSixths}, {"self_similar", kSelfSimilarExponent}}}};
  if (!(cfg.exponent_lo < cfg.exponent_hi)) return j;
  j["window"] = {cfg.exponent_lo, cfg.exponent_hi};
  try {
    const auto fit = fit_exponent(d, cfg.exponent_lo, cfg.exponent_hi);
    j["slope"] = fit.slope;
    j["r2"] = fit.r2;
    j["points"] = fit.points;
  } catch (const InsufficientWindow& e) {
    j["error"] = e.what();
  }
  return j;
}

}  // namespace

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::kCompleted:
      return kExitCompleted;
    case RunStatus::kBlowupDetected:
      return kExitBlowup;
    case RunStatus::kStepUnderflow:
      return kExitStepUnderflow;
    case RunStatus::kPositivityViolation:
      return kExitPositivity;
  }
  return kExitFailure;
}

json concentration_json(const ConcentrationReport& report) {
  json scales = json::array();
  for (const auto& s : report.scales) {
    json ext = json::array();
    for (const auto& e : s.extended) ext.push_back({{"n", e.n}, {"mass", e.mass}, {"in_A", e.in_a}});
    scales.push_back({{"ell", s.ell},
                      {"R", s.radius},
                      {"b", s.base},
                      {"mass", s.mass},
                      {"threshold", s.threshold},
                      {"in_B", s.in_b},
                      {"A_threshold", s.a_threshold},
                      {"extended", ext}});
  }
  return {{"t", report.t_ref}, {"scales", scales}};
}

json partition_json(const PartitionResult& r, const CertificateCheck& check) {
  json picks = json::array();
  for (const auto& p : r.picks) {
    picks.push_back({{"k", p.k}, {"mass", p.mass}, {"cumulative_extended", p.cumulative_extended}});
  }
  json j = {{"case", r.which == PartitionCase::kConcentrated ? "concentrated" : "separated"},
            {"b", r.b},
            {"delta", r.delta},
            {"scale", r.scale},
            {"total_mass", r.total_mass},
            {"eta", r.eta},
            {"picks", picks},
            {"certificate", {{"verified", check.ok}, {"failures", check.failures}}}};
  if (r.which == PartitionCase::kConcentrated) {
    j["k"] = r.k;
    j["extended_mass"] = r.extended_mass;
  } else {
    j["u1_indices"] = r.u1_indices;
    j["mass_u1"] = r.mass_u1;
    j["mass_u2"] = r.mass_u2;
  }
  return j;
}

SimulationReport simulate(const SimConfig& cfg) {
  BlowupDataSpec spec;
  const Distribution initial = initial_distribution(cfg, &spec);
  const RunParams params = run_params(cfg);
  SimulationReport rep;
  rep.outcome = run(initial, params);
  const auto& o = rep.outcome;
  rep.exit_code = exit_code(o.status);

  const auto& first = o.series.front();
  const auto& last = o.series.back();
  json summary = {{"status", to_string(o.status)},
                  {"detail", o.detail},
                  {"t_final", o.t_final},
                  {"steps", o.steps},
                  {"initial", state_json(first)},
                  {"final", state_json(last)},
                  {"drift", {{"mass", relative_drift(last.mass, first.mass)},
                             {"energy", relative_drift(last.energy, first.energy)}}},
                  {"exponent", exponent_json(*o.final_state, cfg)},
                  {"concentration", concentration_json(concentration_report(
                                        *o.final_state, cfg.theta1, cfg.theta2, cfg.ell_max, o.t_final))},
                  {"config", render_config(cfg)}};
  summary["t_detect"] = o.t_detect ? json(*o.t_detect) : json(nullptr);
  if (cfg.initial == InitialKind::kBlowup) summary["blowup_data"] = blowup_spec_json(spec);
  rep.summary = summary;

  write_file(in_dir(cfg, cfg.series_file),
             series_csv(o.series, cfg.mass_radii, params.exponent_window.has_value()));
  write_file(in_dir(cfg, cfg.snapshot_file), snapshot_csv(*o.final_state));
  write_file(in_dir(cfg, cfg.summary_file), summary.dump(2) + "\n");
  if (cfg.plots) {
    write_file(in_dir(cfg, "moments.svg"), plot_moments(o.series));
    if (o.final_state->sup() > 0.0) {
      write_file(in_dir(cfg, "distribution_loglog.svg"), plot_distribution_loglog(*o.final_state));
    }
    write_file(in_dir(cfg, "dyadic_mass.svg"),
               plot_dyadic_mass(concentration_report(*o.final_state, cfg.theta1, cfg.theta2,
                                                     cfg.ell_max, o.t_final)));
  }
  return rep;
}

int cmd_simulate(const SimConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto rep = simulate(cfg);
    const auto& o = rep.outcome;
    out << "status: " << to_string(o.status) << "\n"
        << "t_final: " << format_number(o.t_final, kSeriesDigits) << "\n"
        << "steps: " << o.steps << "\n";
    if (o.t_detect) out << "t_detect: " << format_number(*o.t_detect, kSeriesDigits) << "\n";
    out << "mass drift: " << format_number(rep.summary["drift"]["mass"].get<double>(), 3) << "\n"
        << "energy drift: " << format_number(rep.summary["drift"]["energy"].get<double>(), 3)
        << "\n"
        << "summary: " << in_dir(cfg, cfg.summary_file) << "\n";
    return rep.exit_code;
  } catch (const InfeasibleKappa& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int cmd_check_equilibrium(const SimConfig& cfg, std::ostream& out) {
  const Distribution d = initial_distribution(cfg);
  const double tol = 1e-12;
  json report = {{"tolerance", tol}};
  bool pass = true;
  for (auto op : {CollisionOperator::kConservative, CollisionOperator::kCollocation}) {
    const auto r = collide(d.grid_ptr(), d.values(), op, CollisionTerms::kFull,
                           ParallelOptions{cfg.threads});
    double residual = 0.0;
    for (double v : r.df_dt) residual = std::max(residual, std::abs(v));
    const double scale = r.sup_scale(d.values());
    const bool ok = residual <= tol * scale;
    pass = pass && ok;
    report[op == CollisionOperator::kConservative ? "conservative" : "collocation"] = {
        {"residual", residual}, {"scale", scale}, {"pass", ok}};
  }
  report["result"] = pass ? "PASS" : "FAIL";
  out << report.dump(2) << "\n";
  return pass ? kExitCompleted : kExitFailure;
}

int cmd_partition(const std::string& atoms_path, double b, double delta, double scale,
                  std::ostream& out, std::ostream& err) {
  try {
    const auto m = read_atoms(atoms_path);
    const auto r = partition_measure(m, b, delta, scale);
    const auto check = verify_partition(m, r);
    out << partition_json(r, check).dump(2) << "\n";
    return check.ok ? kExitCompleted : kExitFailure;
  } catch (const MeasureError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}

int cmd_fit_exponent(const std::string& snapshot_path, double lo, double hi, std::ostream& out,
                     std::ostream& err) {
  try {
    const auto d = read_snapshot(snapshot_path);
    const auto fit = fit_exponent(d, lo, hi);
    json j = {{"slope", fit.slope},
              {"r2", fit.r2},
              {"points", fit.points},
              {"window", {lo, hi}},
              {"references", {{"seven_sixths", kSevenSixths}, {"self_similar", kSelfSimilarExponent}}}};
    out << j.dump(2) << "\n";
    return kExitCompleted;
  } catch (const InsufficientWindow& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int cmd_sweep(const SimConfig& cfg, const std::string& param,
              const std::vector<std::string>& values, unsigned jobs, std::ostream& out,
              std::ostream& err) {
  if (values.empty()) {
    err << "error: sweep needs at least one value\n";
    return kExitConfigError;
  }
  // Resolve every configuration up front so a bad value fails before any run.
  std::vector<SimConfig> configs;
  for (std::size_t i = 0; i < values.size(); ++i) {
    SimConfig c = cfg;
    apply_override(c, param, values[i]);
    validate(c);
    c.out_dir = (std::filesystem::path(cfg.out_dir) / (param + "_" + std::to_string(i))).string();
    if (jobs > 1 && c.threads == 0) c.threads = 1;
    configs.push_back(std::move(c));
  }

  struct Row {
    std::string status;
    json summary;
    std::string error;
  };
  std::vector<Row> rows(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        auto rep = simulate(configs[i]);
        rows[i] = {to_string(rep.outcome.status), std::move(rep.summary), ""};
      } catch (const InfeasibleKappa& e) {
        rows[i] = {"infeasible_kappa", json(), e.what()};
      } catch (const std::exception& e) {
        rows[i] = {"error", json(), e.what()};
      }
    }
  };
  {
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }

  std::string csv = "param,value,status,t_final,t_detect,steps,mass_drift,energy_drift,f_sup,exponent\n";
  auto cell = [](const json& j, const char* a, const char* b = nullptr) -> std::string {
    if (j.is_null() || !j.contains(a)) return "";
    const json& v = b ? (j[a].contains(b) ? j[a][b] : json()) : j[a];
    if (v.is_number_float()) return format_number(v.get<double>(), kSeriesDigits);
    if (v.is_number()) return std::to_string(v.get<long long>());
    return "";
  };
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& s = rows[i].summary;
    csv += param + "," + values[i] + "," + rows[i].status + "," + cell(s, "t_final") + "," +
           cell(s, "t_detect") + "," + cell(s, "steps") + "," + cell(s, "drift", "mass") + "," +
           cell(s, "drift", "energy") + "," + cell(s, "final", "f_sup") + "," +
           cell(s, "exponent", "slope") + "\n";
    if (!rows[i].error.empty()) err << param << " = " << values[i] << ": " << rows[i].error << "\n";
  }
  write_file(in_dir(cfg, "sweep.csv"), csv);
  out << csv;
  // Reported, not enforced: detection times in the order the values were given.
  std::vector<double> t_detect;
  for (const auto& r : rows) {
    if (!r.summary.is_null() && r.summary["t_detect"].is_number()) {
      t_detect.push_back(r.summary["t_detect"].get<double>());
    }
  }
  if (t_detect.size() == rows.size() && rows.size() > 1) {
    const bool decreasing =
        std::adjacent_find(t_detect.begin(), t_detect.end(),
                           [](double a, double b) { return b >= a; }) == t_detect.end();
    out << "t_detect trend: " << (decreasing ? "decreasing" : "not monotone decreasing") << "\n";
  } else {
    out << "t_detect trend: n/a (not every run detected blow-up)\n";
  }
  return kExitCompleted;
}

}  // namespace nordheim::cli
