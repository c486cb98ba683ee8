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

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "io.hpp"
#include "nordheim/error.hpp"

namespace nordheim::cli {
namespace {

using Kind = ConfigError::Kind;

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void invalid(const std::string& field, const std::string& what) {
  throw ConfigError(Kind::kValidation, field + ": " + what, 0, field);
}

double parse_double(std::string_view v, const std::string& field) {
  double x = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (v.empty() || ec != std::errc() || ptr != end) {
    if (v == "inf" || v == "infinity") return INFINITY;
    invalid(field, "expected a number, got '" + std::string(v) + "'");
  }
  return x;
}

std::size_t parse_size(std::string_view v, const std::string& field) {
  std::size_t x = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (v.empty() || ec != std::errc() || ptr != end) {
    invalid(field, "expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return x;
}

bool parse_bool(std::string_view v, const std::string& field) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  invalid(field, "expected true or false, got '" + std::string(v) + "'");
}

std::string render_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<double> parse_list(std::string_view v, const std::string& field) {
  std::vector<double> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (!item.empty()) out.push_back(parse_double(item, field));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string render_list(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += render_double(xs[i]);
  }
  return s;
}

template <typename E>
struct EnumName {
  E value;
  const char* name;
};

template <typename E, std::size_t N>
E parse_enum(std::string_view v, const EnumName<E> (&names)[N], const std::string& field) {
  for (const auto& n : names) {
    if (v == n.name) return n.value;
  }
  std::string options;
  for (const auto& n : names) options += std::string(options.empty() ? "" : ", ") + n.name;
  invalid(field, "expected one of " + options + ", got '" + std::string(v) + "'");
}

template <typename E, std::size_t N>
std::string render_enum(E v, const EnumName<E> (&names)[N]) {
  for (const auto& n : names) {
    if (v == n.value) return n.name;
  }
  return "?";
}

constexpr EnumName<Scheme> kSchemes[] = {{Scheme::kRk4, "rk4"},
                                         {Scheme::kExponential, "exponential"}};
constexpr EnumName<CollisionOperator> kOperators[] = {
    {CollisionOperator::kConservative, "conservative"},
    {CollisionOperator::kCollocation, "collocation"}};
constexpr EnumName<MomentConvention> kConventions[] = {
    {MomentConvention::kPhysical, "physical"}, {MomentConvention::kBare, "bare"}};
constexpr EnumName<InitialKind> kInitialKinds[] = {{InitialKind::kBlowup, "blowup"},
                                                   {InitialKind::kBoseEinstein, "bose_einstein"},
                                                   {InitialKind::kFile, "file"}};

struct KeySpec {
  const char* section;
  const char* key;
  std::function<void(SimConfig&, std::string_view, const std::string&)> set;
  std::function<std::string(const SimConfig&)> get;
};

#define NUM_KEY(sec, name, member)                                                      \
  KeySpec {                                                                             \
    sec, name,                                                                          \
        [](SimConfig& c, std::string_view v, const std::string& f) {                    \
          c.member = parse_double(v, f);                                                \
        },                                                                              \
        [](const SimConfig& c) { return render_double(c.member); }                      \
  }
#define SIZE_KEY(sec, name, member)                                                     \
  KeySpec {                                                                             \
    sec, name,                                                                          \
        [](SimConfig& c, std::string_view v, const std::string& f) {                    \
          c.member = parse_size(v, f);                                                  \
        },                                                                              \
        [](const SimConfig& c) { return std::to_string(c.member); }                     \
  }
#define ENUM_KEY(sec, name, member, table)                                              \
  KeySpec {                                                                             \
    sec, name,                                                                          \
        [](SimConfig& c, std::string_view v, const std::string& f) {                    \
          c.member = parse_enum(v, table, f);                                           \
        },                                                                              \
        [](const SimConfig& c) { return render_enum(c.member, table); }                 \
  }
#define STR_KEY(sec, name, member)                                                      \
  KeySpec {                                                                             \
    sec, name,                                                                          \
        [](SimConfig& c, std::string_view v, const std::string&) { c.member = v; },     \
        [](const SimConfig& c) { return c.member; }                                     \
  }

const std::vector<KeySpec>& keys() {
  static const std::vector<KeySpec> table = {
      SIZE_KEY("grid", "n", n),
      NUM_KEY("grid", "eps_max", eps_max),
      ENUM_KEY("run", "scheme", scheme, kSchemes),
      ENUM_KEY("run", "operator", op, kOperators),
      NUM_KEY("run", "dt0", dt0),
      NUM_KEY("run", "dt_min", dt_min),
      NUM_KEY("run", "cfl", cfl),
      NUM_KEY("run", "f_cap", f_cap),
      NUM_KEY("run", "t_end", t_end),
      SIZE_KEY("run", "report_stride", report_stride),
      ENUM_KEY("run", "convention", convention, kConventions),
      KeySpec{"run", "threads",
              [](SimConfig& c, std::string_view v, const std::string& f) {
                c.threads = static_cast<unsigned>(parse_size(v, f));
              },
              [](const SimConfig& c) { return std::to_string(c.threads); }},
      ENUM_KEY("initial", "kind", initial, kInitialKinds),
      NUM_KEY("blowup", "mass", mass),
      NUM_KEY("blowup", "energy", energy),
      NUM_KEY("blowup", "rho", rho),
      NUM_KEY("blowup", "beta", beta),
      NUM_KEY("bose_einstein", "beta", be_beta),
      NUM_KEY("bose_einstein", "alpha", be_alpha),
      STR_KEY("file", "path", file_path),
      NUM_KEY("diagnostics", "theta1", theta1),
      NUM_KEY("diagnostics", "theta2", theta2),
      SIZE_KEY("diagnostics", "ell_max", ell_max),
      NUM_KEY("diagnostics", "exponent_lo", exponent_lo),
      NUM_KEY("diagnostics", "exponent_hi", exponent_hi),
      KeySpec{"diagnostics", "mass_radii",
              [](SimConfig& c, std::string_view v, const std::string& f) {
                c.mass_radii = parse_list(v, f);
              },
              [](const SimConfig& c) { return render_list(c.mass_radii); }},
      STR_KEY("output", "dir", out_dir),
      STR_KEY("output", "series", series_file),
      STR_KEY("output", "snapshot", snapshot_file),
      STR_KEY("output", "summary", summary_file),
      KeySpec{"output", "plots",
              [](SimConfig& c, std::string_view v, const std::string& f) {
                c.plots = parse_bool(v, f);
              },
              [](const SimConfig& c) { return std::string(c.plots ? "true" : "false"); }},
  };
  return table;
}

#undef NUM_KEY
#undef SIZE_KEY
#undef ENUM_KEY
#undef STR_KEY

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

const KeySpec* find_key(std::string_view section, std::string_view key) {
  for (const auto& k : keys()) {
    if (section == k.section && key == k.key) return &k;
  }
  return nullptr;
}

bool known_section(std::string_view s) {
  return std::any_of(keys().begin(), keys().end(),
                     [&](const KeySpec& k) { return s == k.section; });
}

std::string suggestion_suffix(std::string_view key) {
  const auto s = suggest_key(key);
  return s.empty() ? "" : " (did you mean '" + s + "'?)";
}

}  // namespace

std::string suggest_key(std::string_view key) {
  std::string best;
  std::size_t best_d = 4;
  for (const auto& k : keys()) {
    for (const std::string& candidate : {std::string(k.key), std::string(k.section) + "." + k.key}) {
      const auto d = edit_distance(key, candidate);
      if (d < best_d) {
        best_d = d;
        best = k.key;
      }
    }
  }
  return best;
}

void validate(const SimConfig& c) {
  if (c.n < 2) invalid("grid.n", "must be at least 2");
  if (!(c.eps_max > 0.0) || !std::isfinite(c.eps_max)) invalid("grid.eps_max", "must be positive");
  if (!(c.dt0 > 0.0)) invalid("run.dt0", "must be positive");
  if (!(c.dt_min > 0.0)) invalid("run.dt_min", "must be positive");
  if (c.dt_min > c.dt0) invalid("run.dt_min", "must not exceed dt0");
  if (!(c.cfl > 0.0)) invalid("run.cfl", "must be positive");
  if (!(c.f_cap >= 0.0)) invalid("run.f_cap", "must be non-negative (0 selects the default)");
  if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end)) invalid("run.t_end", "must be non-negative");
  if (c.report_stride == 0) invalid("run.report_stride", "must be positive");
  switch (c.initial) {
    case InitialKind::kBlowup:
      if (!(c.mass > 0.0)) invalid("blowup.mass", "must be positive");
      if (!(c.energy > 0.0)) invalid("blowup.energy", "must be positive");
      if (!(c.rho > 0.0 && c.rho < 1.0)) invalid("blowup.rho", "must lie in (0, 1)");
      if (!(c.beta > 0.0 && c.beta < 1.0)) invalid("blowup.beta", "must lie in (0, 1)");
      break;
    case InitialKind::kBoseEinstein:
      if (!(c.be_beta > 0.0)) invalid("bose_einstein.beta", "must be positive");
      if (!(c.be_alpha > 0.0)) invalid("bose_einstein.alpha", "must be positive");
      break;
    case InitialKind::kFile:
      if (c.file_path.empty()) invalid("file.path", "required when initial.kind = file");
      break;
  }
  if (!(c.theta1 >= 0.0)) invalid("diagnostics.theta1", "must be non-negative");
  if (!(c.theta2 > 0.0)) invalid("diagnostics.theta2", "must be positive");
  if (c.exponent_lo < 0.0) invalid("diagnostics.exponent_lo", "must be non-negative");
  for (double r : c.mass_radii) {
    if (!(r > 0.0)) invalid("diagnostics.mass_radii", "radii must be positive");
  }
  if (c.out_dir.empty()) invalid("output.dir", "must not be empty");
}

SimConfig parse_config(std::string_view text) {
  SimConfig cfg;
  std::string section;
  std::vector<std::string> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(Kind::kParse, "line " + std::to_string(line_no) + ": unterminated section header", line_no);
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_section(section)) {
        throw ConfigError(Kind::kParse,
                          "line " + std::to_string(line_no) + ": unknown section [" + section + "]",
                          line_no);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(Kind::kParse,
                        "line " + std::to_string(line_no) + ": expected 'key = value'", line_no);
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError(Kind::kParse,
                        "line " + std::to_string(line_no) + ": key '" + std::string(key) +
                            "' outside any section",
                        line_no);
    }
    const KeySpec* spec = find_key(section, key);
    if (!spec) {
      throw ConfigError(Kind::kParse,
                        "line " + std::to_string(line_no) + ": unknown key '" + std::string(key) +
                            "' in [" + section + "]" + suggestion_suffix(key),
                        line_no, section + "." + std::string(key));
    }
    const std::string field = section + "." + std::string(key);
    if (std::find(seen.begin(), seen.end(), field) != seen.end()) {
      throw ConfigError(Kind::kParse,
                        "line " + std::to_string(line_no) + ": duplicate key '" + field + "'",
                        line_no, field);
    }
    seen.push_back(field);
    try {
      spec->set(cfg, value, field);
    } catch (const ConfigError& e) {
      throw ConfigError(e.kind(), "line " + std::to_string(line_no) + ": " + e.what(), line_no,
                        field);
    }
  }
  validate(cfg);
  return cfg;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(Kind::kParse, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string render_config(const SimConfig& cfg) {
  std::string out;
  std::string section;
  for (const auto& k : keys()) {
    if (section != k.section) {
      if (!section.empty()) out += "\n";
      section = k.section;
      out += "[" + section + "]\n";
    }
    out += std::string(k.key) + " = " + k.get(cfg) + "\n";
  }
  return out;
}

void apply_override(SimConfig& cfg, std::string_view key, std::string_view value) {
  const KeySpec* spec = nullptr;
  if (const auto dot = key.find('.'); dot != std::string_view::npos) {
    spec = find_key(key.substr(0, dot), key.substr(dot + 1));
  } else {
    for (const auto& k : keys()) {
      if (key != k.key) continue;
      if (spec) {
        throw ConfigError(Kind::kParse, "key '" + std::string(key) +
                                            "' is ambiguous; qualify it as section.key");
      }
      spec = &k;
    }
  }
  if (!spec) {
    throw ConfigError(Kind::kParse, "unknown key '" + std::string(key) + "'" +
                                        suggestion_suffix(key));
  }
  spec->set(cfg, trim(value), std::string(spec->section) + "." + spec->key);
}

RunParams run_params(const SimConfig& c) {
  RunParams p;
  p.scheme = c.scheme;
  p.step.op = c.op;
  p.step.parallel.threads = c.threads;
  p.dt0 = c.dt0;
  p.dt_min = c.dt_min;
  p.cfl = c.cfl;
  p.f_cap = c.f_cap;
  p.t_end = c.t_end;
  p.report_stride = c.report_stride;
  p.mass_radii = c.mass_radii;
  if (c.exponent_lo < c.exponent_hi) p.exponent_window = ExponentWindow{c.exponent_lo, c.exponent_hi};
  p.convention = c.convention;
  return p;
}

Distribution initial_distribution(const SimConfig& c, BlowupDataSpec* spec_out) {
  switch (c.initial) {
    case InitialKind::kBlowup: {
      BlowupDataSpec spec;
      spec.mass = c.mass;
      spec.energy = c.energy;
      spec.rho = c.rho;
      spec.beta = c.beta;
      spec.convention = c.convention;
      return make_blowup_data(spec, make_grid(c.eps_max, c.n), spec_out);
    }
    case InitialKind::kBoseEinstein:
      return make_bose_einstein(c.be_beta, c.be_alpha, make_grid(c.eps_max, c.n));
    case InitialKind::kFile:
      return read_snapshot(c.file_path);
  }
  throw std::logic_error("unhandled initial data kind");
}

}  // namespace nordheim::cli
