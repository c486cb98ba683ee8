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

#include "io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nordheim::cli {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

bool to_double(const std::string& s, double& x) {
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, x);
  return !s.empty() && ec == std::errc() && ptr == end;
}

// Numeric rows of a CSV with an optional header line.
std::vector<std::vector<double>> numeric_rows(const std::string& text, std::size_t min_cols,
                                              const char* what) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    std::vector<double> row;
    bool numeric = cells.size() >= min_cols;
    for (std::size_t i = 0; numeric && i < cells.size(); ++i) {
      double x;
      numeric = to_double(cells[i], x);
      row.push_back(x);
    }
    if (!numeric) {
      if (rows.empty() && line_no == 1) continue;  // header
      throw std::runtime_error(std::string(what) + ": malformed row at line " +
                               std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, digits);
  return std::string(buf, ptr);
}

std::string series_csv(const std::vector<MomentReport>& series, const std::vector<double>& radii,
                       bool with_exponent) {
  std::string out = "t,M,E,S,f_sup";
  for (double r : radii) out += ",mass_below_" + format_number(r, kSeriesDigits);
  if (with_exponent) out += ",exponent";
  out += "\n";
  for (const auto& row : series) {
    const int d = kSeriesDigits;
    out += format_number(row.t, d) + "," + format_number(row.mass, d) + "," +
           format_number(row.energy, d) + "," + format_number(row.entropy, d) + "," +
           format_number(row.f_sup, d);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      out += "," + (i < row.mass_below.size() ? format_number(row.mass_below[i], d) : "");
    }
    if (with_exponent) out += "," + (row.exponent ? format_number(*row.exponent, d) : "");
    out += "\n";
  }
  return out;
}

std::string snapshot_csv(const Distribution& d) {
  std::string out = "eps,f,g\n";
  const auto& grid = d.grid();
  for (std::size_t i = 0; i < d.size(); ++i) {
    out += format_number(grid.node(i), kSnapshotDigits) + "," +
           format_number(d[i], kSnapshotDigits) + "," +
           format_number(d.density(i), kSnapshotDigits) + "\n";
  }
  return out;
}

Distribution parse_snapshot(const std::string& text) {
  const auto rows = numeric_rows(text, 2, "snapshot");
  if (rows.size() < 2) throw std::runtime_error("snapshot: need at least 2 rows");
  const double eps_max = rows.back()[0];
  auto grid = make_grid(eps_max, rows.size());
  std::vector<double> f(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - grid->node(i)) > 1e-12 * eps_max) {
      throw std::runtime_error("snapshot: row " + std::to_string(i) +
                               " is not on a uniform grid from 0");
    }
    f[i] = rows[i][1];
  }
  return Distribution(grid, std::move(f));
}

Distribution read_snapshot(const std::string& path) { return parse_snapshot(read_file(path)); }

DiscreteMeasure parse_atoms(const std::string& text) {
  std::vector<Atom> atoms;
  for (const auto& row : numeric_rows(text, 2, "atoms")) atoms.push_back({row[0], row[1]});
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure read_atoms(const std::string& path) { return parse_atoms(read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace nordheim::cli
