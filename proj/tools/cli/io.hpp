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

#include <string>
#include <vector>

#include "nordheim/grid.hpp"
#include "nordheim/integrator.hpp"
#include "nordheim/measure.hpp"

namespace nordheim::cli {

// Shortest general-format rendering with at most `digits` significant digits,
// independent of the global locale.
std::string format_number(double x, int digits);

inline constexpr int kSeriesDigits = 10;
inline constexpr int kSnapshotDigits = 17;

// Header t,M,E,S,f_sup, then mass_below_<R> per radius, then exponent when
// with_exponent is set.
std::string series_csv(const std::vector<MomentReport>& series, const std::vector<double>& radii,
                       bool with_exponent);
// eps,f,g per node.
std::string snapshot_csv(const Distribution& d);

// Rebuilds the grid from the row count and the last eps; rows must sit on
// i·h. Throws std::runtime_error on malformed input.
Distribution parse_snapshot(const std::string& text);
Distribution read_snapshot(const std::string& path);

// location,mass rows; a non-numeric first line is taken as a header.
DiscreteMeasure parse_atoms(const std::string& text);
DiscreteMeasure read_atoms(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace nordheim::cli
