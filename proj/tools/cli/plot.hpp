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

enum class PlotKind { kMoments, kDistributionLogLog, kDyadicMass };

// Self-contained SVG documents. Each throws std::invalid_argument on empty
// data.

// M, E, S relative to their first value, and sup f on a log axis, against t.
std::string plot_moments(const std::vector<MomentReport>& series);

// log f against log ε over nodes with ε > 0 and f > 0, with a slope -7/6
// guide line through the lowest plotted node.
std::string plot_distribution_loglog(const Distribution& d);

// ∫_[0, 2^-ℓ] g and the threshold 2^{-ℓ θ1} for every ℓ of the report.
std::string plot_dyadic_mass(const ConcentrationReport& report);

}  // namespace nordheim::cli
