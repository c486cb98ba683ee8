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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nordheim/collision.hpp"
#include "nordheim/grid.hpp"

namespace nordheim {

struct SimState {
  double t = 0.0;
  Distribution dist;
  std::size_t step_count = 0;
};

enum class Scheme { kRk4, kExponential };

enum class RunStatus { kCompleted, kBlowupDetected, kStepUnderflow, kPositivityViolation };

const char* to_string(RunStatus s);

struct StepOptions {
  CollisionOperator op = CollisionOperator::kConservative;
  ParallelOptions parallel;
};

// Negatives above -1e-14 sup f after the update are set to zero; anything
// lower throws PositivityViolation.
SimState step_rk4(const SimState& s, double dt, const StepOptions& options = {});

// f <- f e^{-a dt} + (gain/a)(1 - e^{-a dt}) per node, with gain and a from
// the chosen operator; gain dt is used where a dt < 1e-8.
SimState step_exponential(const SimState& s, double dt, const StepOptions& options = {});

struct MomentReport {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double f_sup = 0.0;
  std::vector<double> mass_below;  // one per RunParams::mass_radii
  std::optional<double> exponent;
  std::size_t step = 0;
  double dt = 0.0;  // step size that led to this state (0 for the first row)
};

struct ExponentWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct RunParams {
  Scheme scheme = Scheme::kRk4;
  StepOptions step;
  double dt0 = 1e-3;
  double dt_min = 1e-12;
  double cfl = 0.5;
  // 0 selects 1e6 times the initial sup f.
  double f_cap = 0.0;
  double t_end = 1.0;
  std::size_t report_stride = 1;
  std::vector<double> mass_radii;
  std::optional<ExponentWindow> exponent_window;
  MomentConvention convention = MomentConvention::kPhysical;
  // 0 means unlimited.
  std::size_t max_steps = 0;
};

struct RunOutcome {
  RunStatus status = RunStatus::kCompleted;
  double t_final = 0.0;
  std::vector<MomentReport> series;
  std::optional<double> t_detect;
  std::optional<Distribution> final_state;
  std::size_t steps = 0;
  std::string detail;
};

MomentReport make_report(const SimState& s, const RunParams& params, double dt);

// Step size limit for the current state: cfl over the largest of the loss
// rates a_i and the relative rates |df_i|/f_i on nodes with f_i >= 1e-3 sup f.
// The second term tracks self-amplifying growth at the lowest nodes, which
// the loss rate alone does not see.
double stable_step(const RateVector& rates, std::span<const double> f, double cfl);

RunOutcome run(const Distribution& initial, const RunParams& params);

struct ExponentFit {
  double slope = 0.0;  // p in f ~ ε^{-p}
  double r2 = 0.0;
  std::size_t points = 0;
};

// Least squares of log f against log ε over nodes with lo <= ε <= hi, ε > 0
// and f > 0. Throws InsufficientWindow with fewer than 4 such nodes.
ExponentFit fit_exponent(const Distribution& d, double eps_lo, double eps_hi);

}  // namespace nordheim
