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

#include "nordheim/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nordheim/error.hpp"
#include "nordheim/functionals.hpp"

namespace nordheim {
namespace {

constexpr double kClipTolerance = 1e-14;
constexpr double kSignificantFraction = 1e-3;

void check_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("time step must be positive and finite");
  }
}

double sup_of(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, v);
  return m;
}

Distribution clip_to_distribution(const GridPtr& grid, std::vector<double> f) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i])) {
      throw PositivityViolation("non-finite value at node " + std::to_string(i), i, f[i]);
    }
  }
  const double tol = kClipTolerance * sup_of(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] >= 0.0) continue;
    if (f[i] < -tol) {
      throw PositivityViolation("f[" + std::to_string(i) + "] = " + std::to_string(f[i]) +
                                    " after the step",
                                i, f[i]);
    }
    f[i] = 0.0;
  }
  return Distribution(grid, std::move(f));
}

RateVector evaluate(const GridPtr& grid, std::span<const double> f, const StepOptions& o) {
  return collide(grid, f, o.op, CollisionTerms::kFull, o.parallel);
}

SimState rk4_with_first_stage(const SimState& s, double dt, const StepOptions& o,
                              const RateVector& k1) {
  const auto& grid = s.dist.grid_ptr();
  const auto f = s.dist.values();
  const std::size_t n = f.size();
  std::vector<double> stage(n);
  auto advance = [&](const std::vector<double>& k, double c) {
    for (std::size_t i = 0; i < n; ++i) stage[i] = f[i] + c * k[i];
  };
  advance(k1.df_dt, 0.5 * dt);
  const RateVector k2 = evaluate(grid, stage, o);
  advance(k2.df_dt, 0.5 * dt);
  const RateVector k3 = evaluate(grid, stage, o);
  advance(k3.df_dt, dt);
  const RateVector k4 = evaluate(grid, stage, o);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = f[i] + dt / 6.0 *
                        (k1.df_dt[i] + 2.0 * k2.df_dt[i] + 2.0 * k3.df_dt[i] + k4.df_dt[i]);
  }
  return {s.t + dt, clip_to_distribution(grid, std::move(out)), s.step_count + 1};
}

SimState exponential_with_rates(const SimState& s, double dt, const RateVector& r) {
  const auto f = s.dist.values();
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::max(r.loss_coeff[i], 0.0);
    const double gain = std::max(r.gain[i], 0.0);
    const double x = a * dt;
    const double decay = std::exp(-x);
    if (x < 1e-8) {
      out[i] = f[i] * decay + gain * dt;
    } else {
      out[i] = f[i] * decay - gain / a * std::expm1(-x);
    }
  }
  return {s.t + dt, Distribution(s.dist.grid_ptr(), std::move(out)), s.step_count + 1};
}

}  // namespace

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::kCompleted:
      return "completed";
    case RunStatus::kBlowupDetected:
      return "blowup_detected";
    case RunStatus::kStepUnderflow:
      return "step_underflow";
    case RunStatus::kPositivityViolation:
      return "positivity_violation";
  }
  return "unknown";
}

SimState step_rk4(const SimState& s, double dt, const StepOptions& options) {
  check_dt(dt);
  const RateVector k1 = evaluate(s.dist.grid_ptr(), s.dist.values(), options);
  return rk4_with_first_stage(s, dt, options, k1);
}

SimState step_exponential(const SimState& s, double dt, const StepOptions& options) {
  check_dt(dt);
  const RateVector r = evaluate(s.dist.grid_ptr(), s.dist.values(), options);
  return exponential_with_rates(s, dt, r);
}

double stable_step(const RateVector& rates, std::span<const double> f, double cfl) {
  const double floor = kSignificantFraction * sup_of(f);
  double rate = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    rate = std::max(rate, rates.loss_coeff[i]);
    if (f[i] > 0.0 && f[i] >= floor) rate = std::max(rate, std::abs(rates.df_dt[i]) / f[i]);
  }
  return rate > 0.0 ? cfl / rate : std::numeric_limits<double>::infinity();
}

MomentReport make_report(const SimState& s, const RunParams& params, double dt) {
  MomentReport r;
  r.t = s.t;
  r.step = s.step_count;
  r.dt = dt;
  r.mass = moment(s.dist, MomentOrder::kMass, params.convention);
  r.energy = moment(s.dist, MomentOrder::kEnergy, params.convention);
  r.entropy = entropy(s.dist);
  r.f_sup = s.dist.sup();
  const double factor = params.convention == MomentConvention::kPhysical ? kFourPiSqrt2 : 1.0;
  for (double radius : params.mass_radii) r.mass_below.push_back(factor * mass_below(s.dist, radius));
  if (params.exponent_window) {
    try {
      r.exponent = fit_exponent(s.dist, params.exponent_window->lo, params.exponent_window->hi).slope;
    } catch (const InsufficientWindow&) {
    }
  }
  return r;
}

RunOutcome run(const Distribution& initial, const RunParams& p) {
  if (!(p.dt0 > 0.0) || !(p.dt_min > 0.0) || !(p.cfl > 0.0) || p.f_cap < 0.0 ||
      !(p.t_end >= 0.0) || p.report_stride == 0) {
    throw std::invalid_argument("run: invalid step-control parameters");
  }
  RunOutcome out;
  SimState state{0.0, initial, 0};
  const double cap = p.f_cap > 0.0 ? p.f_cap
                     : initial.sup() > 0.0 ? 1e6 * initial.sup()
                                           : std::numeric_limits<double>::infinity();
  out.series.push_back(make_report(state, p, 0.0));
  bool reported = true;
  double last_dt = 0.0;
  double prev_sup = initial.sup();
  bool sup_growing = false;

  auto finish = [&](RunStatus status, std::string detail) {
    out.status = status;
    out.detail = std::move(detail);
    out.t_final = state.t;
    out.steps = state.step_count;
    if (!reported) out.series.push_back(make_report(state, p, last_dt));
    if (status == RunStatus::kBlowupDetected) out.t_detect = state.t;
    out.final_state = state.dist;
    return out;
  };

  while (state.t < p.t_end) {
    if (p.max_steps > 0 && state.step_count >= p.max_steps) {
      return finish(RunStatus::kCompleted, "step limit reached");
    }
    const RateVector rates = evaluate(state.dist.grid_ptr(), state.dist.values(), p.step);
    const double limit = stable_step(rates, state.dist.values(), p.cfl);
    if (limit < p.dt_min) {
      return sup_growing ? finish(RunStatus::kBlowupDetected, "step size collapsed while sup f grew")
                         : finish(RunStatus::kStepUnderflow, "step size fell below dt_min");
    }
    double dt = std::min({p.dt0, limit, p.t_end - state.t});
    const bool last = dt >= p.t_end - state.t;
    std::optional<SimState> next;
    for (;;) {
      try {
        next = p.scheme == Scheme::kRk4 ? rk4_with_first_stage(state, dt, p.step, rates)
                                        : exponential_with_rates(state, dt, rates);
        break;
      } catch (const PositivityViolation& e) {
        dt *= 0.25;
        if (dt < p.dt_min) return finish(RunStatus::kPositivityViolation, e.what());
      }
    }
    if (last && dt >= p.t_end - state.t) next->t = p.t_end;
    state = std::move(*next);
    last_dt = dt;
    const double sup = state.dist.sup();
    sup_growing = sup > prev_sup;
    prev_sup = sup;
    reported = state.step_count % p.report_stride == 0;
    if (reported) out.series.push_back(make_report(state, p, dt));
    if (sup >= cap) return finish(RunStatus::kBlowupDetected, "sup f reached the cap");
  }
  return finish(RunStatus::kCompleted, "");
}

ExponentFit fit_exponent(const Distribution& d, double eps_lo, double eps_hi) {
  const auto& grid = d.grid();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double e = grid.node(i);
    if (e <= 0.0 || e < eps_lo || e > eps_hi || !(d[i] > 0.0)) continue;
    const double x = std::log(e);
    const double y = std::log(d[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++count;
  }
  if (count < 4) {
    throw InsufficientWindow("exponent fit: " + std::to_string(count) +
                             " usable nodes in the window, need 4");
  }
  const double nn = static_cast<double>(count);
  const double cxx = sxx - sx * sx / nn;
  const double cxy = sxy - sx * sy / nn;
  const double cyy = syy - sy * sy / nn;
  ExponentFit fit;
  fit.points = count;
  const double slope = cxy / cxx;
  fit.slope = -slope;
  fit.r2 = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
  return fit;
}

}  // namespace nordheim
