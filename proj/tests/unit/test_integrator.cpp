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

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nordheim/error.hpp"
#include "nordheim/functionals.hpp"
#include "nordheim/initdata.hpp"
#include "nordheim/integrator.hpp"

namespace nordheim {
namespace {

double sup_diff(const Distribution& a, const Distribution& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Distribution random_distribution(std::uint64_t seed, std::size_t n, double amp) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, amp);
  std::vector<double> f(n);
  for (auto& v : f) v = u(rng);
  return Distribution(make_grid(5.0, n), f);
}

TEST(Step, BoseEinsteinIsAFixedPoint) {
  const auto d = make_bose_einstein(1.0, 1.0, make_grid(5.0, 48));
  const SimState s{0.0, d, 0};
  for (const auto& next : {step_rk4(s, 1e-3), step_exponential(s, 1e-3)}) {
    EXPECT_LE(sup_diff(next.dist, d), 1e-10 * d.sup());
    EXPECT_DOUBLE_EQ(next.t, 1e-3);
    EXPECT_EQ(next.step_count, 1u);
  }
}

// Solutions at a fixed time with N, 2N and 4N steps: successive differences
// shrink by 2^4 for a fourth-order method.
TEST(Step, Rk4RichardsonRatio) {
  const auto d = random_distribution(31, 24, 0.5);
  auto solve = [&](int steps) {
    SimState s{0.0, d, 0};
    for (int k = 0; k < steps; ++k) s = step_rk4(s, 0.02 / steps);
    return s.dist;
  };
  const auto y1 = solve(40), y2 = solve(80), y4 = solve(160);
  const double ratio = sup_diff(y1, y2) / sup_diff(y2, y4);
  EXPECT_NEAR(ratio, 16.0, 0.2 * 16.0);
}

TEST(Step, ExponentialConvergesToRk4AtFirstOrder) {
  const auto d = random_distribution(32, 24, 0.5);
  const double t = 0.02;
  std::vector<double> gaps;
  for (int steps : {40, 80, 160}) {
    SimState a{0.0, d, 0}, b{0.0, d, 0};
    for (int k = 0; k < steps; ++k) {
      a = step_rk4(a, t / steps);
      b = step_exponential(b, t / steps);
    }
    gaps.push_back(sup_diff(a.dist, b.dist));
  }
  EXPECT_NEAR(gaps[0] / gaps[1], 2.0, 0.2 * 2.0);
  EXPECT_NEAR(gaps[1] / gaps[2], 2.0, 0.2 * 2.0);
}

TEST(Step, ExponentialStaysPositiveForLargeSteps) {
  const auto d = random_distribution(33, 24, 2.0);
  const auto next = step_exponential({0.0, d, 0}, 10.0);
  for (double v : next.dist.values()) EXPECT_GE(v, 0.0);
}

TEST(Step, Rk4FlagsLargeNegatives) {
  const auto d = random_distribution(34, 24, 2.0);
  EXPECT_THROW(step_rk4({0.0, d, 0}, 10.0), PositivityViolation);
  EXPECT_THROW(step_rk4({0.0, d, 0}, -1.0), std::invalid_argument);
}

TEST(StableStep, UsesLargestRate) {
  const auto g = make_grid(1.0, 3);
  RateVector r;
  r.grid = g;
  r.loss_coeff = {1.0, 4.0, 2.0};
  r.df_dt = {0.0, 0.0, -10.0};
  const std::vector<double> f = {1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(stable_step(r, f, 0.5), 0.05);
  // Nodes below 1e-3 sup f do not set the relative rate.
  const std::vector<double> tiny = {1.0, 1.0, 1e-6};
  EXPECT_DOUBLE_EQ(stable_step(r, tiny, 0.5), 0.125);
}

TEST(Run, BoseEinsteinCompletesWithoutDrift) {
  const auto d = make_bose_einstein(1.0, 1.0, make_grid(5.0, 48));
  RunParams p;
  p.t_end = 1.0;
  const auto out = run(d, p);
  EXPECT_EQ(out.status, RunStatus::kCompleted);
  EXPECT_DOUBLE_EQ(out.t_final, 1.0);
  const auto& a = out.series.front();
  const auto& b = out.series.back();
  EXPECT_NEAR(b.mass, a.mass, 1e-10 * a.mass);
  EXPECT_NEAR(b.energy, a.energy, 1e-10 * a.energy);
  EXPECT_NEAR(b.entropy, a.entropy, 1e-8 * std::abs(a.entropy));
  EXPECT_FALSE(out.t_detect.has_value());
}

TEST(Run, ZeroHorizonGivesOneRow) {
  const auto d = make_bose_einstein(1.0, 1.0, make_grid(5.0, 16));
  RunParams p;
  p.t_end = 0.0;
  const auto out = run(d, p);
  EXPECT_EQ(out.status, RunStatus::kCompleted);
  EXPECT_EQ(out.series.size(), 1u);
  EXPECT_EQ(out.steps, 0u);
}

TEST(Run, ConcentratedDataBlowsUp) {
  BlowupDataSpec s;
  s.mass = 10.0;
  s.energy = 10.0;
  s.rho = 0.05;
  s.convention = MomentConvention::kBare;
  const auto d = make_blowup_data(s, make_grid(5.0, 64));
  RunParams p;
  p.t_end = 0.1;
  p.convention = MomentConvention::kBare;
  p.report_stride = 5;
  const auto out = run(d, p);
  ASSERT_EQ(out.status, RunStatus::kBlowupDetected);
  ASSERT_TRUE(out.t_detect.has_value());
  EXPECT_LT(*out.t_detect, 0.1);
  EXPECT_DOUBLE_EQ(*out.t_detect, out.t_final);
  EXPECT_GE(out.series.back().f_sup, 1e6 * d.sup());
  for (const auto& row : out.series) {
    EXPECT_NEAR(row.mass, 10.0, 1e-8 * 10.0);
    EXPECT_NEAR(row.energy, 10.0, 1e-8 * 10.0);
  }
  // The last state is always reported, whatever the stride.
  EXPECT_DOUBLE_EQ(out.series.back().t, out.t_final);
}

TEST(Run, StepLimitStopsEarly) {
  const auto d = random_distribution(35, 16, 0.5);
  RunParams p;
  p.max_steps = 3;
  const auto out = run(d, p);
  EXPECT_EQ(out.steps, 3u);
  EXPECT_EQ(out.status, RunStatus::kCompleted);
  EXPECT_EQ(out.detail, "step limit reached");
}

TEST(Run, ReportsMassBelowAndExponent) {
  const auto d = random_distribution(36, 32, 0.5);
  RunParams p;
  p.t_end = 0.01;
  p.mass_radii = {0.5, 1.0};
  p.exponent_window = ExponentWindow{0.2, 2.0};
  const auto out = run(d, p);
  for (const auto& row : out.series) {
    ASSERT_EQ(row.mass_below.size(), 2u);
    EXPECT_LE(row.mass_below[0], row.mass_below[1]);
    EXPECT_TRUE(row.exponent.has_value());
  }
}

TEST(Run, RejectsBadParameters) {
  const auto d = random_distribution(37, 8, 0.5);
  RunParams p;
  p.dt0 = 0.0;
  EXPECT_THROW(run(d, p), std::invalid_argument);
}

TEST(FitExponent, RecoversPowerLaw) {
  const auto g = make_grid(2.0, 201);
  std::vector<double> f(g->size(), 0.0);
  for (std::size_t i = 1; i < g->size(); ++i) f[i] = 3.0 * std::pow(g->node(i), -7.0 / 6.0);
  const Distribution d(g, f);
  const auto fit = fit_exponent(d, 0.05, 1.0);
  EXPECT_NEAR(fit.slope, 7.0 / 6.0, 1e-12);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_EQ(fit.points, g->floor_index(1.0) - g->floor_index(0.05) + 1);
  EXPECT_THROW(fit_exponent(d, 0.05, 0.06), InsufficientWindow);
}

TEST(Status, Names) {
  EXPECT_STREQ(to_string(RunStatus::kCompleted), "completed");
  EXPECT_STREQ(to_string(RunStatus::kBlowupDetected), "blowup_detected");
  EXPECT_STREQ(to_string(RunStatus::kStepUnderflow), "step_underflow");
  EXPECT_STREQ(to_string(RunStatus::kPositivityViolation), "positivity_violation");
}

}  // namespace
}  // namespace nordheim
