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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nordheim/collision.hpp"
#include "nordheim/initdata.hpp"
#include "nordheim/kernel.hpp"

namespace nordheim {
namespace {

constexpr double kPi = std::numbers::pi;
const double kC3 = 32.0 * kPi * kPi * kPi;
const double kC2 = 16.0 * kPi * kPi * kPi;

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, double amp) {
  std::uniform_real_distribution<double> u(0.0, amp);
  std::vector<double> f(n);
  for (auto& v : f) v = u(rng);
  return f;
}

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Weak form summed over every ordered triple (i1, i2, i3), no symmetry used.
// Returns df/dt at nodes 1..n-1; node 0 is left at zero.
std::vector<double> naive_conservative(const EnergyGrid& g, const std::vector<double>& f,
                                       bool cubic_only) {
  const std::size_t n = g.size();
  const double h = g.spacing();
  std::vector<double> dg(n, 0.0);
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      for (std::size_t i3 = 0; i3 < n; ++i3) {
        if (i1 + i2 < i3 || i1 + i2 - i3 >= n) continue;
        const std::size_t i4 = i1 + i2 - i3;
        const double p = std::sqrt(h * static_cast<double>(std::min({i1, i2, i3, i4})));
        const double t =
            h * h * h * f[i1] * f[i2] * (kC3 * f[i3] + (cubic_only ? 0.0 : kC2)) * p;
        dg[i3] += t;
        dg[i4] += t;
        dg[i1] -= 2.0 * t;
      }
    }
  }
  std::vector<double> df(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    df[j] = dg[j] / g.weight(j) / (4.0 * kPi * std::sqrt(2.0) * g.sqrt_node(j));
  }
  return df;
}

TEST(Collision, CoefficientsMatchTheirDefinitions) {
  const double f2g = 4.0 * kPi * std::sqrt(2.0);
  EXPECT_NEAR(kCubicWeakCoefficient, std::pow(2.0, -2.5) * f2g * f2g * f2g, 1e-9);
  EXPECT_NEAR(kQuadraticWeakCoefficient, 0.5 * kPi * f2g * f2g, 1e-9);
}

TEST(Collision, ConservativeMatchesNaiveOrderedSum) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {4, 7, 12}) {
    const auto g = make_grid(3.0, n);
    for (bool cubic_only : {false, true}) {
      const auto f = random_values(rng, n, 1.5);
      const auto r = collide_conservative(
          g, f, cubic_only ? CollisionTerms::kCubicOnly : CollisionTerms::kFull);
      const auto oracle = naive_conservative(*g, f, cubic_only);
      const double scale = r.sup_scale(f);
      for (std::size_t j = 1; j < n; ++j) {
        EXPECT_NEAR(r.df_dt[j], oracle[j], 1e-12 * scale) << "n " << n << " j " << j;
      }
      // Node 0 follows the pointwise limit.
      const auto c = collide_collocation(
          g, f, cubic_only ? CollisionTerms::kCubicOnly : CollisionTerms::kFull);
      EXPECT_NEAR(r.df_dt[0], c.df_dt[0], 1e-12 * scale);
    }
  }
}

TEST(Collision, ConservesMassAndEnergy) {
  std::mt19937_64 rng(22);
  const auto g = make_grid(5.0, 40);
  for (int k = 0; k < 20; ++k) {
    const auto f = random_values(rng, g->size(), 2.0);
    const auto r = collide_conservative(g, f);
    EXPECT_LE(std::abs(r.mass_rate()), 1e-12 * r.mass_throughput(f));
    EXPECT_LE(std::abs(r.energy_rate()), 1e-12 * r.energy_throughput(f));
  }
}

TEST(Collision, BoseEinsteinIsAnnihilated) {
  const auto g = make_grid(6.0, 64);
  for (double alpha : {0.3, 1.0, 3.0}) {
    const auto d = make_bose_einstein(1.5, alpha, g);
    for (auto op : {CollisionOperator::kConservative, CollisionOperator::kCollocation}) {
      const auto r = collide(g, d.values(), op);
      EXPECT_LE(sup_abs(r.df_dt), 1e-12 * r.sup_scale(d.values()));
    }
    for (std::size_t i = 0; i < g->size(); i += 7) {
      const auto gl = gain_loss_split(d, i);
      EXPECT_NEAR(gl.gain, gl.loss_coeff * d[i], 1e-12 * gl.gain);
    }
  }
}

TEST(Collision, CubicOnlySingleNodeIsStationary) {
  const auto g = make_grid(3.0, 20);
  for (std::size_t node : {0, 1, 9, 19}) {
    std::vector<double> f(g->size(), 0.0);
    f[node] = 2.5;
    for (auto op : {CollisionOperator::kConservative, CollisionOperator::kCollocation}) {
      const auto r = collide(g, f, op, CollisionTerms::kCubicOnly);
      EXPECT_EQ(sup_abs(r.df_dt), 0.0) << "node " << node;
    }
  }
}

TEST(Collision, CollocationAgreesWithConservativeAwayFromTheEdge) {
  std::mt19937_64 rng(23);
  const auto g = make_grid(2.0, 16);
  const auto f = random_values(rng, g->size(), 1.0);
  const auto cons = collide_conservative(g, f);
  const auto coll = collide_collocation(g, f);
  const double scale = std::max(cons.sup_scale(f), coll.sup_scale(f));
  for (std::size_t j = 0; j + 1 < g->size(); ++j) {
    EXPECT_NEAR(cons.df_dt[j], coll.df_dt[j], 1e-12 * scale) << "j " << j;
  }
  // The last node carries half a cell of mass in the conservative scheme.
  const std::size_t last = g->size() - 1;
  EXPECT_NEAR(cons.df_dt[last], 2.0 * coll.df_dt[last], 1e-12 * scale);
}

TEST(Collision, GainLossReconstructsRate) {
  std::mt19937_64 rng(24);
  const auto g = make_grid(4.0, 24);
  const auto f = random_values(rng, g->size(), 1.0);
  const Distribution d(g, f);
  const auto coll = collide_collocation(d);
  const auto cons = collide_conservative(d);
  for (std::size_t i = 0; i < g->size(); ++i) {
    const auto gl = gain_loss_split(d, i);
    EXPECT_NEAR(gl.gain - gl.loss_coeff * f[i], coll.df_dt[i], 1e-12 * coll.sup_scale(f));
    EXPECT_NEAR(gl.loss_coeff, loss_rate_direct(d, i), 1e-13 * gl.loss_coeff);
    EXPECT_NEAR(coll.gain[i], gl.gain, 1e-12 * gl.gain);
    for (const auto* r : {&coll, &cons}) {
      EXPECT_NEAR(r->gain[i] - r->loss_coeff[i] * f[i], r->df_dt[i], 1e-12 * r->sup_scale(f));
      EXPECT_NEAR(r->dg_dt[i], g->density_factor(i) * r->df_dt[i],
                  1e-12 * g->density_factor(i) * r->sup_scale(f));
    }
  }
}

// Bitwise reproducible for a fixed thread count; across thread counts only
// the merge order of the partials changes.
TEST(Collision, ThreadedResultsAreReproducible) {
  std::mt19937_64 rng(25);
  const auto g = make_grid(5.0, 50);
  const auto f = random_values(rng, g->size(), 1.0);
  const auto one = collide_conservative(g, f, CollisionTerms::kFull, ParallelOptions{1});
  EXPECT_EQ(one.df_dt, collide_conservative(g, f, CollisionTerms::kFull, ParallelOptions{1}).df_dt);
  const double scale = one.sup_scale(f);
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = collide_conservative(g, f, CollisionTerms::kFull, ParallelOptions{t});
    const auto again = collide_conservative(g, f, CollisionTerms::kFull, ParallelOptions{t});
    EXPECT_EQ(many.df_dt, again.df_dt) << t << " threads";
    for (std::size_t i = 0; i < f.size(); ++i) {
      EXPECT_NEAR(many.df_dt[i], one.df_dt[i], 1e-13 * scale);
    }
  }
}

TEST(Collision, RejectsMismatchedSizes) {
  const auto g = make_grid(1.0, 8);
  std::vector<double> f(5, 0.0);
  EXPECT_THROW(collide_conservative(g, f), std::invalid_argument);
  EXPECT_THROW(collide_collocation(g, f), std::invalid_argument);
}

}  // namespace
}  // namespace nordheim
