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

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "nordheim/grid.hpp"
#include "nordheim/initdata.hpp"

namespace nordheim {
namespace {

TEST(EnergyGrid, NodesAreIndexTimesSpacing) {
  const auto g = make_grid(5.0, 37);
  EXPECT_EQ(g->size(), 37u);
  EXPECT_DOUBLE_EQ(g->spacing(), 5.0 / 36.0);
  for (std::size_t i = 0; i < g->size(); ++i) {
    EXPECT_EQ(g->node(i), static_cast<double>(i) * g->spacing());
    EXPECT_EQ(g->sqrt_node(i), std::sqrt(g->node(i)));
  }
  EXPECT_EQ(g->node(0), 0.0);
}

TEST(EnergyGrid, RejectsDegenerateGrids) {
  EXPECT_THROW(make_grid(0.0, 10), std::invalid_argument);
  EXPECT_THROW(make_grid(-1.0, 10), std::invalid_argument);
  EXPECT_THROW(make_grid(1.0, 1), std::invalid_argument);
}

TEST(EnergyGrid, TrapezoidWeights) {
  const auto g = make_grid(2.0, 5);
  EXPECT_DOUBLE_EQ(g->weight(0), 0.25);
  EXPECT_DOUBLE_EQ(g->weight(2), 0.5);
  EXPECT_DOUBLE_EQ(g->weight(4), 0.25);
}

// On a grid with a power-of-two spacing every node and every sum of two
// nodes is exact, so the closure identity holds bitwise.
TEST(EnergyGrid, ClosureIsExactOnDyadicGrid) {
  const auto g = make_grid(8.0, 257);  // h = 1/32
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, g->size() - 1);
  int checked = 0;
  while (checked < 5000) {
    const std::size_t i1 = pick(rng), i2 = pick(rng), i3 = pick(rng);
    if (i1 + i2 < i3 || i1 + i2 - i3 >= g->size()) continue;
    const std::size_t i4 = i1 + i2 - i3;
    EXPECT_EQ(g->node(i1) + g->node(i2) - g->node(i3), g->node(i4));
    ++checked;
  }
}

// On a general grid the identity holds to within a few ulps of eps_max.
TEST(EnergyGrid, ClosureIsNearExactOnGeneralGrid) {
  const auto g = make_grid(5.0, 200);
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> pick(0, g->size() - 1);
  for (int k = 0; k < 5000; ++k) {
    const std::size_t i1 = pick(rng), i2 = pick(rng), i3 = pick(rng);
    if (i1 + i2 < i3 || i1 + i2 - i3 >= g->size()) continue;
    const std::size_t i4 = i1 + i2 - i3;
    EXPECT_NEAR(g->node(i1) + g->node(i2) - g->node(i3), g->node(i4), 8e-16 * 5.0);
  }
}

TEST(EnergyGrid, FloorIndex) {
  const auto g = make_grid(1.0, 11);
  EXPECT_EQ(g->floor_index(-1.0), 0u);
  EXPECT_EQ(g->floor_index(0.0), 0u);
  EXPECT_EQ(g->floor_index(0.35), 3u);
  EXPECT_EQ(g->floor_index(g->node(7)), 7u);
  EXPECT_EQ(g->floor_index(3.0), 10u);
}

TEST(Distribution, DensityConversion) {
  const auto g = make_grid(2.0, 9);
  std::vector<double> f(9);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = 0.1 * static_cast<double>(i);
  const Distribution d(g, f);
  const auto dens = d.densities();
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_DOUBLE_EQ(dens[i], 4.0 * std::numbers::pi * std::sqrt(2.0 * g->node(i)) * f[i]);
  }
  EXPECT_DOUBLE_EQ(d.sup(), 0.8);
}

TEST(Distribution, RejectsBadValues) {
  const auto g = make_grid(1.0, 4);
  EXPECT_THROW(Distribution(g, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(Distribution(g, {1.0, -2.0, 0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(Distribution(g, {1.0, NAN, 0.0, 0.0}), std::invalid_argument);
}

TEST(Moment, IndicatorMassMatchesAnalyticIntegral) {
  // ∫_0^1 √ε dε = 2/3; the √ε cusp at 0 limits the trapezoid rule to h^{3/2}.
  const auto g = make_grid(1.0, 4001);
  const Distribution d(g, std::vector<double>(g->size(), 1.0));
  const double expected = 4.0 * std::numbers::pi * std::numbers::sqrt2 * 2.0 / 3.0;
  EXPECT_NEAR(moment(d, MomentOrder::kMass), expected, 1e-5 * expected);
  EXPECT_NEAR(moment(d, MomentOrder::kMass, MomentConvention::kBare), 2.0 / 3.0, 1e-5);
  // ∫_0^1 ε^{3/2} dε = 2/5.
  EXPECT_NEAR(moment(d, MomentOrder::kEnergy, MomentConvention::kBare), 0.4, 1e-5);
}

TEST(Moment, BlowupDataHitsRequestedMoments) {
  const auto g = make_grid(5.0, 512);
  BlowupDataSpec spec;
  spec.mass = 10.0;
  spec.energy = 10.0;
  spec.rho = 0.1;
  spec.convention = MomentConvention::kBare;
  const auto d = make_blowup_data(spec, g);
  EXPECT_NEAR(moment(d, MomentOrder::kMass, MomentConvention::kBare), 10.0, 1e-10);
  EXPECT_NEAR(moment(d, MomentOrder::kEnergy, MomentConvention::kBare), 10.0, 1e-10);
}

TEST(MassBelow, TrapezoidOnSnappedRadius) {
  const auto g = make_grid(4.0, 401);
  const Distribution d(g, std::vector<double>(g->size(), 1.0));
  EXPECT_NEAR(mass_below(d, 1.0), 2.0 / 3.0, 1e-3);
  EXPECT_EQ(mass_below(d, 0.0), 0.0);
  // Radius between nodes snaps down.
  EXPECT_EQ(mass_below(d, 1.005), mass_below(d, 1.0));
}

}  // namespace
}  // namespace nordheim
