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
#include <numbers>
#include <span>
#include <vector>

#include "nordheim/grid.hpp"

namespace nordheim {

// Coefficients of the weak form written in f: 2^{-5/2}(4π√2)^3 = 32π³ for
// the cubic triple term, (π/2)(4π√2)^2 = 16π³ for the quadratic one.
inline constexpr double kCubicWeakCoefficient =
    32.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;
inline constexpr double kQuadraticWeakCoefficient =
    16.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi;

enum class CollisionTerms { kFull, kCubicOnly };

enum class CollisionOperator { kConservative, kCollocation };

// Per-node time derivative of f, with its gain/loss split. gain and
// loss_coeff are in f-units: df_dt[i] = gain[i] - loss_coeff[i] * f[i]
// (up to rounding). dg_dt is the matching derivative of g = 4π√(2ε) f.
struct RateVector {
  GridPtr grid;
  std::vector<double> df_dt;
  std::vector<double> dg_dt;
  std::vector<double> gain;
  std::vector<double> loss_coeff;

  // Σ w_i dg_i and Σ w_i ε_i dg_i with trapezoidal w_i.
  double mass_rate() const;
  double energy_rate() const;
  // Same sums over the absolute gain and loss fluxes; the scale against which
  // the signed sums above are judged.
  double mass_throughput(std::span<const double> f) const;
  double energy_throughput(std::span<const double> f) const;
  // max_i (gain_i + loss_coeff_i f_i), the scale for sup-norm residuals.
  double sup_scale(std::span<const double> f) const;
  double max_loss_coeff() const;
};

struct ParallelOptions {
  // 0: NORDHEIM_THREADS if set, else the hardware concurrency.
  unsigned threads = 0;
};

unsigned resolve_thread_count(const ParallelOptions& options);

// Exactly conservative operator from the weak form with node indicators as
// test functions. Triples (i1, i2, i3) whose i4 = i1 + i2 - i3 leaves the
// grid are skipped. Node 0 carries no g-mass; its f evolves by the
// collocation rate at ε = 0.
RateVector collide_conservative(const Distribution& d,
                                CollisionTerms terms = CollisionTerms::kFull,
                                const ParallelOptions& parallel = {});
RateVector collide_conservative(const GridPtr& grid, std::span<const double> f,
                                CollisionTerms terms = CollisionTerms::kFull,
                                const ParallelOptions& parallel = {});

// Pointwise collision integral (8π²/√2) h² Σ W q(f) at every node.
RateVector collide_collocation(const Distribution& d,
                               CollisionTerms terms = CollisionTerms::kFull);
RateVector collide_collocation(const GridPtr& grid, std::span<const double> f,
                               CollisionTerms terms = CollisionTerms::kFull);

RateVector collide(const GridPtr& grid, std::span<const double> f, CollisionOperator op,
                   CollisionTerms terms = CollisionTerms::kFull,
                   const ParallelOptions& parallel = {});

struct GainLoss {
  double gain = 0.0;
  double loss_coeff = 0.0;
};

// gain = (8π²/√2) ∫∫ f3 f4 (1 + f1 + f2) W, loss_coeff = loss_rate_direct.
GainLoss gain_loss_split(const Distribution& d, std::size_t i1);

}  // namespace nordheim
