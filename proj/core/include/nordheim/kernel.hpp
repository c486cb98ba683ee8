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

#include "nordheim/grid.hpp"

namespace nordheim {

// 8π²/√2, the prefactor of the isotropic collision integral in f-form.
inline constexpr double kCollisionPrefactor =
    8.0 * std::numbers::pi * std::numbers::pi / std::numbers::sqrt2;

// Φ = min{√ε1, √ε2, √ε3, √ε4}.
double phi(double eps1, double eps2, double eps3, double eps4);

// W = Φ/√ε1 with ε2 = ε3 + ε4 - ε1. Zero when ε3 + ε4 <= ε1. At ε1 = 0
// the continuous limit is used: 1 if min(ε3, ε4) > 0, else 0.
double w_kernel(double eps1, double eps3, double eps4);

// f3 f4 (f1 + f2) - f1 f2 (f3 + f4)
inline double q_cubic(double f1, double f2, double f3, double f4) {
  return f3 * f4 * (f1 + f2) - f1 * f2 * (f3 + f4);
}

// f3 f4 - f1 f2
inline double q_quadratic(double f1, double f2, double f3, double f4) {
  return f3 * f4 - f1 * f2;
}

// ω(x) = x^{3/2}/3 for x <= 1, x - √x + 1/3 for x >= 1.
double omega(double x);

// Lattice counterpart of ω on a uniform grid: with L(i1, i2) the exact sum
// h Σ_{i3} min(√ε1, √ε2, √ε3, √ε4)/√ε1 over the untruncated collision line
// i3 + i4 = i1 + i2, lattice_omega = (L - √(ε1 ε2)) / ε1 in units where h = 1.
// Converges to ω(i2/i1) as i1 grows at fixed ratio. For i1 = 0 returns the
// number of interior line points, max(i2 - 1, 0).
double lattice_omega(std::size_t i1, std::size_t i2);

// a(ε1) = (8π²/√2) ∫∫ f2 (1 + f3 + f4) W dε3 dε4, by direct enumeration of
// grid pairs (i3, i4) with i2 = i3 + i4 - i1 on the grid.
double loss_rate_direct(const Distribution& d, std::size_t i1);

// The loss rate split into the Σ f√ε leading part, the ω part, the quadratic
// part, and the (non-positive) correction from collision lines clipped by the
// grid's upper edge.
struct LossRateDecomposition {
  double leading = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double truncation = 0.0;

  double total() const { return leading + s1 + s2 + truncation; }
};

// Closed-form evaluation of the same lattice sum as loss_rate_direct. The
// W-integral along each collision line is evaluated from prefix sums of √k
// rather than by enumeration.
LossRateDecomposition loss_rate_closed(const Distribution& d, std::size_t i1);

}  // namespace nordheim
