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

#include "nordheim/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace nordheim {
namespace {

void check_index(const Distribution& d, std::size_t i1) {
  if (i1 >= d.size()) {
    throw std::out_of_range("node index " + std::to_string(i1) +
                            " outside grid of " + std::to_string(d.size()));
  }
}

// prefix[k] = Σ_{j<k} √j
std::vector<double> sqrt_prefix(std::size_t count) {
  std::vector<double> prefix(count + 1, 0.0);
  for (std::size_t k = 1; k <= count; ++k) {
    prefix[k] = prefix[k - 1] + std::sqrt(static_cast<double>(k - 1));
  }
  return prefix;
}

// Σ_{i3=lo}^{hi} √min(a, i3, s - i3) with a = min(i1, i2), s = i1 + i2, from
// prefix sums. The summand ramps up as √i3, plateaus at √a, ramps down.
double line_min_sum(std::ptrdiff_t a, std::ptrdiff_t s, std::ptrdiff_t lo,
                    std::ptrdiff_t hi, const std::vector<double>& prefix) {
  if (lo > hi) return 0.0;
  double total = 0.0;
  // Ramp up: i3 in [0, a-1].
  if (const auto top = std::min(hi, a - 1); top >= lo) {
    total += prefix[top + 1] - prefix[lo];
  }
  // Plateau: i3 in [a, s-a].
  if (const auto p_lo = std::max(lo, a), p_hi = std::min(hi, s - a); p_hi >= p_lo) {
    total += static_cast<double>(p_hi - p_lo + 1) * std::sqrt(static_cast<double>(a));
  }
  // Ramp down: i3 in [s-a+1, s], j = s - i3 in [0, a-1].
  if (const auto d_lo = std::max(lo, s - a + 1), d_hi = std::min(hi, s); d_hi >= d_lo) {
    total += prefix[s - d_lo + 1] - prefix[s - d_hi];
  }
  return total;
}

// Number of collision-line points with both outgoing energies positive.
double interior_count(std::ptrdiff_t s, std::ptrdiff_t lo, std::ptrdiff_t hi) {
  const auto a = std::max<std::ptrdiff_t>(lo, 1);
  const auto b = std::min<std::ptrdiff_t>(hi, s - 1);
  return b >= a ? static_cast<double>(b - a + 1) : 0.0;
}

}  // namespace

double phi(double eps1, double eps2, double eps3, double eps4) {
  return std::sqrt(std::min(std::min(eps1, eps2), std::min(eps3, eps4)));
}

double w_kernel(double eps1, double eps3, double eps4) {
  const double eps2 = eps3 + eps4 - eps1;
  if (eps2 <= 0.0) return 0.0;
  if (eps1 == 0.0) return std::min(eps3, eps4) > 0.0 ? 1.0 : 0.0;
  return phi(eps1, eps2, eps3, eps4) / std::sqrt(eps1);
}

double omega(double x) {
  if (x <= 1.0) return x * std::sqrt(x) / 3.0;
  return x - std::sqrt(x) + 1.0 / 3.0;
}

double lattice_omega(std::size_t i1, std::size_t i2) {
  const auto s = static_cast<std::ptrdiff_t>(i1 + i2);
  if (i1 == 0) return interior_count(s, 0, s);
  const auto a = static_cast<std::ptrdiff_t>(std::min(i1, i2));
  const auto prefix = sqrt_prefix(static_cast<std::size_t>(s) + 1);
  const double r1 = std::sqrt(static_cast<double>(i1));
  const double line = line_min_sum(a, s, 0, s, prefix) / r1;
  return (line - std::sqrt(static_cast<double>(i1) * static_cast<double>(i2))) /
         static_cast<double>(i1);
}

double loss_rate_direct(const Distribution& d, std::size_t i1) {
  check_index(d, i1);
  const auto& grid = d.grid();
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double e1 = grid.node(i1);
  double acc = 0.0;
  for (std::size_t i3 = 0; i3 < n; ++i3) {
    for (std::size_t i4 = 0; i4 < n; ++i4) {
      if (i3 + i4 <= i1) continue;
      const std::size_t i2 = i3 + i4 - i1;
      if (i2 >= n) continue;
      double w;
      if (i1 == 0) {
        w = (i3 > 0 && i4 > 0) ? 1.0 : 0.0;
      } else {
        w = phi(e1, grid.node(i2), grid.node(i3), grid.node(i4)) / std::sqrt(e1);
      }
      acc += d[i2] * (1.0 + d[i3] + d[i4]) * w;
    }
  }
  return kCollisionPrefactor * h * h * acc;
}

LossRateDecomposition loss_rate_closed(const Distribution& d, std::size_t i1) {
  check_index(d, i1);
  const auto& grid = d.grid();
  const std::size_t n = grid.size();
  const auto top = static_cast<std::ptrdiff_t>(n - 1);
  const double h = grid.spacing();
  const auto prefix = sqrt_prefix(2 * n);
  const double r1 = std::sqrt(static_cast<double>(i1));

  double core = 0.0;       // Σ h f2 √ε2
  double omega_sum = 0.0;  // Σ f2 ω_L(i1, i2)
  double clipped = 0.0;    // Σ f2 (Λ_truncated - Λ_full)
  double quadratic = 0.0;  // Σ_{i2,i3} f2 (f3 + f4) W
  for (std::size_t i2 = 0; i2 < n; ++i2) {
    const double f2 = d[i2];
    if (f2 == 0.0) continue;
    const auto s = static_cast<std::ptrdiff_t>(i1 + i2);
    const auto lo = std::max<std::ptrdiff_t>(0, s - top);
    const auto hi = std::min<std::ptrdiff_t>(top, s);
    core += h * f2 * grid.sqrt_node(i2);
    double full;
    double kept;
    if (i1 == 0) {
      full = interior_count(s, 0, s);
      kept = interior_count(s, lo, hi);
    } else {
      const auto a = static_cast<std::ptrdiff_t>(std::min(i1, i2));
      full = line_min_sum(a, s, 0, s, prefix) / r1;
      kept = line_min_sum(a, s, lo, hi, prefix) / r1;
    }
    clipped += f2 * (kept - full);
    if (i1 == 0) {
      omega_sum += f2 * full;
    } else {
      const double leading_part = std::sqrt(static_cast<double>(i1) * static_cast<double>(i2));
      omega_sum += f2 * (full - leading_part) / static_cast<double>(i1);
    }

    for (auto i3 = lo; i3 <= hi; ++i3) {
      const auto i4 = s - i3;
      double w;
      if (i1 == 0) {
        w = (i3 > 0 && i4 > 0) ? 1.0 : 0.0;
      } else {
        const auto m = std::min({static_cast<std::ptrdiff_t>(std::min(i1, i2)), i3, i4});
        w = std::sqrt(static_cast<double>(m)) / r1;
      }
      quadratic += f2 * (d[i3] + d[i4]) * w;
    }
  }

  LossRateDecomposition out;
  const double c = kCollisionPrefactor;
  out.leading = c * grid.sqrt_node(i1) * core;
  // ε1 · h · ω_L, with ω_L in lattice units: ε1 h ω_L(i1,i2) = h² i1 ω_L.
  out.s1 = c * h * h * (i1 == 0 ? 1.0 : static_cast<double>(i1)) * omega_sum;
  out.s2 = c * h * h * quadratic;
  out.truncation = c * h * h * clipped;
  return out;
}

}  // namespace nordheim
