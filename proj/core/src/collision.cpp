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

#include "nordheim/collision.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

#include "nordheim/kernel.hpp"

namespace nordheim {
namespace {

static_assert(kCubicWeakCoefficient ==
                  32.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi,
              "cubic weak coefficient must equal the g-form prefactor 32π³");

// The weak-form coefficients expressed from their g-form definitions; checked
// against the closed forms once at startup.
[[maybe_unused]] const bool kCoefficientsConsistent = [] {
  const double c3 = std::pow(2.0, -2.5) * std::pow(kFourPiSqrt2, 3);
  const double c2 = 0.5 * std::numbers::pi * kFourPiSqrt2 * kFourPiSqrt2;
  if (std::abs(c3 - kCubicWeakCoefficient) > 1e-12 * kCubicWeakCoefficient ||
      std::abs(c2 - kQuadraticWeakCoefficient) > 1e-12 * kQuadraticWeakCoefficient ||
      std::abs(kFourPiSqrt2 * kCollisionPrefactor - kCubicWeakCoefficient) >
          1e-12 * kCubicWeakCoefficient) {
    std::abort();
  }
  return true;
}();

void check_sizes(const GridPtr& grid, std::span<const double> f) {
  if (!grid) throw std::invalid_argument("collision: null grid");
  if (f.size() != grid->size()) {
    throw std::invalid_argument("collision: " + std::to_string(f.size()) +
                                " values for a grid of " + std::to_string(grid->size()));
  }
}

// Collocation gain/loss at one node: sums over (i3, i4) with
// i2 = i3 + i4 - i1 on the grid.
struct NodeRate {
  double gain = 0.0;
  double loss_coeff = 0.0;
  double rate = 0.0;
};

NodeRate collocation_node(const EnergyGrid& grid, std::span<const double> f,
                          std::size_t i1, CollisionTerms terms) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  const auto k1 = static_cast<std::ptrdiff_t>(i1);
  const auto sq = grid.sqrt_nodes();
  const double inv_r1 = i1 == 0 ? 0.0 : 1.0 / sq[i1];
  const double f1 = f[i1];
  const bool cubic_only = terms == CollisionTerms::kCubicOnly;
  double gain = 0.0;
  double loss = 0.0;
  double rate = 0.0;
  for (std::ptrdiff_t i3 = 0; i3 < n; ++i3) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, k1 - i3 + 1);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, n - 1 + k1 - i3);
    const double f3 = f[i3];
    for (std::ptrdiff_t i4 = lo; i4 <= hi; ++i4) {
      const std::ptrdiff_t i2 = i3 + i4 - k1;
      double w;
      if (i1 == 0) {
        w = (i3 > 0 && i4 > 0) ? 1.0 : 0.0;
      } else {
        w = sq[std::min({k1, i2, i3, i4})] * inv_r1;
      }
      if (w == 0.0) continue;
      const double f2 = f[i2];
      const double f4 = f[i4];
      const double q3 = q_cubic(f1, f2, f3, f4);
      if (cubic_only) {
        gain += w * f3 * f4 * (f1 + f2);
        loss += w * f2 * (f3 + f4);
        rate += w * q3;
      } else {
        gain += w * f3 * f4 * (1.0 + f1 + f2);
        loss += w * f2 * (1.0 + f3 + f4);
        rate += w * (q3 + q_quadratic(f1, f2, f3, f4));
      }
    }
  }
  const double scale = kCollisionPrefactor * grid.spacing() * grid.spacing();
  return {scale * gain, scale * loss, scale * rate};
}

// Raw accumulators of the conservative sum: gain and loss fluxes of g·w per
// node, and the loss flux per unit f.
struct Accumulators {
  std::vector<double> gain;
  std::vector<double> loss;
  std::vector<double> loss_coeff;
  explicit Accumulators(std::size_t n) : gain(n, 0.0), loss(n, 0.0), loss_coeff(n, 0.0) {}
};

void accumulate_pairs(const EnergyGrid& grid, std::span<const double> f,
                      CollisionTerms terms, std::size_t first, std::size_t stride,
                      Accumulators& acc) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  const auto top = n - 1;
  const double h = grid.spacing();
  const double h3 = h * h * h;
  const double c3 = kCubicWeakCoefficient;
  const double c2 = terms == CollisionTerms::kCubicOnly ? 0.0 : kQuadraticWeakCoefficient;
  const double* sq = grid.sqrt_nodes().data();
  const double* fv = f.data();
  double* gain = acc.gain.data();

  // Node 0 never contributes (Φ = 0), so pairs start at index 1.
  for (auto i1 = static_cast<std::ptrdiff_t>(first) + 1; i1 < n;
       i1 += static_cast<std::ptrdiff_t>(stride)) {
    const double f1 = fv[i1];
    for (std::ptrdiff_t i2 = i1; i2 < n; ++i2) {
      const double f2 = fv[i2];
      if (f1 == 0.0 && f2 == 0.0) continue;
      const std::ptrdiff_t s = i1 + i2;
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(1, s - top);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(top, s - 1);
      const std::ptrdiff_t a = i1;  // min(i1, i2)
      const double pref = (i1 == i2 ? 1.0 : 2.0) * h3 * f1 * f2;
      double u = 0.0;
      // Φ index: i3 on the rising ramp, a on the plateau, i4 on the falling ramp.
      const std::ptrdiff_t up_end = std::min(hi, a - 1);
      for (std::ptrdiff_t i3 = lo; i3 <= up_end; ++i3) {
        const double t = (c3 * fv[i3] + c2) * sq[i3];
        u += t;
        gain[i3] += pref * t;
        gain[s - i3] += pref * t;
      }
      const std::ptrdiff_t plateau_lo = std::max(lo, a);
      const std::ptrdiff_t plateau_hi = std::min(hi, s - a);
      const double sa = sq[a];
      for (std::ptrdiff_t i3 = plateau_lo; i3 <= plateau_hi; ++i3) {
        const double t = (c3 * fv[i3] + c2) * sa;
        u += t;
        gain[i3] += pref * t;
        gain[s - i3] += pref * t;
      }
      for (std::ptrdiff_t i3 = std::max(lo, s - a + 1); i3 <= hi; ++i3) {
        const double t = (c3 * fv[i3] + c2) * sq[s - i3];
        u += t;
        gain[i3] += pref * t;
        gain[s - i3] += pref * t;
      }
      if (i1 == i2) {
        acc.loss[i1] += 2.0 * (pref * u);
        acc.loss_coeff[i1] += 2.0 * h3 * f2 * u;
      } else {
        acc.loss[i1] += pref * u;
        acc.loss[i2] += pref * u;
        acc.loss_coeff[i1] += 2.0 * h3 * f2 * u;
        acc.loss_coeff[i2] += 2.0 * h3 * f1 * u;
      }
    }
  }
}

}  // namespace

unsigned resolve_thread_count(const ParallelOptions& options) {
  if (options.threads > 0) return options.threads;
  if (const char* env = std::getenv("NORDHEIM_THREADS"); env != nullptr && *env != '\0') {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double RateVector::mass_rate() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < dg_dt.size(); ++i) acc += grid->weight(i) * dg_dt[i];
  return acc;
}

double RateVector::energy_rate() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < dg_dt.size(); ++i) {
    acc += grid->weight(i) * grid->node(i) * dg_dt[i];
  }
  return acc;
}

double RateVector::mass_throughput(std::span<const double> f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < gain.size(); ++i) {
    acc += grid->weight(i) * grid->density_factor(i) *
           (std::abs(gain[i]) + std::abs(loss_coeff[i] * f[i]));
  }
  return acc;
}

double RateVector::energy_throughput(std::span<const double> f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < gain.size(); ++i) {
    acc += grid->weight(i) * grid->node(i) * grid->density_factor(i) *
           (std::abs(gain[i]) + std::abs(loss_coeff[i] * f[i]));
  }
  return acc;
}

double RateVector::sup_scale(std::span<const double> f) const {
  double m = 0.0;
  for (std::size_t i = 0; i < gain.size(); ++i) {
    m = std::max(m, std::abs(gain[i]) + std::abs(loss_coeff[i] * f[i]));
  }
  return m;
}

double RateVector::max_loss_coeff() const {
  return loss_coeff.empty() ? 0.0 : *std::max_element(loss_coeff.begin(), loss_coeff.end());
}

RateVector collide_conservative(const GridPtr& grid, std::span<const double> f,
                                CollisionTerms terms, const ParallelOptions& parallel) {
  check_sizes(grid, f);
  const std::size_t n = grid->size();
  const unsigned threads =
      std::min<unsigned>(resolve_thread_count(parallel), static_cast<unsigned>(n));

  Accumulators total(n);
  if (threads <= 1) {
    accumulate_pairs(*grid, f, terms, 0, 1, total);
  } else {
    // Cyclic assignment of i1 balances the triangular pair space; partials
    // are merged in thread order so a fixed thread count is reproducible.
    std::vector<Accumulators> partial(threads, Accumulators(n));
    {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] { accumulate_pairs(*grid, f, terms, t, threads, partial[t]); });
      }
    }
    for (const auto& p : partial) {
      for (std::size_t i = 0; i < n; ++i) {
        total.gain[i] += p.gain[i];
        total.loss[i] += p.loss[i];
        total.loss_coeff[i] += p.loss_coeff[i];
      }
    }
  }

  RateVector out{grid, std::vector<double>(n), std::vector<double>(n),
                 std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 1; j < n; ++j) {
    const double w = grid->weight(j);
    const double rho = grid->density_factor(j);
    out.dg_dt[j] = (total.gain[j] - total.loss[j]) / w;
    out.df_dt[j] = out.dg_dt[j] / rho;
    out.gain[j] = total.gain[j] / (w * rho);
    out.loss_coeff[j] = total.loss_coeff[j] / (w * rho);
  }
  const NodeRate origin = collocation_node(*grid, f, 0, terms);
  out.df_dt[0] = origin.rate;
  out.dg_dt[0] = 0.0;
  out.gain[0] = origin.gain;
  out.loss_coeff[0] = origin.loss_coeff;
  return out;
}

RateVector collide_conservative(const Distribution& d, CollisionTerms terms,
                                const ParallelOptions& parallel) {
  return collide_conservative(d.grid_ptr(), d.values(), terms, parallel);
}

RateVector collide_collocation(const GridPtr& grid, std::span<const double> f,
                               CollisionTerms terms) {
  check_sizes(grid, f);
  const std::size_t n = grid->size();
  RateVector out{grid, std::vector<double>(n), std::vector<double>(n),
                 std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const NodeRate r = collocation_node(*grid, f, i, terms);
    out.df_dt[i] = r.rate;
    out.dg_dt[i] = grid->density_factor(i) * r.rate;
    out.gain[i] = r.gain;
    out.loss_coeff[i] = r.loss_coeff;
  }
  return out;
}

RateVector collide_collocation(const Distribution& d, CollisionTerms terms) {
  return collide_collocation(d.grid_ptr(), d.values(), terms);
}

RateVector collide(const GridPtr& grid, std::span<const double> f, CollisionOperator op,
                   CollisionTerms terms, const ParallelOptions& parallel) {
  return op == CollisionOperator::kConservative
             ? collide_conservative(grid, f, terms, parallel)
             : collide_collocation(grid, f, terms);
}

GainLoss gain_loss_split(const Distribution& d, std::size_t i1) {
  const auto& grid = d.grid();
  if (i1 >= grid.size()) throw std::out_of_range("gain_loss_split: node index out of range");
  const std::size_t n = grid.size();
  const double e1 = grid.node(i1);
  const double f1 = d[i1];
  double gain = 0.0;
  for (std::size_t i3 = 0; i3 < n; ++i3) {
    for (std::size_t i4 = 0; i4 < n; ++i4) {
      if (i3 + i4 <= i1 || i3 + i4 - i1 >= n) continue;
      const std::size_t i2 = i3 + i4 - i1;
      const double w = w_kernel(e1, grid.node(i3), grid.node(i4));
      gain += d[i3] * d[i4] * (1.0 + f1 + d[i2]) * w;
    }
  }
  const double h = grid.spacing();
  return {kCollisionPrefactor * h * h * gain, loss_rate_direct(d, i1)};
}

}  // namespace nordheim
