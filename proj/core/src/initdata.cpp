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

#include "nordheim/initdata.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "nordheim/error.hpp"

namespace nordheim {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double convention_factor(MomentConvention c) {
  return c == MomentConvention::kPhysical ? kFourPiSqrt2 : 1.0;
}

// Analytic κ: bare moments are ρ^{1-β} and (3/5) ρ^{2-β} for the peak, M/2
// for both bulk masses, E/4 and 3E/4 for the bulk energies.
struct Kappa {
  double k1;
  double k2;
};

Kappa analytic_kappa(double mass, double energy, double rho, double beta,
                     MomentConvention convention) {
  const double inv_p = 1.0 / convention_factor(convention);
  const double peak_mass = std::pow(rho, 1.0 - beta) / mass;
  const double peak_energy = 0.6 * std::pow(rho, 2.0 - beta) / energy;
  // κ1 + κ2 = 2/P - 2 peak_mass, κ1 + 3κ2 = 4/P - 4 peak_energy.
  const double k2 = inv_p - 2.0 * peak_energy + peak_mass;
  const double k1 = inv_p - 3.0 * peak_mass + 2.0 * peak_energy;
  return {k1, k2};
}

bool feasible(double mass, double energy, double rho, double beta, MomentConvention c) {
  const auto k = analytic_kappa(mass, energy, rho, beta, c);
  return k.k1 > 0.0 && k.k2 > 0.0;
}

void validate(const BlowupDataSpec& s) {
  if (!(s.mass > 0.0) || !std::isfinite(s.mass)) {
    throw std::invalid_argument("blow-up data: mass must be positive");
  }
  if (!(s.energy > 0.0) || !std::isfinite(s.energy)) {
    throw std::invalid_argument("blow-up data: energy must be positive");
  }
  if (!(s.rho > 0.0 && s.rho < 1.0)) {
    throw std::invalid_argument("blow-up data: rho must lie in (0, 1), got " + num(s.rho));
  }
  if (!(s.beta > 0.0 && s.beta < 1.0)) {
    throw std::invalid_argument("blow-up data: beta must lie in (0, 1), got " + num(s.beta));
  }
}

}  // namespace

double blowup_rho_bound(double mass, double energy, double beta, MomentConvention c) {
  // Scan downward on a log grid for the first feasible ρ, then bisect the
  // transition above it.
  double hi = 1.0;
  double lo = 0.0;
  for (int k = 1; k <= 1600; ++k) {
    const double rho = std::pow(10.0, -k / 100.0);
    if (feasible(mass, energy, rho, beta, c)) {
      lo = rho;
      break;
    }
    hi = rho;
  }
  if (lo == 0.0) return 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mass, energy, mid, beta, c) ? lo : hi) = mid;
  }
  return lo;
}

BlowupDataSpec solve_blowup_spec(BlowupDataSpec spec) {
  validate(spec);
  spec.mu1 = 6.0 * spec.mass / (5.0 * spec.energy);
  spec.mu2 = 2.0 * spec.mass / (5.0 * spec.energy);
  const auto k = analytic_kappa(spec.mass, spec.energy, spec.rho, spec.beta, spec.convention);
  spec.kappa1 = k.k1;
  spec.kappa2 = k.k2;
  if (!(k.k1 > 0.0 && k.k2 > 0.0)) {
    const double bound = blowup_rho_bound(spec.mass, spec.energy, spec.beta, spec.convention);
    throw InfeasibleKappa("blow-up data: kappa1 = " + num(k.k1) + ", kappa2 = " + num(k.k2) +
                              " for M = " + num(spec.mass) + ", E = " + num(spec.energy) +
                              ", rho = " + num(spec.rho) + ", beta = " + num(spec.beta) +
                              (bound > 0.0 ? "; need rho < " + num(bound)
                                           : "; no rho in (0, 1) is feasible"),
                          k.k1, k.k2, bound);
  }
  return spec;
}

Distribution make_blowup_data(const BlowupDataSpec& in, const GridPtr& grid,
                              BlowupDataSpec* spec_out) {
  if (!grid) throw std::invalid_argument("blow-up data: null grid");
  BlowupDataSpec spec = solve_blowup_spec(in);
  if (grid->eps_max() < 1.0 / spec.mu2) {
    throw std::invalid_argument("blow-up data: eps_max = " + num(grid->eps_max()) +
                                " does not contain the bulk support [0, " +
                                num(1.0 / spec.mu2) + "]");
  }
  const std::size_t n = grid->size();
  const double peak_height = 1.5 * std::pow(spec.rho, -(spec.beta + 0.5));
  const double phi = 0.75 * spec.mass;
  const double bulk1 = std::pow(spec.mu1, 1.5) * phi;
  const double bulk2 = std::pow(spec.mu2, 1.5) * phi;
  std::vector<double> peak(n, 0.0), f1(n, 0.0), f2(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double e = grid->node(i);
    if (e <= spec.rho) peak[i] = peak_height;
    if (spec.mu1 * e <= 1.0) f1[i] = bulk1;
    if (spec.mu2 * e <= 1.0) f2[i] = bulk2;
  }
  auto m = [&](const std::vector<double>& v, MomentOrder o) {
    return moment(*grid, v, o, spec.convention);
  };
  const double rm = spec.mass - m(peak, MomentOrder::kMass);
  const double re = spec.energy - m(peak, MomentOrder::kEnergy);
  const double a11 = m(f1, MomentOrder::kMass), a12 = m(f2, MomentOrder::kMass);
  const double a21 = m(f1, MomentOrder::kEnergy), a22 = m(f2, MomentOrder::kEnergy);
  const double det = a11 * a22 - a12 * a21;
  if (det == 0.0) {
    throw std::invalid_argument("blow-up data: grid too coarse to resolve the bulk profiles");
  }
  spec.grid_kappa1 = (rm * a22 - a12 * re) / det;
  spec.grid_kappa2 = (a11 * re - a21 * rm) / det;
  if (!(spec.grid_kappa1 > 0.0 && spec.grid_kappa2 > 0.0)) {
    throw InfeasibleKappa("blow-up data: on this grid kappa1 = " + num(spec.grid_kappa1) +
                              ", kappa2 = " + num(spec.grid_kappa2) + "; refine the grid",
                          spec.grid_kappa1, spec.grid_kappa2,
                          blowup_rho_bound(spec.mass, spec.energy, spec.beta, spec.convention));
  }
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    f[i] = peak[i] + spec.grid_kappa1 * f1[i] + spec.grid_kappa2 * f2[i];
  }
  if (spec_out) *spec_out = spec;
  return Distribution(grid, std::move(f));
}

Distribution make_bose_einstein(double beta_inv_temp, double alpha, const GridPtr& grid) {
  if (!grid) throw std::invalid_argument("Bose-Einstein data: null grid");
  if (!(beta_inv_temp > 0.0) || !std::isfinite(beta_inv_temp)) {
    throw std::invalid_argument("Bose-Einstein data: beta must be positive");
  }
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("Bose-Einstein data: alpha must be positive, got " +
                                num(alpha));
  }
  std::vector<double> f(grid->size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = 1.0 / std::expm1(beta_inv_temp * grid->node(i) + alpha);
  }
  return Distribution(grid, std::move(f));
}

ConditionResult check_condition(const Distribution& d, const ConditionParams& p) {
  if (!(p.nu > 0.0 && p.k_star > 0.0 && p.theta_star > 0.0 && p.rho0 > 0.0)) {
    throw std::invalid_argument("condition parameters must all be positive");
  }
  const auto& grid = d.grid();
  const double h = grid.spacing();
  // ∫_0^{ε_j} f√ε with f linear on each cell, integrated exactly. The
  // trapezoid rule misses a quarter of the first cell for constant f.
  double m = 0.0;
  double min_ratio = INFINITY;
  for (std::size_t j = 1; j < grid.size() && grid.node(j) <= p.rho0; ++j) {
    const double a = grid.node(j - 1), b = grid.node(j);
    const double slope = (d[j] - d[j - 1]) / h;
    const double p32 = b * grid.sqrt_node(j) - a * grid.sqrt_node(j - 1);
    const double p52 = b * b * grid.sqrt_node(j) - a * a * grid.sqrt_node(j - 1);
    m += (d[j - 1] - slope * a) * (2.0 / 3.0) * p32 + slope * 0.4 * p52;
    const double r = grid.node(j);
    min_ratio = std::min(min_ratio, m / (p.nu * r * std::sqrt(r)));
    if (min_ratio >= 1.0 && m / (p.k_star * std::pow(r, p.theta_star)) >= 1.0) {
      return {true, r};
    }
  }
  return {false, std::nullopt};
}

}  // namespace nordheim
