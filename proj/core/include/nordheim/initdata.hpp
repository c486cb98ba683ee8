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

#include <optional>

#include "nordheim/grid.hpp"

namespace nordheim {

// Peak-plus-bulk initial data
//   f0(ε) = ρ^{-(β+1/2)} ζ(ε/ρ) + κ1 f̄1(ε) + κ2 f̄2(ε),
// with ζ = (3/2)χ[0,1], f̄k(ε) = μk^{3/2} φ(μk ε), φ = (3M/4)χ[0,1],
// μ1 = 6M/(5E), μ2 = 2M/(5E).
struct BlowupDataSpec {
  double mass = 1.0;
  double energy = 1.0;
  double rho = 0.1;
  double beta = 0.9;
  MomentConvention convention = MomentConvention::kPhysical;

  // Filled by solve_blowup_spec / make_blowup_data.
  double kappa1 = 0.0;  // from the exact moments of the continuous profiles
  double kappa2 = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  // Coefficients actually applied on a grid: the same 2x2 system with the
  // quadrature moments of the sampled profiles, so the sampled data hits
  // (M, E) up to rounding.
  double grid_kappa1 = 0.0;
  double grid_kappa2 = 0.0;
};

// Solves for μ and the analytic κ. Throws InfeasibleKappa (carrying the
// largest feasible ρ for these M, E, β) when a κ is not positive, and
// std::invalid_argument on out-of-range parameters.
BlowupDataSpec solve_blowup_spec(BlowupDataSpec spec);

// Largest ρ in (0, 1) with both analytic κ positive, 0 if none.
double blowup_rho_bound(double mass, double energy, double beta, MomentConvention convention);

// Samples the family on the grid. The grid must reach 1/μ2. If spec_out is
// given it receives the solved spec.
Distribution make_blowup_data(const BlowupDataSpec& spec, const GridPtr& grid,
                              BlowupDataSpec* spec_out = nullptr);

// f_i = 1/(exp(β ε_i + α) - 1). Throws std::invalid_argument unless β > 0 and
// α > 0.
Distribution make_bose_einstein(double beta_inv_temp, double alpha, const GridPtr& grid);

struct ConditionParams {
  double nu = 1.0;
  double k_star = 1.0;
  double theta_star = 1.0;
  double rho0 = 1.0;
};

struct ConditionResult {
  bool satisfied = false;
  std::optional<double> witness_rho;
};

// Scans grid radii ρ in (0, ρ0] upward and returns the first with
// min_{0<R<=ρ} m(R)/(ν R^{3/2}) >= 1 and m(ρ)/(K* ρ^{θ*}) >= 1, where
// m(R) = ∫_0^R f √ε (no 4π√2 factor), f interpolated linearly between nodes.
ConditionResult check_condition(const Distribution& d, const ConditionParams& p);

}  // namespace nordheim
