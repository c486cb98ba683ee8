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

#include "nordheim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nordheim {

EnergyGrid::EnergyGrid(double eps_max, std::size_t n) : eps_max_(eps_max) {
  if (!(eps_max > 0.0) || !std::isfinite(eps_max)) {
    throw std::invalid_argument("energy grid: eps_max must be positive, got " +
                                std::to_string(eps_max));
  }
  if (n < 2) {
    throw std::invalid_argument("energy grid: need at least 2 nodes, got " +
                                std::to_string(n));
  }
  h_ = eps_max / static_cast<double>(n - 1);
  nodes_.resize(n);
  sqrt_nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes_[i] = static_cast<double>(i) * h_;
    sqrt_nodes_[i] = std::sqrt(nodes_[i]);
  }
  // i·h may round away from eps_max at the last node.
  nodes_[n - 1] = eps_max;
  sqrt_nodes_[n - 1] = std::sqrt(eps_max);
}

std::size_t EnergyGrid::floor_index(double x) const {
  if (x <= 0.0) return 0;
  auto i = static_cast<std::size_t>(std::floor(x / h_));
  i = std::min(i, size() - 1);
  while (i + 1 < size() && nodes_[i + 1] <= x) ++i;
  while (i > 0 && nodes_[i] > x) --i;
  return i;
}

GridPtr make_grid(double eps_max, std::size_t n) {
  return std::make_shared<const EnergyGrid>(eps_max, n);
}

Distribution::Distribution(GridPtr grid, std::vector<double> f)
    : grid_(std::move(grid)), f_(std::move(f)) {
  if (!grid_) throw std::invalid_argument("distribution: null grid");
  if (f_.size() != grid_->size()) {
    throw std::invalid_argument("distribution: " + std::to_string(f_.size()) +
                                " values for a grid of " +
                                std::to_string(grid_->size()) + " nodes");
  }
  for (std::size_t i = 0; i < f_.size(); ++i) {
    if (!(f_[i] >= 0.0) || !std::isfinite(f_[i])) {
      throw std::invalid_argument("distribution: f[" + std::to_string(i) +
                                  "] = " + std::to_string(f_[i]) +
                                  " is not a finite non-negative value");
    }
  }
}

Distribution::Distribution(GridPtr grid)
    : Distribution(grid, std::vector<double>(grid ? grid->size() : 0, 0.0)) {}

std::vector<double> Distribution::densities() const {
  std::vector<double> g(f_.size());
  for (std::size_t i = 0; i < f_.size(); ++i) g[i] = density(i);
  return g;
}

double Distribution::sup() const { return *std::max_element(f_.begin(), f_.end()); }

double moment(const EnergyGrid& grid, std::span<const double> f, MomentOrder order,
              MomentConvention convention) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double w = grid.sqrt_node(i);
    if (order == MomentOrder::kEnergy) w *= grid.node(i);
    acc += grid.weight(i) * f[i] * w;
  }
  return convention == MomentConvention::kPhysical ? kFourPiSqrt2 * acc : acc;
}

double moment(const Distribution& d, MomentOrder order, MomentConvention convention) {
  return moment(d.grid(), d.values(), order, convention);
}

double mass_below(const Distribution& d, double radius) {
  const auto& grid = d.grid();
  const std::size_t last = grid.floor_index(radius);
  double acc = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    const double w = (i == 0 || i == last) ? 0.5 * grid.spacing() : grid.spacing();
    acc += w * d[i] * grid.sqrt_node(i);
  }
  return last == 0 ? 0.0 : acc;
}

}  // namespace nordheim
