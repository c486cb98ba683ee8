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
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace nordheim {

// 4π√2: converts occupation f to energy density g = 4π√(2ε) f.
inline constexpr double kFourPiSqrt2 = 4.0 * std::numbers::pi * std::numbers::sqrt2;

// Uniform node set ε_i = i·h on [0, eps_max]. Nodes are computed as i·h and
// never accumulated, so ε_{i1}+ε_{i2}-ε_{i3} lands bitwise on node i1+i2-i3
// whenever the index identity holds in floating point.
class EnergyGrid {
 public:
  EnergyGrid(double eps_max, std::size_t n);

  std::size_t size() const { return nodes_.size(); }
  double eps_max() const { return eps_max_; }
  double spacing() const { return h_; }

  double node(std::size_t i) const { return nodes_[i]; }
  double sqrt_node(std::size_t i) const { return sqrt_nodes_[i]; }
  // Trapezoidal quadrature weight: h/2 at both ends, h elsewhere.
  double weight(std::size_t i) const {
    return (i == 0 || i + 1 == size()) ? 0.5 * h_ : h_;
  }
  // 4π√(2ε_i), the f -> g conversion factor at node i.
  double density_factor(std::size_t i) const { return kFourPiSqrt2 * sqrt_nodes_[i]; }

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> sqrt_nodes() const { return sqrt_nodes_; }

  // Largest index i with node(i) <= x (clamped to the grid).
  std::size_t floor_index(double x) const;

  bool operator==(const EnergyGrid& other) const {
    return size() == other.size() && eps_max_ == other.eps_max_;
  }

 private:
  double eps_max_;
  double h_;
  std::vector<double> nodes_;
  std::vector<double> sqrt_nodes_;
};

using GridPtr = std::shared_ptr<const EnergyGrid>;

// Throws std::invalid_argument on eps_max <= 0 or n < 2.
GridPtr make_grid(double eps_max, std::size_t n);

// Occupation values f_i >= 0 on a grid. Copies share the grid.
class Distribution {
 public:
  Distribution(GridPtr grid, std::vector<double> f);
  // Zero distribution.
  explicit Distribution(GridPtr grid);

  const EnergyGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return f_.size(); }

  std::span<const double> values() const { return f_; }
  double operator[](std::size_t i) const { return f_[i]; }

  // g_i = 4π√(2ε_i) f_i.
  double density(std::size_t i) const { return grid_->density_factor(i) * f_[i]; }
  std::vector<double> densities() const;
  double sup() const;

 private:
  GridPtr grid_;
  std::vector<double> f_;
};

enum class MomentOrder { kMass, kEnergy };  // ε^{1/2}, ε^{3/2}

// Whether moments carry the 4π√2 prefactor (the physical particle number
// and energy) or are the bare ∫ f ε^w dε.
enum class MomentConvention { kPhysical, kBare };

// 4π√2 · Σ w_i f_i ε_i^{w} with trapezoidal w_i (kBare drops the prefactor).
double moment(const Distribution& d, MomentOrder order,
              MomentConvention convention = MomentConvention::kPhysical);
double moment(const EnergyGrid& grid, std::span<const double> f, MomentOrder order,
              MomentConvention convention = MomentConvention::kPhysical);

// ∫_0^R f √ε dε (bare), trapezoidal on [0, R] with R snapped down to a node.
double mass_below(const Distribution& d, double radius);

}  // namespace nordheim
