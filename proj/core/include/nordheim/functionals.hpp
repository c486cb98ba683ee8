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

#include <functional>
#include <string>

#include "nordheim/grid.hpp"
#include "nordheim/measure.hpp"

namespace nordheim {

// S = 4π√2 Σ w_i [(1+f_i) log(1+f_i) - f_i log f_i] √ε_i, with 0 log 0 = 0.
double entropy(const Distribution& d);
double entropy(const EnergyGrid& grid, std::span<const double> f);

enum class Shape { kConvex, kConcave, kAffine, kGeneral };

// A test function with a caller-declared shape. The tag is trusted, never
// inferred.
struct TestFunction {
  std::function<double(double)> fn;
  Shape shape = Shape::kGeneral;
  std::string name;

  double operator()(double x) const { return fn(x); }

  static TestFunction constant(double c = 1.0);
  static TestFunction identity();
  static TestFunction square();
  static TestFunction exponential();
  static TestFunction square_root();
  static TestFunction negative_square();
};

struct SortedTriple {
  double eps_minus = 0.0;
  double eps_zero = 0.0;
  double eps_plus = 0.0;
};

SortedTriple sort_triple(double e1, double e2, double e3);

// Φ(x, y; z) = min of √x, √y, √z, √(x+y-z), and 0 when x + y <= z.
double phi_triple(double x, double y, double z);

// H_φ(x, y, z) = φ(z) + φ(x+y-z) - φ(x) - φ(y).
double h_phi(double x, double y, double z, const TestFunction& phi);

// Closed form over the sorted triple.
double g_phi(double e1, double e2, double e3, const TestFunction& phi);
// (1/6) Σ_σ H_φ Φ over the six orderings; terms with Φ = 0 are skipped, so φ
// is never evaluated at negative energies.
double g_phi_permutation_average(double e1, double e2, double e3, const TestFunction& phi);

// φ(ε3) + φ(ε1 + ε2 - ε3) - 2φ(ε1).
double q_phi_pairing(double e1, double e2, double e3, const TestFunction& phi);

// (1/R) Σ m_i m_j m_k (ε0/ε+)^{3/2} ((ε0 - ε-)/ε0)² over atoms in [0, R/2]³,
// with the sorted triple of the three locations. Terms with ε0 = 0 vanish.
double concentration_functional(const DiscreteMeasure& m, double radius);
// Node masses g_i w_i of d.
double concentration_functional(const Distribution& d, double radius);

}  // namespace nordheim
