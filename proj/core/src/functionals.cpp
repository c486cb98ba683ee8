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

#include "nordheim/functionals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace nordheim {

double entropy(const EnergyGrid& grid, std::span<const double> f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double fi = f[i];
    if (fi <= 0.0) continue;
    const double s = (1.0 + fi) * std::log1p(fi) - fi * std::log(fi);
    acc += grid.weight(i) * s * grid.sqrt_node(i);
  }
  return kFourPiSqrt2 * acc;
}

double entropy(const Distribution& d) { return entropy(d.grid(), d.values()); }

TestFunction TestFunction::constant(double c) {
  return {[c](double) { return c; }, Shape::kAffine, "constant"};
}
TestFunction TestFunction::identity() {
  return {[](double x) { return x; }, Shape::kAffine, "identity"};
}
TestFunction TestFunction::square() {
  return {[](double x) { return x * x; }, Shape::kConvex, "square"};
}
TestFunction TestFunction::exponential() {
  return {[](double x) { return std::exp(x); }, Shape::kConvex, "exp"};
}
TestFunction TestFunction::square_root() {
  return {[](double x) { return std::sqrt(x); }, Shape::kConcave, "sqrt"};
}
TestFunction TestFunction::negative_square() {
  return {[](double x) { return -x * x; }, Shape::kConcave, "negative_square"};
}

SortedTriple sort_triple(double e1, double e2, double e3) {
  std::array<double, 3> v{e1, e2, e3};
  std::sort(v.begin(), v.end());
  return {v[0], v[1], v[2]};
}

double phi_triple(double x, double y, double z) {
  const double w = x + y - z;
  if (w <= 0.0) return 0.0;
  return std::sqrt(std::min(std::min(x, y), std::min(z, w)));
}

double h_phi(double x, double y, double z, const TestFunction& phi) {
  return phi(z) + phi(x + y - z) - phi(x) - phi(y);
}

double g_phi(double e1, double e2, double e3, const TestFunction& phi) {
  const auto [lo, mid, hi] = sort_triple(e1, e2, e3);
  double out = std::sqrt(lo) * (phi(hi + lo - mid) + phi(hi + mid - lo) - 2.0 * phi(hi));
  const double inner = mid + lo - hi;
  if (inner > 0.0) {
    out += std::sqrt(inner) * (phi(hi) + phi(inner) - phi(mid) - phi(lo));
  }
  return out / 3.0;
}

double g_phi_permutation_average(double e1, double e2, double e3, const TestFunction& phi) {
  std::array<double, 3> v{e1, e2, e3};
  std::sort(v.begin(), v.end());
  double acc = 0.0;
  do {
    const double w = phi_triple(v[0], v[1], v[2]);
    if (w > 0.0) acc += h_phi(v[0], v[1], v[2], phi) * w;
  } while (std::next_permutation(v.begin(), v.end()));
  return acc / 6.0;
}

double q_phi_pairing(double e1, double e2, double e3, const TestFunction& phi) {
  return phi(e3) + phi(e1 + e2 - e3) - 2.0 * phi(e1);
}

double concentration_functional(const DiscreteMeasure& m, double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("concentration functional: radius must be positive");
  }
  std::vector<Atom> inside;
  for (const auto& a : m.atoms()) {
    if (a.location <= 0.5 * radius && a.mass > 0.0) inside.push_back(a);
  }
  double acc = 0.0;
  for (const auto& a : inside) {
    for (const auto& b : inside) {
      for (const auto& c : inside) {
        const auto [lo, mid, hi] = sort_triple(a.location, b.location, c.location);
        if (mid <= 0.0) continue;
        const double ratio = (mid - lo) / mid;
        acc += a.mass * b.mass * c.mass * std::pow(mid / hi, 1.5) * ratio * ratio;
      }
    }
  }
  return acc / radius;
}

double concentration_functional(const Distribution& d, double radius) {
  if (!(radius > 0.0) || radius > d.grid().eps_max()) {
    throw std::invalid_argument("concentration functional: radius must lie in (0, eps_max]");
  }
  return concentration_functional(DiscreteMeasure::from_distribution(d), radius);
}

}  // namespace nordheim
