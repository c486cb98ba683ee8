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

#include "nordheim/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "nordheim/error.hpp"

namespace nordheim {
namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Masses of the I_k that carry mass, keyed by k.
std::map<std::size_t, double> interval_masses(const DiscreteMeasure& m,
                                              const DyadicFamily& family) {
  std::map<std::size_t, double> masses;
  for (const auto& a : m.atoms()) {
    if (a.mass == 0.0) continue;
    if (auto k = family.index_of(a.location)) masses[*k] += a.mass;
  }
  return masses;
}

double mass_of(const std::map<std::size_t, double>& masses, std::size_t k) {
  auto it = masses.find(k);
  return it == masses.end() ? 0.0 : it->second;
}

double extended_mass(const std::map<std::size_t, double>& masses, std::size_t k) {
  double s = mass_of(masses, k) + mass_of(masses, k + 1);
  if (k > 0) s += mass_of(masses, k - 1);
  return s;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.location) || !std::isfinite(a.mass) || a.location < 0.0 ||
        a.mass < 0.0) {
      throw MeasureError(MeasureError::Kind::kBadAtom,
                         "atom (" + fmt_double(a.location) + ", " + fmt_double(a.mass) +
                             ") needs a finite non-negative location and mass");
    }
  }
}

DiscreteMeasure DiscreteMeasure::from_distribution(const Distribution& d) {
  const auto& grid = d.grid();
  std::vector<Atom> atoms;
  atoms.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double mass = d.density(i) * grid.weight(i);
    if (mass > 0.0) atoms.push_back({grid.node(i), mass});
  }
  return DiscreteMeasure(std::move(atoms));
}

double DiscreteMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

double DiscreteMeasure::mass_in(double lo, double hi) const {
  double s = 0.0;
  for (const auto& a : atoms_) {
    if (a.location > lo && a.location <= hi) s += a.mass;
  }
  return s;
}

double DiscreteMeasure::mass_upto(double r) const {
  double s = 0.0;
  for (const auto& a : atoms_) {
    if (a.location <= r) s += a.mass;
  }
  return s;
}

double DiscreteMeasure::mass_at_zero() const {
  double s = 0.0;
  for (const auto& a : atoms_) {
    if (a.location == 0.0) s += a.mass;
  }
  return s;
}

DiscreteMeasure DiscreteMeasure::scaled(double factor) const {
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.location *= factor;
  return DiscreteMeasure(std::move(atoms));
}

DyadicFamily::DyadicFamily(double b, double scale, std::size_t k_max)
    : b_(b), scale_(scale), k_max_(k_max) {
  if (!(b > 1.0) || !std::isfinite(b)) {
    throw std::invalid_argument("dyadic family: base must exceed 1, got " + fmt_double(b));
  }
  if (!(scale > 0.0) || scale > 1.0) {
    throw std::invalid_argument("dyadic family: scale must lie in (0, 1], got " +
                                fmt_double(scale));
  }
}

double DyadicFamily::lower(std::size_t k) const {
  return scale_ * std::pow(b_, -static_cast<double>(k + 1));
}

double DyadicFamily::upper(std::size_t k) const {
  return scale_ * std::pow(b_, -static_cast<double>(k));
}

std::optional<std::size_t> DyadicFamily::index_of(double x) const {
  if (!(x > 0.0) || x > scale_) return std::nullopt;
  double guess = std::floor(std::log(scale_ / x) / std::log(b_));
  auto k = static_cast<std::size_t>(std::max(0.0, guess));
  // The logarithm can land one off near interval ends.
  while (k > 0 && x > upper(k)) --k;
  while (x <= lower(k)) ++k;
  return k;
}

DyadicFamily dyadic_intervals(double b, double scale, std::size_t k_max) {
  return DyadicFamily(b, scale, k_max);
}

double partition_eta(double delta) { return std::min(1.0 / 3.0 - delta / 2.0, delta / 6.0); }

PartitionResult partition_measure(const DiscreteMeasure& m, double b, double delta,
                                  double scale) {
  if (!(delta > 0.0) || !(delta < 2.0 / 3.0)) {
    throw std::invalid_argument("partition: delta must lie in (0, 2/3), got " +
                                fmt_double(delta));
  }
  const DyadicFamily family(b, scale, 0);
  for (const auto& a : m.atoms()) {
    if (a.location > scale && a.mass > 0.0) {
      throw MeasureError(MeasureError::Kind::kBadAtom,
                         "atom at " + fmt_double(a.location) + " lies outside [0, " +
                             fmt_double(scale) + "]");
    }
  }
  if (m.mass_at_zero() > 0.0) {
    throw MeasureError(MeasureError::Kind::kAtomAtZero,
                       "measure has an atom of mass " + fmt_double(m.mass_at_zero()) +
                           " at 0");
  }
  const double total = m.total_mass();
  if (!(total > 0.0)) {
    throw MeasureError(MeasureError::Kind::kZeroMeasure, "measure has zero total mass");
  }

  const auto masses = interval_masses(m, family);
  const double target = (1.0 - delta) * total;

  PartitionResult r;
  r.b = b;
  r.scale = scale;
  r.delta = delta;
  r.total_mass = total;
  r.eta = partition_eta(delta);

  std::set<std::size_t> available;
  for (const auto& [k, mass] : masses) available.insert(k);
  std::set<std::size_t> covered;  // indices inside ∪ I^E of the picks so far
  double cumulative = 0.0;

  while (!available.empty()) {
    // Ascending iteration keeps the smallest k on ties.
    std::size_t best = *available.begin();
    for (std::size_t k : available) {
      if (mass_of(masses, k) > mass_of(masses, best)) best = k;
    }
    for (std::size_t j : {best == 0 ? best : best - 1, best, best + 1}) {
      available.erase(j);
      if (covered.insert(j).second) cumulative += mass_of(masses, j);
    }
    r.picks.push_back({best, mass_of(masses, best), cumulative});

    if (r.picks.size() == 1 && extended_mass(masses, best) >= target) {
      r.which = PartitionCase::kConcentrated;
      r.k = best;
      r.extended_mass = extended_mass(masses, best);
      return r;
    }
    if (cumulative >= target) break;
  }

  // Picks exhaust every massive interval, so the loop ends with
  // cumulative = total >= target at the latest.
  r.which = PartitionCase::kSeparated;
  for (std::size_t j = 0; j + 1 < r.picks.size(); ++j) {
    r.u1_indices.push_back(r.picks[j].k);
    r.mass_u1 += r.picks[j].mass;
  }
  std::set<std::size_t> u1_extended;
  for (std::size_t k : r.u1_indices) {
    if (k > 0) u1_extended.insert(k - 1);
    u1_extended.insert(k);
    u1_extended.insert(k + 1);
  }
  for (const auto& [k, mass] : masses) {
    if (!u1_extended.count(k)) r.mass_u2 += mass;
  }
  return r;
}

CertificateCheck verify_partition(const DiscreteMeasure& m, const PartitionResult& r) {
  CertificateCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.failures.push_back(std::move(msg));
  };
  const DyadicFamily family(r.b, r.scale, 0);
  const double total = m.total_mass();
  // Relative slack for re-summing the same atoms in a different order.
  const double slack = 1e-12 * total;

  auto in_interval = [&](std::size_t k, double x) { return family.contains(k, x); };
  auto in_extended = [&](std::size_t k, double x) { return family.extended_contains(k, x); };

  if (r.which == PartitionCase::kConcentrated) {
    double ext = 0.0;
    for (const auto& a : m.atoms()) {
      if (in_extended(r.k, a.location)) ext += a.mass;
    }
    if (ext < (1.0 - r.delta) * total - slack) {
      fail("Q1: extended-interval mass " + fmt_double(ext) + " below (1-delta) total");
    }
    if (std::abs(ext - r.extended_mass) > slack) {
      fail("Q1: reported extended mass " + fmt_double(r.extended_mass) + ", measured " +
           fmt_double(ext));
    }
    return check;
  }

  const auto& ks = r.u1_indices;
  if (ks.empty()) {
    fail("separated case with empty U1");
    return check;
  }
  double u1 = 0.0;
  double u2 = 0.0;
  for (const auto& a : m.atoms()) {
    bool in_u1 = false;
    bool in_u1e = false;
    for (std::size_t k : ks) {
      in_u1 = in_u1 || in_interval(k, a.location);
      in_u1e = in_u1e || in_extended(k, a.location);
    }
    if (in_u1) u1 += a.mass;
    if (!in_u1e) u2 += a.mass;
  }
  if (std::abs(u1 - r.mass_u1) > slack) {
    fail("Q2: reported mass(U1) " + fmt_double(r.mass_u1) + ", measured " + fmt_double(u1));
  }
  if (std::abs(u2 - r.mass_u2) > slack) {
    fail("Q2: reported mass(U2) " + fmt_double(r.mass_u2) + ", measured " + fmt_double(u2));
  }
  const double eta = partition_eta(r.delta);
  if (std::abs(eta - r.eta) > 1e-15) fail("eta differs from min(1/3 - delta/2, delta/6)");
  if (u1 < eta * total - slack) fail("Q2: mass(U1) = " + fmt_double(u1) + " below eta total");
  if (u2 < eta * total - slack) fail("Q2: mass(U2) = " + fmt_double(u2) + " below eta total");

  // Q2b: I_{k_m} disjoint from the earlier extended intervals.
  for (std::size_t mi = 1; mi < ks.size(); ++mi) {
    for (std::size_t j = 0; j < mi; ++j) {
      const auto gap = ks[mi] > ks[j] ? ks[mi] - ks[j] : ks[j] - ks[mi];
      if (gap < 2) fail("Q2b: I_" + std::to_string(ks[mi]) + " meets I_" +
                        std::to_string(ks[j]) + "^E");
    }
  }

  std::vector<double> a(ks.size(), 0.0);
  for (std::size_t j = 0; j < ks.size(); ++j) {
    for (const auto& atom : m.atoms()) {
      if (in_interval(ks[j], atom.location)) a[j] += atom.mass;
    }
  }
  // Q2c: Σ a_j² <= a_1² + Σ_{j>=2} a_1 a_j.
  double lhs = 0.0;
  double rhs = a[0] * a[0];
  for (std::size_t j = 0; j < a.size(); ++j) lhs += a[j] * a[j];
  for (std::size_t j = 1; j < a.size(); ++j) rhs += a[0] * a[j];
  if (lhs > rhs * (1.0 + 1e-12)) fail("Q2c: quadratic domination fails");
  // Q2d
  if (!(a[0] < (1.0 - r.delta) * total + slack)) {
    fail("Q2d: mass(I_k1) = " + fmt_double(a[0]) + " not below (1-delta) total");
  }
  return check;
}

ConcentrationReport concentration_report(const DiscreteMeasure& m, double theta1,
                                         double theta2, std::size_t ell_max, double t_ref) {
  ConcentrationReport report;
  report.t_ref = t_ref;
  for (std::size_t ell = 0; ell <= ell_max; ++ell) {
    ScaleReport s;
    s.ell = ell;
    s.radius = std::ldexp(1.0, -static_cast<int>(ell));
    s.base = 1.0 + std::pow(s.radius, theta2);
    s.mass = m.mass_upto(s.radius);
    s.threshold = std::pow(s.radius, theta1);
    s.in_b = s.mass >= s.threshold;
    s.a_threshold = std::pow(0.5 * s.radius, theta1);

    const DyadicFamily family(s.base, s.radius, 0);
    const auto masses = interval_masses(m, family);
    // Extended intervals with mass are those adjacent to a massive I_k.
    std::set<std::size_t> candidates;
    for (const auto& [k, mass] : masses) {
      if (k > 0) candidates.insert(k - 1);
      candidates.insert(k);
      candidates.insert(k + 1);
    }
    for (std::size_t n : candidates) {
      if (n == 0) continue;
      const double ext = extended_mass(masses, n);
      if (ext <= 0.0) continue;
      s.extended.push_back({n, ext, ext >= s.a_threshold});
    }
    report.scales.push_back(std::move(s));
  }
  return report;
}

ConcentrationReport concentration_report(const Distribution& d, double theta1, double theta2,
                                         std::size_t ell_max, double t_ref) {
  return concentration_report(DiscreteMeasure::from_distribution(d), theta1, theta2, ell_max,
                              t_ref);
}

}  // namespace nordheim
