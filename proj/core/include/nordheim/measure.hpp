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
#include <optional>
#include <string>
#include <vector>

#include "nordheim/grid.hpp"

namespace nordheim {

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

// Finite list of point masses on [0, ∞).
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  // Throws MeasureError(kBadAtom) on a negative or non-finite location or mass.
  explicit DiscreteMeasure(std::vector<Atom> atoms);

  // Node masses g_i w_i with trapezoidal w_i.
  static DiscreteMeasure from_distribution(const Distribution& d);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const;
  // Mass of (lo, hi].
  double mass_in(double lo, double hi) const;
  // Mass of [0, r].
  double mass_upto(double r) const;
  double mass_at_zero() const;
  DiscreteMeasure scaled(double factor) const;

 private:
  std::vector<Atom> atoms_;
};

// I_k = (R b^{-k-1}, R b^{-k}], k = 0..k_max; I_k^E = I_{k-1} ∪ I_k ∪ I_{k+1}
// with I_{-1} empty.
class DyadicFamily {
 public:
  DyadicFamily(double b, double scale, std::size_t k_max);

  double base() const { return b_; }
  double scale() const { return scale_; }
  std::size_t k_max() const { return k_max_; }

  double lower(std::size_t k) const;
  double upper(std::size_t k) const;
  double extended_lower(std::size_t k) const { return lower(k + 1); }
  double extended_upper(std::size_t k) const { return upper(k == 0 ? 0 : k - 1); }
  bool contains(std::size_t k, double x) const { return x > lower(k) && x <= upper(k); }
  bool extended_contains(std::size_t k, double x) const {
    return x > extended_lower(k) && x <= extended_upper(k);
  }

  // Index k with x in I_k, for x in (0, R]; nullopt otherwise. Not limited to
  // k_max.
  std::optional<std::size_t> index_of(double x) const;

 private:
  double b_;
  double scale_;
  std::size_t k_max_;
};

// Throws std::invalid_argument on b <= 1 or R outside (0, 1].
DyadicFamily dyadic_intervals(double b, double scale, std::size_t k_max);

enum class PartitionCase { kConcentrated, kSeparated };

struct PartitionPick {
  std::size_t k = 0;
  double mass = 0.0;           // mass of I_k
  double cumulative_extended = 0.0;  // mass of ∪ I^E over picks so far
};

struct PartitionResult {
  PartitionCase which = PartitionCase::kConcentrated;
  double b = 2.0;
  double scale = 1.0;
  double delta = 0.0;
  double total_mass = 0.0;
  // Greedy picks in selection order; the last one closes the iteration.
  std::vector<PartitionPick> picks;

  // Concentrated case.
  std::size_t k = 0;
  double extended_mass = 0.0;

  // Separated case: U1 = ∪ I_k over u1_indices (all picks but the last),
  // U2 = [0, R] minus U1^E.
  std::vector<std::size_t> u1_indices;
  double eta = 0.0;
  double mass_u1 = 0.0;
  double mass_u2 = 0.0;
};

// Greedy selection of maximal-mass intervals, ties to the smallest k.
// Throws MeasureError on zero total mass, an atom at 0, or atoms outside
// [0, R].
PartitionResult partition_measure(const DiscreteMeasure& m, double b, double delta,
                                  double scale = 1.0);

// Outcome of re-measuring every claim of a PartitionResult against the atoms.
struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> failures;
};
CertificateCheck verify_partition(const DiscreteMeasure& m, const PartitionResult& r);

double partition_eta(double delta);

struct ExtendedIntervalMass {
  std::size_t n = 0;
  double mass = 0.0;
  bool in_a = false;  // mass >= R_{ℓ+1}^{θ1}
};

struct ScaleReport {
  std::size_t ell = 0;
  double radius = 0.0;  // R_ℓ = 2^{-ℓ}
  double base = 0.0;    // b_ℓ = 1 + R_ℓ^{θ2}
  double mass = 0.0;    // ∫_[0, R_ℓ] g
  double threshold = 0.0;
  bool in_b = false;    // mass >= R_ℓ^{θ1}
  double a_threshold = 0.0;
  // Only intervals n >= 1 that carry mass.
  std::vector<ExtendedIntervalMass> extended;
};

struct ConcentrationReport {
  double t_ref = 0.0;
  std::vector<ScaleReport> scales;
};

ConcentrationReport concentration_report(const Distribution& d, double theta1, double theta2,
                                         std::size_t ell_max, double t_ref);
ConcentrationReport concentration_report(const DiscreteMeasure& m, double theta1,
                                         double theta2, std::size_t ell_max, double t_ref);

}  // namespace nordheim
