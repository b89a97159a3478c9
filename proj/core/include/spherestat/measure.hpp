#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spherestat/geometry.hpp"

namespace spherestat {

// Finitely supported signed measure on a sphere: atoms plus real weights.
// Construction merges atoms closer than the angular tolerance and prunes
// atoms whose merged weight is exactly zero, so distinct probability
// measures, signed differences and reflections all share one
// representation.
class DiscreteMeasure {
 public:
  // Angular scale for atom dedup, antipodal pairing and atom matching.
  static constexpr double kAtomTolerance = kPointTolerance;
  static constexpr double kProbabilityTolerance = 1e-12;

  DiscreteMeasure() = default;  // the zero measure
  DiscreteMeasure(std::vector<UnitVector> atoms, std::vector<double> weights);

  static DiscreteMeasure dirac(const UnitVector& x);
  static DiscreteMeasure uniform_on(const std::vector<UnitVector>& points);

  const std::vector<UnitVector>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  int size() const { return static_cast<int>(atoms_.size()); }
  bool empty() const { return atoms_.empty(); }

  // Ambient dimension of the support; 0 for the zero measure.
  int dim() const { return atoms_.empty() ? 0 : atoms_.front().dim(); }

  double total_mass() const;

  // Sum of absolute atom weights (the total variation norm).
  double total_variation() const;

  // All weights nonnegative and total mass within 1e-12 of 1.
  bool is_probability() const;

 private:
  std::vector<UnitVector> atoms_;
  std::vector<double> weights_;
};

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b);
DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b);
DiscreteMeasure operator*(double scale, const DiscreteMeasure& m);

// Pushforward under the antipodal map: atoms negated, weights kept.
DiscreteMeasure pushforward_reflect(const DiscreteMeasure& m);

// theta - R_* theta. Total mass 0; applying twice doubles the result.
DiscreteMeasure antisymmetrize(const DiscreteMeasure& m);

// Maximal reflection-invariant minorant of a positive measure: each
// antipodal atom pair {x, -x} keeps min of the two weights on both sides,
// unpaired atoms drop out. Rejects signed input.
DiscreteMeasure invariant_part(const DiscreteMeasure& m);

DiscreteMeasure positive_part(const DiscreteMeasure& m);
DiscreteMeasure negative_part(const DiscreteMeasure& m);

// Atoms strictly inside the open hemisphere, weights kept.
DiscreteMeasure restrict_to(const DiscreteMeasure& m, const Hemisphere& h);

// Same atom sets under one-to-one matching at atom_tol with weights within
// weight_tol.
bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b,
                  double weight_tol,
                  double atom_tol = DiscreteMeasure::kAtomTolerance);

// Mass of the open hemisphere H_pole, optionally intersected with a second
// open hemisphere (the fingerprint functional b_mu).
double hemisphere_mass(const DiscreteMeasure& m, const UnitVector& pole,
                       const std::optional<Hemisphere>& restriction = {});

// Mass of the tie-broken partitioning hemisphere K_pole.
double partitioning_mass(const DiscreteMeasure& m, const UnitVector& pole);

// Hemisphere masses of one measure over a fixed direction sample. A finite
// stand-in for the dense set of directions the injectivity theorems quantify
// over; equality of fingerprints is evidence, not proof, of equality.
struct HemisphereFingerprint {
  std::vector<UnitVector> directions;
  std::vector<double> masses;
  std::optional<Hemisphere> restricted_to;
};

HemisphereFingerprint fingerprint(
    const DiscreteMeasure& m, const std::vector<UnitVector>& directions,
    const std::optional<Hemisphere>& restriction = {});

// A pole whose boundary great sphere misses every atom of every input
// measure (|pole . atom| > 1e-12), found by randomized search: uniform
// poles avoid the finitely many atom boundaries almost surely. Retries up
// to 100 draws, then perturbs the best draw deterministically.
UnitVector find_null_great_sphere(std::span<const DiscreteMeasure> measures,
                                  std::uint64_t seed);

}  // namespace spherestat
