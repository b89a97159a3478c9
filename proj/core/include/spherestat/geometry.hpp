#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "spherestat/rng.hpp"

namespace spherestat {

// Angular scale below which two sphere points count as the same point and
// within which a pair counts as antipodal. Shared by atom dedup, antipodal
// detection and duplicate-point checks so the modules agree on identity.
inline constexpr double kPointTolerance = 1e-9;

// Point on the unit sphere S^n embedded in R^{n+1}. Construction
// renormalizes and rejects inputs of norm below 1e-6 (garbage) or ambient
// dimension below 2.
class UnitVector {
 public:
  explicit UnitVector(Eigen::VectorXd coords);
  UnitVector(std::initializer_list<double> coords);

  const Eigen::VectorXd& coords() const { return coords_; }

  // Ambient dimension n+1.
  int dim() const { return static_cast<int>(coords_.size()); }

  double dot(const UnitVector& other) const;
  double operator[](int i) const { return coords_[i]; }

 private:
  struct AlreadyNormalized {};
  UnitVector(Eigen::VectorXd coords, AlreadyNormalized)
      : coords_(std::move(coords)) {}
  friend UnitVector reflect(const UnitVector& x);

  Eigen::VectorXd coords_;
};

// Exponent for the powered metric d^r, r in (0, 1]. r = 1 is the plain
// angular metric; r < 1 keeps strictness even through antipodal symmetry.
class MetricPower {
 public:
  MetricPower() = default;
  explicit MetricPower(double r);
  double value() const { return r_; }

 private:
  double r_ = 1.0;
};

// Open hemisphere H_t = {x : t . x > 0} with pole t.
struct Hemisphere {
  UnitVector pole;
};

// Antipodal map x -> -x.
UnitVector reflect(const UnitVector& x);

// Great-circle distance raised to the metric power: arccos(x . y)^r,
// in [0, pi^r]. The dot product is clamped to [-1, 1] before arccos.
double angular_distance(const UnitVector& x, const UnitVector& y,
                        MetricPower r = {});

// Chord (straight-line) distance between unit vectors. Agrees with the
// angle to within theta^3/24; used for identity tests at the point
// tolerance, where arccos of a dot product bottoms out near 1e-8 and
// cannot resolve 1e-9.
double chord_distance(const UnitVector& x, const UnitVector& y);

// x and y within tol of the same point / of an antipodal pair, measured
// by chord distance.
bool same_point(const UnitVector& x, const UnitVector& y,
                double tol = kPointTolerance);
bool antipodal_points(const UnitVector& x, const UnitVector& y,
                      double tol = kPointTolerance);

// Strict membership; boundary points (pole . x == 0) are outside.
bool hemisphere_contains(const Hemisphere& h, const UnitVector& x);

// Tie-broken hemisphere membership: the member set K and its reflection
// -K partition the sphere, and the interior of K is the open hemisphere
// around pole. Boundary points belong to K iff their first nonzero
// coordinate is positive.
bool partitioning_contains(const UnitVector& pole, const UnitVector& x);

// Symmetric orthogonal involution mapping pole onto the last coordinate
// axis (identity when pole already is the last axis).
Eigen::MatrixXd householder_to_last_axis(const UnitVector& pole);

// Central (gnomonic) projection of the open hemisphere around pole onto
// the affine hyperplane {y : pole . y = 1}, expressed in coordinates
// where pole is the last axis. The last output coordinate is exactly 1.
// Throws std::domain_error for points outside the open hemisphere.
Eigen::VectorXd gnomonic_project(const UnitVector& x, const UnitVector& pole);

// One uniform draw on S^{dim-1} (normalized Gaussian vector).
UnitVector random_direction(int dim, Stream& stream);

// count independent uniform draws on S^{dim-1}; dim is the ambient
// dimension. Deterministic given seed.
std::vector<UnitVector> sample_uniform(int dim, int count,
                                       std::uint64_t seed);

}  // namespace spherestat
