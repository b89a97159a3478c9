#pragma once

#include <Eigen/Core>
#include <optional>
#include <utility>
#include <vector>

#include "spherestat/geometry.hpp"

namespace spherestat {

// Pairwise angular distances d(x_i, x_j)^r of a point list. Symmetric,
// zero diagonal, entries in [0, pi^r].
struct DistanceMatrix {
  Eigen::MatrixXd entries;
  std::vector<UnitVector> points;
  MetricPower power;
};

DistanceMatrix distance_matrix(const std::vector<UnitVector>& points,
                               MetricPower r = {});

// sum_{i,j} alpha_i alpha_j d(x_i, x_j)^r. Nonpositive for sum-zero alpha
// on spherical point sets; the sum-zero constraint is the caller's, the
// form is evaluable either way.
double quadratic_form(const DistanceMatrix& dm, const Eigen::VectorXd& alpha);

enum class StrictnessVerdict {
  strictly_negative,    // form < 0 for every nonzero sum-zero alpha
  null_direction_found, // some nonzero sum-zero alpha gives 0
  indefinite            // positive restricted eigenvalue: not a sphere metric
};

const char* to_string(StrictnessVerdict v);

// Spectral certificate for strictness: the maximum of the form over
// unit-norm sum-zero weight vectors, with a maximizing direction as
// witness. Sampling alphas would miss the equality cases (a measure-zero
// set), so the maximum is computed exactly on the restricted subspace.
struct StrictnessCertificate {
  double max_restricted_eigenvalue;
  StrictnessVerdict verdict;
  std::optional<Eigen::VectorXd> witness;
};

// Eigendecomposition of P D P with P = I - (1/n) ones, keeping eigenpairs
// whose eigenvector has a nonzero sum-zero component. Rejects point lists
// with duplicates at the atom tolerance.
StrictnessCertificate strictness_certificate(const DistanceMatrix& dm);

// Index pairs (i, j), i < j, at angular distance > pi - 1e-9.
std::vector<std::pair<int, int>> antipodal_pairs(
    const std::vector<UnitVector>& points);

}  // namespace spherestat
