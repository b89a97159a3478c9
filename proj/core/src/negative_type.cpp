#include "spherestat/negative_type.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spherestat {

namespace {

// An exactly-null configuration produces restricted eigenvalues at
// arithmetic-noise scale (~1e-15 * pi * n at desk sizes), three orders
// below this threshold.
constexpr double kEigenvalueThreshold = 1e-10;

// Eigenvectors of P D P with no real sum-zero component belong to the
// ones-direction; they are artifacts of embedding the restriction in the
// full space and carry no information about the form.
constexpr double kProjectionFloor = 1e-8;

}  // namespace

const char* to_string(StrictnessVerdict v) {
  switch (v) {
    case StrictnessVerdict::strictly_negative:
      return "strictly_negative";
    case StrictnessVerdict::null_direction_found:
      return "null_direction_found";
    case StrictnessVerdict::indefinite:
      return "indefinite";
  }
  return "unknown";
}

DistanceMatrix distance_matrix(const std::vector<UnitVector>& points,
                               MetricPower r) {
  if (points.empty()) {
    throw std::invalid_argument("distance matrix needs at least one point");
  }
  const int n = static_cast<int>(points.size());
  for (int i = 1; i < n; ++i) {
    if (points[i].dim() != points[0].dim()) {
      throw std::invalid_argument("points differ in ambient dimension");
    }
  }
  Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = angular_distance(points[i], points[j], r);
      entries(i, j) = d;
      entries(j, i) = d;
    }
  }
  return DistanceMatrix{std::move(entries), points, r};
}

double quadratic_form(const DistanceMatrix& dm, const Eigen::VectorXd& alpha) {
  if (alpha.size() != dm.entries.rows()) {
    throw std::invalid_argument("alpha length does not match matrix size");
  }
  return alpha.dot(dm.entries * alpha);
}

StrictnessCertificate strictness_certificate(const DistanceMatrix& dm) {
  const int n = static_cast<int>(dm.points.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (same_point(dm.points[i], dm.points[j])) {
        throw std::invalid_argument(
            "strictness undefined with repeated points");
      }
    }
  }
  if (n == 1) {
    // the sum-zero subspace is trivial; the form has no nonzero inputs
    return {-std::numeric_limits<double>::infinity(),
            StrictnessVerdict::strictly_negative, std::nullopt};
  }

  const Eigen::MatrixXd projector =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  const Eigen::MatrixXd restricted = projector * dm.entries * projector;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(restricted);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }

  // Keep eigenpairs whose eigenvector survives projection to the sum-zero
  // subspace; within a near-degenerate cluster at the maximum, prefer the
  // best-projected vector so the witness is numerically meaningful.
  double max_eigenvalue = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const Eigen::VectorXd projected = projector * solver.eigenvectors().col(k);
    if (projected.norm() > kProjectionFloor &&
        solver.eigenvalues()[k] > max_eigenvalue) {
      max_eigenvalue = solver.eigenvalues()[k];
    }
  }
  int witness_index = -1;
  double witness_projection = 0.0;
  for (int k = 0; k < n; ++k) {
    if (solver.eigenvalues()[k] < max_eigenvalue - 1e-12) continue;
    const double proj_norm = (projector * solver.eigenvectors().col(k)).norm();
    if (proj_norm > witness_projection) {
      witness_projection = proj_norm;
      witness_index = k;
    }
  }

  StrictnessCertificate cert{max_eigenvalue,
                             StrictnessVerdict::null_direction_found,
                             std::nullopt};
  if (max_eigenvalue < -kEigenvalueThreshold) {
    cert.verdict = StrictnessVerdict::strictly_negative;
  } else if (max_eigenvalue > kEigenvalueThreshold) {
    cert.verdict = StrictnessVerdict::indefinite;
  }
  if (witness_index >= 0) {
    Eigen::VectorXd witness =
        projector * solver.eigenvectors().col(witness_index);
    witness /= witness.norm();
    cert.witness = std::move(witness);
  }
  return cert;
}

std::vector<std::pair<int, int>> antipodal_pairs(
    const std::vector<UnitVector>& points) {
  std::vector<std::pair<int, int>> pairs;
  const int n = static_cast<int>(points.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (antipodal_points(points[i], points[j])) {
        pairs.emplace_back(i, j);
      }
    }
  }
  return pairs;
}

}  // namespace spherestat
