#include "spherestat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spherestat {

namespace {

constexpr double kMinNorm = 1e-6;
constexpr std::uint64_t kSaltUniformSample = 0x5048455245554E49ull;

void check_same_dim(const UnitVector& x, const UnitVector& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("dimension mismatch between sphere points");
  }
}

}  // namespace

UnitVector::UnitVector(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw std::invalid_argument("ambient dimension must be at least 2");
  }
  if (!coords_.allFinite()) {
    throw std::invalid_argument("coordinates must be finite");
  }
  const double norm = coords_.norm();
  if (norm < kMinNorm) {
    throw std::invalid_argument("vector norm below 1e-6, cannot normalize");
  }
  coords_ /= norm;
}

UnitVector::UnitVector(std::initializer_list<double> coords)
    : UnitVector(Eigen::Map<const Eigen::VectorXd>(
          coords.begin(), static_cast<Eigen::Index>(coords.size()))) {}

double UnitVector::dot(const UnitVector& other) const {
  check_same_dim(*this, other);
  return coords_.dot(other.coords_);
}

MetricPower::MetricPower(double r) : r_(r) {
  if (!(r > 0.0) || r > 1.0) {
    throw std::invalid_argument("metric power must lie in (0, 1]");
  }
}

UnitVector reflect(const UnitVector& x) {
  // negation preserves the norm bit for bit; skipping renormalization keeps
  // the reflection an exact involution
  return UnitVector(-x.coords(), UnitVector::AlreadyNormalized{});
}

double angular_distance(const UnitVector& x, const UnitVector& y,
                        MetricPower r) {
  check_same_dim(x, y);
  // 2 atan2(|x-y|, |x+y|) equals arccos(x.y) but stays fully conditioned
  // at both endpoints: arccos of a dot product loses ~8 digits near +-1,
  // which would put exact antipodes at pi - 2e-8 instead of pi.
  const double d = 2.0 * std::atan2((x.coords() - y.coords()).norm(),
                                    (x.coords() + y.coords()).norm());
  return r.value() == 1.0 ? d : std::pow(d, r.value());
}

double chord_distance(const UnitVector& x, const UnitVector& y) {
  check_same_dim(x, y);
  return (x.coords() - y.coords()).norm();
}

bool same_point(const UnitVector& x, const UnitVector& y, double tol) {
  return chord_distance(x, y) <= tol;
}

bool antipodal_points(const UnitVector& x, const UnitVector& y, double tol) {
  check_same_dim(x, y);
  return (x.coords() + y.coords()).norm() <= tol;
}

bool hemisphere_contains(const Hemisphere& h, const UnitVector& x) {
  return h.pole.dot(x) > 0.0;
}

bool partitioning_contains(const UnitVector& pole, const UnitVector& x) {
  const double c = pole.dot(x);
  if (c != 0.0) return c > 0.0;
  // On the boundary great sphere: take the lexicographically positive half.
  for (int i = 0; i < x.dim(); ++i) {
    if (x[i] != 0.0) return x[i] > 0.0;
  }
  return false;  // unreachable: unit vectors have a nonzero coordinate
}

Eigen::MatrixXd householder_to_last_axis(const UnitVector& pole) {
  const int n = pole.dim();
  Eigen::VectorXd v = pole.coords();
  v[n - 1] -= 1.0;
  const double vv = v.squaredNorm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  if (vv < 1e-24) return h;  // pole is already the last axis
  h.noalias() -= (2.0 / vv) * v * v.transpose();
  return h;
}

Eigen::VectorXd gnomonic_project(const UnitVector& x, const UnitVector& pole) {
  check_same_dim(x, pole);
  if (pole.dot(x) <= 0.0) {
    throw std::domain_error("point not in open hemisphere");
  }
  const int n = x.dim();
  Eigen::VectorXd rotated = householder_to_last_axis(pole) * x.coords();
  rotated /= rotated[n - 1];
  rotated[n - 1] = 1.0;
  return rotated;
}

UnitVector random_direction(int dim, Stream& stream) {
  for (;;) {
    Eigen::VectorXd g(dim);
    for (int i = 0; i < dim; ++i) g[i] = stream.next_normal();
    if (g.norm() >= kMinNorm) return UnitVector(std::move(g));
    // a Gaussian vector this close to the origin is all but impossible;
    // redraw keeps the stream deterministic either way
  }
}

std::vector<UnitVector> sample_uniform(int dim, int count,
                                       std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("dim must be at least 2");
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  Stream stream(seed, kSaltUniformSample);
  std::vector<UnitVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(random_direction(dim, stream));
  return out;
}

}  // namespace spherestat
