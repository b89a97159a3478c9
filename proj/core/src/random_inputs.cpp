#include "spherestat/random_inputs.hpp"

#include <Eigen/QR>
#include <cmath>
#include <stdexcept>

namespace spherestat {

Eigen::VectorXd random_sum_zero(int n, Stream& stream) {
  if (n < 2) throw std::invalid_argument("need at least 2 entries");
  for (;;) {
    Eigen::VectorXd alpha(n);
    for (int i = 0; i < n; ++i) alpha[i] = stream.next_normal();
    alpha.array() -= alpha.mean();
    const double norm = alpha.norm();
    if (norm > 1e-9) return alpha / norm;
  }
}

DiscreteMeasure random_probability_measure(int dim, int atoms,
                                           Stream& stream) {
  if (atoms < 1) throw std::invalid_argument("need at least one atom");
  std::vector<UnitVector> points;
  std::vector<double> weights;
  points.reserve(static_cast<std::size_t>(atoms));
  weights.reserve(static_cast<std::size_t>(atoms));
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    points.push_back(random_direction(dim, stream));
    // weights in [0.1, 1.1): bounded away from zero so no atom is ever
    // numerically negligible
    const double w = 0.1 + stream.next_unit();
    weights.push_back(w);
    total += w;
  }
  for (double& w : weights) w /= total;
  return DiscreteMeasure(std::move(points), std::move(weights));
}

DiscreteMeasure random_measure_on_hemisphere(const Hemisphere& h, int atoms,
                                             Stream& stream) {
  if (atoms < 1) throw std::invalid_argument("need at least one atom");
  std::vector<UnitVector> points;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    UnitVector x = random_direction(h.pole.dim(), stream);
    double c = h.pole.dot(x);
    if (c < 0.0) {
      x = reflect(x);
      c = -c;
    }
    if (c <= 1e-9) {
      --i;  // grazed the boundary; redraw
      continue;
    }
    points.push_back(std::move(x));
    const double w = 0.1 + stream.next_unit();
    weights.push_back(w);
    total += w;
  }
  for (double& w : weights) w /= total;
  return DiscreteMeasure(std::move(points), std::move(weights));
}

DiscreteMeasure random_r_invariant_measure(int dim, int pairs,
                                           Stream& stream) {
  if (pairs < 1) throw std::invalid_argument("need at least one pair");
  std::vector<UnitVector> points;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const UnitVector x = random_direction(dim, stream);
    const double w = 0.1 + stream.next_unit();
    points.push_back(x);
    points.push_back(reflect(x));
    weights.push_back(w);
    weights.push_back(w);
    total += 2.0 * w;
  }
  for (double& w : weights) w /= total;
  return DiscreteMeasure(std::move(points), std::move(weights));
}

Eigen::MatrixXd random_orthogonal(int dim, Stream& stream) {
  Eigen::MatrixXd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = stream.next_normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace spherestat
