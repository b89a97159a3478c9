#include "spherestat/measure.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace spherestat {

namespace {

constexpr std::uint64_t kSaltNullSphere = 0x4E554C4C53504852ull;
constexpr double kBoundaryClearance = 1e-12;

bool atoms_close(const UnitVector& a, const UnitVector& b) {
  return same_point(a, b, DiscreteMeasure::kAtomTolerance);
}

bool atoms_antipodal(const UnitVector& a, const UnitVector& b) {
  return antipodal_points(a, b, DiscreteMeasure::kAtomTolerance);
}

void check_pole_dim(const DiscreteMeasure& m, const UnitVector& pole) {
  if (!m.empty() && m.dim() != pole.dim()) {
    throw std::invalid_argument("dimension mismatch between measure and pole");
  }
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<UnitVector> atoms,
                                 std::vector<double> weights) {
  if (atoms.size() != weights.size()) {
    throw std::invalid_argument("atoms and weights differ in length");
  }
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].dim() != atoms[0].dim()) {
      throw std::invalid_argument("atoms differ in ambient dimension");
    }
  }
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(weights[i])) {
      throw std::invalid_argument("weights must be finite");
    }
    bool merged = false;
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
      if (atoms_close(atoms_[j], atoms[i])) {
        weights_[j] += weights[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      atoms_.push_back(std::move(atoms[i]));
      weights_.push_back(weights[i]);
    }
  }
  // prune atoms whose merged weight cancelled to exactly zero
  std::size_t kept = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (weights_[i] == 0.0) continue;
    if (kept != i) {
      atoms_[kept] = std::move(atoms_[i]);
      weights_[kept] = weights_[i];
    }
    ++kept;
  }
  atoms_.erase(atoms_.begin() + static_cast<std::ptrdiff_t>(kept),
               atoms_.end());
  weights_.resize(kept);
}

DiscreteMeasure DiscreteMeasure::dirac(const UnitVector& x) {
  return DiscreteMeasure({x}, {1.0});
}

DiscreteMeasure DiscreteMeasure::uniform_on(
    const std::vector<UnitVector>& points) {
  if (points.empty()) {
    throw std::invalid_argument("uniform measure needs at least one point");
  }
  return DiscreteMeasure(
      points,
      std::vector<double>(points.size(), 1.0 / static_cast<double>(points.size())));
}

double DiscreteMeasure::total_mass() const {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum;
}

double DiscreteMeasure::total_variation() const {
  double sum = 0.0;
  for (double w : weights_) sum += std::abs(w);
  return sum;
}

bool DiscreteMeasure::is_probability() const {
  for (double w : weights_) {
    if (w < 0.0) return false;
  }
  return std::abs(total_mass() - 1.0) <= kProbabilityTolerance;
}

DiscreteMeasure operator+(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  std::vector<UnitVector> atoms = a.atoms();
  std::vector<double> weights = a.weights();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  weights.insert(weights.end(), b.weights().begin(), b.weights().end());
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

DiscreteMeasure operator-(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  return a + (-1.0 * b);
}

DiscreteMeasure operator*(double scale, const DiscreteMeasure& m) {
  std::vector<double> weights = m.weights();
  for (double& w : weights) w *= scale;
  return DiscreteMeasure(m.atoms(), std::move(weights));
}

DiscreteMeasure pushforward_reflect(const DiscreteMeasure& m) {
  std::vector<UnitVector> atoms;
  atoms.reserve(m.atoms().size());
  for (const UnitVector& x : m.atoms()) atoms.push_back(reflect(x));
  return DiscreteMeasure(std::move(atoms), m.weights());
}

DiscreteMeasure antisymmetrize(const DiscreteMeasure& m) {
  return m - pushforward_reflect(m);
}

DiscreteMeasure invariant_part(const DiscreteMeasure& m) {
  for (double w : m.weights()) {
    if (w < 0.0) {
      throw std::invalid_argument(
          "invariant part defined for positive measures");
    }
  }
  std::vector<UnitVector> atoms;
  std::vector<double> weights;
  const int n = m.size();
  std::vector<bool> paired(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (paired[i]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (paired[j]) continue;
      if (atoms_antipodal(m.atoms()[i], m.atoms()[j])) {
        const double w = std::min(m.weights()[i], m.weights()[j]);
        atoms.push_back(m.atoms()[i]);
        weights.push_back(w);
        atoms.push_back(m.atoms()[j]);
        weights.push_back(w);
        paired[i] = paired[j] = true;
        break;
      }
    }
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

DiscreteMeasure positive_part(const DiscreteMeasure& m) {
  std::vector<UnitVector> atoms;
  std::vector<double> weights;
  for (int i = 0; i < m.size(); ++i) {
    if (m.weights()[i] > 0.0) {
      atoms.push_back(m.atoms()[i]);
      weights.push_back(m.weights()[i]);
    }
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

DiscreteMeasure negative_part(const DiscreteMeasure& m) {
  return positive_part(-1.0 * m);
}

DiscreteMeasure restrict_to(const DiscreteMeasure& m, const Hemisphere& h) {
  check_pole_dim(m, h.pole);
  std::vector<UnitVector> atoms;
  std::vector<double> weights;
  for (int i = 0; i < m.size(); ++i) {
    if (hemisphere_contains(h, m.atoms()[i])) {
      atoms.push_back(m.atoms()[i]);
      weights.push_back(m.weights()[i]);
    }
  }
  return DiscreteMeasure(std::move(atoms), std::move(weights));
}

bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b,
                  double weight_tol, double atom_tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(static_cast<std::size_t>(b.size()), false);
  for (int i = 0; i < a.size(); ++i) {
    bool matched = false;
    for (int j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (same_point(a.atoms()[i], b.atoms()[j], atom_tol) &&
          std::abs(a.weights()[i] - b.weights()[j]) <= weight_tol) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

double hemisphere_mass(const DiscreteMeasure& m, const UnitVector& pole,
                       const std::optional<Hemisphere>& restriction) {
  check_pole_dim(m, pole);
  if (restriction) check_pole_dim(m, restriction->pole);
  double sum = 0.0;
  for (int i = 0; i < m.size(); ++i) {
    const UnitVector& x = m.atoms()[i];
    if (pole.dot(x) <= 0.0) continue;
    if (restriction && restriction->pole.dot(x) <= 0.0) continue;
    sum += m.weights()[i];
  }
  return sum;
}

double partitioning_mass(const DiscreteMeasure& m, const UnitVector& pole) {
  check_pole_dim(m, pole);
  double sum = 0.0;
  for (int i = 0; i < m.size(); ++i) {
    if (partitioning_contains(pole, m.atoms()[i])) sum += m.weights()[i];
  }
  return sum;
}

HemisphereFingerprint fingerprint(
    const DiscreteMeasure& m, const std::vector<UnitVector>& directions,
    const std::optional<Hemisphere>& restriction) {
  if (directions.empty()) {
    throw std::invalid_argument("fingerprint needs at least one direction");
  }
  HemisphereFingerprint fp{directions, {}, restriction};
  fp.masses.reserve(directions.size());
  for (const UnitVector& t : directions) {
    fp.masses.push_back(hemisphere_mass(m, t, restriction));
  }
  return fp;
}

UnitVector find_null_great_sphere(std::span<const DiscreteMeasure> measures,
                                  std::uint64_t seed) {
  if (measures.empty()) {
    throw std::invalid_argument("at least one measure required");
  }
  int dim = 0;
  for (const DiscreteMeasure& m : measures) {
    if (!m.empty()) {
      if (dim == 0) {
        dim = m.dim();
      } else if (dim != m.dim()) {
        throw std::invalid_argument("measures differ in ambient dimension");
      }
    }
  }
  if (dim == 0) {
    throw std::invalid_argument("measures have no atoms");
  }

  const auto clearance = [&measures](const UnitVector& u) {
    double worst = 1.0;
    for (const DiscreteMeasure& m : measures) {
      for (const UnitVector& x : m.atoms()) {
        worst = std::min(worst, std::abs(u.dot(x)));
      }
    }
    return worst;
  };

  Stream stream(seed, kSaltNullSphere);
  UnitVector best = random_direction(dim, stream);
  double best_clearance = clearance(best);
  for (int attempt = 1; attempt < 100 && best_clearance <= kBoundaryClearance;
       ++attempt) {
    UnitVector u = random_direction(dim, stream);
    const double c = clearance(u);
    if (c > best_clearance) {
      best = u;
      best_clearance = c;
    }
  }
  if (best_clearance > kBoundaryClearance) return best;

  // All 100 draws grazed an atom boundary: nudge the best draw by
  // deterministic amounts until it clears.
  for (int k = 1; k <= 100; ++k) {
    Eigen::VectorXd nudged = best.coords();
    nudged[(k - 1) % dim] += 1e-6 * static_cast<double>(k);
    UnitVector u(nudged);
    if (clearance(u) > kBoundaryClearance) return u;
  }
  throw std::runtime_error("degenerate support");
}

}  // namespace spherestat
