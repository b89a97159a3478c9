#include "spherestat/hemisphere_transform.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spherestat {

namespace {

constexpr std::uint64_t kSaltDistanceIdentity = 0x4D43444953543031ull;
constexpr std::uint64_t kSaltEnergyIdentity = 0x4D43454E45523031ull;
constexpr int kMinSamples = 100;

void check_samples(int samples) {
  if (samples < kMinSamples) {
    throw std::invalid_argument("need at least 100 Monte Carlo samples");
  }
}

}  // namespace

const char* to_string(ReconstructVerdict v) {
  switch (v) {
    case ReconstructVerdict::same:
      return "same";
    case ReconstructVerdict::differ:
      return "differ";
    case ReconstructVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

MonteCarloEstimate mc_distance_identity(const UnitVector& x,
                                        const UnitVector& y, int samples,
                                        std::uint64_t seed) {
  check_samples(samples);
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("dimension mismatch between sphere points");
  }
  const double pi = std::numbers::pi;
  long separated = 0;
  for (int k = 0; k < samples; ++k) {
    Stream stream(seed, kSaltDistanceIdentity, static_cast<std::uint64_t>(k));
    const UnitVector t = random_direction(x.dim(), stream);
    const bool in_x = t.dot(x) > 0.0;
    const bool in_y = t.dot(y) > 0.0;
    if (in_x != in_y) ++separated;
  }
  // per-sample values are pi or 0, so mean and variance come out in
  // closed form from the separation count
  const double n = static_cast<double>(samples);
  const double frac = static_cast<double>(separated) / n;
  const double value = pi * frac;
  const double sample_var = pi * pi * frac * (1.0 - frac) * n / (n - 1.0);
  return {value, std::sqrt(sample_var / n), samples, seed};
}

EnergyIdentityResult mc_energy_identity(const DiscreteMeasure& m1,
                                        const DiscreteMeasure& m2, int samples,
                                        std::uint64_t seed) {
  check_samples(samples);
  if (!m1.is_probability() || !m2.is_probability()) {
    throw std::invalid_argument(
        "energy identity requires probability measures");
  }
  if (m1.dim() != m2.dim()) {
    throw std::invalid_argument("measures differ in ambient dimension");
  }
  const DiscreteMeasure diff = m1 - m2;
  double lhs = 0.0;
  for (int i = 0; i < diff.size(); ++i) {
    for (int j = 0; j < diff.size(); ++j) {
      if (i == j) continue;
      lhs += diff.weights()[i] * diff.weights()[j] *
             angular_distance(diff.atoms()[i], diff.atoms()[j]);
    }
  }

  const double scale = -2.0 * std::numbers::pi;
  double mean = 0.0;
  double m2_acc = 0.0;  // Welford sum of squared deviations
  for (int k = 0; k < samples; ++k) {
    Stream stream(seed, kSaltEnergyIdentity, static_cast<std::uint64_t>(k));
    const UnitVector t = random_direction(m1.dim(), stream);
    const double gap = hemisphere_mass(m1, t) - hemisphere_mass(m2, t);
    const double value = scale * gap * gap;
    const double delta = value - mean;
    mean += delta / static_cast<double>(k + 1);
    m2_acc += delta * (value - mean);
  }
  const double n = static_cast<double>(samples);
  const double std_error = std::sqrt(m2_acc / (n - 1.0) / n);
  return {lhs, {mean, std_error, samples, seed}};
}

std::vector<double> expected_distance_profile(
    const DiscreteMeasure& m, const std::vector<UnitVector>& queries,
    MetricPower r) {
  if (!m.is_probability()) {
    throw std::invalid_argument("profile defined for probability measures");
  }
  std::vector<double> profile;
  profile.reserve(queries.size());
  for (const UnitVector& q : queries) {
    if (q.dim() != m.dim()) {
      throw std::invalid_argument("query dimension mismatch");
    }
    double sum = 0.0;
    for (int i = 0; i < m.size(); ++i) {
      sum += m.weights()[i] * angular_distance(q, m.atoms()[i], r);
    }
    profile.push_back(sum);
  }
  return profile;
}

bool fingerprints_equal(const HemisphereFingerprint& f1,
                        const HemisphereFingerprint& f2, double tol) {
  if (f1.directions.size() != f2.directions.size()) {
    throw std::invalid_argument("fingerprints use different direction lists");
  }
  for (std::size_t k = 0; k < f1.directions.size(); ++k) {
    if (f1.directions[k].coords() != f2.directions[k].coords()) {
      throw std::invalid_argument(
          "fingerprints use different direction lists");
    }
  }
  for (std::size_t k = 0; k < f1.masses.size(); ++k) {
    if (std::abs(f1.masses[k] - f2.masses[k]) > tol) return false;
  }
  return true;
}

bool r_invariance_check(const DiscreteMeasure& m,
                        const std::vector<UnitVector>& directions,
                        double tol) {
  if (!m.is_probability()) {
    throw std::invalid_argument("check defined for probability measures");
  }
  if (directions.empty()) {
    throw std::invalid_argument("need at least one direction");
  }
  for (const UnitVector& t : directions) {
    const double gap =
        hemisphere_mass(m, t) - hemisphere_mass(m, reflect(t));
    if (std::abs(gap) > tol) return false;
  }
  return true;
}

ReconstructVerdict reconstruct_check(
    const DiscreteMeasure& m1, const DiscreteMeasure& m2,
    const std::vector<UnitVector>& directions) {
  if (!m1.is_probability() || !m2.is_probability()) {
    throw std::invalid_argument(
        "reconstruct check defined for probability measures");
  }
  double max_gap = 0.0;
  for (const UnitVector& t : directions) {
    const double gap =
        std::abs(partitioning_mass(m1, t) - partitioning_mass(m2, t));
    if (gap > max_gap) max_gap = gap;
    if (max_gap > 1e-9) return ReconstructVerdict::differ;
  }
  if (max_gap <= 1e-12 && invariant_part(m1).empty() &&
      invariant_part(m2).empty() && approx_equal(m1, m2, 1e-9)) {
    return ReconstructVerdict::same;
  }
  return ReconstructVerdict::inconclusive;
}

}  // namespace spherestat
