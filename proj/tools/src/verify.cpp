#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "report.hpp"
#include "spherestat/energy_stats.hpp"
#include "spherestat/hemisphere_transform.hpp"
#include "spherestat/negative_type.hpp"
#include "spherestat/random_inputs.hpp"

namespace spherestat::cli {

namespace {
constexpr std::uint64_t kSaltVerify = 0x5645524946593031ull;
}

VerifyResult verify_identity(int trials, int samples, std::uint64_t seed) {
  const UnitVector builtin_x{1.0, 0.0, 0.0};
  const UnitVector builtin_y{0.0, 1.0, 0.0};
  const MonteCarloEstimate builtin =
      mc_distance_identity(builtin_x, builtin_y, samples, seed);
  const double builtin_expected = angular_distance(builtin_x, builtin_y);
  const double builtin_gap = std::abs(builtin.value - builtin_expected);
  bool ok = builtin_gap <= 3.0 * builtin.std_error;

  Stream stream(seed, kSaltVerify, 1);
  double max_ratio =
      builtin.std_error > 0.0 ? builtin_gap / (3.0 * builtin.std_error) : 0.0;
  for (int t = 0; t < trials; ++t) {
    const UnitVector x = random_direction(3, stream);
    const UnitVector y = random_direction(3, stream);
    const MonteCarloEstimate est = mc_distance_identity(
        x, y, samples, derive_key(seed, kSaltVerify, 100 + t));
    const double gap = std::abs(est.value - angular_distance(x, y));
    if (est.std_error == 0.0) {
      ok = ok && gap == 0.0;
      continue;
    }
    max_ratio = std::max(max_ratio, gap / (3.0 * est.std_error));
    ok = ok && gap <= 3.0 * est.std_error;
  }

  nlohmann::ordered_json payload;
  payload["builtin_estimate"] = to_json(builtin);
  payload["builtin_expected"] = number12(builtin_expected);
  payload["random_trials"] = trials;
  payload["max_gap_over_bound"] = number12(max_ratio);
  return {std::move(payload), ok};
}

VerifyResult verify_energy(int trials, int samples, std::uint64_t seed) {
  Stream stream(seed, kSaltVerify, 2);
  bool ok = true;
  double worst_ratio = 0.0;
  nlohmann::ordered_json worst;
  for (int t = 0; t < trials; ++t) {
    const int atoms1 = 1 + static_cast<int>(stream.next_below(5));
    const int atoms2 = 1 + static_cast<int>(stream.next_below(5));
    const DiscreteMeasure m1 = random_probability_measure(3, atoms1, stream);
    const DiscreteMeasure m2 = random_probability_measure(3, atoms2, stream);
    const EnergyIdentityResult result = mc_energy_identity(
        m1, m2, samples, derive_key(seed, kSaltVerify, 200 + t));
    const double bound = 4.0 * result.rhs.std_error;
    const double gap = std::abs(result.lhs - result.rhs.value);
    const double ratio = bound > 0.0 ? gap / bound : (gap > 0.0 ? 2.0 : 0.0);
    if (ratio >= worst_ratio) {
      worst_ratio = ratio;
      worst = nlohmann::ordered_json{{"lhs", number12(result.lhs)},
                                     {"rhs", to_json(result.rhs)},
                                     {"bound", number12(bound)}};
    }
    ok = ok && gap <= bound;
  }
  nlohmann::ordered_json payload;
  payload["trials"] = trials;
  payload["samples"] = samples;
  payload["worst_trial"] = std::move(worst);
  payload["max_gap_over_bound"] = number12(worst_ratio);
  return {std::move(payload), ok};
}

VerifyResult verify_negtype(int trials, std::uint64_t seed) {
  Stream stream(seed, kSaltVerify, 3);
  double max_form = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const int dim = 2 + t % 4;
    const int n = 2 + static_cast<int>(stream.next_below(11));
    const MetricPower r{t % 2 == 0 ? 1.0 : 0.5};
    std::vector<UnitVector> points;
    for (int i = 0; i < n; ++i) points.push_back(random_direction(dim, stream));
    const DistanceMatrix dm = distance_matrix(points, r);
    max_form = std::max(max_form, quadratic_form(dm, random_sum_zero(n, stream)));
  }

  // the classical equality case: two antipodal pairs on the circle
  const DistanceMatrix circle = distance_matrix(
      {UnitVector{1.0, 0.0}, UnitVector{-1.0, 0.0}, UnitVector{0.0, 1.0},
       UnitVector{0.0, -1.0}});
  const StrictnessCertificate cert = strictness_certificate(circle);
  double witness_form = 0.0;
  if (cert.witness) witness_form = quadratic_form(circle, *cert.witness);

  const bool ok = max_form <= 1e-10 &&
                  cert.verdict == StrictnessVerdict::null_direction_found &&
                  std::abs(witness_form) <= 1e-9;
  nlohmann::ordered_json payload;
  payload["trials"] = trials;
  payload["max_quadratic_form"] = number12(max_form);
  payload["circle_certificate"] = to_json(cert);
  payload["circle_witness_form"] = number12(witness_form);
  return {std::move(payload), ok};
}

VerifyResult verify_cw(int trials, std::uint64_t seed) {
  Stream stream(seed, kSaltVerify, 4);
  const std::vector<UnitVector> directions =
      sample_uniform(3, 500, derive_key(seed, kSaltVerify, 400));
  double min_separation = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const Hemisphere h{random_direction(3, stream)};
    const DiscreteMeasure m1 = random_measure_on_hemisphere(
        h, 1 + static_cast<int>(stream.next_below(8)), stream);
    const DiscreteMeasure m2 = random_measure_on_hemisphere(
        h, 1 + static_cast<int>(stream.next_below(8)), stream);
    const HemisphereFingerprint f1 = fingerprint(m1, directions);
    const HemisphereFingerprint f2 = fingerprint(m2, directions);
    double max_gap = 0.0;
    for (std::size_t k = 0; k < directions.size(); ++k) {
      max_gap = std::max(max_gap, std::abs(f1.masses[k] - f2.masses[k]));
    }
    min_separation = std::min(min_separation, max_gap);
  }
  nlohmann::ordered_json payload;
  payload["trials"] = trials;
  payload["directions"] = 500;
  payload["min_separation"] = number12(min_separation);
  payload["threshold"] = number12(1e-9);
  return {std::move(payload), min_separation > 1e-9};
}

VerifyResult verify_symm(int trials, std::uint64_t seed) {
  Stream stream(seed, kSaltVerify, 5);
  const std::vector<UnitVector> directions =
      sample_uniform(3, 200, derive_key(seed, kSaltVerify, 500));
  int agreements = 0;
  for (int t = 0; t < trials; ++t) {
    const DiscreteMeasure m =
        t % 2 == 0
            ? random_r_invariant_measure(
                  3, 1 + static_cast<int>(stream.next_below(4)), stream)
            : random_probability_measure(
                  3, 2 + static_cast<int>(stream.next_below(5)), stream);
    const bool sampled = r_invariance_check(m, directions, 1e-9);
    const bool exact = approx_equal(invariant_part(m), m, 1e-12);
    if (sampled == exact) ++agreements;
  }
  nlohmann::ordered_json payload;
  payload["trials"] = trials;
  payload["directions"] = 200;
  payload["agreements"] = agreements;
  return {std::move(payload), agreements == trials};
}

VerifyResult verify_compare(int trials, std::uint64_t seed) {
  Stream stream(seed, kSaltVerify, 6);
  double max_violation = -std::numeric_limits<double>::infinity();
  int equality_cases = 0;
  bool ok = true;
  for (int t = 0; t < trials; ++t) {
    DiscreteMeasure theta = random_probability_measure(
        3, 1 + static_cast<int>(stream.next_below(6)), stream);
    if (t % 2 == 0) {
      theta = 0.5 * theta +
              0.5 * random_r_invariant_measure(
                        3, 1 + static_cast<int>(stream.next_below(3)), stream);
    }
    theta = (0.5 + stream.next_unit()) * theta;  // positive, not normalized
    const double lhs = 2.0 * theta.total_mass();
    const double rhs = antisymmetrize(theta).total_variation();
    max_violation = std::max(max_violation, rhs - lhs);
    ok = ok && rhs - lhs <= 1e-12;
    const bool equality = std::abs(lhs - rhs) <= 1e-12;
    if (equality) ++equality_cases;
    ok = ok && equality == invariant_part(theta).empty();
  }
  nlohmann::ordered_json payload;
  payload["trials"] = trials;
  payload["max_violation"] = number12(max_violation);
  payload["equality_cases"] = equality_cases;
  return {std::move(payload), ok};
}

}  // namespace spherestat::cli
