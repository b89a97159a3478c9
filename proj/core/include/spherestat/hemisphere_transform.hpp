#pragma once

#include <cstdint>
#include <vector>

#include "spherestat/measure.hpp"

namespace spherestat {

// Mean of per-sample values with its standard error (sample standard
// deviation / sqrt(samples)). Sample k draws its randomness from a
// counter-based stream keyed to (seed, k), so the estimate is independent
// of evaluation order.
struct MonteCarloEstimate {
  double value;
  double std_error;
  int samples;
  std::uint64_t seed;
};

// Monte Carlo form of the distance representation
//   d(x, y) = pi * P(a uniform hemisphere separates x from y),
// where pi is the total mass of the rotation-invariant direction measure.
MonteCarloEstimate mc_distance_identity(const UnitVector& x,
                                        const UnitVector& y, int samples,
                                        std::uint64_t seed);

// Exact energy functional of (m1 - m2) next to its hemisphere-mass
// representation: lhs is the double sum over atoms, rhs estimates
// -2 pi E[(m1(H_t) - m2(H_t))^2] over uniform poles t.
struct EnergyIdentityResult {
  double lhs;
  MonteCarloEstimate rhs;
};

EnergyIdentityResult mc_energy_identity(const DiscreteMeasure& m1,
                                        const DiscreteMeasure& m2, int samples,
                                        std::uint64_t seed);

// Expected-distance profile a_mu at each query point: sum_i w_i d(q, a_i)^r.
std::vector<double> expected_distance_profile(
    const DiscreteMeasure& m, const std::vector<UnitVector>& queries,
    MetricPower r = {});

// Componentwise comparison of fingerprints taken over the same direction
// sample (direction lists must be identical).
bool fingerprints_equal(const HemisphereFingerprint& f1,
                        const HemisphereFingerprint& f2, double tol);

// True iff |m(H_t) - m(H_{-t})| <= tol for every sampled direction t.
// A finite-direction surrogate for the reflection-invariance criterion;
// for finitely supported m a couple hundred random directions decide it
// almost surely.
bool r_invariance_check(const DiscreteMeasure& m,
                        const std::vector<UnitVector>& directions, double tol);

enum class ReconstructVerdict { same, differ, inconclusive };

const char* to_string(ReconstructVerdict v);

// Compares partitioning masses of two probability measures over sampled
// poles. Masses that differ prove the measures differ; agreement plus
// vanishing invariant parts licenses the direct atom comparison; agreement
// with antipodally symmetric mass present is exactly the regime where
// partitioning masses cannot separate measures, hence inconclusive.
ReconstructVerdict reconstruct_check(const DiscreteMeasure& m1,
                                     const DiscreteMeasure& m2,
                                     const std::vector<UnitVector>& directions);

}  // namespace spherestat
