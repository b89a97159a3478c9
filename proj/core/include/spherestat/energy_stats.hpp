#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spherestat/measure.hpp"

namespace spherestat {

// Paired observations for the independence test. The marginals may live
// on spheres of different dimension; lists must have equal length n >= 4.
struct PairedSample {
  PairedSample(std::vector<UnitVector> xs, std::vector<UnitVector> ys);

  std::vector<UnitVector> xs;
  std::vector<UnitVector> ys;
};

// Output contract of every hypothesis test. p_value follows the add-one
// permutation convention (1 + #{replicates >= observed}) / (1 + replications),
// which keeps it valid (never zero) at any replication count.
struct TestReport {
  double statistic;
  double p_value;
  int replications;
  std::uint64_t seed;
  std::string method;
};

// Distance covariance V-statistic: V^2 = (1/n^2) sum_ij A_ij B_ij with A, B
// the double-centered angular distance matrices of the two marginals.
double dcov_statistic(const PairedSample& s, MetricPower r = {});

// Permutation test of independence: ys are uniformly permuted per
// replicate. Deterministic given seed; replicate k draws its permutation
// from a stream keyed to (seed, k).
TestReport independence_test(const PairedSample& s, MetricPower r,
                             int permutations, std::uint64_t seed);

// Two-sample energy statistic on angular distances:
//   2 mean d(a, b) - mean d(a, a') - mean d(b, b')
// with means over all ordered pairs. Nonnegative up to round-off.
double energy_distance(const std::vector<UnitVector>& a,
                       const std::vector<UnitVector>& b, MetricPower r = {});

// Permutation test of equal distributions: pool and re-split at the
// original sizes per replicate.
TestReport two_sample_test(const std::vector<UnitVector>& a,
                           const std::vector<UnitVector>& b, MetricPower r,
                           int permutations, std::uint64_t seed);

// Population energy distance between finitely supported probability
// measures, computed exactly on atoms:
//   -sum_ij w_i w_j d(a_i, a_j)^r over the signed measure (m1 - m2).
// Zero iff m1 = m2 on supports with at most one antipodal pair (r = 1) and
// on all supports for r < 1.
double population_energy_distance(const DiscreteMeasure& m1,
                                  const DiscreteMeasure& m2,
                                  MetricPower r = {});

// Seeded generator of reference points for goodness-of-fit testing.
using ReferenceSampler =
    std::function<std::vector<UnitVector>(int count, std::uint64_t seed)>;

ReferenceSampler uniform_reference(int dim);
ReferenceSampler vmf_reference(const UnitVector& pole, double kappa);

// von Mises-Fisher draws around pole with concentration kappa >= 0
// (kappa = 0 is uniform). Tangent-normal decomposition: the component
// along the pole comes from an exponentially tilted proposal by inverse
// CDF with a rejection correction, the tangent part is uniform on the
// equator. Deterministic given seed.
std::vector<UnitVector> sample_vmf(const UnitVector& pole, double kappa,
                                   int count, std::uint64_t seed);

// The reference points gof_test will draw for a given seed; exposed so
// callers can reproduce the exact comparison set.
std::vector<UnitVector> gof_reference_draws(const ReferenceSampler& reference,
                                            int count, std::uint64_t seed);

// Goodness of fit as a two-sample energy test of the sample against
// reference_count fresh draws from the reference.
TestReport gof_test(const std::vector<UnitVector>& sample,
                    const ReferenceSampler& reference, int reference_count,
                    MetricPower r, int permutations, std::uint64_t seed);

// One agglomerative merge: the two cluster ids joined and the energy
// linkage value at which they joined. Ids follow the usual convention:
// 0..n-1 are the input points, the t-th merge creates cluster n+t.
struct MergeStep {
  int left;
  int right;
  double height;
};

struct ClusterResult {
  std::vector<int> labels;       // cluster label 0..k-1 per input point
  std::vector<MergeStep> merges; // the n-k merges performed, in order
};

// Agglomerative clustering under the energy linkage
//   e(A, B) = (|A||B| / (|A|+|B|)) (2 mean d(A,B) - mean d(A,A) - mean d(B,B)),
// merging the minimum, ties broken by the smallest (id, id) pair. Heights
// are recorded as-is; energy linkage is not monotone in general.
ClusterResult energy_cluster(const std::vector<UnitVector>& points, int k,
                             MetricPower r = {});

namespace detail {

// Statistic path without the n >= 4 guard, shared with the public entry
// point so small-n hand computations exercise the same code.
double dcov_vstat(const std::vector<UnitVector>& xs,
                  const std::vector<UnitVector>& ys, MetricPower r);

}  // namespace detail

}  // namespace spherestat
