#include "spherestat/energy_stats.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace spherestat {

namespace {

constexpr std::uint64_t kSaltIndependence = 0x494E444550455231ull;
constexpr std::uint64_t kSaltTwoSample = 0x54574F53414D5031ull;
constexpr std::uint64_t kSaltGofReference = 0x474F465245463031ull;
constexpr std::uint64_t kSaltVmf = 0x564D4653414D5031ull;

void check_homogeneous(const std::vector<UnitVector>& points,
                       const char* what) {
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].dim() != points[0].dim()) {
      throw std::invalid_argument(std::string(what) +
                                  ": points differ in ambient dimension");
    }
  }
}

void check_permutations(int permutations) {
  if (permutations < 99) {
    throw std::invalid_argument("need at least 99 permutations");
  }
}

Eigen::MatrixXd pairwise_distances(const std::vector<UnitVector>& points,
                                   MetricPower r) {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = angular_distance(points[i], points[j], r);
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

Eigen::MatrixXd double_center(const Eigen::MatrixXd& d) {
  const Eigen::VectorXd row_means = d.rowwise().mean();
  const double grand_mean = d.mean();
  Eigen::MatrixXd centered = d;
  centered.colwise() -= row_means;
  centered.rowwise() -= row_means.transpose();
  centered.array() += grand_mean;
  return centered;
}

std::vector<int> shuffled_indices(int n, Stream& stream) {
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(
        stream.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(idx[i], idx[j]);
  }
  return idx;
}

// Energy statistic of a split of pooled points given their distance matrix;
// in_a flags which pooled index belongs to the first group.
double split_energy(const Eigen::MatrixXd& d, const std::vector<char>& in_a,
                    int na, int nb) {
  double sum_aa = 0.0, sum_bb = 0.0, sum_ab = 0.0;
  const int n = na + nb;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = d(i, j);
      if (in_a[i] && in_a[j]) {
        sum_aa += v;
      } else if (!in_a[i] && !in_a[j]) {
        sum_bb += v;
      } else {
        sum_ab += v;
      }
    }
  }
  const double fa = static_cast<double>(na);
  const double fb = static_cast<double>(nb);
  return 2.0 * sum_ab / (fa * fb) - 2.0 * sum_aa / (fa * fa) -
         2.0 * sum_bb / (fb * fb);
}

double add_one_p_value(long exceeding, int replications) {
  return (1.0 + static_cast<double>(exceeding)) /
         (1.0 + static_cast<double>(replications));
}

// Replicates this close to the observed value are mathematical ties that
// differ only by summation order (e.g. a permutation that reproduces the
// observed split of duplicated points); counting them as >= keeps the
// add-one p-value valid and the tie contracts exact.
constexpr double kTieTolerance = 1e-12;

}  // namespace

PairedSample::PairedSample(std::vector<UnitVector> xs_in,
                           std::vector<UnitVector> ys_in)
    : xs(std::move(xs_in)), ys(std::move(ys_in)) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("paired sample lists differ in length");
  }
  if (xs.size() < 4) {
    throw std::invalid_argument("paired sample needs at least 4 pairs");
  }
  check_homogeneous(xs, "paired sample xs");
  check_homogeneous(ys, "paired sample ys");
}

namespace detail {

double dcov_vstat(const std::vector<UnitVector>& xs,
                  const std::vector<UnitVector>& ys, MetricPower r) {
  const Eigen::MatrixXd a = double_center(pairwise_distances(xs, r));
  const Eigen::MatrixXd b = double_center(pairwise_distances(ys, r));
  const double n = static_cast<double>(xs.size());
  return a.cwiseProduct(b).sum() / (n * n);
}

}  // namespace detail

double dcov_statistic(const PairedSample& s, MetricPower r) {
  return detail::dcov_vstat(s.xs, s.ys, r);
}

TestReport independence_test(const PairedSample& s, MetricPower r,
                             int permutations, std::uint64_t seed) {
  check_permutations(permutations);
  const Eigen::MatrixXd a = double_center(pairwise_distances(s.xs, r));
  const Eigen::MatrixXd b = double_center(pairwise_distances(s.ys, r));
  const int n = static_cast<int>(s.xs.size());
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const double observed = a.cwiseProduct(b).sum() / n2;

  long exceeding = 0;
  for (int k = 1; k <= permutations; ++k) {
    Stream stream(seed, kSaltIndependence, static_cast<std::uint64_t>(k));
    const std::vector<int> perm = shuffled_indices(n, stream);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        sum += a(i, j) * b(perm[static_cast<std::size_t>(i)],
                           perm[static_cast<std::size_t>(j)]);
      }
    }
    if (sum / n2 >= observed - kTieTolerance) ++exceeding;
  }
  return {observed, add_one_p_value(exceeding, permutations), permutations,
          seed, "dcov-permutation"};
}

double energy_distance(const std::vector<UnitVector>& a,
                       const std::vector<UnitVector>& b, MetricPower r) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("energy distance needs non-empty samples");
  }
  check_homogeneous(a, "first sample");
  check_homogeneous(b, "second sample");
  if (a[0].dim() != b[0].dim()) {
    throw std::invalid_argument("samples live on different spheres");
  }
  const auto mean_cross = [&r](const std::vector<UnitVector>& u,
                               const std::vector<UnitVector>& v) {
    double sum = 0.0;
    for (const UnitVector& x : u) {
      for (const UnitVector& y : v) sum += angular_distance(x, y, r);
    }
    return sum / (static_cast<double>(u.size()) * static_cast<double>(v.size()));
  };
  return 2.0 * mean_cross(a, b) - mean_cross(a, a) - mean_cross(b, b);
}

TestReport two_sample_test(const std::vector<UnitVector>& a,
                           const std::vector<UnitVector>& b, MetricPower r,
                           int permutations, std::uint64_t seed) {
  check_permutations(permutations);
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("each sample needs at least 2 points");
  }
  check_homogeneous(a, "first sample");
  check_homogeneous(b, "second sample");
  if (a[0].dim() != b[0].dim()) {
    throw std::invalid_argument("samples live on different spheres");
  }
  std::vector<UnitVector> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  const int na = static_cast<int>(a.size());
  const int nb = static_cast<int>(b.size());
  const int n = na + nb;
  const Eigen::MatrixXd d = pairwise_distances(pooled, r);

  std::vector<char> in_a(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < na; ++i) in_a[static_cast<std::size_t>(i)] = 1;
  const double observed = split_energy(d, in_a, na, nb);

  long exceeding = 0;
  for (int k = 1; k <= permutations; ++k) {
    Stream stream(seed, kSaltTwoSample, static_cast<std::uint64_t>(k));
    const std::vector<int> idx = shuffled_indices(n, stream);
    std::fill(in_a.begin(), in_a.end(), 0);
    for (int t = 0; t < na; ++t) {
      in_a[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])] = 1;
    }
    if (split_energy(d, in_a, na, nb) >= observed - kTieTolerance) ++exceeding;
  }
  return {observed, add_one_p_value(exceeding, permutations), permutations,
          seed, "energy-permutation"};
}

double population_energy_distance(const DiscreteMeasure& m1,
                                  const DiscreteMeasure& m2, MetricPower r) {
  if (!m1.is_probability() || !m2.is_probability()) {
    throw std::invalid_argument(
        "population energy distance requires probability measures");
  }
  if (m1.dim() != m2.dim()) {
    throw std::invalid_argument("measures differ in ambient dimension");
  }
  const DiscreteMeasure diff = m1 - m2;
  double sum = 0.0;
  for (int i = 0; i < diff.size(); ++i) {
    for (int j = 0; j < diff.size(); ++j) {
      if (i == j) continue;
      sum += diff.weights()[i] * diff.weights()[j] *
             angular_distance(diff.atoms()[i], diff.atoms()[j], r);
    }
  }
  return -sum;
}

ReferenceSampler uniform_reference(int dim) {
  if (dim < 2) throw std::invalid_argument("dim must be at least 2");
  return [dim](int count, std::uint64_t seed) {
    return sample_uniform(dim, count, seed);
  };
}

ReferenceSampler vmf_reference(const UnitVector& pole, double kappa) {
  if (kappa < 0.0) {
    throw std::invalid_argument("vMF concentration must be nonnegative");
  }
  return [pole, kappa](int count, std::uint64_t seed) {
    return sample_vmf(pole, kappa, count, seed);
  };
}

namespace {

// Component along the pole for ambient dimension p >= 3. Proposal from the
// exponentially tilted density ~ e^{kappa w} on [-1, 1] by inverse CDF,
// accepted with the tangent-volume factor (1 - w^2)^{(p-3)/2}; for p = 3
// the factor is identically 1 and the inverse CDF is exact.
double vmf_axis_component(double kappa, int p, Stream& stream) {
  const double exponent = 0.5 * static_cast<double>(p - 3);
  for (;;) {
    const double u = stream.next_unit();
    double w;
    if (kappa < 1e-12) {
      w = 2.0 * u - 1.0;
    } else {
      // 1 - (1-u)(1 - e^{-2 kappa}), kept stable for small kappa
      w = 1.0 + std::log1p((1.0 - u) * std::expm1(-2.0 * kappa)) / kappa;
    }
    w = std::clamp(w, -1.0, 1.0);
    const double accept = stream.next_unit();
    if (exponent == 0.0) return w;
    if (accept <= std::pow(std::max(0.0, 1.0 - w * w), exponent)) return w;
  }
}

// von Mises angle for the circle case, Best-Fisher rejection with a
// wrapped Cauchy envelope.
double von_mises_angle(double kappa, Stream& stream) {
  if (kappa < 1e-12) {
    return (2.0 * stream.next_unit() - 1.0) * std::numbers::pi;
  }
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double rr = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double z = std::cos(std::numbers::pi * stream.next_unit());
    const double f = (1.0 + rr * z) / (rr + z);
    const double c = kappa * (rr - f);
    const double u2 = stream.next_unit();
    if (c * (2.0 - c) - u2 > 0.0 ||
        std::log(c / u2) + 1.0 - c >= 0.0) {
      const double angle = std::acos(std::clamp(f, -1.0, 1.0));
      return stream.next_unit() < 0.5 ? -angle : angle;
    }
  }
}

}  // namespace

std::vector<UnitVector> sample_vmf(const UnitVector& pole, double kappa,
                                   int count, std::uint64_t seed) {
  if (kappa < 0.0) {
    throw std::invalid_argument("vMF concentration must be nonnegative");
  }
  if (count < 1) throw std::invalid_argument("count must be at least 1");
  const int p = pole.dim();
  std::vector<UnitVector> out;
  out.reserve(static_cast<std::size_t>(count));

  if (p == 2) {
    const Eigen::Vector2d c(pole[0], pole[1]);
    const Eigen::Vector2d tangent(-pole[1], pole[0]);
    for (int i = 0; i < count; ++i) {
      Stream stream(seed, kSaltVmf, static_cast<std::uint64_t>(i));
      const double angle = von_mises_angle(kappa, stream);
      Eigen::VectorXd v = std::cos(angle) * c + std::sin(angle) * tangent;
      out.emplace_back(std::move(v));
    }
    return out;
  }

  const Eigen::MatrixXd frame = householder_to_last_axis(pole);
  for (int i = 0; i < count; ++i) {
    Stream stream(seed, kSaltVmf, static_cast<std::uint64_t>(i));
    const double w = vmf_axis_component(kappa, p, stream);
    const UnitVector tangent_dir = random_direction(p - 1, stream);
    Eigen::VectorXd embedded = Eigen::VectorXd::Zero(p);
    embedded.head(p - 1) = tangent_dir.coords();
    // frame maps the last axis to the pole, so vectors with last
    // coordinate zero land on the equator orthogonal to it
    Eigen::VectorXd v = w * pole.coords() +
                        std::sqrt(std::max(0.0, 1.0 - w * w)) *
                            (frame * embedded);
    out.emplace_back(std::move(v));
  }
  return out;
}

std::vector<UnitVector> gof_reference_draws(const ReferenceSampler& reference,
                                            int count, std::uint64_t seed) {
  return reference(count, derive_key(seed, kSaltGofReference));
}

TestReport gof_test(const std::vector<UnitVector>& sample,
                    const ReferenceSampler& reference, int reference_count,
                    MetricPower r, int permutations, std::uint64_t seed) {
  if (reference_count < static_cast<int>(sample.size())) {
    throw std::invalid_argument(
        "reference draw count must reach the sample size");
  }
  const std::vector<UnitVector> ref =
      gof_reference_draws(reference, reference_count, seed);
  TestReport report = two_sample_test(sample, ref, r, permutations, seed);
  report.seed = seed;
  report.method = "gof-energy";
  return report;
}

ClusterResult energy_cluster(const std::vector<UnitVector>& points, int k,
                             MetricPower r) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw std::invalid_argument("clustering needs points");
  if (k < 1 || k > n) throw std::invalid_argument("k out of range");
  check_homogeneous(points, "cluster points");
  const Eigen::MatrixXd d = pairwise_distances(points, r);

  struct Cluster {
    int id;
    std::vector<int> members;
    double within;  // sum of d over ordered member pairs
  };
  std::vector<Cluster> active;
  active.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) active.push_back({i, {i}, 0.0});

  const auto cross_sum = [&d](const Cluster& a, const Cluster& b) {
    double sum = 0.0;
    for (int i : a.members) {
      for (int j : b.members) sum += d(i, j);
    }
    return sum;
  };
  const auto linkage = [](const Cluster& a, const Cluster& b, double cross) {
    const double sa = static_cast<double>(a.members.size());
    const double sb = static_cast<double>(b.members.size());
    return (sa * sb / (sa + sb)) *
           (2.0 * cross / (sa * sb) - a.within / (sa * sa) -
            b.within / (sb * sb));
  };

  ClusterResult result;
  result.merges.reserve(static_cast<std::size_t>(n - k));
  for (int step = 0; step < n - k; ++step) {
    // active stays sorted by id, so scanning pairs in position order is
    // the lexicographic tie-break on (id, id)
    int best_i = -1, best_j = -1;
    double best_cross = 0.0;
    double best_value = 0.0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        const double cross = cross_sum(active[i], active[j]);
        const double value = linkage(active[i], active[j], cross);
        if (best_i < 0 || value < best_value) {
          best_i = static_cast<int>(i);
          best_j = static_cast<int>(j);
          best_cross = cross;
          best_value = value;
        }
      }
    }
    Cluster merged;
    merged.id = n + step;
    Cluster& a = active[static_cast<std::size_t>(best_i)];
    Cluster& b = active[static_cast<std::size_t>(best_j)];
    merged.members = a.members;
    merged.members.insert(merged.members.end(), b.members.begin(),
                          b.members.end());
    merged.within = a.within + b.within + 2.0 * best_cross;
    result.merges.push_back({a.id, b.id, best_value});
    active.erase(active.begin() + best_j);
    active.erase(active.begin() + best_i);
    active.push_back(std::move(merged));
  }

  // label clusters 0..k-1 in order of their smallest member index
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t c = 0; c < active.size(); ++c) {
    order.emplace_back(*std::min_element(active[c].members.begin(),
                                         active[c].members.end()),
                       c);
  }
  std::sort(order.begin(), order.end());
  result.labels.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    for (int member : active[order[rank].second].members) {
      result.labels[static_cast<std::size_t>(member)] =
          static_cast<int>(rank);
    }
  }
  return result;
}

}  // namespace spherestat
