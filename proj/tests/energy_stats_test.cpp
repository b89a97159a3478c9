#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spherestat/energy_stats.hpp"
#include "spherestat/negative_type.hpp"
#include "spherestat/random_inputs.hpp"
#include "support/generators.hpp"

using namespace spherestat;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<UnitVector> apply_rotation(const Eigen::MatrixXd& q,
                                       const std::vector<UnitVector>& pts) {
  std::vector<UnitVector> out;
  out.reserve(pts.size());
  for (const UnitVector& p : pts) out.emplace_back(q * p.coords());
  return out;
}

// fixed rotation of S^2 about the z-axis
Eigen::Matrix3d fixed_rotation() {
  const double a = 0.7;
  Eigen::Matrix3d q;
  q << std::cos(a), -std::sin(a), 0.0, std::sin(a), std::cos(a), 0.0, 0.0,
      0.0, 1.0;
  return q;
}

}  // namespace

TEST_SUITE("energy_stats") {

TEST_CASE("dcov on two identical points reproduces the hand computation") {
  // double-centering a 2x2 distance matrix with off-diagonal d leaves
  // entries +-d/2, so V^2 = d^2/4; with d = pi/2 that is pi^2/16
  const std::vector<UnitVector> xs{UnitVector{1.0, 0.0},
                                   UnitVector{0.0, 1.0}};
  const double v2 = detail::dcov_vstat(xs, xs, MetricPower{});
  CHECK(std::abs(v2 - kPi * kPi / 16.0) <= 1e-12);
}

TEST_CASE("dcov vanishes against a constant marginal") {
  Stream stream(139, 50);
  std::vector<UnitVector> xs;
  for (int i = 0; i < 6; ++i) xs.push_back(random_direction(3, stream));
  const std::vector<UnitVector> ys(6, UnitVector{0.0, 0.0, 1.0});
  CHECK(dcov_statistic(PairedSample(xs, ys)) == 0.0);
}

TEST_CASE("paired sample validation") {
  std::vector<UnitVector> three{UnitVector{1.0, 0.0}, UnitVector{0.0, 1.0},
                                UnitVector{-1.0, 0.0}};
  CHECK_THROWS_AS(PairedSample(three, three), std::invalid_argument);
  std::vector<UnitVector> four = three;
  four.push_back(UnitVector{0.0, -1.0});
  CHECK_THROWS_AS(PairedSample(four, three), std::invalid_argument);
  CHECK_NOTHROW(PairedSample(four, four));
}

TEST_CASE("dcov is invariant under rotation and relabeling") {
  Stream stream(149, 51);
  std::vector<UnitVector> xs, ys;
  for (int i = 0; i < 20; ++i) {
    xs.push_back(random_direction(3, stream));
    ys.push_back(random_direction(4, stream));
  }
  const PairedSample s(xs, ys);
  const double base = dcov_statistic(s);

  const Eigen::MatrixXd qx = random_orthogonal(3, stream);
  const Eigen::MatrixXd qy = random_orthogonal(4, stream);
  const PairedSample rotated(apply_rotation(qx, xs), apply_rotation(qy, ys));
  CHECK(dcov_statistic(rotated) == doctest::Approx(base).epsilon(1e-10));

  std::vector<UnitVector> xs_perm, ys_perm;
  const std::vector<int> order{7, 3, 19, 0, 11, 5, 15, 2, 9,  18,
                               1, 8, 13, 4, 17, 6, 12, 10, 16, 14};
  for (int idx : order) {
    xs_perm.push_back(xs[static_cast<std::size_t>(idx)]);
    ys_perm.push_back(ys[static_cast<std::size_t>(idx)]);
  }
  const PairedSample relabeled(xs_perm, ys_perm);
  CHECK(dcov_statistic(relabeled) == doctest::Approx(base).epsilon(1e-10));

  CHECK(base >= -1e-12);
}

TEST_CASE("independence test rejects functional dependence") {
  Stream stream(151, 52);
  std::vector<UnitVector> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(random_direction(3, stream));
  const std::vector<UnitVector> ys = apply_rotation(fixed_rotation(), xs);
  const TestReport report =
      independence_test(PairedSample(xs, ys), MetricPower{}, 199, 5);
  CHECK(report.p_value <= 0.01);
  CHECK(report.replications == 199);
  CHECK(report.method == "dcov-permutation");
}

TEST_CASE("independence test runs at the minimal sample size") {
  Stream stream(157, 53);
  std::vector<UnitVector> xs, ys;
  for (int i = 0; i < 4; ++i) {
    xs.push_back(random_direction(2, stream));
    ys.push_back(random_direction(2, stream));
  }
  const TestReport report =
      independence_test(PairedSample(xs, ys), MetricPower{}, 99, 0);
  CHECK(report.p_value > 0.0);
  CHECK(report.p_value <= 1.0);
  // add-one p-values live on the grid k/(1+replications)
  const double grid_position = report.p_value * 100.0;
  CHECK(grid_position == doctest::Approx(std::round(grid_position)));

  CHECK_THROWS_AS(independence_test(PairedSample(xs, ys), MetricPower{}, 50, 0),
                  std::invalid_argument);
}

TEST_CASE("independence test is deterministic given the seed") {
  Stream stream(163, 54);
  std::vector<UnitVector> xs, ys;
  for (int i = 0; i < 30; ++i) {
    xs.push_back(random_direction(3, stream));
    ys.push_back(random_direction(3, stream));
  }
  const PairedSample s(xs, ys);
  const TestReport a = independence_test(s, MetricPower{}, 199, 42);
  const TestReport b = independence_test(s, MetricPower{}, 199, 42);
  CHECK(a.statistic == b.statistic);
  CHECK(a.p_value == b.p_value);
}

TEST_CASE("null p-values are super-uniform") {
  Stream stream(167, 55);
  int rejections = 0;
  const int trials = 500;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<UnitVector> xs, ys;
    for (int i = 0; i < 24; ++i) {
      xs.push_back(random_direction(3, stream));
      ys.push_back(random_direction(3, stream));
    }
    const TestReport report = independence_test(
        PairedSample(xs, ys), MetricPower{}, 99,
        static_cast<std::uint64_t>(trial) + 1000);
    if (report.p_value <= 0.05) ++rejections;
  }
  CHECK(static_cast<double>(rejections) / trials <= 0.08);
}

TEST_CASE("energy distance basics") {
  const UnitVector x{1.0, 0.0, 0.0};
  const UnitVector y{0.0, 0.0, 1.0};
  CHECK(energy_distance({x}, {y}) ==
        doctest::Approx(2.0 * angular_distance(x, y)).epsilon(1e-15));

  Stream stream(173, 56);
  std::vector<UnitVector> a;
  for (int i = 0; i < 10; ++i) a.push_back(random_direction(3, stream));
  CHECK(std::abs(energy_distance(a, a)) <= 1e-12);

  CHECK_THROWS_AS(energy_distance({}, {y}), std::invalid_argument);
  CHECK_THROWS_AS(energy_distance({x}, {UnitVector{1.0, 0.0}}),
                  std::invalid_argument);
}

TEST_CASE("energy distance equals the negated quadratic form on empiricals") {
  // a and b are empirical versions (with multiplicity) of two weighted
  // measures on a shared 6-point support
  Stream stream(179, 57);
  const auto support = generators::antipodal_free_points(3, 6, stream);
  const std::vector<UnitVector> a{support[0], support[0], support[1],
                                  support[2]};
  const std::vector<UnitVector> b{support[3], support[4], support[4],
                                  support[5]};
  Eigen::VectorXd alpha(6);
  alpha << 0.5, 0.25, 0.25, -0.25, -0.5, -0.25;
  const DistanceMatrix dm = distance_matrix(support);
  CHECK(energy_distance(a, b) ==
        doctest::Approx(-quadratic_form(dm, alpha)).epsilon(1e-10));
}

TEST_CASE("energy distance is nonnegative on random inputs") {
  Stream stream(181, 58);
  for (int trial = 0; trial < 500; ++trial) {
    const int dim = 2 + trial % 4;
    const MetricPower r{trial % 2 == 0 ? 1.0 : 0.5};
    std::vector<UnitVector> a, b;
    const int na = 2 + static_cast<int>(stream.next_below(6));
    const int nb = 2 + static_cast<int>(stream.next_below(6));
    for (int i = 0; i < na; ++i) a.push_back(random_direction(dim, stream));
    for (int i = 0; i < nb; ++i) b.push_back(random_direction(dim, stream));
    CHECK(energy_distance(a, b, r) >= -1e-12);
  }
}

TEST_CASE("antipodal blind spot closes at fractional powers") {
  Stream stream(191, 59);
  for (int trial = 0; trial < 50; ++trial) {
    const UnitVector x = random_direction(3, stream);
    const UnitVector y = random_direction(3, stream);
    if (angular_distance(x, y) < 1e-3 ||
        angular_distance(x, reflect(y)) < 1e-3) {
      continue;
    }
    const DiscreteMeasure mx = DiscreteMeasure::uniform_on({x, reflect(x)});
    const DiscreteMeasure my = DiscreteMeasure::uniform_on({y, reflect(y)});
    // invisible to the plain metric, visible as soon as r < 1
    CHECK(std::abs(population_energy_distance(mx, my)) <= 1e-12);
    CHECK(population_energy_distance(mx, my, MetricPower{0.5}) > 1e-9);
  }
}

TEST_CASE("population energy separates distinct hemisphere measures") {
  Stream stream(193, 60);
  for (int trial = 0; trial < 200; ++trial) {
    const Hemisphere h{random_direction(3, stream)};
    const DiscreteMeasure m1 =
        random_measure_on_hemisphere(h, 2 + trial % 5, stream);
    const DiscreteMeasure m2 =
        random_measure_on_hemisphere(h, 2 + (trial + 1) % 5, stream);
    if (approx_equal(m1, m2, 1e-9)) continue;
    CHECK(population_energy_distance(m1, m2) > 1e-9);
  }
}

TEST_CASE("two-sample test on identical samples accepts with p = 1") {
  Stream stream(197, 61);
  std::vector<UnitVector> a;
  for (int i = 0; i < 8; ++i) a.push_back(random_direction(3, stream));
  const TestReport report = two_sample_test(a, a, MetricPower{}, 99, 0);
  CHECK(std::abs(report.statistic) <= 1e-12);
  CHECK(report.p_value == 1.0);
}

TEST_CASE("two-sample test separates antipodally shifted clouds") {
  const UnitVector pole{0.0, 0.0, 1.0};
  const auto a = sample_vmf(pole, 5.0, 50, 21);
  const auto b = sample_vmf(reflect(pole), 5.0, 50, 22);
  const TestReport report = two_sample_test(a, b, MetricPower{}, 199, 3);
  CHECK(report.p_value <= 0.01);
  CHECK(report.statistic > 0.0);
}

TEST_CASE("vmf sampling concentrates around its pole") {
  const UnitVector pole{0.0, 1.0, 0.0};
  const auto draws = sample_vmf(pole, 20.0, 400, 9);
  double mean_dot = 0.0;
  for (const UnitVector& d : draws) mean_dot += pole.dot(d);
  mean_dot /= 400.0;
  // E[pole . X] = coth(kappa) - 1/kappa ~ 0.95 at kappa = 20
  CHECK(mean_dot > 0.9);

  const auto again = sample_vmf(pole, 20.0, 400, 9);
  for (int i = 0; i < 400; ++i) {
    CHECK(draws[static_cast<std::size_t>(i)].coords() ==
          again[static_cast<std::size_t>(i)].coords());
  }

  // circle case runs through the von Mises path
  const UnitVector pole2{1.0, 0.0};
  const auto circle_draws = sample_vmf(pole2, 8.0, 300, 10);
  double mean_dot2 = 0.0;
  for (const UnitVector& d : circle_draws) mean_dot2 += pole2.dot(d);
  CHECK(mean_dot2 / 300.0 > 0.8);

  CHECK_THROWS_AS(sample_vmf(pole, -1.0, 10, 0), std::invalid_argument);
}

TEST_CASE("vmf at zero concentration matches uniform moments") {
  const UnitVector pole{0.0, 0.0, 1.0};
  const auto draws = sample_vmf(pole, 0.0, 4000, 11);
  double mean_dot = 0.0;
  for (const UnitVector& d : draws) mean_dot += pole.dot(d);
  mean_dot /= 4000.0;
  // uniform S^2: pole component is uniform on [-1, 1], sd of mean ~ 0.009
  CHECK(std::abs(mean_dot) < 0.03);
}

TEST_CASE("goodness of fit flags a point mass against uniform") {
  const UnitVector x{1.0, 0.0, 0.0};
  const std::vector<UnitVector> sample(50, x);
  const TestReport report =
      gof_test(sample, uniform_reference(3), 200, MetricPower{}, 199, 6);
  CHECK(report.p_value <= 0.01);
  CHECK(report.method == "gof-energy");
}

TEST_CASE("goodness of fit accepts its own reference draws") {
  const auto sample = gof_reference_draws(uniform_reference(3), 60, 77);
  const TestReport report =
      gof_test(sample, uniform_reference(3), 60, MetricPower{}, 99, 77);
  CHECK(std::abs(report.statistic) <= 1e-12);
  CHECK(report.p_value == 1.0);

  CHECK_THROWS_AS(
      gof_test(sample, uniform_reference(3), 10, MetricPower{}, 99, 0),
      std::invalid_argument);
}

TEST_CASE("goodness of fit holds its level against uniform") {
  int rejections = 0;
  const int trials = 200;
  for (int trial = 0; trial < trials; ++trial) {
    const auto sample =
        sample_uniform(3, 30, static_cast<std::uint64_t>(trial) + 5000);
    const TestReport report =
        gof_test(sample, uniform_reference(3), 60, MetricPower{}, 99,
                 static_cast<std::uint64_t>(trial));
    if (report.p_value <= 0.05) ++rejections;
  }
  const double level = static_cast<double>(rejections) / trials;
  CHECK(level >= 0.02);
  CHECK(level <= 0.08);
}

TEST_CASE("energy clustering structure") {
  Stream stream(199, 62);
  std::vector<UnitVector> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(random_direction(3, stream));

  const ClusterResult all_singletons = energy_cluster(pts, 6);
  CHECK(all_singletons.merges.empty());
  for (int i = 0; i < 6; ++i) {
    CHECK(all_singletons.labels[static_cast<std::size_t>(i)] == i);
  }

  const ClusterResult one = energy_cluster(pts, 1);
  CHECK(one.merges.size() == 5);
  for (int label : one.labels) CHECK(label == 0);

  CHECK_THROWS_AS(energy_cluster(pts, 0), std::invalid_argument);
  CHECK_THROWS_AS(energy_cluster(pts, 7), std::invalid_argument);
}

TEST_CASE("energy clustering merges the close pair first") {
  // two points 0.1 apart, the third 2.0 away from both; singleton linkage
  // equals the plain distance, so the close pair merges first
  const double half = 0.05;
  const std::vector<UnitVector> pts{
      UnitVector{std::cos(-half), std::sin(-half)},
      UnitVector{std::cos(half), std::sin(half)},
      UnitVector{std::cos(2.0), std::sin(2.0)}};
  const ClusterResult result = energy_cluster(pts, 2);
  REQUIRE(result.merges.size() == 1);
  CHECK(result.merges[0].left == 0);
  CHECK(result.merges[0].right == 1);
  CHECK(result.merges[0].height == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(result.labels[0] == result.labels[1]);
  CHECK(result.labels[0] != result.labels[2]);
}

TEST_CASE("energy clustering breaks exact ties lexicographically") {
  // square on the circle: all adjacent distances are exactly pi/2
  const std::vector<UnitVector> pts{UnitVector{1.0, 0.0},
                                    UnitVector{0.0, 1.0},
                                    UnitVector{-1.0, 0.0},
                                    UnitVector{0.0, -1.0}};
  const ClusterResult result = energy_cluster(pts, 2);
  REQUIRE(result.merges.size() == 2);
  CHECK(result.merges[0].left == 0);
  CHECK(result.merges[0].right == 1);
  CHECK(result.merges[1].left == 2);
  CHECK(result.merges[1].right == 3);
  const std::vector<int> expected{0, 0, 1, 1};
  CHECK(result.labels == expected);
}

}  // TEST_SUITE
