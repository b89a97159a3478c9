#include <CLI11.hpp>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "csv.hpp"
#include "report.hpp"
#include "spherestat/energy_stats.hpp"
#include "spherestat/hemisphere_transform.hpp"
#include "verify.hpp"

namespace {

using namespace spherestat;
using namespace spherestat::cli;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitInputError = 2;

struct CommonOptions {
  std::uint64_t seed = 0;
  int samples = 100000;
  int permutations = 999;
  double r = 1.0;
  double alpha = 0.05;
  std::string format = "json";
  bool strict_exit = false;
};

void add_common(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--seed", opts->seed, "random seed (default 0)");
  cmd->add_option("--samples", opts->samples,
                  "Monte Carlo sample count (default 100000)");
  cmd->add_option("--permutations", opts->permutations,
                  "permutation replicates (default 999)");
  cmd->add_option("--r", opts->r, "metric power in (0, 1] (default 1)");
  cmd->add_option("--alpha", opts->alpha,
                  "rejection level for --strict-exit (default 0.05)");
  cmd->add_option("--format", opts->format, "output format: json or tsv")
      ->check(CLI::IsMember({"json", "tsv"}));
  cmd->add_flag("--strict-exit", opts->strict_exit,
                "exit 1 when a test-* command rejects at --alpha");
}

ordered_json config_echo(const CommonOptions& opts) {
  ordered_json j;
  j["seed"] = opts.seed;
  j["samples"] = opts.samples;
  j["permutations"] = opts.permutations;
  j["r"] = number12(opts.r);
  j["alpha"] = number12(opts.alpha);
  j["format"] = opts.format;
  j["strict_exit"] = opts.strict_exit;
  return j;
}

int finish_test(const std::string& command, const CommonOptions& opts,
                ordered_json payload, const TestReport& report) {
  ordered_json out;
  out["command"] = command;
  out["config"] = config_echo(opts);
  for (auto& [key, value] : payload.items()) out[key] = value;
  const bool reject = report.p_value <= opts.alpha;
  out["reject_at_alpha"] = reject;
  emit(out, parse_format(opts.format), std::cout);
  return opts.strict_exit && reject ? kExitRejected : kExitOk;
}

int run_independence(const std::string& x_path, const std::string& y_path,
                     const CommonOptions& opts) {
  const auto xs = parse_points(x_path);
  const auto ys = parse_points(y_path);
  const PairedSample sample(xs.points, ys.points);
  const TestReport report = independence_test(sample, MetricPower{opts.r},
                                              opts.permutations, opts.seed);
  ordered_json payload = to_json(report);
  payload["n"] = static_cast<int>(xs.points.size());
  return finish_test("test-independence", opts, std::move(payload), report);
}

int run_two_sample(const std::string& a_path, const std::string& b_path,
                   const CommonOptions& opts) {
  const auto a = parse_points(a_path);
  const auto b = parse_points(b_path);
  const TestReport report = two_sample_test(
      a.points, b.points, MetricPower{opts.r}, opts.permutations, opts.seed);
  ordered_json payload = to_json(report);
  payload["n_first"] = static_cast<int>(a.points.size());
  payload["n_second"] = static_cast<int>(b.points.size());
  return finish_test("test-two-sample", opts, std::move(payload), report);
}

// --ref accepts "uniform" or "vmf:<kappa>:<pole-file>".
ReferenceSampler parse_reference(const std::string& descriptor, int dim,
                                 ordered_json* echo) {
  if (descriptor == "uniform") {
    (*echo)["reference"] = "uniform";
    return uniform_reference(dim);
  }
  if (descriptor.rfind("vmf:", 0) == 0) {
    const std::string rest = descriptor.substr(4);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos) {
      throw ParseError("--ref vmf form is vmf:<kappa>:<pole-file>");
    }
    const std::string kappa_text = rest.substr(0, colon);
    char* end = nullptr;
    const double kappa = std::strtod(kappa_text.c_str(), &end);
    if (end == kappa_text.c_str() || *end != '\0' || kappa < 0.0) {
      throw ParseError("--ref vmf concentration must be a nonnegative number");
    }
    const auto pole_points = parse_points(rest.substr(colon + 1));
    if (pole_points.points.size() != 1) {
      throw ParseError("vmf pole file must contain exactly one point");
    }
    (*echo)["reference"] = "vmf";
    (*echo)["kappa"] = number12(kappa);
    return vmf_reference(pole_points.points.front(), kappa);
  }
  throw ParseError("--ref must be 'uniform' or 'vmf:<kappa>:<pole-file>'");
}

int run_gof(const std::string& sample_path, const std::string& ref_spec,
            int ref_count, const CommonOptions& opts) {
  const auto sample = parse_points(sample_path);
  const int n = static_cast<int>(sample.points.size());
  const int dim = sample.points.front().dim();
  ordered_json ref_echo;
  const ReferenceSampler reference = parse_reference(ref_spec, dim, &ref_echo);
  const int m = ref_count > 0 ? ref_count : std::max(200, 2 * n);
  const TestReport report = gof_test(sample.points, reference, m,
                                     MetricPower{opts.r}, opts.permutations,
                                     opts.seed);
  ordered_json payload = to_json(report);
  payload["n"] = n;
  payload["reference_count"] = m;
  for (auto& [key, value] : ref_echo.items()) payload[key] = value;
  return finish_test("test-gof", opts, std::move(payload), report);
}

int run_cluster(const std::string& path, int k, const CommonOptions& opts) {
  const auto parsed = parse_points(path);
  const ClusterResult result =
      energy_cluster(parsed.points, k, MetricPower{opts.r});
  ordered_json out;
  out["command"] = "cluster";
  out["config"] = config_echo(opts);
  out["n"] = static_cast<int>(parsed.points.size());
  out["k"] = k;
  out["labels"] = result.labels;
  ordered_json merges = ordered_json::array();
  for (const MergeStep& step : result.merges) {
    merges.push_back(ordered_json{{"left", step.left},
                                  {"right", step.right},
                                  {"height", number12(step.height)}});
  }
  out["merges"] = std::move(merges);
  emit(out, parse_format(opts.format), std::cout);
  return kExitOk;
}

int run_fingerprint(const std::string& measure_path,
                    const std::string& directions_path,
                    const CommonOptions& opts) {
  const DiscreteMeasure measure = measure_from(parse_points(measure_path));
  const auto directions = parse_points(directions_path);
  const HemisphereFingerprint fp = fingerprint(measure, directions.points);
  ordered_json out;
  out["command"] = "fingerprint";
  out["config"] = config_echo(opts);
  out["atoms"] = measure.size();
  out["directions"] = static_cast<int>(directions.points.size());
  ordered_json masses = ordered_json::array();
  for (double mass : fp.masses) masses.push_back(number12(mass));
  out["masses"] = std::move(masses);
  out["restricted_to"] = nullptr;
  emit(out, parse_format(opts.format), std::cout);
  return kExitOk;
}

int run_verify(const std::string& which, int trials,
               const CommonOptions& opts) {
  VerifyResult result;
  if (which == "identity") {
    result = verify_identity(trials, opts.samples, opts.seed);
  } else if (which == "energy") {
    result = verify_energy(trials, opts.samples, opts.seed);
  } else if (which == "negtype") {
    result = verify_negtype(trials, opts.seed);
  } else if (which == "cw") {
    result = verify_cw(trials, opts.seed);
  } else if (which == "symm") {
    result = verify_symm(trials, opts.seed);
  } else {
    result = verify_compare(trials, opts.seed);
  }
  ordered_json out;
  out["command"] = "verify";
  out["suite"] = which;
  out["config"] = config_echo(opts);
  for (auto& [key, value] : result.payload.items()) out[key] = value;
  out["ok"] = result.ok;
  emit(out, parse_format(opts.format), std::cout);
  return result.ok ? kExitOk : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Energy statistics under the great-circle metric on spheres: "
      "independence, equality-of-distributions and goodness-of-fit tests, "
      "energy-linkage clustering, and numeric verification suites."};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string path_a, path_b, ref_spec = "uniform";
  int k = 1;
  int ref_count = 0;
  int trials = 0;
  std::string verify_which;

  CLI::App* indep = app.add_subcommand(
      "test-independence", "Distance-covariance permutation test");
  indep->add_option("x", path_a, "CSV of first marginal")->required();
  indep->add_option("y", path_b, "CSV of second marginal")->required();
  add_common(indep, &opts);

  CLI::App* two = app.add_subcommand(
      "test-two-sample", "Energy-distance permutation test");
  two->add_option("a", path_a, "CSV of first sample")->required();
  two->add_option("b", path_b, "CSV of second sample")->required();
  add_common(two, &opts);

  CLI::App* gof = app.add_subcommand(
      "test-gof", "Goodness of fit against a reference distribution");
  gof->add_option("sample", path_a, "CSV of the observed sample")->required();
  gof->add_option("--ref", ref_spec,
                  "reference: uniform or vmf:<kappa>:<pole-file>");
  gof->add_option("--ref-count", ref_count,
                  "reference draw count (default max(200, 2n))");
  add_common(gof, &opts);

  CLI::App* cluster =
      app.add_subcommand("cluster", "Energy-linkage agglomerative clustering");
  cluster->add_option("points", path_a, "CSV of points")->required();
  cluster->add_option("--k", k, "number of clusters")->required();
  add_common(cluster, &opts);

  CLI::App* verify = app.add_subcommand(
      "verify", "Numeric verification suites over randomized inputs");
  verify
      ->add_option("suite", verify_which,
                   "identity | energy | negtype | cw | symm | compare")
      ->required()
      ->check(CLI::IsMember(
          {"identity", "energy", "negtype", "cw", "symm", "compare"}));
  verify->add_option("--trials", trials, "randomized trials (0 = default)");
  add_common(verify, &opts);

  CLI::App* fp = app.add_subcommand(
      "fingerprint", "Hemisphere masses of a measure over direction samples");
  fp->add_option("measure", path_a, "CSV of atoms (optional weight column)")
      ->required();
  fp->add_option("--directions", path_b, "CSV of direction points")
      ->required();
  add_common(fp, &opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*indep) return run_independence(path_a, path_b, opts);
    if (*two) return run_two_sample(path_a, path_b, opts);
    if (*gof) return run_gof(path_a, ref_spec, ref_count, opts);
    if (*cluster) return run_cluster(path_a, k, opts);
    if (*fp) return run_fingerprint(path_a, path_b, opts);
    if (*verify) {
      if (trials <= 0) {
        trials = verify_which == "identity"
                     ? 5
                     : (verify_which == "energy" ? 20 : 200);
      }
      return run_verify(verify_which, trials, opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
