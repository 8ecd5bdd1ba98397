// Copyright 2026 The subgauss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front door: one-shot estimation from a data file, benchmark
// runs from a config file, and numerical certificates. Exit codes: 0 on
// success or a passing certificate, 1 on a failing certificate, 2 on
// usage or input errors.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subgauss/analysis.hpp"
#include "subgauss/bench.hpp"
#include "subgauss/distributions.hpp"
#include "subgauss/estimator.hpp"
#include "subgauss/rng.hpp"
#include "subgauss/skew.hpp"

namespace {

using namespace subgauss;

std::vector<double> read_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == '#') continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str() + b, &end);
    while (end && (*end == ' ' || *end == '\t' || *end == '\r')) ++end;
    if (end == line.c_str() + b || (end && *end != '\0')) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": not a number: " + line);
    }
    values.push_back(v);
  }
  if (values.empty()) throw ParseError(path + ": no values");
  return values;
}

int cmd_estimate(const std::string& input_path, double delta,
                 std::optional<double> kappa_override) {
  const Confidence conf(delta);
  const SampleSet samples(read_values_file(input_path));
  const Estimate est = kappa_override
                           ? estimate_at_pilot(samples, conf, *kappa_override)
                           : estimate(samples, conf);
  std::printf("mu_hat = %.17g\n", est.mu_hat);
  std::printf("kappa = %.17g\n", est.kappa);
  std::printf("alpha = %.17g\n", est.alpha.alpha);
  std::printf("v_hat = %.17g\n", est.alpha.v_hat);
  std::printf("clamp_count = %zu\n", est.alpha.clamp_count);
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_path,
              unsigned workers) {
  const bench::ExperimentConfig cfg = bench::load_config(config_path);
  bench::RunOptions options;
  options.workers = workers;
  const auto records =
      bench::run_trials(cfg.families, cfg.estimators, cfg.n, cfg.delta,
                        cfg.trials, cfg.master_seed, options);
  bench::write_records_csv(records, out_path);
  const auto stats = bench::summarize(records, cfg.slack);
  std::fputs(bench::summary_table(stats).c_str(), stdout);
  return 0;
}

int verify_lemma5(std::size_t vhat_points, double y_step, double corrupt_b,
                  unsigned workers) {
  analysis::CertificateOptions options;
  options.b_offset = corrupt_b;
  options.workers = workers;
  const auto report = analysis::check_lemma5(
      analysis::default_v_hat_grid(vhat_points), {-50.0, 50.0}, y_step,
      options);
  std::fputs(analysis::report_to_kv(report).c_str(), stdout);
  return report.passed ? 0 : 1;
}

int verify_moment(std::size_t quadrature_points) {
  const std::vector<DistributionSpec> suite = {
      {Family::kGaussian, 0.0, true},      {Family::kPareto, 3.5, true},
      {Family::kStudentT, 3.0, true},      {Family::kLognormal, 1.0, true},
      {Family::kTwoPointSkew, 0.01, true}, {Family::kRademacher, 0.0, true},
  };
  const double v_grid[] = {0.05, 0.1, 0.5, 1.0, 5.0, 20.0, 55.4};
  const double deltas[] = {1e-2, 1e-4};
  const std::size_t n = 10000;
  bool all_passed = true;
  for (const auto& spec : suite) {
    for (double delta : deltas) {
      const Confidence conf(delta);
      for (double v : v_grid) {
        const auto bound =
            analysis::moment_factor_bound(spec, v, n, conf, quadrature_points);
        const bool ok = bound.passed();
        all_passed = all_passed && ok;
        std::printf("%s delta=%g v_hat=%g: lhs = %.12g rhs = %.12g %s\n",
                    spec.id().c_str(), delta, v, bound.lhs, bound.rhs,
                    ok ? "ok" : "VIOLATED");
      }
    }
  }
  std::printf("passed = %s\n", all_passed ? "true" : "false");
  return all_passed ? 0 : 1;
}

int verify_lipschitz(std::uint64_t seed, std::size_t cases) {
  // Randomized corpus probes of the kappa- and v_hat-sensitivity bounds:
  // slopes of estimate_with_kappa stay below 10 sqrt(log(1/delta)/n) and
  // psi slopes below 10 log(1/delta).
  const auto v_grid = analysis::default_lipschitz_grid();
  double worst_kappa_ratio = 0.0, worst_mu_ratio = 0.0, worst_alpha_ratio = 0.0;
  std::size_t hypothesis_skips = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const auto pick = [&](std::uint64_t lane) {
      return counter_uniform(seed, 0xC0FFEE + lane, c);
    };
    const auto n =
        static_cast<std::size_t>(10.0 + pick(0) * (10000.0 - 10.0));
    const double log10_delta = -6.0 + pick(1) * (std::log10(0.3) + 6.0);
    const double delta = std::pow(10.0, log10_delta);
    const Confidence conf(delta);
    if (conf.budget() >= static_cast<double>(n)) continue;

    DistributionSpec spec{Family::kGaussian, 0.0, true};
    const SampleSet samples =
        sample_distribution(spec, n, counter_uint64(seed, 0xD15C0, c));
    const double l = conf.log_inv_delta();

    double sd = 0.0, mean = 0.0;
    for (double x : samples.values()) mean += x;
    mean /= static_cast<double>(n);
    for (double x : samples.values()) sd += (x - mean) * (x - mean);
    sd = std::sqrt(sd / static_cast<double>(n));
    const double dk = 1e-4 * sd;
    const auto kp = analysis::kappa_sensitivity_probe(samples, conf,
                                                      {mean - dk, mean + dk});
    if (kp.evaluated == 2) {
      const double bound = 10.0 * std::sqrt(l / static_cast<double>(n));
      worst_kappa_ratio = std::max(worst_kappa_ratio, kp.max_slope / bound);
    }

    const auto lp = analysis::lipschitz_probe(samples, conf, v_grid);
    if (!lp.hypothesis_met) {
      ++hypothesis_skips;
      continue;
    }
    worst_mu_ratio = std::max(worst_mu_ratio, lp.max_slope_mu / (10.0 * l));
    worst_alpha_ratio =
        std::max(worst_alpha_ratio, lp.max_slope_alpha / (10.0 * l));
  }
  const bool passed = worst_kappa_ratio <= 1.0 && worst_mu_ratio <= 1.0 &&
                      worst_alpha_ratio <= 1.0;
  std::printf("cases = %zu\n", cases);
  std::printf("hypothesis_skips = %zu\n", hypothesis_skips);
  std::printf("worst_kappa_slope_ratio = %.17g\n", worst_kappa_ratio);
  std::printf("worst_psi_mu_slope_ratio = %.17g\n", worst_mu_ratio);
  std::printf("worst_psi_alpha_slope_ratio = %.17g\n", worst_alpha_ratio);
  std::printf("passed = %s\n", passed ? "true" : "false");
  return passed ? 0 : 1;
}

int verify_poisson(double lambda, double delta) {
  const Confidence conf(delta);
  const auto report = bench::poisson_skew_experiment(lambda, conf);
  std::printf("raw_upper_tail = %.17g\n", report.raw_upper_tail);
  std::printf("raw_lower_tail = %.17g\n", report.raw_lower_tail);
  std::printf("corrected_upper_tail = %.17g\n", report.corrected_upper_tail);
  std::printf("corrected_lower_tail = %.17g\n", report.corrected_lower_tail);
  std::printf("raw_max_tail = %.17g\n", report.raw_max_tail());
  std::printf("corrected_max_tail = %.17g\n", report.corrected_max_tail());
  const bool passed = report.corrected_max_tail() <= report.raw_max_tail();
  std::printf("passed = %s\n", passed ? "true" : "false");
  return passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sub-Gaussian mean estimation toolkit"};
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand(
      "estimate", "estimate the mean of a file of values (one per line)");
  std::string input_path;
  double delta = 0.0;
  std::optional<double> kappa_override;
  est->add_option("input", input_path, "input file, one value per line")
      ->required();
  est->add_option("--delta", delta, "failure probability in (0,1)")
      ->required();
  double kappa_value = 0.0;
  auto* kappa_opt = est->add_option("--kappa", kappa_value,
                                    "fix the pilot instead of median-of-means");

  // bench
  auto* ben = app.add_subcommand("bench", "run a Monte Carlo benchmark");
  std::string config_path, out_path;
  unsigned workers = 0;
  ben->add_option("--config", config_path, "experiment config file")
      ->required();
  ben->add_option("--out", out_path, "output CSV path")->required();
  ben->add_option("--workers", workers, "worker threads (0 = hardware)");

  // verify
  auto* ver = app.add_subcommand("verify", "run a numerical certificate");
  std::string which;
  ver->add_option("which", which, "one of: lemma5, moment, lipschitz, poisson")
      ->required();
  std::size_t vhat_points = 1000;
  double y_step = 1e-3;
  double corrupt_b = 0.0;
  std::size_t quad_points = 100000;
  double lambda = 1000.0;
  double verify_delta = 1e-4;
  std::uint64_t seed = 20260809;
  std::size_t cases = 1000;
  unsigned verify_workers = 0;
  ver->add_option("--vhat-points", vhat_points, "v_hat grid size");
  ver->add_option("--y-step", y_step, "coarse y grid step");
  ver->add_option("--corrupt-b", corrupt_b, "offset added to b (negative control)")
      ->group("");  // hidden test flag
  ver->add_option("--quad-points", quad_points, "quadrature points");
  ver->add_option("--lambda", lambda, "Poisson mean");
  ver->add_option("--delta", verify_delta, "failure probability");
  ver->add_option("--seed", seed, "corpus seed");
  ver->add_option("--cases", cases, "corpus size");
  ver->add_option("--workers", verify_workers, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (est->parsed()) {
      if (kappa_opt->count() > 0) kappa_override = kappa_value;
      return cmd_estimate(input_path, delta, kappa_override);
    }
    if (ben->parsed()) {
      return cmd_bench(config_path, out_path, workers);
    }
    if (which == "lemma5") {
      return verify_lemma5(vhat_points, y_step, corrupt_b, verify_workers);
    }
    if (which == "moment") return verify_moment(quad_points);
    if (which == "lipschitz") return verify_lipschitz(seed, cases);
    if (which == "poisson") return verify_poisson(lambda, verify_delta);
    std::fprintf(stderr, "unknown certificate '%s'\n", which.c_str());
    return 2;
  } catch (const subgauss::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
