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

#include "subgauss/bench.hpp"

#include <cmath>
#include <limits>

#include "doctest.h"
#include "subgauss/skew.hpp"
#include "test_support.hpp"

using namespace subgauss;
using namespace subgauss::bench;

TEST_CASE("run_trials basics") {
  const std::vector<DistributionSpec> specs = {{Family::kGaussian, 0.0, true}};
  SUBCASE("one trial, one estimator") {
    const auto records =
        run_trials(specs, {"sample_mean"}, 50, 0.05, 1, 123);
    REQUIRE(records.size() == 1);
    const TrialRecord& rec = records[0];
    CHECK(rec.distribution == "gaussian");
    CHECK(rec.n == 50);
    CHECK(rec.estimator == "sample_mean");
    CHECK(rec.abs_error == std::abs(rec.estimate - rec.true_mean));
    CHECK(rec.true_mean == 0.0);
  }
  SUBCASE("reruns are byte-identical and worker-count independent") {
    const std::vector<std::string> ests = {"main", "sample_mean", "catoni"};
    RunOptions w1, w8;
    w1.workers = 1;
    w8.workers = 8;
    const auto a = run_trials(specs, ests, 100, 0.01, 20, 99, w1);
    const auto b = run_trials(specs, ests, 100, 0.01, 20, 99, w8);
    CHECK(records_to_csv(a) == records_to_csv(b));
    const auto c = run_trials(specs, ests, 100, 0.01, 20, 100, w1);
    CHECK(records_to_csv(a) != records_to_csv(c));
  }
  SUBCASE("canonical output order") {
    const std::vector<DistributionSpec> two = {
        {Family::kRademacher, 0.0, true}, {Family::kGaussian, 0.0, true}};
    const auto records =
        run_trials(two, {"sample_mean", "main"}, 30, 0.05, 2, 7);
    REQUIRE(records.size() == 8);
    // (distribution, trial, estimator) lexicographic
    CHECK(records[0].distribution == "gaussian");
    CHECK(records[0].trial == 0);
    CHECK(records[0].estimator == "main");
    CHECK(records[1].estimator == "sample_mean");
    CHECK(records[2].trial == 1);
    CHECK(records[4].distribution == "rademacher");
  }
  SUBCASE("estimator failures become nan rows") {
    // catoni needs n > 2 log(1/delta): n = 5, delta = 1e-3 fails
    const auto records =
        run_trials(specs, {"catoni", "sample_mean"}, 5, 1e-3, 1, 1);
    REQUIRE(records.size() == 2);
    CHECK(std::isnan(records[0].estimate));  // catoni sorts first
    CHECK(std::isnan(records[0].abs_error));
    CHECK(!std::isnan(records[1].estimate));
  }
}

TEST_CASE("summarize") {
  SUBCASE("empty input") {
    CHECK_THROWS_AS(summarize({}), EmptyGroup);
  }
  auto make = [](double abs_error, std::size_t trial) {
    TrialRecord rec;
    rec.distribution = "gaussian";
    rec.n = 100;
    rec.delta = 0.25;
    rec.trial = trial;
    rec.estimator = "main";
    rec.estimate = abs_error;
    rec.true_mean = 0.0;
    rec.abs_error = abs_error;
    return rec;
  };
  SUBCASE("all-zero errors") {
    std::vector<TrialRecord> records = {make(0, 0), make(0, 1), make(0, 2)};
    const auto stats = summarize(records);
    const auto& g = stats.find("gaussian", "main");
    for (double q : g.quantiles) CHECK(q == 0.0);
    CHECK(g.failure_rate == 0.0);
    CHECK(g.trial_count == 3);
  }
  SUBCASE("nearest-rank convention") {
    std::vector<TrialRecord> records = {make(3, 0), make(1, 1), make(4, 2),
                                        make(2, 3)};
    const auto stats = summarize(records);
    const auto& g = stats.find("gaussian", "main");
    CHECK(g.quantiles[0] == 2.0);  // level 0.5 -> rank ceil(2) = 2nd of {1,2,3,4}
    CHECK(g.quantiles[1] == 4.0);  // level 0.9 -> rank 4
    CHECK(g.quantiles[2] == 4.0);
    // level 1 - delta = 0.75 -> rank 3
    CHECK(g.quantiles[3] == 3.0);
  }
  SUBCASE("failure threshold uses the slack factor") {
    std::vector<TrialRecord> records = {make(0.1, 0), make(0.5, 1)};
    const auto stats = summarize(records, 0.25);
    const auto& g = stats.find("gaussian", "main");
    const double eps = std::sqrt(2.0 * std::log(4.0) / 100.0) * 1.25;
    CHECK(g.epsilon == doctest::Approx(eps).epsilon(1e-15));
    CHECK(g.failure_rate == 0.5);  // only the 0.5 row exceeds eps = 0.208
  }
  SUBCASE("nan rows count as failures and leave quantiles to the rest") {
    auto bad = make(std::numeric_limits<double>::quiet_NaN(), 9);
    std::vector<TrialRecord> records = {make(0.0, 0), make(0.0, 1), bad};
    const auto stats = summarize(records);
    const auto& g = stats.find("gaussian", "main");
    CHECK(g.error_count == 1);
    CHECK(g.failure_rate == doctest::Approx(1.0 / 3.0));
    CHECK(g.quantiles[0] == 0.0);
  }
}

TEST_CASE("csv serialization") {
  SUBCASE("empty records give a header-only file") {
    CHECK(records_to_csv({}) ==
          "distribution,n,delta,trial,seed,estimator,estimate,true_mean,"
          "abs_error\n");
  }
  SUBCASE("one record gives two lines in declared field order") {
    TrialRecord rec;
    rec.distribution = "pareto_3.5";
    rec.n = 7;
    rec.delta = 0.125;
    rec.trial = 3;
    rec.seed = 11;
    rec.estimator = "main";
    rec.estimate = 0.5;
    rec.true_mean = 0.0;
    rec.abs_error = 0.5;
    const std::string csv = records_to_csv({rec});
    CHECK(csv ==
          "distribution,n,delta,trial,seed,estimator,estimate,true_mean,"
          "abs_error\npareto_3.5,7,0.125,3,11,main,0.5,0,0.5\n");
  }
  SUBCASE("round trip reproduces records exactly") {
    const std::vector<DistributionSpec> specs = {
        {Family::kPareto, 3.5, true}, {Family::kGaussian, 0.0, true}};
    const auto records = run_trials(
        specs, {"main", "sample_mean", "corrected_mean"}, 64, 0.01, 5, 2024);
    const std::string csv = records_to_csv(records);
    const auto parsed = parse_records_csv(csv);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
      CHECK(parsed[i].distribution == records[i].distribution);
      CHECK(parsed[i].n == records[i].n);
      CHECK(parsed[i].delta == records[i].delta);
      CHECK(parsed[i].trial == records[i].trial);
      CHECK(parsed[i].seed == records[i].seed);
      CHECK(parsed[i].estimator == records[i].estimator);
      CHECK(parsed[i].estimate == records[i].estimate);
      CHECK(parsed[i].true_mean == records[i].true_mean);
      CHECK(parsed[i].abs_error == records[i].abs_error);
    }
    // a second serialization of the parsed records is byte-identical
    CHECK(records_to_csv(parsed) == csv);
  }
}

TEST_CASE("config parsing") {
  SUBCASE("minimal config") {
    const auto cfg = parse_config(
        "# comment\n"
        "families = gaussian, pareto_3.5\n"
        "n = 100\n"
        "delta = 0.01\n"
        "trials = 10\n"
        "master_seed = 42\n"
        "estimators = main, sample_mean\n");
    CHECK(cfg.families.size() == 2);
    CHECK(cfg.families[1].id() == "pareto_3.5");
    CHECK(cfg.n == 100);
    CHECK(cfg.delta == 0.01);
    CHECK(cfg.trials == 10);
    CHECK(cfg.master_seed == 42);
    CHECK(cfg.estimators.size() == 2);
    CHECK(cfg.slack == 0.25);
  }
  SUBCASE("missing required key") {
    CHECK_THROWS_AS(parse_config("families = gaussian\nn = 10\ndelta = 0.1\n"
                                 "master_seed = 1\nestimators = main\n"),
                    ParseError);
  }
  SUBCASE("unknown key is an error") {
    CHECK_THROWS_AS(parse_config("families = gaussian\nn = 10\ndelta = 0.1\n"
                                 "trials = 1\nmaster_seed = 1\n"
                                 "estimators = main\nbogus = 3\n"),
                    ParseError);
  }
  SUBCASE("slack is optional") {
    const auto cfg = parse_config(
        "families = gaussian\nn = 10\ndelta = 0.1\ntrials = 1\n"
        "master_seed = 1\nestimators = main\nslack = 0.5\n");
    CHECK(cfg.slack == 0.5);
  }
}

TEST_CASE("corrected_empirical_mean") {
  const Confidence conf(std::exp(-3.0));
  SUBCASE("odd sums cancel") {
    CHECK(corrected_empirical_mean(SampleSet({-1, 1}), conf) == 0.0);
  }
  SUBCASE("matches the trimmed estimator when nothing clamps") {
    CHECK(corrected_empirical_mean(SampleSet({1, -1, 2}), conf) ==
          doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  }
  SUBCASE("constant samples") {
    const double c = 4.0;
    const double expected = c - (conf.log_inv_delta() / (3.0 * 2.0)) * c;
    CHECK(corrected_empirical_mean(SampleSet({c, c}), conf) ==
          doctest::Approx(expected).epsilon(1e-15));
  }
  SUBCASE("zero second moment") {
    CHECK_THROWS_AS(corrected_empirical_mean(SampleSet({0, 0}), conf),
                    DegenerateSamples);
  }
}

TEST_CASE("poisson skew experiment") {
  SUBCASE("correction beats the symmetric interval") {
    const auto report = poisson_skew_experiment(1000.0, Confidence(1e-4));
    CHECK(report.corrected_max_tail() < report.raw_max_tail());
    // frozen oracle values (exact CDF, cross-checked externally)
    CHECK(report.raw_upper_tail ==
          doctest::Approx(1.344252e-05).epsilon(1e-5));
    CHECK(report.raw_lower_tail ==
          doctest::Approx(5.875224e-06).epsilon(1e-5));
    CHECK(report.corrected_upper_tail ==
          doctest::Approx(8.964495e-06).epsilon(1e-5));
    CHECK(report.corrected_lower_tail ==
          doctest::Approx(9.233182e-06).epsilon(1e-5));
  }
  SUBCASE("gaussian limit: raw and corrected converge") {
    const auto report = poisson_skew_experiment(1e6, Confidence(1e-4));
    const double ratio = report.corrected_max_tail() / report.raw_max_tail();
    CHECK(ratio > 0.9);
    CHECK(ratio <= 1.0);
  }
  SUBCASE("no underflow at lambda = 100") {
    const auto report = poisson_skew_experiment(100.0, Confidence(1e-4));
    CHECK(report.raw_lower_tail > 0.0);
    CHECK(report.corrected_lower_tail > 0.0);
    CHECK(std::isfinite(report.raw_upper_tail));
    // frozen oracle values
    CHECK(report.raw_max_tail() ==
          doctest::Approx(3.061239e-05).epsilon(1e-5));
    CHECK(report.corrected_max_tail() ==
          doctest::Approx(1.081222e-05).epsilon(1e-5));
  }
  SUBCASE("lambda domain") {
    CHECK_THROWS_AS(poisson_skew_experiment(1.0, Confidence(1e-4)),
                    InvalidLambda);
    CHECK_THROWS_AS(poisson_skew_experiment(-5.0, Confidence(1e-4)),
                    InvalidLambda);
  }
}

TEST_CASE("poisson tails agree with a direct summation oracle") {
  // small-lambda case where the plain linear-space sum is itself exact
  const double lambda = 30.0;
  auto pmf = [&](int k) {
    double v = std::exp(-lambda);
    for (int i = 1; i <= k; ++i) v *= lambda / i;
    return v;
  };
  double below = 0.0;
  for (int k = 0; k < 20; ++k) below += pmf(k);
  CHECK(poisson_lower_tail(lambda, 20.0) ==
        doctest::Approx(below).epsilon(1e-12));
  double above = 0.0;
  for (int k = 41; k < 200; ++k) above += pmf(k);
  CHECK(poisson_upper_tail(lambda, 40.0) ==
        doctest::Approx(above).epsilon(1e-12));
}
