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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "subgauss/distributions.hpp"
#include "subgauss/sample_set.hpp"

namespace subgauss::bench {

/// One estimator applied to one sampled trial. A failed estimator leaves
/// estimate and abs_error as NaN (serialized "nan"); runs never abort on
/// per-trial errors.
struct TrialRecord {
  std::string distribution;
  std::size_t n = 0;
  double delta = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string estimator;
  double estimate = 0.0;
  double true_mean = 0.0;
  double abs_error = 0.0;
};

/// Estimators runnable per trial. `trimmed_mean` uses a fixed symmetric 5%
/// trim; `catoni` is given the distribution's exact closed-form variance.
const std::vector<std::string>& known_estimators();

/// Applies one named estimator; throws on unknown names.
double apply_estimator(const std::string& name, const SampleSet& samples,
                       const Confidence& conf, const DistributionSpec& spec);

struct RunOptions {
  unsigned workers = 0;  // 0 = hardware concurrency; never affects output
};

/// Runs `trials` Monte Carlo trials per distribution. Trial t of spec s is
/// sampled with the per-trial seed
///   counter_uint64(master_seed, fnv1a64(s.id()) ^ kTrialSalt, t),
/// and every estimator sees that identical SampleSet. Records are returned
/// in (distribution, trial, estimator) lexicographic order regardless of
/// the worker count.
std::vector<TrialRecord> run_trials(const std::vector<DistributionSpec>& specs,
                                    const std::vector<std::string>& estimators,
                                    std::size_t n, double delta,
                                    std::size_t trials,
                                    std::uint64_t master_seed,
                                    const RunOptions& options = {});

/// Per-(distribution, estimator) error summary. Quantiles use the
/// nearest-rank convention on sorted abs_error; the failure threshold is
/// epsilon = sqrt(2 log(1/delta)/n) * (1 + slack). Error rows count as
/// failures and are excluded from quantiles.
struct GroupSummary {
  std::string distribution;
  std::string estimator;
  std::size_t trial_count = 0;
  std::size_t error_count = 0;
  double quantile_levels[4] = {0.5, 0.9, 0.99, 0.0};  // [3] set to 1 - delta
  double quantiles[4] = {0, 0, 0, 0};
  double epsilon = 0.0;
  double failure_rate = 0.0;
};

struct SummaryStats {
  std::vector<GroupSummary> groups;  // ordered by (distribution, estimator)

  const GroupSummary& find(const std::string& distribution,
                           const std::string& estimator) const;
};

SummaryStats summarize(const std::vector<TrialRecord>& records,
                       double slack = 0.25);

/// Fixed-width text table of a summary, one row per group.
std::string summary_table(const SummaryStats& stats);

/// CSV with header
/// distribution,n,delta,trial,seed,estimator,estimate,true_mean,abs_error
/// and 17-significant-digit decimal serialization, LF line endings.
std::string records_to_csv(const std::vector<TrialRecord>& records);
void write_records_csv(const std::vector<TrialRecord>& records,
                       const std::string& path);
std::vector<TrialRecord> parse_records_csv(const std::string& csv);

/// Line-oriented `key = value` experiment configuration. Keys: families,
/// n, delta, trials, master_seed, estimators, slack (optional, default
/// 0.25). Lists are comma-separated. Blank lines and `#` comments are
/// skipped; unknown keys are an error.
struct ExperimentConfig {
  std::vector<DistributionSpec> families;
  std::size_t n = 0;
  double delta = 0.0;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  std::vector<std::string> estimators;
  double slack = 0.25;
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace subgauss::bench
