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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>

#include "subgauss/baselines.hpp"
#include "subgauss/estimator.hpp"
#include "subgauss/rng.hpp"
#include "subgauss/skew.hpp"

namespace subgauss::bench {

namespace {

constexpr std::uint64_t kTrialSalt = 0x745249414c5345ULL;
constexpr double kTrimFraction = 0.05;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_estimators() {
  static const std::vector<std::string> kNames = {
      "main",   "sample_mean",    "trimmed_mean",
      "catoni", "median_of_means", "corrected_mean"};
  return kNames;
}

double apply_estimator(const std::string& name, const SampleSet& samples,
                       const Confidence& conf, const DistributionSpec& spec) {
  if (name == "main") return estimate(samples, conf).mu_hat;
  if (name == "sample_mean") return baselines::sample_mean(samples);
  if (name == "trimmed_mean") {
    return baselines::trimmed_mean(samples, kTrimFraction);
  }
  if (name == "catoni") {
    baselines::CatoniConfig cfg;
    cfg.variance = spec.variance();
    cfg.tolerance = 1e-10;
    cfg.max_iterations = 200;
    return baselines::catoni_estimate(samples, conf, cfg);
  }
  if (name == "median_of_means") return median_of_means(samples, conf);
  if (name == "corrected_mean") return corrected_empirical_mean(samples, conf);
  throw ParseError("unknown estimator '" + name + "'");
}

std::vector<TrialRecord> run_trials(const std::vector<DistributionSpec>& specs,
                                    const std::vector<std::string>& estimators,
                                    std::size_t n, double delta,
                                    std::size_t trials,
                                    std::uint64_t master_seed,
                                    const RunOptions& options) {
  if (trials == 0) throw Error("run_trials: need at least one trial");
  if (specs.empty()) throw Error("run_trials: no distributions");
  if (estimators.empty()) throw Error("run_trials: no estimators");
  const Confidence conf(delta);
  for (const auto& spec : specs) spec.validate();
  for (const auto& name : estimators) {
    const auto& known = known_estimators();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw ParseError("unknown estimator '" + name + "'");
    }
  }

  struct Task {
    std::size_t spec_index;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  tasks.reserve(specs.size() * trials);
  for (std::size_t s = 0; s < specs.size(); ++s) {
    for (std::size_t t = 0; t < trials; ++t) tasks.push_back({s, t});
  }

  std::vector<std::vector<TrialRecord>> buffers(tasks.size());
  auto run_task = [&](std::size_t task_index) {
    const Task& task = tasks[task_index];
    const DistributionSpec& spec = specs[task.spec_index];
    const std::string dist_id = spec.id();
    const std::uint64_t seed = counter_uint64(
        master_seed, fnv1a64(dist_id) ^ kTrialSalt, task.trial);
    const SampleSet samples = sample_distribution(spec, n, seed);
    const double true_mean = spec.mean();

    auto& out = buffers[task_index];
    out.reserve(estimators.size());
    for (const std::string& name : estimators) {
      TrialRecord rec;
      rec.distribution = dist_id;
      rec.n = n;
      rec.delta = delta;
      rec.trial = task.trial;
      rec.seed = seed;
      rec.estimator = name;
      rec.true_mean = true_mean;
      try {
        rec.estimate = apply_estimator(name, samples, conf, spec);
        rec.abs_error = std::abs(rec.estimate - true_mean);
      } catch (const Error&) {
        rec.estimate = kNaN;
        rec.abs_error = kNaN;
      }
      out.push_back(std::move(rec));
    }
  };

  unsigned workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, tasks.size());

  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
  } else {
    std::vector<std::thread> pool;
    const std::size_t total = tasks.size();
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < total; i += workers) run_task(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<TrialRecord> records;
  records.reserve(tasks.size() * estimators.size());
  for (auto& buffer : buffers) {
    for (auto& rec : buffer) records.push_back(std::move(rec));
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const TrialRecord& a, const TrialRecord& b) {
                     return std::tie(a.distribution, a.trial, a.estimator) <
                            std::tie(b.distribution, b.trial, b.estimator);
                   });
  return records;
}

const GroupSummary& SummaryStats::find(const std::string& distribution,
                                       const std::string& estimator) const {
  for (const auto& g : groups) {
    if (g.distribution == distribution && g.estimator == estimator) return g;
  }
  throw EmptyGroup("no summary group for " + distribution + "/" + estimator);
}

SummaryStats summarize(const std::vector<TrialRecord>& records, double slack) {
  if (records.empty()) throw EmptyGroup("summarize: no records");

  std::map<std::pair<std::string, std::string>, std::vector<const TrialRecord*>>
      groups;
  for (const auto& rec : records) {
    groups[{rec.distribution, rec.estimator}].push_back(&rec);
  }

  SummaryStats stats;
  for (const auto& [key, members] : groups) {
    const TrialRecord& first = *members.front();
    const Confidence conf(first.delta);
    GroupSummary g;
    g.distribution = key.first;
    g.estimator = key.second;
    g.trial_count = members.size();
    g.quantile_levels[3] = 1.0 - first.delta;
    g.epsilon =
        std::sqrt(2.0 * conf.log_inv_delta() / static_cast<double>(first.n)) *
        (1.0 + slack);

    std::vector<double> errors;
    errors.reserve(members.size());
    std::size_t failures = 0;
    for (const TrialRecord* rec : members) {
      if (std::isnan(rec->abs_error)) {
        ++g.error_count;
        ++failures;  // an estimator that failed to produce a value failed
        continue;
      }
      errors.push_back(rec->abs_error);
      if (rec->abs_error > g.epsilon) ++failures;
    }
    std::sort(errors.begin(), errors.end());
    for (int q = 0; q < 4; ++q) {
      if (errors.empty()) {
        g.quantiles[q] = kNaN;
        continue;
      }
      // nearest rank: the ceil(level * N)-th order statistic, 1-indexed
      const double level = g.quantile_levels[q];
      auto rank = static_cast<std::size_t>(
          std::ceil(level * static_cast<double>(errors.size())));
      if (rank < 1) rank = 1;
      if (rank > errors.size()) rank = errors.size();
      g.quantiles[q] = errors[rank - 1];
    }
    g.failure_rate =
        static_cast<double>(failures) / static_cast<double>(members.size());
    stats.groups.push_back(std::move(g));
  }
  return stats;
}

std::string summary_table(const SummaryStats& stats) {
  std::string out =
      "distribution        estimator        trials     q50        q90        "
      "q99        q(1-delta)  fail_rate  epsilon\n";
  char buf[256];
  for (const auto& g : stats.groups) {
    std::snprintf(buf, sizeof(buf),
                  "%-19s %-16s %-10zu %-10.4g %-10.4g %-10.4g %-11.4g "
                  "%-10.5g %-10.4g\n",
                  g.distribution.c_str(), g.estimator.c_str(), g.trial_count,
                  g.quantiles[0], g.quantiles[1], g.quantiles[2],
                  g.quantiles[3], g.failure_rate, g.epsilon);
    out += buf;
  }
  return out;
}

std::string records_to_csv(const std::vector<TrialRecord>& records) {
  std::string out =
      "distribution,n,delta,trial,seed,estimator,estimate,true_mean,"
      "abs_error\n";
  char buf[512];
  for (const auto& rec : records) {
    std::snprintf(buf, sizeof(buf), "%s,%zu,%s,%zu,%llu,%s,%s,%s,%s\n",
                  rec.distribution.c_str(), rec.n,
                  format_double(rec.delta).c_str(), rec.trial,
                  static_cast<unsigned long long>(rec.seed),
                  rec.estimator.c_str(), format_double(rec.estimate).c_str(),
                  format_double(rec.true_mean).c_str(),
                  format_double(rec.abs_error).c_str());
    out += buf;
  }
  return out;
}

void write_records_csv(const std::vector<TrialRecord>& records,
                       const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << records_to_csv(records);
  if (!out) throw IoError("write failed: " + path);
}

std::vector<TrialRecord> parse_records_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV");
  if (line !=
      "distribution,n,delta,trial,seed,estimator,estimate,true_mean,"
      "abs_error") {
    throw ParseError("unexpected CSV header: " + line);
  }
  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 9) throw ParseError("bad CSV row: " + line);
    TrialRecord rec;
    rec.distribution = fields[0];
    rec.n = std::stoull(fields[1]);
    rec.delta = std::strtod(fields[2].c_str(), nullptr);
    rec.trial = std::stoull(fields[3]);
    rec.seed = std::stoull(fields[4]);
    rec.estimator = fields[5];
    rec.estimate = std::strtod(fields[6].c_str(), nullptr);
    rec.true_mean = std::strtod(fields[7].c_str(), nullptr);
    rec.abs_error = std::strtod(fields[8].c_str(), nullptr);
    records.push_back(std::move(rec));
  }
  return records;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = s.find(',', start);
    const std::string item = trim(
        comma == std::string::npos ? s.substr(start)
                                   : s.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  bool has_families = false, has_n = false, has_delta = false,
       has_trials = false, has_seed = false, has_estimators = false;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (value.empty()) {
      throw ParseError("config key '" + key + "' has no value");
    }
    if (key == "families") {
      for (const auto& id : split_list(value)) {
        cfg.families.push_back(DistributionSpec::from_id(id));
      }
      has_families = !cfg.families.empty();
    } else if (key == "n") {
      cfg.n = std::stoull(value);
      has_n = true;
    } else if (key == "delta") {
      cfg.delta = std::strtod(value.c_str(), nullptr);
      has_delta = true;
    } else if (key == "trials") {
      cfg.trials = std::stoull(value);
      has_trials = true;
    } else if (key == "master_seed") {
      cfg.master_seed = std::stoull(value);
      has_seed = true;
    } else if (key == "estimators") {
      cfg.estimators = split_list(value);
      has_estimators = !cfg.estimators.empty();
    } else if (key == "slack") {
      cfg.slack = std::strtod(value.c_str(), nullptr);
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
  if (!has_families) throw ParseError("config: missing key 'families'");
  if (!has_n) throw ParseError("config: missing key 'n'");
  if (!has_delta) throw ParseError("config: missing key 'delta'");
  if (!has_trials) throw ParseError("config: missing key 'trials'");
  if (!has_seed) throw ParseError("config: missing key 'master_seed'");
  if (!has_estimators) throw ParseError("config: missing key 'estimators'");
  if (!(cfg.delta > 0.0) || !(cfg.delta < 1.0)) {
    throw ParseError("config: delta must lie in (0,1)");
  }
  if (cfg.n == 0) throw ParseError("config: n must be positive");
  if (cfg.trials == 0) throw ParseError("config: trials must be positive");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

}  // namespace subgauss::bench
