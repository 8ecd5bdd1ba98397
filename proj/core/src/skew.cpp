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

#include "subgauss/skew.hpp"

#include <cmath>
#include <limits>

namespace subgauss::bench {

namespace {

double log_add_exp(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

double log_poisson_pmf(double lambda, double k) {
  return k * std::log(lambda) - lambda - std::lgamma(k + 1.0);
}

// Terms are summed starting at the boundary and walking away from the mode,
// so they decrease; the walk stops once additions are below e^-45 relative.
constexpr double kLogCutoff = 45.0;

}  // namespace

double poisson_upper_tail(double lambda, double x) {
  double k = std::floor(x) + 1.0;
  if (k < 0.0) k = 0.0;
  double lse = -std::numeric_limits<double>::infinity();
  for (;;) {
    const double lt = log_poisson_pmf(lambda, k);
    lse = log_add_exp(lse, lt);
    if (k > lambda && lt < lse - kLogCutoff) break;
    k += 1.0;
  }
  return std::exp(lse);
}

double poisson_lower_tail(double lambda, double x) {
  double k = std::ceil(x) - 1.0;
  if (k < 0.0) return 0.0;
  double lse = -std::numeric_limits<double>::infinity();
  for (;;) {
    const double lt = log_poisson_pmf(lambda, k);
    lse = log_add_exp(lse, lt);
    if (k < lambda && lt < lse - kLogCutoff) break;
    if (k == 0.0) break;
    k -= 1.0;
  }
  return std::exp(lse);
}

PoissonSkewReport poisson_skew_experiment(double lambda,
                                          const Confidence& conf) {
  if (!(lambda > 0.0)) throw InvalidLambda("lambda must be positive");
  const double l = conf.log_inv_delta();
  const double w = std::sqrt(2.0 * lambda * l);
  if (!(lambda - w > 0.0)) {
    throw InvalidLambda(
        "lambda too small: need lambda - sqrt(2 lambda log(1/delta)) > 0");
  }
  PoissonSkewReport report;
  report.raw_upper_tail = poisson_upper_tail(lambda, lambda + w);
  report.raw_lower_tail = poisson_lower_tail(lambda, lambda - w);
  const double shift = l / 3.0;
  report.corrected_upper_tail = poisson_upper_tail(lambda, lambda + shift + w);
  report.corrected_lower_tail = poisson_lower_tail(lambda, lambda + shift - w);
  return report;
}

double corrected_empirical_mean(const SampleSet& samples,
                                const Confidence& conf) {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (double x : samples.values()) {
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
  }
  if (s2 == 0.0) {
    throw DegenerateSamples("corrected_empirical_mean: zero second moment");
  }
  const double n = static_cast<double>(samples.size());
  return s1 / n - (conf.log_inv_delta() / (3.0 * n)) * (s3 / s2);
}

}  // namespace subgauss::bench
