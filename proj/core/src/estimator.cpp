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

#include "subgauss/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace subgauss {

namespace {

std::size_t group_count(std::size_t n, const Confidence& conf) {
  const double l = conf.log_inv_delta();
  const double k = std::ceil(l);
  std::size_t groups = k < 1.0 ? 1 : static_cast<std::size_t>(k);
  return std::min(n, std::max<std::size_t>(1, groups));
}

double median_inplace(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t k = xs.size();
  if (k % 2 == 1) return xs[k / 2];
  return 0.5 * (xs[k / 2 - 1] + xs[k / 2]);
}

}  // namespace

double median_of_means(const SampleSet& samples, const Confidence& conf) {
  const std::size_t n = samples.size();
  const std::size_t k = group_count(n, conf);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;  // first `extra` blocks get one more

  std::vector<double> means;
  means.reserve(k);
  std::size_t idx = 0;
  for (std::size_t g = 0; g < k; ++g) {
    const std::size_t len = base + (g < extra ? 1 : 0);
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i) sum += samples[idx + i];
    means.push_back(sum / static_cast<double>(len));
    idx += len;
  }
  return median_inplace(means);
}

AlphaSolution solve_alpha(const SampleSet& samples, double kappa,
                          const Confidence& conf) {
  const std::size_t n = samples.size();
  const double budget = conf.budget();

  std::vector<double> dev2(n);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = samples[i] - kappa;
    dev2[i] = d * d;
    if (dev2[i] > 0.0) ++nonzero;
  }
  if (nonzero == 0) {
    throw DegenerateSamples(
        "solve_alpha: every sample equals the pilot kappa");
  }
  // Samples at kappa contribute 0 for every alpha, so the supremum of the
  // left side is the nonzero-deviation count, not n.
  if (budget >= static_cast<double>(nonzero)) {
    throw InfeasibleBudget(
        "solve_alpha: budget (1/3)log(1/delta) >= number of samples with "
        "nonzero deviation; delta too small for n");
  }

  // Decreasing deviations; breakpoints alpha = 1/d are visited in
  // increasing order. With j samples clamped the left side is
  //   j + alpha * suffix_sum(j),
  // linear in alpha on [1/d[j-1], 1/d[j]).
  std::sort(dev2.begin(), dev2.end(), std::greater<double>());

  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + dev2[i];

  double alpha = 0.0;
  bool found = false;
  for (std::size_t j = 0; j < n && !found; ++j) {
    if (suffix[j] <= 0.0) break;  // only zero deviations remain
    const double candidate = (budget - static_cast<double>(j)) / suffix[j];
    const double lo = j == 0 ? 0.0 : 1.0 / dev2[j - 1];
    const double hi =
        dev2[j] > 0.0 ? 1.0 / dev2[j] : std::numeric_limits<double>::infinity();
    if (candidate > 0.0 && candidate >= lo && candidate < hi) {
      alpha = candidate;
      found = true;
    }
  }
  if (!found) {
    // Rounding can push the candidate across a breakpoint shared by tied
    // deviations; the equation is continuous there, so the breakpoint
    // itself is the solution.
    double best = 0.0, best_err = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (dev2[j] <= 0.0) break;
      const double bp = 1.0 / dev2[j];
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) sum += std::min(bp * dev2[i], 1.0);
      const double err = std::abs(sum - budget);
      if (err < best_err) {
        best_err = err;
        best = bp;
      }
    }
    alpha = best;
  }

  AlphaSolution out;
  out.alpha = alpha;
  out.v_hat = conf.log_inv_delta() / (3.0 * static_cast<double>(n) * alpha);
  out.clamp_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = samples[i] - kappa;
    if (alpha * d * d >= 1.0) ++out.clamp_count;
  }
  return out;
}

double weighted_trim_mean(const SampleSet& samples, double kappa,
                          double alpha) {
  if (!(alpha > 0.0)) {
    throw Error("weighted_trim_mean: alpha must be positive");
  }
  const std::size_t n = samples.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = samples[i] - kappa;
    sum += d * (1.0 - std::min(alpha * d * d, 1.0));
  }
  return kappa + sum / static_cast<double>(n);
}

Estimate estimate(const SampleSet& samples, const Confidence& conf) {
  return estimate_at_pilot(samples, conf, median_of_means(samples, conf));
}

Estimate estimate_at_pilot(const SampleSet& samples, const Confidence& conf,
                           double kappa) {
  Estimate e;
  e.kappa = kappa;
  e.alpha = solve_alpha(samples, kappa, conf);
  e.mu_hat = weighted_trim_mean(samples, kappa, e.alpha.alpha);
  return e;
}

double estimate_with_kappa(const SampleSet& samples, const Confidence& conf,
                           double kappa) {
  return estimate_at_pilot(samples, conf, kappa).mu_hat;
}

PsiVector psi_vector(const SampleSet& samples, double mu_hat,
                     double alpha_hat, const Confidence& conf) {
  if (!(alpha_hat > 0.0)) {
    throw Error("psi_vector: alpha_hat must be positive");
  }
  const std::size_t n = samples.size();
  const double per_term = conf.log_inv_delta() / (3.0 * static_cast<double>(n));
  PsiVector psi;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = samples[i];
    const double m = std::min(alpha_hat * x * x, 1.0);
    psi.psi_mu += mu_hat - x * (1.0 - m);
    psi.psi_alpha += m - per_term;
  }
  return psi;
}

std::pair<double, double> psi_root(const SampleSet& samples,
                                   const Confidence& conf) {
  const std::size_t n = samples.size();
  const double budget = conf.budget();

  double sum_sq = 0.0;
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_sq += samples[i] * samples[i];
    if (samples[i] != 0.0) ++nonzero;
  }
  if (nonzero == 0) {
    throw DegenerateSamples("psi_root: every sample is zero");
  }
  if (budget >= static_cast<double>(nonzero)) {
    throw InfeasibleBudget(
        "psi_root: budget >= number of nonzero samples; delta too small "
        "for n");
  }

  auto trim_sum = [&](double alpha) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += std::min(alpha * samples[i] * samples[i], 1.0);
    }
    return s;
  };

  // The trimming sum is nondecreasing in alpha, below budget at
  // budget/sum_sq (clamping only lowers it) and reaches `nonzero` > budget
  // as alpha grows.
  double lo = budget / sum_sq;
  double hi = lo;
  while (trim_sum(hi) < budget) {
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw Error("psi_root: bisection bracket overflow");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at float resolution
    if (trim_sum(mid) < budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double alpha_hat = 0.5 * (lo + hi);

  // psi_mu = 0  <=>  mu_hat = (1/n) sum_i x_i (1 - min(alpha x_i^2, 1)).
  double mu = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = samples[i];
    mu += x * (1.0 - std::min(alpha_hat * x * x, 1.0));
  }
  mu /= static_cast<double>(n);
  return {mu, alpha_hat};
}

}  // namespace subgauss
