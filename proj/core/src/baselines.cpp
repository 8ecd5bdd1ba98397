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

#include "subgauss/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace subgauss::baselines {

double sample_mean(const SampleSet& samples) {
  double sum = 0.0;
  for (double x : samples.values()) sum += x;
  return sum / static_cast<double>(samples.size());
}

double trimmed_mean(const SampleSet& samples, double trim_fraction) {
  if (!(trim_fraction >= 0.0) || !(trim_fraction < 0.5)) {
    throw Error("trimmed_mean: trim_fraction must lie in [0, 0.5)");
  }
  const std::size_t n = samples.size();
  const auto cut =
      static_cast<std::size_t>(std::floor(trim_fraction * static_cast<double>(n)));
  if (2 * cut >= n) {
    throw EmptyAfterTrim("trimmed_mean: nothing remains after trimming");
  }
  std::vector<double> xs(samples.values().begin(), samples.values().end());
  std::sort(xs.begin(), xs.end());
  double sum = 0.0;
  for (std::size_t i = cut; i < n - cut; ++i) sum += xs[i];
  return sum / static_cast<double>(n - 2 * cut);
}

double catoni_influence(double x) {
  const double ax = std::abs(x);
  const double v = std::log1p(ax + 0.5 * ax * ax);
  return x < 0.0 ? -v : v;
}

double catoni_scale(std::size_t n, const Confidence& conf, double variance) {
  const double l = conf.log_inv_delta();
  const double nn = static_cast<double>(n);
  return std::sqrt(2.0 * l / (nn * variance * (1.0 + 2.0 * l / (nn - 2.0 * l))));
}

double catoni_estimate(const SampleSet& samples, const Confidence& conf,
                       const CatoniConfig& cfg) {
  if (!(cfg.variance > 0.0) || !(cfg.tolerance > 0.0)) {
    throw Error("catoni_estimate: variance and tolerance must be positive");
  }
  const std::size_t n = samples.size();
  const double l = conf.log_inv_delta();
  if (!(static_cast<double>(n) > 2.0 * l)) {
    throw InfeasibleRegime("catoni_estimate: requires n > 2*log(1/delta)");
  }
  const double s = catoni_scale(n, conf, cfg.variance);

  auto g = [&](double theta) {
    double sum = 0.0;
    for (double x : samples.values()) sum += catoni_influence(s * (x - theta));
    return sum;
  };

  auto [it_lo, it_hi] =
      std::minmax_element(samples.values().begin(), samples.values().end());
  double lo = *it_lo, hi = *it_hi;
  if (lo == hi) return lo;  // constant samples: phi(0) = 0 at theta = lo

  // g is nonincreasing with g(lo) >= 0 >= g(hi).
  for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= cfg.tolerance) return 0.5 * (lo + hi);
  }
  throw NoConvergence("catoni_estimate: bisection did not reach tolerance");
}

}  // namespace subgauss::baselines
