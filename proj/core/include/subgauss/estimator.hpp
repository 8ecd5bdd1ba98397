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

#include <cstddef>
#include <utility>

#include "subgauss/sample_set.hpp"

namespace subgauss {

/// Solution of the trimming equation sum_i min(alpha (x_i - kappa)^2, 1) =
/// (1/3) log(1/delta).
///
/// `v_hat` is the reparameterization log(1/delta) / (3 n alpha); it equals
/// the empirical second moment about kappa whenever no sample clamps, but
/// it is a solver artifact, not a variance estimate. `clamp_count` counts
/// samples with alpha (x_i - kappa)^2 >= 1, each contributing exactly 1 to
/// the trimming sum.
struct AlphaSolution {
  double alpha = 0.0;
  double v_hat = 0.0;
  std::size_t clamp_count = 0;
};

/// The pair of estimating equations evaluated at a candidate (mu_hat,
/// alpha_hat):
///   psi_mu    = sum_i ( mu_hat - x_i (1 - min(alpha_hat x_i^2, 1)) )
///   psi_alpha = sum_i ( min(alpha_hat x_i^2, 1) - (1/(3n)) log(1/delta) )
struct PsiVector {
  double psi_mu = 0.0;
  double psi_alpha = 0.0;
};

/// Full output of the main estimator: the estimate plus the pilot and
/// trimming level it was computed from.
struct Estimate {
  double mu_hat = 0.0;
  double kappa = 0.0;
  AlphaSolution alpha;
};

/// Median-of-means pilot: partitions the samples into
/// k = min(n, max(1, ceil(log(1/delta)))) contiguous blocks whose sizes
/// differ by at most one (longer blocks first), and returns the median of
/// the block means. For even k the median is the midpoint of the two
/// central order statistics.
double median_of_means(const SampleSet& samples, const Confidence& conf);

/// Solves sum_i min(alpha (x_i - kappa)^2, 1) = (1/3) log(1/delta) for the
/// unique alpha > 0 by an exact breakpoint scan: squared deviations are
/// sorted, breakpoints alpha = 1/d visited in increasing-alpha order while
/// maintaining the running sum of un-clamped deviations, and the linear
/// equation is solved within the located segment.
///
/// Throws DegenerateSamples if every x_i equals kappa, and InfeasibleBudget
/// if the budget meets or exceeds the number of samples with nonzero
/// deviation (the left side can never reach it).
AlphaSolution solve_alpha(const SampleSet& samples, double kappa,
                          const Confidence& conf);

/// kappa + (1/n) sum_i (x_i - kappa)(1 - min(alpha (x_i - kappa)^2, 1)),
/// accumulated in index order.
double weighted_trim_mean(const SampleSet& samples, double kappa,
                          double alpha);

/// The full pipeline: median-of-means pilot, trimming-level solve, weighted
/// trim mean. Propagates solve_alpha errors.
Estimate estimate(const SampleSet& samples, const Confidence& conf);

/// The pipeline with the pilot fixed to `kappa` instead of the
/// median-of-means step.
double estimate_with_kappa(const SampleSet& samples, const Confidence& conf,
                           double kappa);

/// As estimate_with_kappa but returning the full artifact set.
Estimate estimate_at_pilot(const SampleSet& samples, const Confidence& conf,
                           double kappa);

/// Evaluates the estimating equations at (mu_hat, alpha_hat).
PsiVector psi_vector(const SampleSet& samples, double mu_hat,
                     double alpha_hat, const Confidence& conf);

/// Solves psi_mu = psi_alpha = 0 directly: alpha_hat by bisection on the
/// monotone psi_alpha, then mu_hat in closed form from psi_mu = 0. This is
/// an independent route to the kappa = 0 pipeline and must agree with it
/// componentwise; the agreement is part of the test contract.
std::pair<double, double> psi_root(const SampleSet& samples,
                                   const Confidence& conf);

}  // namespace subgauss
