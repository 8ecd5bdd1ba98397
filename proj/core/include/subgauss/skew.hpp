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

#include "subgauss/sample_set.hpp"

namespace subgauss::bench {

/// Exact Poisson tail masses around the two candidate confidence intervals
/// for a single Poisson(lambda) observation: the symmetric Gaussian-style
/// interval lambda +- sqrt(2 lambda L), and the same interval shifted right
/// by L/3 (the skew correction), with L = log(1/delta). All tails are
/// computed by log-space CDF summation, no sampling.
struct PoissonSkewReport {
  double raw_upper_tail = 0.0;        // Pr[k > lambda + w]
  double raw_lower_tail = 0.0;        // Pr[k < lambda - w]
  double corrected_upper_tail = 0.0;  // Pr[k > lambda + L/3 + w]
  double corrected_lower_tail = 0.0;  // Pr[k < lambda + L/3 - w]

  double raw_max_tail() const {
    return raw_upper_tail > raw_lower_tail ? raw_upper_tail : raw_lower_tail;
  }
  double corrected_max_tail() const {
    return corrected_upper_tail > corrected_lower_tail ? corrected_upper_tail
                                                       : corrected_lower_tail;
  }
};

/// Requires lambda - sqrt(2 lambda log(1/delta)) > 0 (InvalidLambda
/// otherwise).
PoissonSkewReport poisson_skew_experiment(double lambda,
                                          const Confidence& conf);

/// Pr[K > x] and Pr[K < x] for K ~ Poisson(lambda), exact log-space sums;
/// exposed for the test oracles.
double poisson_upper_tail(double lambda, double x);
double poisson_lower_tail(double lambda, double x);

/// The no-truncation limit of the trimmed estimator:
/// (1/n) sum x_i - (log(1/delta)/(3n)) * (sum x_i^3) / (sum x_i^2).
/// Throws DegenerateSamples when sum x_i^2 = 0.
double corrected_empirical_mean(const SampleSet& samples,
                                const Confidence& conf);

}  // namespace subgauss::bench
