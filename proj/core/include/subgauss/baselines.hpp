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

#include "subgauss/sample_set.hpp"

namespace subgauss::baselines {

/// Parameters for Catoni's known-variance M-estimator.
struct CatoniConfig {
  double variance = 1.0;
  std::size_t max_iterations = 200;
  double tolerance = 1e-12;
};

/// Arithmetic mean, accumulated in index order.
double sample_mean(const SampleSet& samples);

/// Mean after removing floor(trim_fraction * n) smallest and largest order
/// statistics; trim_fraction must lie in [0, 0.5).
double trimmed_mean(const SampleSet& samples, double trim_fraction);

/// Root theta of sum_i phi(s (x_i - theta)) = 0 with the influence function
/// phi(x) = sign(x) log(1 + |x| + x^2/2) and scale
/// s = sqrt(2L / (n sigma^2 (1 + 2L/(n - 2L)))), L = log(1/delta), found by
/// bisection on [min X, max X] (the sum is nonincreasing in theta).
double catoni_estimate(const SampleSet& samples, const Confidence& conf,
                       const CatoniConfig& cfg);

/// Catoni's influence function, exposed for the test oracles.
double catoni_influence(double x);

/// The scale s used by catoni_estimate.
double catoni_scale(std::size_t n, const Confidence& conf, double variance);

}  // namespace subgauss::baselines
