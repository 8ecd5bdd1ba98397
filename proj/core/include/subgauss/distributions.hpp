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
#include <string>
#include <utility>
#include <vector>

#include "subgauss/sample_set.hpp"

namespace subgauss {

enum class Family {
  kGaussian,
  kPareto,
  kStudentT,
  kLognormal,
  kTwoPointSkew,
  kRademacher,
};

/// A sampling target: family, its single shape parameter, and whether the
/// output is affinely mapped to exact mean 0 and variance 1 using the
/// family's closed-form moments.
///
/// Shape parameter by family: pareto tail exponent in (3, 5]; student_t
/// degrees of freedom > 2.5; lognormal sigma of the underlying normal;
/// two_point_skew mass p in (0, 1) placed at sqrt((1-p)/p) with the rest at
/// -sqrt(p/(1-p)) (mean 0, variance 1 by construction). gaussian and
/// rademacher take no parameter.
struct DistributionSpec {
  Family family = Family::kGaussian;
  double shape = 0.0;
  bool standardize = true;

  /// Throws InvalidShape when the parameter is outside the family's domain.
  void validate() const;

  /// Mean and variance of the *raw* (unstandardized) family.
  double raw_mean() const;
  double raw_variance() const;

  /// Mean of the sampler's output (0 when standardized).
  double mean() const { return standardize ? 0.0 : raw_mean(); }
  double variance() const { return standardize ? 1.0 : raw_variance(); }

  bool is_discrete() const {
    return family == Family::kTwoPointSkew || family == Family::kRademacher;
  }

  /// Stable identifier, e.g. "gaussian", "pareto_3.5"; used in configs,
  /// CSV rows, and trial seeding.
  std::string id() const;

  /// Parses the id grammar back into a spec (standardize = true).
  static DistributionSpec from_id(const std::string& id);
};

/// Inverse standard normal CDF, algorithm AS 241 (PPND16, Wichura 1988):
/// pure rational approximations on three branches, absolute error below
/// 1e-13 across (0,1). Requires u in (0,1).
double inverse_normal_cdf(double u);

/// Inverse CDF of the raw (unstandardized) family at u in (0,1).
double raw_inverse_cdf(const DistributionSpec& spec, double u);

/// Inverse CDF of the sampler's output (standardized when requested).
double inverse_cdf(const DistributionSpec& spec, double u);

/// Support points and probabilities for discrete families; throws
/// UnsupportedDistribution for continuous ones.
std::vector<std::pair<double, double>> discrete_support(
    const DistributionSpec& spec);

/// n samples via inverse-CDF transform of the counter-based uniform stream
/// keyed by (seed, family tag); sample i uses stream index i. Identical
/// (spec, n, seed) inputs give bit-identical output.
SampleSet sample_distribution(const DistributionSpec& spec, std::size_t n,
                              std::uint64_t seed);

/// 64-bit FNV-1a, used to fold distribution ids into stream keys.
std::uint64_t fnv1a64(const std::string& s);

}  // namespace subgauss
