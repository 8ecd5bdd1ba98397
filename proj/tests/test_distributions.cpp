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

#include "subgauss/distributions.hpp"

#include <cmath>
#include <cstring>
#include <numbers>

#include "doctest.h"
#include "subgauss/rng.hpp"

using namespace subgauss;

TEST_CASE("philox known-answer vectors") {
  // Published test vectors for the 10-round 4x64 configuration.
  const auto zero = Philox4x64::block({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x16554d9eca36314cULL);
  CHECK(zero[1] == 0xdb20fe9d672d0fdcULL);
  CHECK(zero[2] == 0xd7e772cee186176bULL);
  CHECK(zero[3] == 0x7e68b68aec7ba23bULL);

  const auto one = Philox4x64::block({1, 0, 0, 0}, {0, 0});
  CHECK(one[0] == 0x02f4ba6408e4d89bULL);
  CHECK(one[1] == 0x3dd62b0b9ca8c5b2ULL);
  CHECK(one[2] == 0x1c8667a55d902e79ULL);
  CHECK(one[3] == 0x907d7a052fd5b4dcULL);
}

TEST_CASE("counter stream lanes and unit mapping") {
  // index i reads lane i%4 of block i/4
  const auto block0 = Philox4x64::block({0, 0, 0, 0}, {7, 9});
  const auto block1 = Philox4x64::block({1, 0, 0, 0}, {7, 9});
  CHECK(counter_uint64(7, 9, 0) == block0[0]);
  CHECK(counter_uint64(7, 9, 3) == block0[3]);
  CHECK(counter_uint64(7, 9, 4) == block1[0]);
  CHECK(counter_uint64(7, 9, 6) == block1[2]);

  CHECK(to_unit_open(0) == 0x1.0p-53);
  CHECK(to_unit_open(~0ULL) == 1.0 - 0x1.0p-53);
  CHECK(to_unit_open(~0ULL) < 1.0);
  CHECK(to_unit_open(0) > 0.0);
}

TEST_CASE("inverse normal CDF spot values") {
  // frozen from an independent high-precision implementation
  CHECK(inverse_normal_cdf(0.5) == 0.0);
  CHECK(inverse_normal_cdf(0.975) ==
        doctest::Approx(1.9599639845400536).epsilon(1e-13));
  CHECK(inverse_normal_cdf(0.025) ==
        doctest::Approx(-1.9599639845400538).epsilon(1e-13));
  CHECK(inverse_normal_cdf(1e-9) ==
        doctest::Approx(-5.9978070150076865).epsilon(1e-13));
  CHECK(inverse_normal_cdf(0.3) ==
        doctest::Approx(-0.5244005127080407).epsilon(1e-13));
  CHECK(inverse_normal_cdf(0x1.0p-53) ==
        doctest::Approx(-8.209536151601386).epsilon(1e-13));
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), Error);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), Error);

  // antisymmetry under u -> 1-u
  for (double u : {0.1, 0.23, 0.4, 0.49, 0.001}) {
    CHECK(inverse_normal_cdf(u) ==
          doctest::Approx(-inverse_normal_cdf(1.0 - u)).epsilon(1e-12));
  }
}

TEST_CASE("student-t quantile spot values") {
  DistributionSpec spec{Family::kStudentT, 3.0, false};
  CHECK(raw_inverse_cdf(spec, 0.9) ==
        doctest::Approx(1.6377443536962095).epsilon(1e-12));
  CHECK(raw_inverse_cdf(spec, 0.11) ==
        doctest::Approx(-1.5452444990018066).epsilon(1e-12));
}

TEST_CASE("spec validation") {
  auto make = [](Family f, double shape) {
    return DistributionSpec{f, shape, true};
  };
  CHECK_THROWS_AS(make(Family::kPareto, 3.0).validate(), InvalidShape);
  CHECK_THROWS_AS(make(Family::kPareto, 5.5).validate(), InvalidShape);
  CHECK_THROWS_AS(make(Family::kStudentT, 2.5).validate(), InvalidShape);
  CHECK_THROWS_AS(make(Family::kLognormal, 0.0).validate(), InvalidShape);
  CHECK_THROWS_AS(make(Family::kTwoPointSkew, 0.0).validate(), InvalidShape);
  CHECK_NOTHROW(make(Family::kPareto, 3.5).validate());
}

TEST_CASE("id round trip") {
  for (const auto& id : {"gaussian", "rademacher", "pareto_3.5", "student_t_3",
                         "lognormal_1", "two_point_skew_0.01"}) {
    const auto spec = DistributionSpec::from_id(id);
    CHECK(spec.id() == id);
  }
  CHECK_THROWS_AS(DistributionSpec::from_id("cauchy"), ParseError);
  CHECK_THROWS_AS(DistributionSpec::from_id("pareto"), ParseError);
  CHECK_THROWS_AS(DistributionSpec::from_id("gaussian_2"), ParseError);
  CHECK_THROWS_AS(DistributionSpec::from_id("pareto_9.0"), InvalidShape);
}

TEST_CASE("rademacher sampler") {
  DistributionSpec spec{Family::kRademacher, 0.0, true};
  const SampleSet s = sample_distribution(spec, 4, 42);
  for (double x : s.values()) {
    CHECK((x == 1.0 || x == -1.0));
  }
  CHECK(spec.mean() == 0.0);
  CHECK(spec.variance() == 1.0);
}

TEST_CASE("sampler determinism is bit exact") {
  for (const auto& id :
       {"gaussian", "pareto_3.5", "lognormal_1", "two_point_skew_0.01"}) {
    const auto spec = DistributionSpec::from_id(id);
    const SampleSet a = sample_distribution(spec, 257, 0xFEED);
    const SampleSet b = sample_distribution(spec, 257, 0xFEED);
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.values().data(), b.values().data(),
                      a.size() * sizeof(double)) == 0);
    const SampleSet c = sample_distribution(spec, 257, 0xFEED + 1);
    CHECK(std::memcmp(a.values().data(), c.values().data(),
                      a.size() * sizeof(double)) != 0);
  }
}

namespace {

// Density-space quadrature of the standardized family's first two moments;
// integrates x^k f(x) dx by substitution with smooth decay at both ends.
void check_standardized_moments(const DistributionSpec& spec, double tol) {
  double m1 = 0.0, m2 = 0.0;
  const int N = 400000;
  if (spec.family == Family::kPareto) {
    // x = e^t on [0, T]: integrand x^k * beta x^-(beta+1) * x dt
    const double beta = spec.shape;
    const double T = std::log(1e7);
    const double mean = spec.raw_mean();
    const double sd = std::sqrt(spec.raw_variance());
    for (int i = 0; i < N; ++i) {
      const double t = (i + 0.5) * T / N;
      const double x = std::exp(t);
      const double w = beta * std::pow(x, -beta) * (T / N);  // f(x) x dt
      const double z = (x - mean) / sd;
      m1 += z * w;
      m2 += z * z * w;
    }
  } else if (spec.family == Family::kLognormal) {
    // x = e^(sigma z), z standard normal on [-12, 12]
    const double sigma = spec.shape;
    const double mean = spec.raw_mean();
    const double sd = std::sqrt(spec.raw_variance());
    const double lo = -12.0, hi = 12.0;
    for (int i = 0; i < N; ++i) {
      const double z = lo + (i + 0.5) * (hi - lo) / N;
      const double phi =
          std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi) * ((hi - lo) / N);
      const double x = (std::exp(sigma * z) - mean) / sd;
      m1 += x * phi;
      m2 += x * x * phi;
    }
  } else if (spec.family == Family::kStudentT) {
    // density with nu dof on [-T, T]; tails fall off as |x|^-(nu+1)
    const double nu = spec.shape;
    const double T = 3e4;
    const double c = std::exp(std::lgamma(0.5 * (nu + 1.0)) -
                              std::lgamma(0.5 * nu)) /
                     std::sqrt(nu * std::numbers::pi);
    const double sd = std::sqrt(spec.raw_variance());
    // log-spaced symmetric grid keeps resolution near 0 and reaches the tail
    const int half = N / 2;
    double prev = 0.0;
    for (int i = 0; i < half; ++i) {
      const double x = std::expm1((i + 1) * std::log1p(T) / half);
      const double mid = 0.5 * (prev + x);
      const double w = (x - prev) * c *
                       std::pow(1.0 + mid * mid / nu, -0.5 * (nu + 1.0));
      const double z = mid / sd;
      m2 += 2.0 * z * z * w;  // symmetric: odd moment is exactly 0
      prev = x;
    }
    m1 = 0.0;
  } else {
    FAIL("unexpected family in moment check");
  }
  CHECK(std::abs(m1) <= tol);
  CHECK(std::abs(m2 - 1.0) <= tol);
}

}  // namespace

TEST_CASE("standardization produces exact closed-form moments") {
  SUBCASE("pareto moments") {
    DistributionSpec spec{Family::kPareto, 3.5, true};
    CHECK(spec.raw_mean() == doctest::Approx(1.4).epsilon(1e-15));
    CHECK(spec.raw_variance() ==
          doctest::Approx(0.37333333333333335).epsilon(1e-15));
    check_standardized_moments(spec, 1e-3);
  }
  SUBCASE("lognormal moments") {
    DistributionSpec spec{Family::kLognormal, 1.0, true};
    check_standardized_moments(spec, 1e-3);
  }
  SUBCASE("student-t moments") {
    DistributionSpec spec{Family::kStudentT, 3.5, true};
    check_standardized_moments(spec, 1e-3);
  }
  SUBCASE("two-point support matches the stated construction") {
    DistributionSpec spec{Family::kTwoPointSkew, 0.01, true};
    const auto pts = discrete_support(spec);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].first == doctest::Approx(-std::sqrt(1.0 / 99.0)).epsilon(1e-15));
    CHECK(pts[0].second == doctest::Approx(0.99).epsilon(1e-15));
    CHECK(pts[1].first == doctest::Approx(std::sqrt(99.0)).epsilon(1e-15));
    CHECK(pts[1].second == doctest::Approx(0.01).epsilon(1e-15));
    // exact mean 0 variance 1
    const double m1 = pts[0].first * pts[0].second + pts[1].first * pts[1].second;
    const double m2 = pts[0].first * pts[0].first * pts[0].second +
                      pts[1].first * pts[1].first * pts[1].second;
    CHECK(std::abs(m1) <= 1e-15);
    CHECK(m2 == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("sampled standardized moments are near 0/1") {
    for (const auto& id : {"gaussian", "pareto_3.5", "lognormal_1"}) {
      const auto spec = DistributionSpec::from_id(id);
      const SampleSet s = sample_distribution(spec, 200000, 7);
      double m1 = 0.0, m2 = 0.0;
      for (double x : s.values()) {
        m1 += x;
        m2 += x * x;
      }
      m1 /= static_cast<double>(s.size());
      m2 /= static_cast<double>(s.size());
      CHECK(std::abs(m1) < 0.05);
      CHECK(std::abs(m2 - 1.0) < 0.2);  // heavy tails converge slowly
    }
  }
}

TEST_CASE("discrete support rejects continuous families") {
  const DistributionSpec gaussian{Family::kGaussian, 0, true};
  CHECK_THROWS_AS(discrete_support(gaussian), UnsupportedDistribution);
}
