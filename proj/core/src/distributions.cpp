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

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <cstdio>

#include "subgauss/rng.hpp"

namespace subgauss {

void DistributionSpec::validate() const {
  switch (family) {
    case Family::kGaussian:
    case Family::kRademacher:
      return;
    case Family::kPareto:
      if (!(shape > 3.0) || !(shape <= 5.0)) {
        throw InvalidShape("pareto exponent must lie in (3, 5]");
      }
      return;
    case Family::kStudentT:
      if (!(shape > 2.5)) {
        throw InvalidShape("student_t degrees of freedom must exceed 2.5");
      }
      return;
    case Family::kLognormal:
      if (!(shape > 0.0)) {
        throw InvalidShape("lognormal sigma must be positive");
      }
      return;
    case Family::kTwoPointSkew:
      if (!(shape > 0.0) || !(shape < 1.0)) {
        throw InvalidShape("two_point_skew mass p must lie in (0, 1)");
      }
      return;
  }
  throw InvalidShape("unknown family");
}

double DistributionSpec::raw_mean() const {
  switch (family) {
    case Family::kGaussian:
      return 0.0;
    case Family::kPareto:
      return shape / (shape - 1.0);  // unit-scale Pareto on [1, inf)
    case Family::kStudentT:
      return 0.0;
    case Family::kLognormal:
      return std::exp(0.5 * shape * shape);
    case Family::kTwoPointSkew:
    case Family::kRademacher:
      return 0.0;
  }
  return 0.0;
}

double DistributionSpec::raw_variance() const {
  switch (family) {
    case Family::kGaussian:
      return 1.0;
    case Family::kPareto:
      return shape / ((shape - 2.0) * (shape - 1.0) * (shape - 1.0));
    case Family::kStudentT:
      return shape / (shape - 2.0);
    case Family::kLognormal: {
      const double e = std::exp(shape * shape);
      return (e - 1.0) * e;
    }
    case Family::kTwoPointSkew:
    case Family::kRademacher:
      return 1.0;
  }
  return 0.0;
}

namespace {

const char* family_name(Family f) {
  switch (f) {
    case Family::kGaussian:
      return "gaussian";
    case Family::kPareto:
      return "pareto";
    case Family::kStudentT:
      return "student_t";
    case Family::kLognormal:
      return "lognormal";
    case Family::kTwoPointSkew:
      return "two_point_skew";
    case Family::kRademacher:
      return "rademacher";
  }
  return "?";
}

bool has_shape(Family f) {
  return f == Family::kPareto || f == Family::kStudentT ||
         f == Family::kLognormal || f == Family::kTwoPointSkew;
}

}  // namespace

std::string DistributionSpec::id() const {
  if (!has_shape(family)) return family_name(family);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%g", family_name(family), shape);
  return buf;
}

DistributionSpec DistributionSpec::from_id(const std::string& id) {
  static constexpr Family kAll[] = {
      Family::kGaussian,     Family::kPareto,       Family::kStudentT,
      Family::kLognormal,    Family::kTwoPointSkew, Family::kRademacher};
  for (Family f : kAll) {
    const std::string name = family_name(f);
    if (id == name) {
      if (has_shape(f)) {
        throw ParseError("family '" + id + "' needs a shape, e.g. " + name +
                         "_3.5");
      }
      DistributionSpec spec{f, 0.0, true};
      spec.validate();
      return spec;
    }
    if (id.size() > name.size() + 1 && id.compare(0, name.size(), name) == 0 &&
        id[name.size()] == '_') {
      if (!has_shape(f)) {
        throw ParseError("family '" + name + "' takes no shape parameter");
      }
      char* end = nullptr;
      const std::string tail = id.substr(name.size() + 1);
      const double shape = std::strtod(tail.c_str(), &end);
      if (end == tail.c_str() || *end != '\0') {
        throw ParseError("bad shape parameter in '" + id + "'");
      }
      DistributionSpec spec{f, shape, true};
      spec.validate();
      return spec;
    }
  }
  throw ParseError("unknown distribution '" + id + "'");
}

// AS 241 / PPND16 (Wichura 1988): rational approximations in r = u - 1/2 on
// the central branch and in sqrt(-log(min(u, 1-u))) on the tails.
double inverse_normal_cdf(double u) {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw Error("inverse_normal_cdf: u must lie in (0,1)");
  }
  const double q = u - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) *
                 r +
             4.5921953931549871457e4) *
                r +
            1.3731693765509461125e4) *
               r +
           1.9715909503065514427e3) *
              r +
          1.3314166789178437745e2) *
             r +
         3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) *
                 r +
             2.1213794301586595867e4) *
                r +
            5.3941960214247511077e3) *
               r +
           6.8718700749205790830e2) *
              r +
          4.2313330701600911252e1) *
             r +
         1.0);
    return q * num / den;
  }
  double r = q < 0.0 ? u : 1.0 - u;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e0) *
                r +
            3.64784832476320460504e0) *
               r +
           5.76949722146069140550e0) *
              r +
          4.63033784615654529590e0) *
             r +
         1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e0) *
              r +
          2.05319162663775882187e0) *
             r +
         1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e0) *
              r +
          5.46378491116411436990e0) *
             r +
         6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
    x = num / den;
  }
  return q < 0.0 ? -x : x;
}

double raw_inverse_cdf(const DistributionSpec& spec, double u) {
  switch (spec.family) {
    case Family::kGaussian:
      return inverse_normal_cdf(u);
    case Family::kPareto:
      // F(x) = 1 - x^(-beta) on [1, inf)
      return std::pow(1.0 - u, -1.0 / spec.shape);
    case Family::kStudentT: {
      const boost::math::students_t_distribution<double> dist(spec.shape);
      return boost::math::quantile(dist, u);
    }
    case Family::kLognormal:
      return std::exp(spec.shape * inverse_normal_cdf(u));
    case Family::kTwoPointSkew: {
      const double p = spec.shape;
      // mass p at the top of the unit range
      return u < 1.0 - p ? -std::sqrt(p / (1.0 - p))
                         : std::sqrt((1.0 - p) / p);
    }
    case Family::kRademacher:
      return u < 0.5 ? -1.0 : 1.0;
  }
  throw InvalidShape("unknown family");
}

double inverse_cdf(const DistributionSpec& spec, double u) {
  const double x = raw_inverse_cdf(spec, u);
  if (!spec.standardize) return x;
  return (x - spec.raw_mean()) / std::sqrt(spec.raw_variance());
}

std::vector<std::pair<double, double>> discrete_support(
    const DistributionSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::kRademacher:
      return {{-1.0, 0.5}, {1.0, 0.5}};
    case Family::kTwoPointSkew: {
      // mean 0, variance 1 by construction, so standardization is a no-op
      const double p = spec.shape;
      return {{-std::sqrt(p / (1.0 - p)), 1.0 - p},
              {std::sqrt((1.0 - p) / p), p}};
    }
    default:
      throw UnsupportedDistribution("discrete_support: continuous family");
  }
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SampleSet sample_distribution(const DistributionSpec& spec, std::size_t n,
                              std::uint64_t seed) {
  spec.validate();
  if (n == 0) throw Error("sample_distribution: n must be positive");
  const std::uint64_t key1 = fnv1a64(spec.id());
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = inverse_cdf(spec, counter_uniform(seed, key1, i));
  }
  return SampleSet(std::move(xs));
}

}  // namespace subgauss
