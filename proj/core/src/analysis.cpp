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

#include "subgauss/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace subgauss::analysis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_v_hat(double v_hat) {
  if (!(v_hat >= kVHatLo) || !(v_hat <= kVHatHi)) {
    throw OutOfRange("v_hat must lie in [0.05, 55.5]");
  }
}

std::size_t grid_size(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw Error("bad grid: need step > 0 and hi >= lo");
  }
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace

Lemma5Coefficients lemma5_coefficients(double v_hat) {
  require_v_hat(v_hat);
  if (v_hat == kVHatLo) {
    return {v_hat, 0.75, std::sqrt(3.0)};
  }
  const double sv = std::sqrt(v_hat);
  const double a =
      (-std::sqrt(6.0) + std::sqrt(6.0 + 48.0 * v_hat)) / (2.0 * sv);
  return {v_hat, a, 3.0 - 0.5 * a * a};
}

GapEval lemma5_terms(double v_hat, double a, double b, double y) {
  const double m = std::min(y * y, 1.0);
  const double lhs = a * y * (1.0 - m) - b * m;
  // coefficient of y^2: v_hat(-3 + a sqrt(6)/sqrt(v_hat) - b)
  const double c2 = v_hat * (-3.0 - b) + a * std::sqrt(6.0 * v_hat);
  const double arg = 1.0 + a * y + y * y * c2;
  GapEval out;
  out.log_argument = arg;
  out.gap = arg > 0.0 ? std::log(arg) - lhs
                      : std::numeric_limits<double>::quiet_NaN();
  return out;
}

double lemma5_gap(double v_hat, double a, double b, double y) {
  const GapEval e = lemma5_terms(v_hat, a, b, y);
  if (!(e.log_argument > 0.0)) {
    throw NonpositiveLogArgument("lemma5_gap: log argument not positive", y);
  }
  return e.gap;
}

std::vector<double> default_v_hat_grid(std::size_t points) {
  if (points == 0) throw Error("default_v_hat_grid: need at least one point");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = kVHatLo;
    return grid;
  }
  const double span = kVHatHi - kVHatLo;
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = kVHatLo + span * static_cast<double>(i) /
                            static_cast<double>(points - 1);
  }
  return grid;
}

namespace {

struct ChunkResult {
  double min_gap = kInf;
  double min_log_argument = kInf;
  double worst_v = 0.0;
  double worst_y = 0.0;
};

// Scans the full y grid (coarse plus refined sub-grid) for one v_hat.
// Strict `<` comparisons keep the reduction order-independent.
void scan_one_v(double v, double b_offset, double y_lo, double y_hi,
                double y_step, double refine_halfwidth, ChunkResult& acc) {
  const Lemma5Coefficients co = lemma5_coefficients(v);
  const double a = co.a;
  const double b = co.b + b_offset;
  const double c2 = v * (-3.0 - b) + a * std::sqrt(6.0 * v);

  auto scan = [&](double lo, double hi, double step) {
    const std::size_t count = grid_size(lo, hi, step);
    for (std::size_t j = 0; j < count; ++j) {
      const double y = lo + static_cast<double>(j) * step;
      const double m = std::min(y * y, 1.0);
      const double lhs = a * y * (1.0 - m) - b * m;
      const double arg = 1.0 + a * y + y * y * c2;
      if (arg < acc.min_log_argument) acc.min_log_argument = arg;
      if (arg > 0.0) {
        const double gap = std::log(arg) - lhs;
        if (gap < acc.min_gap) {
          acc.min_gap = gap;
          acc.worst_v = v;
          acc.worst_y = y;
        }
      }
    }
  };

  scan(y_lo, y_hi, y_step);
  const double rlo = std::max(y_lo, -refine_halfwidth);
  const double rhi = std::min(y_hi, refine_halfwidth);
  if (rhi >= rlo) scan(rlo, rhi, y_step / 100.0);
}

}  // namespace

CertificateReport check_lemma5(const std::vector<double>& v_hat_grid,
                               std::pair<double, double> y_range,
                               double y_step,
                               const CertificateOptions& options) {
  if (v_hat_grid.empty()) throw Error("check_lemma5: empty v_hat grid");
  for (double v : v_hat_grid) require_v_hat(v);
  grid_size(y_range.first, y_range.second, y_step);  // validates

  unsigned workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, v_hat_grid.size());

  // One result per v point; merged in grid order afterwards, so the report
  // does not depend on the worker count.
  std::vector<ChunkResult> per_v(v_hat_grid.size());
  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      scan_one_v(v_hat_grid[i], options.b_offset, y_range.first,
                 y_range.second, y_step, options.refine_halfwidth, per_v[i]);
    }
  };

  if (workers <= 1) {
    run_range(0, v_hat_grid.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t n = v_hat_grid.size();
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = n * w / workers;
      const std::size_t end = n * (w + 1) / workers;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  CertificateReport report;
  report.v_hat_grid = v_hat_grid;
  report.min_gap = kInf;
  report.min_log_argument = kInf;
  for (const ChunkResult& r : per_v) {
    if (r.min_log_argument < report.min_log_argument) {
      report.min_log_argument = r.min_log_argument;
    }
    if (r.min_gap < report.min_gap) {
      report.min_gap = r.min_gap;
      report.worst_v_hat = r.worst_v;
      report.worst_y = r.worst_y;
    }
  }
  report.passed = report.min_gap >= kGapTolerance &&
                  report.min_log_argument > 0.0;
  return report;
}

std::string report_to_kv(const CertificateReport& report) {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "min_gap = %.17g\n", report.min_gap);
  out += buf;
  std::snprintf(buf, sizeof(buf), "min_log_argument = %.17g\n",
                report.min_log_argument);
  out += buf;
  std::snprintf(buf, sizeof(buf), "worst_v_hat = %.17g\n", report.worst_v_hat);
  out += buf;
  std::snprintf(buf, sizeof(buf), "worst_y = %.17g\n", report.worst_y);
  out += buf;
  out += report.passed ? "passed = true\n" : "passed = false\n";
  return out;
}

std::pair<double, double> lemma5_derivative_identity(double v_hat, double y) {
  if (!(v_hat > kVHatLo) || !(v_hat <= kVHatHi)) {
    throw OutOfRange(
        "lemma5_derivative_identity: v_hat must lie in (0.05, 55.5]");
  }
  if (!(y > -1.0) || !(y < 1.0)) {
    throw OutOfRange("lemma5_derivative_identity: y must lie in (-1, 1)");
  }
  const Lemma5Coefficients co = lemma5_coefficients(v_hat);
  const double a = co.a, b = co.b;
  const double c2 = v_hat * (-3.0 - b) + a * std::sqrt(6.0 * v_hat);

  const double direct = (a + 2.0 * y * c2) / (1.0 + a * y + y * y * c2) - a +
                        3.0 * a * y * y + 2.0 * b * y;

  const double q = y * y + (4.0 / a - a / 3.0) * y + (4.0 / (a * a) - 1.0 / 3.0);
  if (!(q > 0.0)) {
    // discriminant (a^2 - 12)/9 is negative for a < sqrt(12)
    throw Error("lemma5_derivative_identity: denominator not positive");
  }
  const double t = y + 2.0 / a - a / 3.0;
  const double factored = 3.0 * a * y * (y + 2.0 / a) * t * t / q;
  return {direct, factored};
}

DirectionVector chernoff_direction(double v_hat, std::size_t n,
                                   const Confidence& conf) {
  require_v_hat(v_hat);
  if (conf.budget() >= static_cast<double>(n)) {
    throw InfeasibleBudget("chernoff_direction: budget >= n");
  }
  if (v_hat == kVHatHi) {
    return {0.0, -4.0};
  }
  const Lemma5Coefficients co = lemma5_coefficients(v_hat);
  const double alpha_hat =
      conf.log_inv_delta() / (3.0 * static_cast<double>(n) * v_hat);
  return {co.a * std::sqrt(alpha_hat), co.b};
}

namespace {

// exp(d_mu x (1 - min(a x^2, 1)) - d_alpha min(a x^2, 1)); the clamped
// branch avoids 0 * inf at unbounded support ends.
double moment_integrand(double x, double alpha_hat, const DirectionVector& d) {
  const double t = alpha_hat * x * x;
  if (t >= 1.0) return std::exp(-d.d_alpha);
  return std::exp(d.d_mu * x * (1.0 - t) - d.d_alpha * t);
}

}  // namespace

MomentBound moment_factor_bound(const DistributionSpec& dist, double v_hat,
                                std::size_t n, const Confidence& conf,
                                std::size_t quadrature_points) {
  if (!(v_hat >= kVHatLo) || !(v_hat < kVHatHi)) {
    throw OutOfRange(
        "moment_factor_bound: v_hat must lie in [0.05, 55.5) where the "
        "coefficient-based direction applies");
  }
  if (quadrature_points < 10000) {
    throw Error("moment_factor_bound: need at least 1e4 quadrature points");
  }
  try {
    dist.validate();
  } catch (const InvalidShape& e) {
    // degenerate parameterizations (e.g. a point mass) have no
    // standardized form
    throw UnsupportedDistribution(std::string("moment_factor_bound: ") +
                                  e.what());
  }
  if (dist.mean() != 0.0 || dist.variance() != 1.0 ||
      !(dist.raw_variance() > 0.0)) {
    throw UnsupportedDistribution(
        "moment_factor_bound: need a standardized mean-0 variance-1 "
        "distribution");
  }

  const double l = conf.log_inv_delta();
  const double nn = static_cast<double>(n);
  const double alpha_hat = l / (3.0 * nn * v_hat);
  const DirectionVector d = chernoff_direction(v_hat, n, conf);

  MomentBound out;
  out.rhs = 1.0 + (l / (3.0 * nn)) *
                      (-3.0 + 3.0 * d.d_mu * std::sqrt(2.0 * nn / l) -
                       d.d_alpha);

  if (dist.is_discrete()) {
    double lhs = 0.0;
    for (const auto& [x, p] : discrete_support(dist)) {
      lhs += p * moment_integrand(x, alpha_hat, d);
    }
    out.lhs = lhs;
    out.allowance = 0.0;
    return out;
  }

  // Midpoint rule on the uniform grid in probability space: u_i =
  // (i + 1/2)/N never touches 0 or 1, where the inverse CDF is unbounded
  // but the integrand tends to the clamped constant exp(-d_alpha).
  const std::size_t N = quadrature_points;
  double sum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(N);
    sum += moment_integrand(inverse_cdf(dist, u), alpha_hat, d);
  }
  out.lhs = sum / static_cast<double>(N);
  out.allowance = 1e-4;
  return out;
}

std::vector<double> default_lipschitz_grid() {
  std::vector<double> grid(101);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = kVHatLo + (kVHatHi - kVHatLo) * static_cast<double>(i) / 100.0;
  }
  return grid;
}

LipschitzProbe lipschitz_probe(const SampleSet& samples,
                               const Confidence& conf,
                               const std::vector<double>& v_grid) {
  for (double v : v_grid) require_v_hat(v);

  LipschitzProbe probe;
  try {
    const AlphaSolution root = solve_alpha(samples, 0.0, conf);
    probe.v_root = root.v_hat;
  } catch (const Error& e) {
    probe.reason = std::string("trimming equation has no root: ") + e.what();
    return probe;
  }
  if (probe.v_root < kVHatLo || probe.v_root > kVHatHi) {
    probe.reason = "root v_hat outside [0.05, 55.5]";
    return probe;
  }
  probe.hypothesis_met = true;
  if (v_grid.size() < 3) return probe;  // no interior points: slopes 0

  const double l = conf.log_inv_delta();
  const double n = static_cast<double>(samples.size());
  const double mu_scale = std::sqrt(l / n);

  std::vector<double> f_mu(v_grid.size()), f_alpha(v_grid.size());
  for (std::size_t i = 0; i < v_grid.size(); ++i) {
    const double alpha_hat = l / (3.0 * n * v_grid[i]);
    const PsiVector psi = psi_vector(samples, 0.0, alpha_hat, conf);
    f_mu[i] = mu_scale * psi.psi_mu;
    f_alpha[i] = psi.psi_alpha;
  }
  for (std::size_t i = 1; i + 1 < v_grid.size(); ++i) {
    const double dv = v_grid[i + 1] - v_grid[i - 1];
    if (dv == 0.0) continue;
    probe.max_slope_mu = std::max(
        probe.max_slope_mu, std::abs((f_mu[i + 1] - f_mu[i - 1]) / dv));
    probe.max_slope_alpha = std::max(
        probe.max_slope_alpha,
        std::abs((f_alpha[i + 1] - f_alpha[i - 1]) / dv));
  }
  return probe;
}

KappaProbe kappa_sensitivity_probe(const SampleSet& samples,
                                   const Confidence& conf,
                                   const std::vector<double>& kappa_grid) {
  KappaProbe probe;
  double prev_kappa = 0.0, prev_value = 0.0;
  bool have_prev = false;
  for (double kappa : kappa_grid) {
    double value;
    try {
      value = estimate_with_kappa(samples, conf, kappa);
    } catch (const Error& e) {
      probe.skipped.emplace_back(kappa, e.what());
      continue;
    }
    ++probe.evaluated;
    if (have_prev && kappa != prev_kappa) {
      probe.max_slope =
          std::max(probe.max_slope,
                   std::abs((value - prev_value) / (kappa - prev_kappa)));
    }
    prev_kappa = kappa;
    prev_value = value;
    have_prev = true;
  }
  return probe;
}

ThresholdParams::ThresholdParams(const Confidence& conf, std::size_t n,
                                 double c) {
  if (!(c > 0.0)) throw Error("ThresholdParams: c must be positive");
  const double l = conf.log_inv_delta();
  if (!(l > 1.0)) {
    throw OutOfRange(
        "ThresholdParams: requires delta < 1/e so log log(1/delta) > 0");
  }
  c_constant = c;
  epsilon_prime = (1.0 + c * std::log(l) / l) *
                  std::sqrt(2.0 * l / static_cast<double>(n));
}

}  // namespace subgauss::analysis
