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
#include <string>
#include <utility>
#include <vector>

#include "subgauss/distributions.hpp"
#include "subgauss/estimator.hpp"
#include "subgauss/sample_set.hpp"

namespace subgauss::analysis {

// Numerical certificates for the estimator's concentration analysis: the
// quadratic-log inequality and its coefficients, the derivative
// factorization used in its proof, the Chernoff direction vectors, the
// single-sample moment bound, and finite-difference sensitivity probes.

inline constexpr double kVHatLo = 0.05;
inline constexpr double kVHatHi = 55.5;
inline constexpr double kGapTolerance = -1e-9;

/// Coefficients of the quadratic-log inequality at a given v_hat: `a` is
/// the positive root of sqrt(v_hat)(a^2 - 12) + sqrt(6) a = 0 and
/// b = 3 - a^2/2, except at the left endpoint v_hat = 0.05 where the fixed
/// pair (0.75, sqrt(3)) is used.
struct Lemma5Coefficients {
  double v_hat = 0.0;
  double a = 0.0;
  double b = 0.0;
};

/// Chernoff direction (d_mu, d_alpha): (a sqrt(alpha_hat), b) inside
/// [0.05, 55.5), and (0, -4) at the right endpoint.
struct DirectionVector {
  double d_mu = 0.0;
  double d_alpha = 0.0;
};

/// Grid-certificate outcome for the quadratic-log inequality.
struct CertificateReport {
  std::vector<double> v_hat_grid;
  double min_gap = 0.0;
  double min_log_argument = 0.0;
  double worst_v_hat = 0.0;  // location of the minimal gap
  double worst_y = 0.0;
  bool passed = false;
};

/// epsilon' = (1 + c log log(1/delta) / log(1/delta)) sqrt(2 log(1/delta)/n).
/// Requires delta < 1/e so that epsilon' strictly exceeds the sub-Gaussian
/// radius.
struct ThresholdParams {
  double c_constant = 3.0;
  double epsilon_prime = 0.0;

  ThresholdParams(const Confidence& conf, std::size_t n, double c = 3.0);
};

Lemma5Coefficients lemma5_coefficients(double v_hat);

/// One point of the inequality: log argument and gap = RHS - LHS. The gap
/// is NaN when the log argument is nonpositive.
struct GapEval {
  double log_argument = 0.0;
  double gap = 0.0;
};
GapEval lemma5_terms(double v_hat, double a, double b, double y);

/// RHS - LHS of the inequality at y; throws NonpositiveLogArgument when the
/// log is undefined (a certificate failure).
double lemma5_gap(double v_hat, double a, double b, double y);

struct CertificateOptions {
  double refine_halfwidth = 1.5;  // |y| range of the 100x refined sub-grid
  double b_offset = 0.0;          // negative-control corruption of b
  unsigned workers = 0;           // 0 = hardware concurrency
};

/// Evaluates the gap over v_hat_grid x {y_lo + j*y_step} plus the refined
/// sub-grid, reporting the minimal gap and log argument. Failures are
/// reported, never thrown. Deterministic for any worker count.
CertificateReport check_lemma5(const std::vector<double>& v_hat_grid,
                               std::pair<double, double> y_range,
                               double y_step,
                               const CertificateOptions& options = {});

/// Evenly spaced grid over [0.05, 55.5] (the default certificate grid).
std::vector<double> default_v_hat_grid(std::size_t points = 1000);

/// `key = value` serialization of a report (keys: min_gap,
/// min_log_argument, worst_v_hat, worst_y, passed).
std::string report_to_kv(const CertificateReport& report);

/// Derivative of RHS - LHS on |y| < 1, evaluated two ways: directly, and in
/// the factored form 3a * y (y + 2/a)(y + 2/a - a/3)^2 / q(y) with
/// q(y) = y^2 + (4/a - a/3) y + (4/a^2 - 1/3). q's discriminant is
/// (a^2 - 12)/9 < 0, so the denominator never vanishes; this is asserted.
/// Valid for v_hat in (0.05, 55.5] where the root-based coefficients apply.
std::pair<double, double> lemma5_derivative_identity(double v_hat, double y);

DirectionVector chernoff_direction(double v_hat, std::size_t n,
                                   const Confidence& conf);

/// Single-sample exponential moment against its linear bound:
///   lhs = E_x[ exp(d_mu x (1 - min(alpha_hat x^2,1))
///              - d_alpha min(alpha_hat x^2,1)) ]
///   rhs = 1 + (log(1/delta)/(3n)) (-3 + 3 d_mu sqrt(2n/log(1/delta))
///                                  - d_alpha)
/// lhs is an exact finite sum for discrete families and midpoint quadrature
/// on the inverse-CDF grid for continuous ones.
struct MomentBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double allowance = 0.0;  // quadrature error allowance (0 when exact)

  bool passed() const { return lhs <= rhs * (1.0 + 1e-6) + allowance; }
};
MomentBound moment_factor_bound(const DistributionSpec& dist, double v_hat,
                                std::size_t n, const Confidence& conf,
                                std::size_t quadrature_points = 100000);

/// Finite-difference slopes of sqrt(log(1/delta)/n) psi_mu and psi_alpha in
/// v_hat over a grid. The probe applies only when psi_alpha = 0 has its
/// root v_hat inside [0.05, 55.5]; otherwise hypothesis_met is false and
/// `reason` says why (reported, not thrown).
struct LipschitzProbe {
  bool hypothesis_met = false;
  std::string reason;
  double v_root = 0.0;
  double max_slope_mu = 0.0;
  double max_slope_alpha = 0.0;
};
LipschitzProbe lipschitz_probe(const SampleSet& samples,
                               const Confidence& conf,
                               const std::vector<double>& v_grid);

/// Default probe grid: 101 evenly spaced points over [0.05, 55.5]. The
/// asserted slope bound 10 log(1/delta) is calibrated to this resolution;
/// much finer grids resolve the steep 1/v_hat^2 region near the left
/// endpoint where the raw derivative exceeds it.
std::vector<double> default_lipschitz_grid();

/// Max |finite-difference slope| of estimate_with_kappa between consecutive
/// grid points. Solver failures are recorded per point and skipped.
struct KappaProbe {
  double max_slope = 0.0;
  std::size_t evaluated = 0;
  std::vector<std::pair<double, std::string>> skipped;
};
KappaProbe kappa_sensitivity_probe(const SampleSet& samples,
                                   const Confidence& conf,
                                   const std::vector<double>& kappa_grid);

}  // namespace subgauss::analysis
