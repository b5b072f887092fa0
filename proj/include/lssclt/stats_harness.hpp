// Copyright 2026 the lssclt authors
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

#ifndef LSSCLT_STATS_HARNESS_HPP_
#define LSSCLT_STATS_HARNESS_HPP_

#include <utility>
#include <vector>

#include "lssclt/bernstein.hpp"
#include "lssclt/simulator.hpp"

namespace lssclt {

// Goodness-of-fit summary of one batch of centered linear statistics against
// the standard normal.  empirical_mean / empirical_var are moments of the
// NORMALIZED sample, so a correct (mu_n, sigma2_n) pair puts them near
// (0, 1); the raw moments are recoverable from mu_n_used / sigma2_n_used.
struct KSReport {
  int n = 0;
  int p = 0;
  int R = 0;
  double ks = 0.0;
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  double mu_n_used = 0.0;
  double sigma2_n_used = 0.0;
};

// Least-squares power-law fit of ks against n on log-log axes; slope is the
// empirical rate exponent.
struct RateFit {
  std::vector<std::pair<int, double>> points;  // (n, ks)
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Decomposition of the centered statistic sum f(lambda_i) - p*C_f into the
// polynomial part, the smoothing-bias correction, and the remainder.
struct DeltaDiagnostics {
  double delta1 = 0.0;  // centered statistic of the approximant
  double delta2 = 0.0;  // -(1/2m) * centered statistic of the correction
  double delta3 = 0.0;  // remainder (exact by construction)
};

// Phi(x) to ~1e-15, via the complementary error function.
double standard_normal_cdf(double x);

// (x - mu_n) / sqrt(sigma2_n) elementwise.  Throws InvalidArgumentError when
// sigma2_n <= 0.
std::vector<double> normalize(std::vector<double> samples, double mu_n,
                              double sigma2_n);

// Kolmogorov-Smirnov distance between the empirical law of the samples and
// the standard normal: max over the sorted sample of the one-sided gaps
// |i/R - Phi(x_(i))| and |(i-1)/R - Phi(x_(i))|.
double ks_to_normal(std::vector<double> samples);

// Fits log ks = slope * log n + intercept by least squares.  Needs at least
// three points with strictly positive ks.
RateFit fit_rate(const std::vector<std::pair<int, double>>& points);

// Splits the centered statistic of f into delta1 + delta2 + delta3 where
// delta1 centers the degree-m approximant, delta2 = -(1/2m) times the
// centered statistic of the curvature correction, and delta3 is the exact
// remainder.  All centerings must be against the same deterministic law.
DeltaDiagnostics delta_diagnostics(const std::vector<double>& eigenvalues,
                                   const TestFunction& f,
                                   const BernsteinApproximant& approx,
                                   const BernsteinApproximant& hm,
                                   double centering_f, double centering_fm,
                                   double centering_hm);

// Normalizes the centered statistics of one experiment by the given CLT
// parameters and reports the fit to the standard normal.  Needs R >= 2.
KSReport make_ks_report(const std::vector<LSSResult>& results, int n, int p,
                        double mu_n, double sigma2_n);

}  // namespace lssclt

#endif  // LSSCLT_STATS_HARNESS_HPP_
