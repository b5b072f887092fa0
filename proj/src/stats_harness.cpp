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

#include "lssclt/stats_harness.hpp"

#include <algorithm>
#include <cmath>

#include "lssclt/errors.hpp"

namespace lssclt {

double standard_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

std::vector<double> normalize(std::vector<double> samples, double mu_n,
                              double sigma2_n) {
  if (!(sigma2_n > 0.0)) {
    throw InvalidArgumentError("normalize needs sigma2_n > 0");
  }
  const double inv_sd = 1.0 / std::sqrt(sigma2_n);
  for (double& x : samples) x = (x - mu_n) * inv_sd;
  return samples;
}

double ks_to_normal(std::vector<double> samples) {
  if (samples.empty()) {
    throw InvalidArgumentError("ks_to_normal needs at least one sample");
  }
  std::sort(samples.begin(), samples.end());
  const double R = static_cast<double>(samples.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = standard_normal_cdf(samples[i]);
    const double hi = (static_cast<double>(i) + 1.0) / R - cdf;
    const double lo = cdf - static_cast<double>(i) / R;
    ks = std::max(ks, std::max(std::abs(hi), std::abs(lo)));
  }
  return ks;
}

RateFit fit_rate(const std::vector<std::pair<int, double>>& points) {
  if (points.size() < 3) {
    throw InvalidArgumentError("fit_rate needs at least 3 points");
  }
  RateFit fit;
  fit.points = points;
  std::vector<double> u, v;
  u.reserve(points.size());
  v.reserve(points.size());
  for (const auto& [n, ks] : points) {
    if (n < 1) throw InvalidArgumentError("fit_rate needs n >= 1");
    if (!(ks > 0.0)) {
      throw InvalidArgumentError("fit_rate needs strictly positive ks");
    }
    u.push_back(std::log(static_cast<double>(n)));
    v.push_back(std::log(ks));
  }
  const double count = static_cast<double>(u.size());
  double u_bar = 0.0, v_bar = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    u_bar += u[i];
    v_bar += v[i];
  }
  u_bar /= count;
  v_bar /= count;
  double suu = 0.0, suv = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suu += (u[i] - u_bar) * (u[i] - u_bar);
    suv += (u[i] - u_bar) * (v[i] - v_bar);
    svv += (v[i] - v_bar) * (v[i] - v_bar);
  }
  if (suu <= 0.0) {
    throw InvalidArgumentError("fit_rate needs at least two distinct n");
  }
  fit.slope = suv / suu;
  fit.intercept = v_bar - fit.slope * u_bar;
  if (svv <= 1e-30) {
    fit.r2 = 1.0;  // constant response: the horizontal line is exact
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double r = v[i] - (fit.intercept + fit.slope * u[i]);
      ss_res += r * r;
    }
    fit.r2 = 1.0 - ss_res / svv;
  }
  return fit;
}

DeltaDiagnostics delta_diagnostics(const std::vector<double>& eigenvalues,
                                   const TestFunction& f,
                                   const BernsteinApproximant& approx,
                                   const BernsteinApproximant& hm,
                                   double centering_f, double centering_fm,
                                   double centering_hm) {
  if (approx.m < 1) {
    throw InvalidArgumentError("delta_diagnostics needs approximant degree >= 1");
  }
  const double p = static_cast<double>(eigenvalues.size());
  double sum_f = 0.0, sum_fm = 0.0, sum_hm = 0.0;
  for (double lambda : eigenvalues) {
    sum_f += f.eval(lambda);
    sum_fm += approx.eval(lambda);
    sum_hm += hm.eval(lambda);
  }
  DeltaDiagnostics d;
  const double total = sum_f - p * centering_f;
  d.delta1 = sum_fm - p * centering_fm;
  d.delta2 = -(sum_hm - p * centering_hm) / (2.0 * static_cast<double>(approx.m));
  d.delta3 = total - d.delta1 - d.delta2;
  return d;
}

KSReport make_ks_report(const std::vector<LSSResult>& results, int n, int p,
                        double mu_n, double sigma2_n) {
  if (results.size() < 2) {
    throw ValidationError("make_ks_report needs R >= 2 replicates");
  }
  std::vector<double> centered;
  centered.reserve(results.size());
  for (const LSSResult& r : results) centered.push_back(r.lss_centered);
  const std::vector<double> z = normalize(std::move(centered), mu_n, sigma2_n);
  KSReport report;
  report.n = n;
  report.p = p;
  report.R = static_cast<int>(results.size());
  report.mu_n_used = mu_n;
  report.sigma2_n_used = sigma2_n;
  double mean = 0.0;
  for (double x : z) mean += x;
  mean /= static_cast<double>(z.size());
  double var = 0.0;
  for (double x : z) var += (x - mean) * (x - mean);
  var /= static_cast<double>(z.size()) - 1.0;
  report.empirical_mean = mean;
  report.empirical_var = var;
  report.ks = ks_to_normal(z);
  return report;
}

}  // namespace lssclt
