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

#include "lssclt/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "lssclt/errors.hpp"

namespace lssclt {

namespace {

// Legendre P_q(x) and P_q'(x) by the three-term recurrence.
void legendre(int q, double x, double* p, double* dp) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= q; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  *p = p1;
  // P_q'(x) = q (x P_q - P_{q-1}) / (x^2 - 1)
  *dp = q * (x * p1 - p0) / (x * x - 1.0);
}

GaussLegendreRule compute_rule(int q) {
  GaussLegendreRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  if (q == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = 2.0;
    return rule;
  }
  const int half = (q + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Chebyshev-like initial guess for the k-th root (descending).
    double x = std::cos(M_PI * (k + 0.75) / (q + 0.5));
    double p = 0.0;
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre(q, x, &p, &dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(q, x, &p, &dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[q - 1 - k] = x;
    rule.weights[q - 1 - k] = w;
    rule.nodes[k] = -x;
    rule.weights[k] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int q) {
  if (q < 1) throw InvalidArgumentError("gauss_legendre requires q >= 1");
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, compute_rule(q)).first;
  return it->second;
}

void composite_gauss_legendre(double a, double b, int n_nodes,
                              std::vector<double>* nodes,
                              std::vector<double>* weights) {
  if (n_nodes < 1) {
    throw InvalidArgumentError("composite_gauss_legendre requires n_nodes >= 1");
  }
  const int order = (n_nodes % 16 == 0) ? 16 : n_nodes;
  const int panels = n_nodes / order;
  const GaussLegendreRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  nodes->reserve(nodes->size() + n_nodes);
  weights->reserve(weights->size() + n_nodes);
  for (int j = 0; j < panels; ++j) {
    const double lo = a + j * h;
    const double mid = lo + 0.5 * h;
    const double half = 0.5 * h;
    for (int k = 0; k < order; ++k) {
      nodes->push_back(mid + half * rule.nodes[k]);
      weights->push_back(half * rule.weights[k]);
    }
  }
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, 50);
}

}  // namespace lssclt
