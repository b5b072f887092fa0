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

#ifndef LSSCLT_BERNSTEIN_HPP_
#define LSSCLT_BERNSTEIN_HPP_

#include <functional>
#include <string>
#include <vector>

#include "lssclt/clt_params.hpp"
#include "lssclt/contour.hpp"

namespace lssclt {

enum class Smoothness { kAnalyticWithDeriv, kC3 };

// A real test function with explicitly supplied derivatives.  Analytic
// functions additionally carry their complex continuation so they can be
// placed on a contour directly; merely-C3 functions go through a Bernstein
// approximant instead.  No derivative is ever computed numerically here.
struct TestFunction {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> deriv1;  // optional
  std::function<double(double)> deriv2;  // optional
  std::function<double(double)> deriv3;  // optional
  Smoothness smoothness = Smoothness::kC3;
  ComplexFn complex_eval;   // set only for analytic functions
  ComplexFn complex_deriv;  // likewise
};

// Built-in registry: "affine" (x), "square" (x^2), "cube" (x^3),
// "pow7half" (x^{7/2}, C3 on [0, inf)), "logshift" (log(1+x)).
// Throws InvalidArgumentError for unknown names.
const TestFunction& test_function(const std::string& name);
std::vector<std::string> test_function_names();

// Polynomial approximant on the basis of binomial weights over [0, 1],
// composed with the affine map y = L x + c that sends the working interval
// [x_l, x_r] to [upsilon, 1 - upsilon].  Coefficients are the raw samples
// b_k = f((k/m - c)/L); evaluation never expands into the power basis.
struct BernsteinApproximant {
  int m = 0;  // degree; coeffs has m+1 entries
  double x_l = 0.0;
  double x_r = 0.0;
  double upsilon = 0.0;
  double L = 0.0;
  double c = 0.0;
  std::vector<double> coeffs;

  // Real-axis evaluation.  Low degrees use de Casteljau; high degrees with
  // the mapped variable inside (0, 1) use a mode-centered binomial-weight
  // window (O(sqrt(m)) work, stable beyond m = 1e5).  High-degree evaluation
  // outside the mapped unit interval is astronomically ill-conditioned and
  // raises EvalFailureError.
  double eval(double x) const;

  // de Casteljau in complex arithmetic; degrees above 1e6 raise
  // OverflowError.  Points far outside the fitted box are allowed but
  // logged at debug level (polynomial extension grows fast).
  Complex eval_complex(Complex z) const;
};

// Samples f through the interval map.  Throws InvalidArgumentError for a
// degenerate interval, upsilon outside (0, 1/2) or m < 1; EvalFailureError
// when f is not finite at a sample node.
BernsteinApproximant fit(const TestFunction& f, double x_l, double x_r,
                         double upsilon, int m);

// Exact derivative approximant: degree m-1 with coefficients
// m * L * (b_{k+1} - b_k) under the same interval map.
BernsteinApproximant derivative(const BernsteinApproximant& approx);

// Second-order correction term: the approximant of
//   h(y) = y (1 - y) f((y - c)/L)'' / L^2
// under the same map.  Subtracting h_m/(2m) from f_m upgrades the O(1/m)
// approximation error to O(1/m^2).  Requires f.deriv2.
BernsteinApproximant correction_hm(const TestFunction& f, double x_l,
                                   double x_r, double upsilon, int m);

// max |f_m(x) - f(x)| over a uniform grid on the working interval.
double sup_error(const BernsteinApproximant& approx, const TestFunction& f,
                 int grid_size);

// Degree policies: m = floor(n^{3/5 + eps0}) for CLT-scale approximation,
// m = floor(n^{8/5 - kappa}) for approximation-rate experiments.
int choose_degree_clt(int n, double eps0 = 0.05);
int choose_degree_rate(int n, double kappa = 0.05);

// Contour adapters.  The TestFunction overload requires an analytic function
// (complex_eval and complex_deriv present); the approximant overload carries
// the polynomial and its exact derivative onto the contour.
ContourFn contour_fn_from(const TestFunction& f);
ContourFn contour_fn_from(const BernsteinApproximant& approx,
                          const std::string& name = "bernstein");

}  // namespace lssclt

#endif  // LSSCLT_BERNSTEIN_HPP_
