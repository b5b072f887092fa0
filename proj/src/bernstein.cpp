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

#include "lssclt/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>

#include "lssclt/errors.hpp"
#include "lssclt/log.hpp"

namespace lssclt {

namespace {

// Above this degree, real-axis evaluation switches from de Casteljau
// (O(m^2)) to the windowed binomial sum (O(sqrt m)).
constexpr int kDeCasteljauMaxReal = 2048;
constexpr int kMaxComplexDegree = 1000000;
// Binomial weights below this absolute size cannot move the normalized sum.
constexpr double kWindowTailCut = 1e-18;

std::map<std::string, TestFunction> build_registry() {
  std::map<std::string, TestFunction> reg;

  TestFunction affine;
  affine.name = "affine";
  affine.eval = [](double x) { return x; };
  affine.deriv1 = [](double) { return 1.0; };
  affine.deriv2 = [](double) { return 0.0; };
  affine.deriv3 = [](double) { return 0.0; };
  affine.smoothness = Smoothness::kAnalyticWithDeriv;
  affine.complex_eval = [](Complex z) { return z; };
  affine.complex_deriv = [](Complex) { return Complex(1.0, 0.0); };
  reg[affine.name] = affine;

  TestFunction square;
  square.name = "square";
  square.eval = [](double x) { return x * x; };
  square.deriv1 = [](double x) { return 2.0 * x; };
  square.deriv2 = [](double) { return 2.0; };
  square.deriv3 = [](double) { return 0.0; };
  square.smoothness = Smoothness::kAnalyticWithDeriv;
  square.complex_eval = [](Complex z) { return z * z; };
  square.complex_deriv = [](Complex z) { return 2.0 * z; };
  reg[square.name] = square;

  TestFunction cube;
  cube.name = "cube";
  cube.eval = [](double x) { return x * x * x; };
  cube.deriv1 = [](double x) { return 3.0 * x * x; };
  cube.deriv2 = [](double x) { return 6.0 * x; };
  cube.deriv3 = [](double) { return 6.0; };
  cube.smoothness = Smoothness::kAnalyticWithDeriv;
  cube.complex_eval = [](Complex z) { return z * z * z; };
  cube.complex_deriv = [](Complex z) { return 3.0 * z * z; };
  reg[cube.name] = cube;

  // x^{7/2}: three continuous derivatives on [0, inf), not analytic at 0.
  TestFunction pow7half;
  pow7half.name = "pow7half";
  pow7half.eval = [](double x) { return std::pow(x, 3.5); };
  pow7half.deriv1 = [](double x) { return 3.5 * std::pow(x, 2.5); };
  pow7half.deriv2 = [](double x) { return 8.75 * std::pow(x, 1.5); };
  pow7half.deriv3 = [](double x) { return 13.125 * std::sqrt(x); };
  pow7half.smoothness = Smoothness::kC3;
  reg[pow7half.name] = pow7half;

  TestFunction logshift;
  logshift.name = "logshift";
  logshift.eval = [](double x) { return std::log1p(x); };
  logshift.deriv1 = [](double x) { return 1.0 / (1.0 + x); };
  logshift.deriv2 = [](double x) { return -1.0 / ((1.0 + x) * (1.0 + x)); };
  logshift.deriv3 = [](double x) {
    return 2.0 / ((1.0 + x) * (1.0 + x) * (1.0 + x));
  };
  logshift.smoothness = Smoothness::kAnalyticWithDeriv;
  logshift.complex_eval = [](Complex z) { return std::log(1.0 + z); };
  logshift.complex_deriv = [](Complex z) { return 1.0 / (1.0 + z); };
  reg[logshift.name] = logshift;

  return reg;
}

const std::map<std::string, TestFunction>& registry() {
  static const std::map<std::string, TestFunction> reg = build_registry();
  return reg;
}

void check_shape(const BernsteinApproximant& a) {
  if (a.m < 0 || a.coeffs.size() != static_cast<std::size_t>(a.m) + 1) {
    throw InvalidArgumentError(
        "approximant coefficient count does not match its degree");
  }
}

double de_casteljau_real(const std::vector<double>& coeffs, double y) {
  std::vector<double> b = coeffs;
  for (std::size_t r = b.size() - 1; r >= 1; --r) {
    for (std::size_t i = 0; i < r; ++i) {
      b[i] = (1.0 - y) * b[i] + y * b[i + 1];
    }
  }
  return b[0];
}

}  // namespace

const TestFunction& test_function(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) {
    throw InvalidArgumentError("unknown test function: " + name);
  }
  return it->second;
}

std::vector<std::string> test_function_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

double BernsteinApproximant::eval(double x) const {
  check_shape(*this);
  const double y = L * x + c;
  if (y == 0.0) return coeffs.front();
  if (y == 1.0) return coeffs.back();
  if (m <= kDeCasteljauMaxReal) return de_casteljau_real(coeffs, y);
  if (y <= 0.0 || y >= 1.0) {
    throw EvalFailureError(
        "high-degree evaluation outside the mapped unit interval is "
        "ill-conditioned (degree " +
        std::to_string(m) + ")");
  }

  // Windowed binomial sum: weights w_k = C(m,k) y^k (1-y)^{m-k} peak at
  // k0 ~ (m+1)y and fall off like a Gaussian of width sqrt(m); everything
  // below kWindowTailCut is invisible after normalization.
  const int k0 = std::min(m, static_cast<int>(std::floor((m + 1.0) * y)));
  const double logw0 = std::lgamma(m + 1.0) - std::lgamma(k0 + 1.0) -
                       std::lgamma(m - k0 + 1.0) + k0 * std::log(y) +
                       (m - k0) * std::log1p(-y);
  const double w0 = std::exp(logw0);
  const double ratio = y / (1.0 - y);
  double acc = w0 * coeffs[k0];
  double wsum = w0;
  double w = w0;
  for (int k = k0; k > 0; --k) {
    w *= k / ((m - k + 1.0) * ratio);
    if (w < kWindowTailCut) break;
    acc += w * coeffs[k - 1];
    wsum += w;
  }
  w = w0;
  for (int k = k0; k < m; ++k) {
    w *= (m - k) * ratio / (k + 1.0);
    if (w < kWindowTailCut) break;
    acc += w * coeffs[k + 1];
    wsum += w;
  }
  return acc / wsum;
}

Complex BernsteinApproximant::eval_complex(Complex z) const {
  if (m > kMaxComplexDegree) {
    throw OverflowError("complex evaluation limited to degree 1e6, got " +
                        std::to_string(m));
  }
  check_shape(*this);
  const Complex y = L * z + c;
  if (std::abs(y.imag()) > 1.0 || y.real() < -0.5 || y.real() > 1.5) {
    log_debug("bernstein: evaluation far outside the fitted box");
  }
  std::vector<Complex> b(coeffs.begin(), coeffs.end());
  for (std::size_t r = b.size() - 1; r >= 1; --r) {
    for (std::size_t i = 0; i < r; ++i) {
      b[i] = (1.0 - y) * b[i] + y * b[i + 1];
    }
  }
  return b[0];
}

BernsteinApproximant fit(const TestFunction& f, double x_l, double x_r,
                         double upsilon, int m) {
  if (!(x_r > x_l)) {
    throw InvalidArgumentError("fit: working interval is degenerate");
  }
  if (!(upsilon > 0.0 && upsilon < 0.5)) {
    throw InvalidArgumentError("fit: upsilon must lie in (0, 1/2)");
  }
  if (m < 1) throw InvalidArgumentError("fit: degree must be >= 1");
  if (!f.eval) throw InvalidArgumentError("fit: function has no evaluator");

  BernsteinApproximant a;
  a.m = m;
  a.x_l = x_l;
  a.x_r = x_r;
  a.upsilon = upsilon;
  a.L = (1.0 - 2.0 * upsilon) / (x_r - x_l);
  a.c = upsilon - a.L * x_l;
  a.coeffs.resize(m + 1);
  for (int k = 0; k <= m; ++k) {
    const double x = (static_cast<double>(k) / m - a.c) / a.L;
    const double v = f.eval(x);
    if (!std::isfinite(v)) {
      throw EvalFailureError("fit: '" + f.name + "' is not finite at x = " +
                             std::to_string(x));
    }
    a.coeffs[k] = v;
  }
  return a;
}

BernsteinApproximant derivative(const BernsteinApproximant& approx) {
  check_shape(approx);
  if (approx.m < 1) {
    throw InvalidArgumentError("derivative: degree must be >= 1");
  }
  BernsteinApproximant d = approx;
  d.m = approx.m - 1;
  d.coeffs.resize(approx.m);
  // d/dx = L d/dy; the basis derivative drops the degree by one.
  for (int k = 0; k < approx.m; ++k) {
    d.coeffs[k] =
        approx.m * approx.L * (approx.coeffs[k + 1] - approx.coeffs[k]);
  }
  return d;
}

BernsteinApproximant correction_hm(const TestFunction& f, double x_l,
                                   double x_r, double upsilon, int m) {
  if (!f.deriv2) {
    throw MissingDerivativeError("correction term needs f'' for '" + f.name +
                                 "'");
  }
  TestFunction h;
  h.name = f.name + "_h";
  // h in the mapped variable: y(1-y) f''((y-c)/L) / L^2, expressed through x.
  const double L = (1.0 - 2.0 * upsilon) / (x_r - x_l);
  const double c = upsilon - L * x_l;
  const auto d2 = f.deriv2;
  h.eval = [L, c, d2](double x) {
    const double y = L * x + c;
    return y * (1.0 - y) * d2(x) / (L * L);
  };
  return fit(h, x_l, x_r, upsilon, m);
}

double sup_error(const BernsteinApproximant& approx, const TestFunction& f,
                 int grid_size) {
  if (grid_size < 2) throw InvalidArgumentError("sup_error: grid too small");
  double worst = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double x =
        approx.x_l + (approx.x_r - approx.x_l) * i / (grid_size - 1.0);
    worst = std::max(worst, std::abs(approx.eval(x) - f.eval(x)));
  }
  return worst;
}

int choose_degree_clt(int n, double eps0) {
  if (n < 2) throw InvalidArgumentError("degree policy needs n >= 2");
  if (!(eps0 > 0.0 && eps0 < 0.4)) {
    throw InvalidArgumentError("eps0 outside (0, 0.4)");
  }
  return std::max(1, static_cast<int>(std::floor(std::pow(n, 0.6 + eps0))));
}

int choose_degree_rate(int n, double kappa) {
  if (n < 2) throw InvalidArgumentError("degree policy needs n >= 2");
  if (!(kappa > 0.0 && kappa < 0.6)) {
    throw InvalidArgumentError("kappa outside (0, 0.6)");
  }
  return std::max(1, static_cast<int>(std::floor(std::pow(n, 1.6 - kappa))));
}

ContourFn contour_fn_from(const TestFunction& f) {
  if (!f.complex_eval || !f.complex_deriv) {
    throw InvalidArgumentError(
        "test function '" + f.name +
        "' has no complex continuation; fit a polynomial approximant");
  }
  ContourFn out;
  out.name = f.name;
  out.value = f.complex_eval;
  out.deriv = f.complex_deriv;
  return out;
}

ContourFn contour_fn_from(const BernsteinApproximant& approx,
                          const std::string& name) {
  auto value = std::make_shared<BernsteinApproximant>(approx);
  auto deriv = std::make_shared<BernsteinApproximant>(derivative(approx));
  ContourFn out;
  out.name = name + "_m" + std::to_string(approx.m);
  out.value = [value](Complex z) { return value->eval_complex(z); };
  out.deriv = [deriv](Complex z) { return deriv->eval_complex(z); };
  return out;
}

}  // namespace lssclt
