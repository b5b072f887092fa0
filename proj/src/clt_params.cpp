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

#include "lssclt/clt_params.hpp"

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "lssclt/errors.hpp"
#include "lssclt/log.hpp"

namespace lssclt {

namespace {

constexpr double kSingularFactorTol = 1e-12;
constexpr double kImagResidueTol = 1e-6;
constexpr double kDegenerateSigmaTol = 1e-13;

void check_factor(Complex denom) {
  if (std::abs(denom) < kSingularFactorTol) {
    throw SingularFactorError(
        "resolvent factor 1 + t*s vanished; contour touches the spectrum");
  }
}

// Inner t-integral of the second-moment variance kernel:
//   q(a) = integral_0^1 dt / (1 - t a) = -Log(1 - a) / a  (principal branch),
// with the small-|a| series 1 + a/2 + a^2/3 to avoid cancellation.  The
// closed form is only valid while |a| < 1.
Complex q_of_a(Complex a) {
  const double mag = std::abs(a);
  if (mag >= 1.0) {
    throw BranchViolationError(
        "variance kernel |a(z1,z2)| >= 1; contours run too close to the "
        "support");
  }
  if (mag < 1e-4) {
    return 1.0 + a / 2.0 + a * a / 3.0;
  }
  return -std::log(1.0 - a) / a;
}

// Mean integrand kernel
//   K(z) = y_n s^3 h2(z) [alpha_x / D^2 + beta_x / D],   D = 1 - a(z, z).
// alpha_x selects the entry case: 1 keeps the second-moment term (real
// entries), 0 drops it (complex entries with E x^2 = 0).
Complex mean_kernel(Complex z, const ModelParams& params,
                    const PopulationSpectrum& spectrum, Complex s) {
  const Complex h2 = h2_fn(z, spectrum, s);
  const Complex a = a_fn(z, z, params, spectrum, s, s);
  if (std::abs(a) >= 1.0) {
    throw BranchViolationError(
        "mean kernel |a(z,z)| >= 1; contour runs too close to the support");
  }
  const Complex d = 1.0 - a;
  const Complex base = params.y_n * s * s * s * h2;
  return base * (params.alpha_x / (d * d) + params.beta_x / d);
}

void require_value(const ContourFn& f) {
  if (!f.value) {
    throw InvalidArgumentError("test function '" + f.name + "' has no value");
  }
}

void require_deriv(const ContourFn& f) {
  if (!f.deriv) {
    throw MissingDerivativeError("test function '" + f.name +
                                 "' has no derivative for the variance "
                                 "quadrature");
  }
}

double check_real(Complex raw, const char* what) {
  if (std::abs(raw.imag()) > kImagResidueTol * (1.0 + std::abs(raw.real()))) {
    throw QuadratureNotConvergedError(
        std::string(what) +
        ": imaginary residue exceeds tolerance; quadrature inconsistent");
  }
  return raw.real();
}

std::vector<Complex> solve_many(const std::vector<Complex>& zs,
                                const ModelParams& params,
                                const PopulationSpectrum& spectrum,
                                const SolveOptions& solver) {
  const auto sols = solve_contour_nodes(zs, params, spectrum, solver, true);
  std::vector<Complex> out(sols.size());
  for (std::size_t i = 0; i < sols.size(); ++i) out[i] = sols[i].s_underline;
  return out;
}

}  // namespace

ContourFn make_affine_fn(double slope, double intercept) {
  ContourFn f;
  f.name = "affine";
  f.value = [slope, intercept](Complex z) { return slope * z + intercept; };
  f.deriv = [slope](Complex) { return Complex(slope, 0.0); };
  return f;
}

ContourFn make_power_fn(int k) {
  if (k < 0) throw InvalidArgumentError("power must be nonnegative");
  ContourFn f;
  f.name = "power" + std::to_string(k);
  f.value = [k](Complex z) { return std::pow(z, k); };
  f.deriv = [k](Complex z) {
    if (k == 0) return Complex(0.0, 0.0);
    return static_cast<double>(k) * std::pow(z, k - 1);
  };
  return f;
}

Complex a_fn(Complex z1, Complex z2, const ModelParams& params,
             const PopulationSpectrum& spectrum, Complex s1, Complex s2) {
  return params.y_n * s1 * s2 * h1_fn(z1, z2, spectrum, s1, s2);
}

Complex h1_fn(Complex, Complex, const PopulationSpectrum& spectrum, Complex s1,
              Complex s2) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    const double t = spectrum.values[i];
    if (t == 0.0) continue;
    const Complex d1 = 1.0 + t * s1;
    const Complex d2 = 1.0 + t * s2;
    check_factor(d1);
    check_factor(d2);
    acc += spectrum.weights[i] * (t / d1) * (t / d2);
  }
  return acc;
}

Complex h2_fn(Complex, const PopulationSpectrum& spectrum, Complex s) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    const double t = spectrum.values[i];
    if (t == 0.0) continue;
    const Complex d = 1.0 + t * s;
    check_factor(d);
    acc += spectrum.weights[i] * (t / (d * d)) * (t / d);
  }
  return acc;
}

double mean_lss(const ContourFn& f, const ModelParams& params,
                const PopulationSpectrum& spectrum, const RectContour& contour,
                bool full_contour, const SolveOptions& solver) {
  require_value(f);
  if (params.alpha_x == 0.0 && params.beta_x == 0.0) {
    return 0.0;  // integrand identically zero (complex Gaussian entries)
  }
  if (full_contour) {
    const auto s = solve_many(contour.nodes, params, spectrum, solver);
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < contour.nodes.size(); ++i) {
      const Complex z = contour.nodes[i];
      acc += contour.weights[i] * f.value(z) *
             mean_kernel(z, params, spectrum, s[i]);
    }
    // -(1/2 pi i) * loop integral
    const Complex mu = acc * Complex(0.0, 1.0) / (2.0 * M_PI);
    return check_real(mu, "mean_lss");
  }
  // Conjugate symmetry: the lower half contributes the negative conjugate of
  // the upper half, so the loop equals 2i Im(upper) and the mean is
  // -Im(upper) / pi.
  const auto s = solve_many(contour.upper_nodes, params, spectrum, solver);
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < contour.upper_nodes.size(); ++i) {
    const Complex z = contour.upper_nodes[i];
    acc += contour.upper_weights[i] * f.value(z) *
           mean_kernel(z, params, spectrum, s[i]);
  }
  return -acc.imag() / M_PI;
}

double cov_lss(const ContourFn& f, const ContourFn& g,
               const ModelParams& params, const PopulationSpectrum& spectrum,
               const RectContour& contour1, const RectContour& contour2,
               bool full_contour, const SolveOptions& solver) {
  require_deriv(f);
  require_deriv(g);

  // Inner integral always runs over the full second contour; its conjugate
  // antisymmetry is what reduces the outer loop to the upper half.
  const auto s2 = solve_many(contour2.nodes, params, spectrum, solver);
  std::vector<Complex> inner_factor(contour2.nodes.size());
  for (std::size_t j = 0; j < contour2.nodes.size(); ++j) {
    inner_factor[j] = contour2.weights[j] * g.deriv(contour2.nodes[j]);
  }

  const auto& outer_nodes =
      full_contour ? contour1.nodes : contour1.upper_nodes;
  const auto& outer_weights =
      full_contour ? contour1.weights : contour1.upper_weights;
  const auto s1 = solve_many(outer_nodes, params, spectrum, solver);

  Complex w_second(0.0, 0.0);  // second-moment (a * q(a)) double integral
  Complex w_fourth(0.0, 0.0);  // fourth-cumulant (s1 s2 h1) double integral
  const bool need_fourth = params.beta_x != 0.0;
  for (std::size_t i = 0; i < outer_nodes.size(); ++i) {
    const Complex z1 = outer_nodes[i];
    Complex acc_second(0.0, 0.0);
    Complex acc_fourth(0.0, 0.0);
    for (std::size_t j = 0; j < contour2.nodes.size(); ++j) {
      const Complex z2 = contour2.nodes[j];
      const Complex h1 = h1_fn(z1, z2, spectrum, s1[i], s2[j]);
      const Complex a = params.y_n * s1[i] * s2[j] * h1;
      acc_second += inner_factor[j] * (a * q_of_a(a));
      if (need_fourth) acc_fourth += inner_factor[j] * (s1[i] * s2[j] * h1);
    }
    const Complex outer = outer_weights[i] * f.deriv(z1);
    w_second += outer * acc_second;
    w_fourth += outer * acc_fourth;
  }

  const double pi2 = M_PI * M_PI;
  const double second_coeff = (1.0 + params.alpha_x) / (4.0 * pi2);
  const double fourth_coeff = params.beta_x * params.y_n / (4.0 * pi2);
  if (full_contour) {
    const Complex raw = -second_coeff * w_second - fourth_coeff * w_fourth;
    return check_real(raw, "cov_lss");
  }
  // Outer loop = 2 Re(upper-half value) by conjugate antisymmetry of the
  // inner integral.
  return -second_coeff * 2.0 * w_second.real() -
         fourth_coeff * 2.0 * w_fourth.real();
}

CLTParams clt_params_for(const ContourFn& f, const ModelParams& params,
                         const PopulationSpectrum& spectrum,
                         const CLTConfig& config) {
  if (config.eps <= 0.0 || config.v0 <= 0.0 || config.nodes_start < 4 ||
      config.nodes_max < config.nodes_start || config.rel_tol <= 0.0 ||
      config.eps2_factor <= 0.0 || config.v02_factor <= 1.0) {
    throw InvalidArgumentError("clt_params_for: invalid quadrature config");
  }

  double mu_prev = 0.0;
  double sigma2_prev = 0.0;
  bool have_prev = false;
  for (int nodes = config.nodes_start; nodes <= config.nodes_max; nodes *= 2) {
    const RectContour c1 =
        build_contour(params, spectrum, config.eps, config.v0, nodes);
    const RectContour c2 =
        build_contour(params, spectrum, config.eps * config.eps2_factor,
                      config.v0 * config.v02_factor, nodes);
    const double mu = mean_lss(f, params, spectrum, c1, config.full_contour,
                               config.solver);
    const double sigma2 = cov_lss(f, f, params, spectrum, c1, c2,
                                  config.full_contour, config.solver);
    if (have_prev) {
      const double err =
          std::max(std::abs(mu - mu_prev) / (1.0 + std::abs(mu)),
                   std::abs(sigma2 - sigma2_prev) / (1.0 + std::abs(sigma2)));
      if (err <= config.rel_tol) {
        if (sigma2 <= kDegenerateSigmaTol) {
          throw DegenerateFunctionError(
              "variance of the statistic vanishes for test function '" +
              f.name + "'");
        }
        log_debug("clt_params_for: settled at " + std::to_string(nodes) +
                  " nodes/side");
        return CLTParams{mu, sigma2, params.entry_case, err};
      }
    }
    mu_prev = mu;
    sigma2_prev = sigma2;
    have_prev = true;
  }
  throw QuadratureNotConvergedError(
      "clt_params_for: node doubling did not settle within the node cap");
}

}  // namespace lssclt
