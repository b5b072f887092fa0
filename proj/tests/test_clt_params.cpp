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

#include <cmath>
#include <complex>

#include "doctest.h"
#include "lssclt/clt_params.hpp"
#include "lssclt/errors.hpp"
#include "test_helpers.hpp"

namespace lssclt {
namespace {

using testing::companion_quadratic_root;

TEST_SUITE_BEGIN("clt_params");

TEST_CASE("variance kernel vanishes on a zero population matrix") {
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::zero();
  const Complex a = a_fn(Complex(0, 2), Complex(0, -2), params, spectrum,
                         Complex(0, 0.5), Complex(0, -0.5));
  CHECK(a == Complex(0.0, 0.0));
}

TEST_CASE("variance kernel is real and nonnegative on conjugate pairs") {
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::identity();
  const Complex z1(0.0, 2.0);
  const Complex s1 = companion_quadratic_root(z1, params.y_n);
  const Complex s2 = std::conj(s1);
  const Complex a = a_fn(z1, std::conj(z1), params, spectrum, s1, s2);
  CHECK(std::abs(a.imag()) <= 1e-15);
  CHECK(a.real() >= 0.0);

  // Independent direct summation: y |s1|^2 / |1 + s1|^2 for one atom at 1.
  const double direct =
      params.y_n * std::norm(s1) / std::norm(1.0 + s1);
  CHECK(a.real() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("trace kernels reduce to the one-atom closed forms") {
  const auto spectrum = PopulationSpectrum::identity();
  const Complex s1(0.21, 0.63);
  const Complex s2(-0.34, 0.18);
  const Complex h1 = h1_fn(Complex(1, 1), Complex(2, 1), spectrum, s1, s2);
  const Complex expected_h1 = 1.0 / ((1.0 + s1) * (1.0 + s2));
  CHECK(std::abs(h1 - expected_h1) <= 1e-14);

  const Complex h2 = h2_fn(Complex(1, 1), spectrum, s1);
  const Complex expected_h2 =
      1.0 / ((1.0 + s1) * (1.0 + s1) * (1.0 + s1));
  CHECK(std::abs(h2 - expected_h2) <= 1e-14);
}

TEST_CASE("trace kernel two-point hand computation") {
  // Atoms {1, 2} with equal weights at s1 = s2 = i:
  //   0.5 * 1/(1+i)^2 + 0.5 * 4/(1+2i)^2 = -0.24 - 0.57i.
  const auto spectrum = PopulationSpectrum::two_point(1.0, 2.0);
  const Complex s(0.0, 1.0);
  const Complex h1 = h1_fn(Complex(1, 1), Complex(1, 1), spectrum, s, s);
  CHECK(std::abs(h1 - Complex(-0.24, -0.57)) <= 1e-15);
}

TEST_CASE("trace kernels reject contours touching the spectrum") {
  const auto spectrum = PopulationSpectrum::identity();
  CHECK_THROWS_AS(
      h1_fn(Complex(1, 1), Complex(1, 1), spectrum, Complex(-1.0, 0.0),
            Complex(0.0, 1.0)),
      SingularFactorError);
  CHECK_THROWS_AS(h2_fn(Complex(1, 1), spectrum, Complex(-1.0, 0.0)),
                  SingularFactorError);
}

TEST_CASE("mean vanishes identically for complex entries with zero cumulant") {
  const auto params = make_model_params(64, 128, EntryCase::kComplexAlphaZero,
                                        0.0);
  const auto spectrum = PopulationSpectrum::identity();
  const auto c = build_contour(params, spectrum, 0.2, 0.5, 64);
  CHECK(mean_lss(make_power_fn(2), params, spectrum, c) == 0.0);
  CHECK(mean_lss(make_power_fn(3), params, spectrum, c) == 0.0);
}

TEST_CASE("mean of the trace statistic vanishes for real Gaussian entries") {
  // E tr B_n equals its deterministic centering exactly, so the asymptotic
  // mean correction for f = x must be zero.
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::identity();
  const auto c = build_contour(params, spectrum, 0.2, 0.5, 128);
  CHECK(std::abs(mean_lss(make_affine_fn(), params, spectrum, c)) <= 1e-6);

  const auto tp = PopulationSpectrum::two_point(0.5, 2.0);
  const auto c2 = build_contour(params, tp, 0.2, 0.5, 128);
  CHECK(std::abs(mean_lss(make_affine_fn(), params, tp, c2)) <= 1e-6);
}

TEST_CASE("mean of the squared-trace statistic matches the aspect ratio") {
  // Real Gaussian entries, one-atom population: residue evaluation of the
  // mean integral for f = x^2 collapses to y_n.
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::identity();
  const auto c = build_contour(params, spectrum, 0.2, 0.5, 256);
  const double mu = mean_lss(make_power_fn(2), params, spectrum, c);
  CHECK(mu == doctest::Approx(params.y_n).epsilon(1e-8));
}

TEST_CASE("half-contour and full-contour means agree") {
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::two_point(0.5, 2.0);
  const auto c = build_contour(params, spectrum, 0.2, 0.5, 128);
  const auto f = make_power_fn(2);
  const double half = mean_lss(f, params, spectrum, c, false);
  const double full = mean_lss(f, params, spectrum, c, true);
  CHECK(half == doctest::Approx(full).epsilon(1e-10));
}

TEST_CASE("trace variance matches the exact moment oracle") {
  // Var(tr B_n) = y_n (E x^4 - 1) m2(H): real Gaussian entries give
  // 2 y_n m2(H), complex Gaussian entries give y_n m2(H).
  const auto spectrum = PopulationSpectrum::identity();
  const auto f = make_affine_fn();

  const auto real_params = testing::real_gaussian_params(64, 128);
  const auto c1 = build_contour(real_params, spectrum, 0.2, 0.5, 128);
  const auto c2 = build_contour(real_params, spectrum, 0.3, 1.0, 128);
  const double var_real =
      cov_lss(f, f, real_params, spectrum, c1, c2);
  CHECK(var_real == doctest::Approx(1.0).epsilon(1e-4));

  const auto cplx_params =
      make_model_params(64, 128, EntryCase::kComplexAlphaZero, 0.0);
  const double var_cplx = cov_lss(f, f, cplx_params, spectrum, c1, c2);
  CHECK(var_cplx == doctest::Approx(0.5).epsilon(1e-4));

  // Two-point population at aspect ratio 1/4: 2 * 0.25 * m2 = 1.0625.
  const auto tp = PopulationSpectrum::two_point(0.5, 2.0);
  const auto params25 = testing::real_gaussian_params(32, 128);
  const auto d1 = build_contour(params25, tp, 0.2, 0.5, 128);
  const auto d2 = build_contour(params25, tp, 0.3, 1.0, 128);
  const double var_tp = cov_lss(f, f, params25, tp, d1, d2);
  CHECK(var_tp == doctest::Approx(2.0 * 0.25 * tp.moment(2)).epsilon(1e-6));
}

TEST_CASE("fourth-cumulant term shifts the trace variance additively") {
  // For f = x the fourth-cumulant contribution is exactly
  // beta_x * y_n * m2(H), independent of the rest of the kernel.
  const auto spectrum = PopulationSpectrum::identity();
  const auto f = make_affine_fn();
  const auto gauss = testing::real_gaussian_params(64, 128);
  const auto rade = make_model_params(64, 128, EntryCase::kReal, -2.0);
  const auto c1 = build_contour(gauss, spectrum, 0.2, 0.5, 128);
  const auto c2 = build_contour(gauss, spectrum, 0.3, 1.0, 128);
  const double var_gauss = cov_lss(f, f, gauss, spectrum, c1, c2);
  const double var_rade = cov_lss(f, f, rade, spectrum, c1, c2);
  const double shift = -2.0 * gauss.y_n * spectrum.moment(2);
  CHECK(var_rade - var_gauss == doctest::Approx(shift).epsilon(1e-9));
  // Symmetric two-point entries collapse the trace variance entirely.
  CHECK(std::abs(var_rade) <= 1e-9);
}

TEST_CASE("entry case changes the variance by exactly a factor of two") {
  const auto spectrum = PopulationSpectrum::two_point(0.5, 2.0);
  const auto f = make_power_fn(2);
  const auto real_params = testing::real_gaussian_params(64, 128);
  const auto cplx_params =
      make_model_params(64, 128, EntryCase::kComplexAlphaZero, 0.0);
  const auto c1 = build_contour(real_params, spectrum, 0.2, 0.5, 128);
  const auto c2 = build_contour(real_params, spectrum, 0.3, 1.0, 128);
  const double var_real = cov_lss(f, f, real_params, spectrum, c1, c2);
  const double var_cplx = cov_lss(f, f, cplx_params, spectrum, c1, c2);
  CHECK(var_real == doctest::Approx(2.0 * var_cplx).epsilon(1e-10));
}

TEST_CASE("constant functions have zero covariance and degenerate params") {
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::identity();
  const auto c1 = build_contour(params, spectrum, 0.2, 0.5, 64);
  const auto c2 = build_contour(params, spectrum, 0.3, 1.0, 64);
  const auto constant = make_power_fn(0);
  CHECK(cov_lss(constant, constant, params, spectrum, c1, c2) == 0.0);
  CHECK_THROWS_AS(clt_params_for(constant, params, spectrum),
                  DegenerateFunctionError);
}

TEST_CASE("missing derivatives are reported, not guessed") {
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::identity();
  const auto c1 = build_contour(params, spectrum, 0.2, 0.5, 64);
  const auto c2 = build_contour(params, spectrum, 0.3, 1.0, 64);
  ContourFn f;
  f.name = "no-deriv";
  f.value = [](Complex z) { return z; };
  CHECK_THROWS_AS(cov_lss(f, f, params, spectrum, c1, c2),
                  MissingDerivativeError);
}

TEST_CASE("bundled computation settles and reports its quadrature error") {
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::identity();
  const auto out = clt_params_for(make_affine_fn(), params, spectrum);
  CHECK(std::abs(out.mu_n) <= 1e-8);
  CHECK(out.sigma2_n == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(out.quad_error_estimate <= 1e-8);
  CHECK(out.entry_case == EntryCase::kReal);
}

TEST_CASE("results are contour independent") {
  const auto params = testing::real_gaussian_params(64, 128);
  const auto spectrum = PopulationSpectrum::two_point(0.5, 2.0);
  const auto f = make_power_fn(2);

  CLTConfig narrow;  // defaults: eps 0.2, v0 0.5
  CLTConfig wide;
  wide.eps = 0.4;
  wide.v0 = 1.0;
  const auto a = clt_params_for(f, params, spectrum, narrow);
  const auto b = clt_params_for(f, params, spectrum, wide);
  CHECK(std::abs(a.mu_n - b.mu_n) <= 1e-7 * (1.0 + std::abs(a.mu_n)));
  CHECK(std::abs(a.sigma2_n - b.sigma2_n) <=
        1e-7 * (1.0 + std::abs(a.sigma2_n)));

  // The full-loop mode must agree with the half-contour reduction.
  CLTConfig full = narrow;
  full.full_contour = true;
  const auto fc = clt_params_for(f, params, spectrum, full);
  CHECK(fc.mu_n == doctest::Approx(a.mu_n).epsilon(1e-9));
  CHECK(fc.sigma2_n == doctest::Approx(a.sigma2_n).epsilon(1e-9));
}

TEST_SUITE_END();

}  // namespace
}  // namespace lssclt
