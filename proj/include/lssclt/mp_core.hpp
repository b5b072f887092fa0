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

#ifndef LSSCLT_MP_CORE_HPP_
#define LSSCLT_MP_CORE_HPP_

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "lssclt/contour.hpp"
#include "lssclt/spectrum.hpp"

namespace lssclt {

// Solved companion Stieltjes transform s at one spectral argument z, with a
// fixed-point residual certificate.  s solves
//
//   s = -1 / (z - y_n * Integral t/(1+t*s) dH_p(t)),
//
// the scalar self-consistency equation of the generalized Marchenko-Pastur
// law for the companion matrix (1/n) X* T X.
struct StieltjesValue {
  Complex z;
  Complex s_underline;
  double residual = 0.0;
  int iterations = 0;
};

struct SolveOptions {
  double tol = 1e-12;     // residual |s - map(s)| target
  int max_iter = 10000;
  double damping = 0.5;   // s <- (1-d)*s + d*map(s)
};

// Damped fixed-point solve started from -1/z (or warm_start).  If an iterate
// crosses into the wrong half-plane (Im s * Im z < 0) its imaginary part is
// reflected back.  Valid for Im z != 0, or real z strictly outside the
// support bracket.  Throws NonConvergenceError / InvalidArgumentError.
StieltjesValue solve_underline_s(Complex z, const ModelParams& params,
                                 const PopulationSpectrum& spectrum,
                                 std::optional<Complex> warm_start = {},
                                 const SolveOptions& options = {});

// Solves along a list of spectral arguments in order.  With warm_start, each
// solve starts from the previous solution (fast on a contour sweep); without
// it every solve is cold.  Both modes agree within 2x the solver tolerance.
std::vector<StieltjesValue> solve_contour_nodes(
    const std::vector<Complex>& zs, const ModelParams& params,
    const PopulationSpectrum& spectrum, const SolveOptions& options = {},
    bool warm_start = true);

// Stieltjes transform of the sample-covariance law itself, recovered from
// the companion transform via s = (s_underline + (1-y_n)/z) / y_n.
Complex convert_to_s(Complex z, Complex s_underline, const ModelParams& params);

// Support bracket [min(T)*1{y<1}*(1-sqrt(y_n))^2, max(T)*(1+sqrt(y_n))^2]
// that contains the eigenvalue bulk.
std::pair<double, double> support_bounds(const ModelParams& params,
                                         const PopulationSpectrum& spectrum);

inline const std::vector<double> kDefaultEtaLadder = {1e-2, 5e-3, 2.5e-3};

// Spectral density at x, recovered from boundary values of the transform:
// Richardson extrapolation of (1/pi) Im s(x + i*eta) along eta_ladder
// (successive halvings), clamped at 0 (tolerating -1e-8 of noise).
double density(double x, const ModelParams& params,
               const PopulationSpectrum& spectrum,
               const std::vector<double>& eta_ladder = kDefaultEtaLadder);

// Integral of f against the deterministic finite-(p,n) law F^{y_n,H_p},
// computed as -(1/2*pi*i) closed-contour integral of f(z)*s(z) dz for f
// analytic on and inside the contour.  Nodes are doubled (geometry fixed)
// until the relative change is < 1e-8; throws QuadratureNotConvergedError.
double centering_integral(const ComplexFn& f, const ModelParams& params,
                          const PopulationSpectrum& spectrum,
                          const RectContour& contour);

// Density-quadrature route for the same integral: trapezoid over a uniform
// grid of the extrapolated density.  Used for merely-C3 test functions and
// as a cross-check of the contour route.
double centering_integral_density(const std::function<double(double)>& f,
                                  const ModelParams& params,
                                  const PopulationSpectrum& spectrum,
                                  int grid_points = 4096);

// Cached density/CDF grid over a slightly padded support bracket; the CDF is
// a cumulative trapezoid of the density, clipped to [0, 1].
struct LsdGrid {
  std::vector<double> x;
  std::vector<double> pdf;
  std::vector<double> cdf;

  // CDF at an arbitrary point (0 left of the grid, 1 right of it, linear
  // interpolation inside).
  double cdf_at(double xq) const;
};

LsdGrid build_lsd_grid(const ModelParams& params,
                       const PopulationSpectrum& spectrum,
                       int grid_points = 4096,
                       const std::vector<double>& eta_ladder = kDefaultEtaLadder);

}  // namespace lssclt

#endif  // LSSCLT_MP_CORE_HPP_
