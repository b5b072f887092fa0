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

#ifndef LSSCLT_CLT_PARAMS_HPP_
#define LSSCLT_CLT_PARAMS_HPP_

#include <string>

#include "lssclt/contour.hpp"
#include "lssclt/mp_core.hpp"
#include "lssclt/spectrum.hpp"

namespace lssclt {

// A test function carried onto the contour: complex-analytic value and first
// derivative in a neighborhood of the eigenvalue bulk.  Derivatives are
// explicit -- there is no automatic differentiation.
struct ContourFn {
  std::string name;
  ComplexFn value;
  ComplexFn deriv;
};

ContourFn make_affine_fn(double slope = 1.0, double intercept = 0.0);
ContourFn make_power_fn(int k);  // z^k, k >= 0

// Asymptotic mean and variance of the centered linear spectral statistic
// under the matrix model, at the model's own (p, n).
struct CLTParams {
  double mu_n = 0.0;
  double sigma2_n = 0.0;
  EntryCase entry_case = EntryCase::kReal;
  // Maximum relative change observed on the final node doubling.
  double quad_error_estimate = 0.0;
};

// Quadrature configuration for clt_params_for.  The variance needs two
// nonoverlapping rectangles; the second one is derived from the first by the
// margin/height multipliers below so the pair never intersects.
struct CLTConfig {
  double eps = 0.2;          // margin of the mean/outer contour
  double v0 = 0.5;           // half-height of the mean/outer contour
  double eps2_factor = 1.5;  // margin multiplier for the inner-integral contour
  double v02_factor = 2.0;   // half-height multiplier for that contour
  int nodes_start = 64;
  int nodes_max = 4096;
  double rel_tol = 1e-8;
  // Integrate full loops instead of exploiting conjugate symmetry; used to
  // cross-check the half-contour reduction and contour independence.
  bool full_contour = false;
  SolveOptions solver;
};

// Variance kernel a(z1, z2) = y_n s1 s2 sum_i w_i t_i^2/((1+t_i s1)(1+t_i s2))
// evaluated from already-solved companion transforms s1, s2.
Complex a_fn(Complex z1, Complex z2, const ModelParams& params,
             const PopulationSpectrum& spectrum, Complex s1, Complex s2);

// Hadamard-trace kernels, reduced to diagonal sums (same eigenbasis as T):
//   h1 = sum_i w_i [t_i/(1+t_i s1)] [t_i/(1+t_i s2)]
//   h2 = sum_i w_i [t_i/(1+t_i s)^2] [t_i/(1+t_i s)]
// Throw SingularFactorError when any |1 + t_i s| < 1e-12 (contour touching
// the spectrum).
Complex h1_fn(Complex z1, Complex z2, const PopulationSpectrum& spectrum,
              Complex s1, Complex s2);
Complex h2_fn(Complex z, const PopulationSpectrum& spectrum, Complex s);

// Asymptotic mean of the centered statistic for f, by contour quadrature at
// the given node count.  The real-entry case carries both the second-moment
// term and the fourth-cumulant (beta_x) term; the complex case with
// E x^2 = 0 keeps only the beta_x term.
double mean_lss(const ContourFn& f, const ModelParams& params,
                const PopulationSpectrum& spectrum, const RectContour& contour,
                bool full_contour = false, const SolveOptions& solver = {});

// Asymptotic covariance of the statistics for f and g; sigma_n^2 when f = g.
// The two rectangles must not overlap (distinct heights).  The inner
// t-integral of the second-moment kernel is the closed form -Log(1-a)/a;
// |a| >= 1 at any node pair raises BranchViolationError.
double cov_lss(const ContourFn& f, const ContourFn& g,
               const ModelParams& params, const PopulationSpectrum& spectrum,
               const RectContour& contour1, const RectContour& contour2,
               bool full_contour = false, const SolveOptions& solver = {});

// Bundles mean_lss and cov_lss with node doubling until both values settle
// to config.rel_tol (relative, cap config.nodes_max per side).  Throws
// DegenerateFunctionError when the variance vanishes (constant f),
// QuadratureNotConvergedError when doubling does not settle.
CLTParams clt_params_for(const ContourFn& f, const ModelParams& params,
                         const PopulationSpectrum& spectrum,
                         const CLTConfig& config = {});

}  // namespace lssclt

#endif  // LSSCLT_CLT_PARAMS_HPP_
