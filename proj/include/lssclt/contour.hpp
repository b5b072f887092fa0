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

#ifndef LSSCLT_CONTOUR_HPP_
#define LSSCLT_CONTOUR_HPP_

#include <complex>
#include <functional>
#include <vector>

#include "lssclt/spectrum.hpp"

namespace lssclt {

using Complex = std::complex<double>;
using ComplexFn = std::function<Complex(Complex)>;

// Closed rectangular contour through x_l +- i*v0, x_r +- i*v0, positively
// oriented, discretized with composite Gauss-Legendre nodes per side.
//
// `nodes`/`weights` cover the full contour in traversal order (bottom edge
// left-to-right, right side up, top edge right-to-left, left side down), with
// complex dz-weights.  `upper_nodes`/`upper_weights` cover only the upper
// half-path (right side 0..v0, top edge, left side v0..0) for integrands with
// conjugate symmetry; both arrays keep adjacent nodes adjacent so solver
// sweeps can warm-start along them.
struct RectContour {
  double x_l = 0.0;
  double x_r = 0.0;
  double v0 = 0.0;
  double eps = 0.0;  // margin used to offset from the support bracket
  int nodes_per_side = 0;

  std::vector<Complex> nodes;
  std::vector<Complex> weights;
  std::vector<Complex> upper_nodes;
  std::vector<Complex> upper_weights;
};

// Builds the contour around the support bracket of (params, spectrum): the
// right side sits at bracket_right + eps; the left side at bracket_left - eps,
// or at -eps when the left bracket edge is 0.  nodes_per_side counts nodes on
// each of the four full sides.
RectContour build_contour(const ModelParams& params,
                          const PopulationSpectrum& spectrum, double eps,
                          double v0, int nodes_per_side);

// Same geometry, different node count (used by node-doubling loops).
RectContour rebuild_with_nodes(const RectContour& contour, int nodes_per_side);

// Full closed-contour quadrature: sum of w_k * g(z_k).
Complex integrate(const RectContour& contour, const ComplexFn& g);

// Upper half-path quadrature over C+ only.
Complex integrate_upper(const RectContour& contour, const ComplexFn& g);

}  // namespace lssclt

#endif  // LSSCLT_CONTOUR_HPP_
