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

#include "lssclt/contour.hpp"

#include "lssclt/errors.hpp"
#include "lssclt/mp_core.hpp"
#include "lssclt/quadrature.hpp"

namespace lssclt {

namespace {

constexpr Complex kI{0.0, 1.0};

// Appends one straight segment's quadrature to (nodes, weights).  When
// `vertical`, the segment is {fixed + i*t : t from a to b} (dz = i dt);
// otherwise {t + i*fixed : t from a to b} (dz = dt).
void add_segment(double fixed, double a, double b, int n_nodes, bool vertical,
                 std::vector<Complex>* nodes, std::vector<Complex>* weights) {
  std::vector<double> t;
  std::vector<double> wt;
  composite_gauss_legendre(a, b, n_nodes, &t, &wt);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (vertical) {
      nodes->push_back(Complex(fixed, t[k]));
      weights->push_back(kI * wt[k]);
    } else {
      nodes->push_back(Complex(t[k], fixed));
      weights->push_back(Complex(wt[k], 0.0));
    }
  }
}

RectContour make_rect(double x_l, double x_r, double v0, double eps,
                      int nodes_per_side) {
  RectContour c;
  c.x_l = x_l;
  c.x_r = x_r;
  c.v0 = v0;
  c.eps = eps;
  c.nodes_per_side = nodes_per_side;

  // Full contour, positive orientation: bottom (left to right), right side
  // (up), top (right to left), left side (down).
  add_segment(-v0, x_l, x_r, nodes_per_side, false, &c.nodes, &c.weights);
  add_segment(x_r, -v0, v0, nodes_per_side, true, &c.nodes, &c.weights);
  add_segment(v0, x_r, x_l, nodes_per_side, false, &c.nodes, &c.weights);
  add_segment(x_l, v0, -v0, nodes_per_side, true, &c.nodes, &c.weights);

  // Upper half-path C+: right side 0..v0, top edge, left side v0..0.  Each
  // half-side carries half the nodes so the half-path work is half the full
  // contour's.
  const int half = std::max(1, nodes_per_side / 2);
  add_segment(x_r, 0.0, v0, half, true, &c.upper_nodes, &c.upper_weights);
  add_segment(v0, x_r, x_l, nodes_per_side, false, &c.upper_nodes,
              &c.upper_weights);
  add_segment(x_l, v0, 0.0, half, true, &c.upper_nodes, &c.upper_weights);
  return c;
}

}  // namespace

RectContour build_contour(const ModelParams& params,
                          const PopulationSpectrum& spectrum, double eps,
                          double v0, int nodes_per_side) {
  if (eps <= 0.0 || v0 <= 0.0) {
    throw InvalidArgumentError("contour requires eps > 0 and v0 > 0");
  }
  if (nodes_per_side < 1) {
    throw InvalidArgumentError("contour requires a positive node count");
  }
  const auto [left, right] = support_bounds(params, spectrum);
  // A zero left edge gets a fixed negative abscissa; otherwise back off by
  // eps (which may itself cross zero for thin spectra -- still admissible).
  const double x_l = (left <= 0.0) ? -eps : left - eps;
  const double x_r = right + eps;
  return make_rect(x_l, x_r, v0, eps, nodes_per_side);
}

RectContour rebuild_with_nodes(const RectContour& contour, int nodes_per_side) {
  if (nodes_per_side < 1) {
    throw InvalidArgumentError("contour requires a positive node count");
  }
  return make_rect(contour.x_l, contour.x_r, contour.v0, contour.eps,
                   nodes_per_side);
}

Complex integrate(const RectContour& contour, const ComplexFn& g) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < contour.nodes.size(); ++k) {
    acc += contour.weights[k] * g(contour.nodes[k]);
  }
  return acc;
}

Complex integrate_upper(const RectContour& contour, const ComplexFn& g) {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < contour.upper_nodes.size(); ++k) {
    acc += contour.upper_weights[k] * g(contour.upper_nodes[k]);
  }
  return acc;
}

}  // namespace lssclt
