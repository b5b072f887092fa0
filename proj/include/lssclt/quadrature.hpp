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

#ifndef LSSCLT_QUADRATURE_HPP_
#define LSSCLT_QUADRATURE_HPP_

#include <functional>
#include <vector>

namespace lssclt {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Returns the q-point rule, computed by Newton iteration on the Legendre
// recurrence and cached for reuse.  q >= 1.
const GaussLegendreRule& gauss_legendre(int q);

// Composite rule on [a, b] with n_nodes total nodes: panels of order 16 when
// n_nodes is a multiple of 16, otherwise one panel of order n_nodes.  Nodes
// are appended in increasing order from a to b (or decreasing when b < a,
// with correspondingly signed weights).
void composite_gauss_legendre(double a, double b, int n_nodes,
                              std::vector<double>* nodes,
                              std::vector<double>* weights);

// Adaptive Simpson on [a, b] to absolute tolerance tol.  Used for the
// truncated-moment integrals of the entry laws.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace lssclt

#endif  // LSSCLT_QUADRATURE_HPP_
