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

#include "lssclt/mp_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lssclt/errors.hpp"
#include "lssclt/log.hpp"

namespace lssclt {

namespace {

// One application of the fixed-point map s -> -1/(z - y * I(s)) with
// I(s) = Integral t/(1+t*s) dH_p(t).
Complex fp_map(Complex z, Complex s, double y_n,
               const PopulationSpectrum& spectrum) {
  Complex integral{0.0, 0.0};
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    const double t = spectrum.values[i];
    if (t == 0.0) continue;
    integral += spectrum.weights[i] * t / (1.0 + t * s);
  }
  return -1.0 / (z - y_n * integral);
}

// Near-edge boundary solves approach a neutrally stable fixed point, so the
// density/CDF builders get a larger iteration budget than the public default.
constexpr int kBoundaryMaxIter = 200000;

// Converge a little past the acceptance residual.  A residual of exactly tol
// still leaves the iterate up to tol/(1-contraction) away from the fixed
// point, which would let two independently started solves disagree by more
// than 2*tol; the safety margin restores that guarantee.
constexpr double kResidualSafety = 0.05;

}  // namespace

StieltjesValue solve_underline_s(Complex z, const ModelParams& params,
                                 const PopulationSpectrum& spectrum,
                                 std::optional<Complex> warm_start,
                                 const SolveOptions& options) {
  if (z == Complex(0.0, 0.0)) {
    throw InvalidArgumentError("solve_underline_s: z must be nonzero");
  }
  if (z.imag() == 0.0) {
    const auto [left, right] = support_bounds(params, spectrum);
    const double x = z.real();
    if (x >= left && x <= right) {
      throw InvalidArgumentError(
          "solve_underline_s: real z must lie strictly outside the support");
    }
  }

  Complex s = warm_start.value_or(-1.0 / z);
  // A warm start from the wrong half-plane would fight the reflection rule.
  if (z.imag() != 0.0 && s.imag() * z.imag() < 0.0) {
    s = Complex(s.real(), -s.imag());
  }

  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    const Complex mapped = fp_map(z, s, params.y_n, spectrum);
    if (!std::isfinite(mapped.real()) || !std::isfinite(mapped.imag())) {
      throw NonConvergenceError("solve_underline_s: iteration left the domain",
                                residual, iter);
    }
    residual = std::abs(mapped - s);
    if (residual <= kResidualSafety * options.tol) {
      return StieltjesValue{z, s, residual, iter};
    }
    if (iter == options.max_iter && residual <= options.tol) {
      return StieltjesValue{z, s, residual, iter};  // met tol, not the margin
    }
    s = (1.0 - options.damping) * s + options.damping * mapped;
    if (z.imag() != 0.0 && s.imag() * z.imag() < 0.0) {
      s = Complex(s.real(), -s.imag());  // reflect back to the correct branch
    }
  }
  throw NonConvergenceError("solve_underline_s: exceeded max_iter", residual,
                            options.max_iter);
}

std::vector<StieltjesValue> solve_contour_nodes(
    const std::vector<Complex>& zs, const ModelParams& params,
    const PopulationSpectrum& spectrum, const SolveOptions& options,
    bool warm_start) {
  std::vector<StieltjesValue> out;
  out.reserve(zs.size());
  std::optional<Complex> prev;
  for (const Complex& z : zs) {
    StieltjesValue v = solve_underline_s(z, params, spectrum, prev, options);
    if (warm_start) prev = v.s_underline;
    out.push_back(v);
  }
  return out;
}

Complex convert_to_s(Complex z, Complex s_underline,
                     const ModelParams& params) {
  if (z == Complex(0.0, 0.0)) {
    throw InvalidArgumentError("convert_to_s: z must be nonzero");
  }
  return (s_underline + (1.0 - params.y_n) / z) / params.y_n;
}

std::pair<double, double> support_bounds(const ModelParams& params,
                                         const PopulationSpectrum& spectrum) {
  const double sq = std::sqrt(params.y_n);
  const double left =
      (params.y_n < 1.0) ? spectrum.min_eigenvalue() * (1.0 - sq) * (1.0 - sq)
                         : 0.0;
  const double right = spectrum.max_eigenvalue() * (1.0 + sq) * (1.0 + sq);
  return {left, right};
}

namespace {

// Richardson extrapolation of g(eta) -> g(0) for a ladder of halving etas,
// assuming an expansion g(eta) = g0 + c1*eta + c2*eta^2 + ...
double richardson_ladder(const std::vector<double>& g) {
  std::vector<double> row = g;
  double factor = 2.0;
  while (row.size() > 1) {
    std::vector<double> next(row.size() - 1);
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      next[i] = (factor * row[i + 1] - row[i]) / (factor - 1.0);
    }
    row = std::move(next);
    factor *= 2.0;
  }
  return row[0];
}

double density_impl(double x, const ModelParams& params,
                    const PopulationSpectrum& spectrum,
                    const std::vector<double>& eta_ladder,
                    std::optional<Complex>* carry) {
  SolveOptions opts;
  opts.max_iter = kBoundaryMaxIter;
  std::vector<double> g;
  g.reserve(eta_ladder.size());
  std::optional<Complex> warm = carry ? *carry : std::optional<Complex>{};
  for (double eta : eta_ladder) {
    const Complex z(x, eta);
    const StieltjesValue v = solve_underline_s(z, params, spectrum, warm, opts);
    warm = v.s_underline;
    g.push_back(convert_to_s(z, v.s_underline, params).imag() / M_PI);
  }
  if (carry) *carry = warm;
  const double value = richardson_ladder(g);
  if (value < -1e-8) {
    log_debug("density clamped a negative value at x=" + std::to_string(x));
  }
  return std::max(value, 0.0);
}

}  // namespace

double density(double x, const ModelParams& params,
               const PopulationSpectrum& spectrum,
               const std::vector<double>& eta_ladder) {
  if (eta_ladder.empty()) {
    throw InvalidArgumentError("density: eta_ladder must be nonempty");
  }
  return density_impl(x, params, spectrum, eta_ladder, nullptr);
}

double centering_integral(const ComplexFn& f, const ModelParams& params,
                          const PopulationSpectrum& spectrum,
                          const RectContour& contour) {
  // -(1/2*pi*i) * closed integral of f(z) s(z) dz.  The integrand is
  // conjugate-symmetric, so the closed contour reduces to 2i * Im of the
  // upper half-path.
  constexpr int kMaxNodes = 4096;
  double prev = 0.0;
  bool have_prev = false;
  for (int nps = contour.nodes_per_side; nps <= kMaxNodes; nps *= 2) {
    const RectContour c =
        (nps == contour.nodes_per_side) ? contour : rebuild_with_nodes(contour, nps);
    const std::vector<StieltjesValue> sv =
        solve_contour_nodes(c.upper_nodes, params, spectrum);
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < c.upper_nodes.size(); ++k) {
      const Complex z = c.upper_nodes[k];
      acc += c.upper_weights[k] * f(z) * convert_to_s(z, sv[k].s_underline, params);
    }
    const double value = -acc.imag() / M_PI;
    if (have_prev && std::abs(value - prev) <= 1e-8 * (1.0 + std::abs(value))) {
      return value;
    }
    prev = value;
    have_prev = true;
  }
  throw QuadratureNotConvergedError(
      "centering_integral: node doubling did not stabilize");
}

double centering_integral_density(const std::function<double(double)>& f,
                                  const ModelParams& params,
                                  const PopulationSpectrum& spectrum,
                                  int grid_points) {
  const LsdGrid grid = build_lsd_grid(params, spectrum, grid_points);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < grid.x.size(); ++i) {
    const double h = grid.x[i + 1] - grid.x[i];
    acc += 0.5 * h *
           (f(grid.x[i]) * grid.pdf[i] + f(grid.x[i + 1]) * grid.pdf[i + 1]);
  }
  return acc;
}

double LsdGrid::cdf_at(double xq) const {
  if (x.empty()) throw InvalidArgumentError("empty LSD grid");
  if (xq <= x.front()) return 0.0;
  if (xq >= x.back()) return 1.0;
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  const std::size_t hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  const double t = (xq - x[lo]) / (x[hi] - x[lo]);
  return cdf[lo] + t * (cdf[hi] - cdf[lo]);
}

LsdGrid build_lsd_grid(const ModelParams& params,
                       const PopulationSpectrum& spectrum, int grid_points,
                       const std::vector<double>& eta_ladder) {
  if (grid_points < 2) {
    throw InvalidArgumentError("build_lsd_grid: need at least 2 grid points");
  }
  const auto [left, right] = support_bounds(params, spectrum);
  const double span = std::max(right - left, 1e-6);
  const double lo = left - 0.02 * span;
  const double hi = right + 0.02 * span;

  LsdGrid grid;
  grid.x.resize(grid_points);
  grid.pdf.resize(grid_points);
  grid.cdf.resize(grid_points);
  std::optional<Complex> carry;
  for (int i = 0; i < grid_points; ++i) {
    const double x = lo + (hi - lo) * i / (grid_points - 1);
    grid.x[i] = x;
    grid.pdf[i] = density_impl(x, params, spectrum, eta_ladder, &carry);
  }
  double acc = 0.0;
  grid.cdf[0] = 0.0;
  for (int i = 1; i < grid_points; ++i) {
    acc += 0.5 * (grid.x[i] - grid.x[i - 1]) * (grid.pdf[i] + grid.pdf[i - 1]);
    grid.cdf[i] = std::min(1.0, std::max(0.0, acc));
  }
  return grid;
}

}  // namespace lssclt
