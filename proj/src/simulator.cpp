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

#include "lssclt/simulator.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <tuple>
#include <utility>

#include "lssclt/bernstein.hpp"
#include "lssclt/errors.hpp"
#include "lssclt/log.hpp"
#include "lssclt/mp_core.hpp"
#include "lssclt/quadrature.hpp"
#include "lssclt/rng.hpp"

namespace lssclt {

namespace {

constexpr double kDegenerateVarianceTol = 1e-6;
// Below this dimension the one-sided Jacobi SVD is both faster and more
// accurate than divide-and-conquer.
constexpr int kJacobiSvdMaxDim = 16;

double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

// P(|N(0,1)| < c) and the truncated second/fourth moments, in closed form.
TruncatedMoments real_gaussian_truncated(double c) {
  TruncatedMoments tm;
  tm.threshold = c;
  const double mass = std::erf(c / std::sqrt(2.0));
  const double phi_c = normal_pdf(c);
  tm.mass = mass;
  tm.variance = mass - 2.0 * c * phi_c;
  tm.fourth = 3.0 * mass - 2.0 * phi_c * (c * c * c + 3.0 * c);
  tm.alpha_eff = 1.0;
  return tm;
}

// For a standard complex Gaussian (E|x|^2 = 1) the squared modulus is
// Exp(1), so the truncated moments are incomplete-gamma values in closed
// form.  Rotation symmetry keeps E x^2 = 0 after truncation.
TruncatedMoments complex_gaussian_truncated(double c) {
  TruncatedMoments tm;
  tm.threshold = c;
  const double c2 = c * c;
  const double e = std::exp(-c2);
  tm.mass = 1.0 - e;
  tm.variance = 1.0 - e * (1.0 + c2);
  tm.fourth = 2.0 - e * (c2 * c2 + 2.0 * c2 + 2.0);
  tm.alpha_eff = 0.0;
  return tm;
}

TruncatedMoments rademacher_truncated(double c) {
  TruncatedMoments tm;
  tm.threshold = c;
  if (c > 1.0) {
    tm.mass = 1.0;
    tm.variance = 1.0;
    tm.fourth = 1.0;
  } else {
    tm.mass = 0.0;
    tm.variance = 0.0;
    tm.fourth = 0.0;
  }
  tm.alpha_eff = 1.0;
  return tm;
}

// Unit-variance Student-t density: x = sqrt((nu-2)/nu) * T_nu.
TruncatedMoments student_truncated(double nu, double c) {
  const double scale = std::sqrt((nu - 2.0) / nu);
  const double log_norm = std::lgamma(0.5 * (nu + 1.0)) -
                          std::lgamma(0.5 * nu) -
                          0.5 * std::log(nu * M_PI);
  const double norm = std::exp(log_norm) / scale;
  auto pdf = [=](double x) {
    const double t = x / scale;
    return norm * std::pow(1.0 + t * t / nu, -0.5 * (nu + 1.0));
  };
  TruncatedMoments tm;
  tm.threshold = c;
  const double tol = 1e-12;
  tm.mass = 2.0 * adaptive_simpson(pdf, 0.0, c, tol);
  tm.variance =
      2.0 * adaptive_simpson([&](double x) { return x * x * pdf(x); }, 0.0, c,
                             tol);
  tm.fourth =
      2.0 * adaptive_simpson([&](double x) { return x * x * x * x * pdf(x); },
                             0.0, c, tol);
  tm.alpha_eff = 1.0;
  return tm;
}

struct MomentsKey {
  int law;
  double nu;
  double threshold;
  bool operator<(const MomentsKey& o) const {
    return std::tie(law, nu, threshold) < std::tie(o.law, o.nu, o.threshold);
  }
};

}  // namespace

EntryLaw entry_law_from_string(const std::string& name) {
  if (name == "real_gaussian") return EntryLaw::kRealGaussian;
  if (name == "complex_gaussian") return EntryLaw::kComplexGaussian;
  if (name == "rademacher") return EntryLaw::kRademacher;
  if (name == "student_t") return EntryLaw::kStudentT;
  throw InvalidArgumentError("unknown entry law '" + name + "'");
}

std::string to_string(EntryLaw law) {
  switch (law) {
    case EntryLaw::kRealGaussian: return "real_gaussian";
    case EntryLaw::kComplexGaussian: return "complex_gaussian";
    case EntryLaw::kRademacher: return "rademacher";
    case EntryLaw::kStudentT: return "student_t";
  }
  throw InvalidArgumentError("unknown entry law enum value");
}

EntryCase law_entry_case(EntryLaw law) {
  return law == EntryLaw::kComplexGaussian ? EntryCase::kComplexAlphaZero
                                           : EntryCase::kReal;
}

double law_nominal_beta(EntryLaw law, double nu) {
  switch (law) {
    case EntryLaw::kRealGaussian: return 0.0;
    case EntryLaw::kComplexGaussian: return 0.0;
    case EntryLaw::kRademacher: return -2.0;
    case EntryLaw::kStudentT:
      if (nu <= 4.0) {
        throw InvalidArgumentError(
            "student_t needs nu > 4 for a finite fourth moment");
      }
      // standardized E x^4 = 3(nu-2)/(nu-4), so the excess is 6/(nu-4)
      return 6.0 / (nu - 4.0);
  }
  throw InvalidArgumentError("unknown entry law enum value");
}

double eta_n(int n) {
  if (n < 2) throw InvalidArgumentError("eta_n needs n >= 2");
  return std::max(0.5, 2.0 / std::log(static_cast<double>(n)));
}

TruncatedMoments truncated_moments(EntryLaw law, double nu, double threshold) {
  if (!(threshold > 0.0)) {
    throw InvalidArgumentError("truncation threshold must be positive");
  }
  static std::map<MomentsKey, TruncatedMoments> cache;
  static std::mutex cache_mutex;
  const MomentsKey key{static_cast<int>(law), nu, threshold};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  TruncatedMoments tm;
  switch (law) {
    case EntryLaw::kRealGaussian:
      tm = real_gaussian_truncated(threshold);
      break;
    case EntryLaw::kComplexGaussian:
      tm = complex_gaussian_truncated(threshold);
      break;
    case EntryLaw::kRademacher:
      tm = rademacher_truncated(threshold);
      break;
    case EntryLaw::kStudentT:
      if (nu <= 2.0) {
        throw InvalidArgumentError("student_t needs nu > 2 to standardize");
      }
      tm = student_truncated(nu, threshold);
      break;
  }
  if (tm.variance >= kDegenerateVarianceTol) {
    const double v2 = tm.variance * tm.variance;
    tm.beta_eff = tm.fourth / v2 - tm.alpha_eff - 2.0;
  } else {
    tm.beta_eff = 0.0;  // normalization undefined; rejected downstream
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, tm);
  return tm;
}

EntryMatrix draw_entries(int p, int n, EntryLaw law, double nu,
                         std::uint64_t seed) {
  if (p < 1 || n < 1) throw InvalidArgumentError("draw_entries needs p, n >= 1");
  Rng rng(seed);
  if (law == EntryLaw::kComplexGaussian) {
    Eigen::MatrixXcd m(p, n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Complex* data = m.data();
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(p) * n;
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      data[i] = Complex(re * inv_sqrt2, im * inv_sqrt2);
    }
    return m;
  }
  Eigen::MatrixXd m(p, n);
  double* data = m.data();
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(p) * n;
  switch (law) {
    case EntryLaw::kRealGaussian:
      for (std::ptrdiff_t i = 0; i < count; ++i) data[i] = rng.normal();
      break;
    case EntryLaw::kRademacher:
      for (std::ptrdiff_t i = 0; i < count; ++i) data[i] = rng.rademacher();
      break;
    case EntryLaw::kStudentT: {
      if (nu <= 2.0) {
        throw InvalidArgumentError("student_t needs nu > 2 to standardize");
      }
      const double scale = std::sqrt((nu - 2.0) / nu);
      for (std::ptrdiff_t i = 0; i < count; ++i) {
        data[i] = scale * rng.student_t(nu);
      }
      break;
    }
    case EntryLaw::kComplexGaussian:
      break;  // handled above
  }
  return m;
}

EntryMatrix truncate_normalize(EntryMatrix entries,
                               const TruncatedMoments& moments) {
  if (moments.variance < kDegenerateVarianceTol) {
    throw DegenerateTruncationError(
        "truncated variance below 1e-6; threshold removes all mass");
  }
  const double c = moments.threshold;
  const double inv_sd = 1.0 / std::sqrt(moments.variance);
  if (auto* real = std::get_if<Eigen::MatrixXd>(&entries)) {
    double* data = real->data();
    const std::ptrdiff_t count = real->size();
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      data[i] = (std::abs(data[i]) < c) ? data[i] * inv_sd : 0.0;
    }
  } else {
    auto& cm = std::get<Eigen::MatrixXcd>(entries);
    Complex* data = cm.data();
    const std::ptrdiff_t count = cm.size();
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      data[i] = (std::abs(data[i]) < c) ? data[i] * inv_sd : Complex(0.0, 0.0);
    }
  }
  return entries;
}

namespace {

template <typename Matrix>
std::vector<double> eigenvalues_from(const Matrix& entries,
                                     const PopulationSpectrum& spectrum) {
  const int p = static_cast<int>(entries.rows());
  const int n = static_cast<int>(entries.cols());
  if (p < 1 || n < 1) {
    throw InvalidArgumentError("eigenvalues_bn needs a nonempty matrix");
  }
  const std::vector<double> t = expand_to_dimension(spectrum, p);
  Matrix scaled = entries;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < p; ++i) {
    scaled.row(i) *= std::sqrt(t[static_cast<std::size_t>(i)]) * inv_sqrt_n;
  }
  Eigen::VectorXd sv;
  if (std::min(p, n) < kJacobiSvdMaxDim) {
    Eigen::JacobiSVD<Matrix> svd(scaled);
    if (svd.info() != Eigen::Success) {
      throw LinAlgError("SVD of the scaled data matrix failed to converge");
    }
    sv = svd.singularValues();
  } else {
    Eigen::BDCSVD<Matrix> svd(scaled);
    if (svd.info() != Eigen::Success) {
      throw LinAlgError("SVD of the scaled data matrix failed to converge");
    }
    sv = svd.singularValues();
  }
  std::vector<double> eig(static_cast<std::size_t>(p), 0.0);
  const int count = std::min<int>(p, static_cast<int>(sv.size()));
  for (int i = 0; i < count; ++i) {
    eig[static_cast<std::size_t>(i)] = sv[i] * sv[i];
  }
  std::sort(eig.begin(), eig.end(), std::greater<double>());
  return eig;
}

}  // namespace

std::vector<double> eigenvalues_bn(const EntryMatrix& entries,
                                   const PopulationSpectrum& spectrum) {
  if (const auto* real = std::get_if<Eigen::MatrixXd>(&entries)) {
    return eigenvalues_from(*real, spectrum);
  }
  return eigenvalues_from(std::get<Eigen::MatrixXcd>(entries), spectrum);
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  if (config.replicates < 1) {
    throw ValidationError("replicates must be >= 1");
  }
  if (config.threads < 1) throw ValidationError("threads must be >= 1");
  const EntryLaw law = config.entry_law;
  const double nu = config.student_nu;
  const double nominal_beta = law_nominal_beta(law, nu);
  const ModelParams params =
      make_model_params(config.p, config.n, law_entry_case(law), nominal_beta);
  const PopulationSpectrum spectrum = spectrum_from_spec(config.spectrum_spec);
  const RectContour contour =
      build_contour(params, spectrum, config.contour_eps, config.contour_v0,
                    config.nodes_per_side);

  const TestFunction f = test_function(config.f_name);
  std::function<double(double)> value_fn;
  double centering = 0.0;
  if (config.bernstein_m.has_value()) {
    const int m = *config.bernstein_m;
    // fit over the support bracket itself: the node margin (upsilon) is the
    // headroom for eigenvalue fluctuation past the edges
    const auto [support_lo, support_hi] = support_bounds(params, spectrum);
    auto approx = std::make_shared<BernsteinApproximant>(
        fit(f, support_lo, support_hi, config.upsilon, m));
    value_fn = [approx](double x) { return approx->eval(x); };
    centering = centering_integral(
        [approx](Complex z) { return approx->eval_complex(z); }, params,
        spectrum, contour);
  } else if (f.complex_eval) {
    value_fn = f.eval;
    centering = centering_integral(f.complex_eval, params, spectrum, contour);
  } else {
    value_fn = f.eval;
    centering = centering_integral_density(f.eval, params, spectrum);
  }

  ExperimentOutput out;
  out.meta.y_n = params.y_n;
  out.meta.centering_per_dim = centering;
  out.meta.xi_lo = contour.x_l + 0.5 * contour.eps;
  out.meta.xi_hi = contour.x_r - 0.5 * contour.eps;
  out.meta.truncated = config.truncate;
  if (config.truncate) {
    const double threshold =
        eta_n(config.n) * std::pow(static_cast<double>(config.n), 0.25);
    out.meta.moments = truncated_moments(law, nu, threshold);
    if (out.meta.moments.variance < kDegenerateVarianceTol) {
      throw DegenerateTruncationError(
          "truncated variance below 1e-6; threshold removes all mass");
    }
    out.meta.effective_beta = out.meta.moments.beta_eff;
    out.meta.effective_alpha = out.meta.moments.alpha_eff;
  } else {
    out.meta.effective_beta = nominal_beta;
    out.meta.effective_alpha = params.alpha_x;
  }

  const int R = config.replicates;
  out.results.resize(static_cast<std::size_t>(R));
  const double p_times_centering = static_cast<double>(config.p) * centering;

  auto run_one = [&](int k) {
    const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(k);
    EntryMatrix entries = draw_entries(config.p, config.n, law, nu, seed);
    if (config.truncate) {
      entries = truncate_normalize(std::move(entries), out.meta.moments);
    }
    const std::vector<double> eig = eigenvalues_bn(entries, spectrum);
    double raw = 0.0;
    bool xi = false;
    for (double lambda : eig) {
      raw += value_fn(lambda);
      if (lambda < out.meta.xi_lo || lambda > out.meta.xi_hi) xi = true;
    }
    LSSResult& r = out.results[static_cast<std::size_t>(k)];
    r.replicate_id = k;
    r.seed_used = seed;
    r.lss_raw = raw;
    r.lss_centered = raw - p_times_centering;
    r.xi_event = xi;
    r.max_eigenvalue = eig.front();
    r.min_eigenvalue = eig.back();
  };

  const int threads = std::min(config.threads, R);
  if (threads <= 1) {
    for (int k = 0; k < R; ++k) run_one(k);
  } else {
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&](int start) {
      for (int k = start; k < R; k += threads) {
        try {
          run_one(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  log_debug("run_experiment: " + std::to_string(R) + " replicates, centering " +
            std::to_string(centering));
  return out;
}

std::vector<Complex> stieltjes_diagnostic(
    const std::vector<double>& eigenvalues, const std::vector<Complex>& z_grid,
    const ModelParams& params, const PopulationSpectrum& spectrum) {
  if (z_grid.empty()) return {};
  if (eigenvalues.empty()) {
    throw InvalidArgumentError("stieltjes_diagnostic needs eigenvalues");
  }
  const double p = static_cast<double>(eigenvalues.size());
  std::vector<Complex> out;
  out.reserve(z_grid.size());
  for (const Complex& z : z_grid) {
    Complex emp(0.0, 0.0);
    for (double lambda : eigenvalues) emp += 1.0 / (lambda - z);
    emp /= p;
    const StieltjesValue sv = solve_underline_s(z, params, spectrum);
    const Complex s0 = convert_to_s(z, sv.s_underline, params);
    out.push_back(p * (emp - s0));
  }
  return out;
}

}  // namespace lssclt
