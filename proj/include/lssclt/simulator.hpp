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

#ifndef LSSCLT_SIMULATOR_HPP_
#define LSSCLT_SIMULATOR_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lssclt/contour.hpp"
#include "lssclt/spectrum.hpp"

namespace lssclt {

enum class EntryLaw { kRealGaussian, kComplexGaussian, kRademacher, kStudentT };

EntryLaw entry_law_from_string(const std::string& name);
std::string to_string(EntryLaw law);

// Entry-case and nominal fourth-cumulant parameter of each law (before any
// truncation).  Student-t needs nu > 4 for a finite fourth moment.
EntryCase law_entry_case(EntryLaw law);
double law_nominal_beta(EntryLaw law, double nu);

// Slowly decaying truncation schedule; the per-entry threshold is
// eta_n(n) * n^{1/4}.
double eta_n(int n);

struct ExperimentConfig {
  int p = 0;
  int n = 0;
  std::string spectrum_spec = "identity";
  EntryLaw entry_law = EntryLaw::kRealGaussian;
  double student_nu = 12.0;  // only read for kStudentT
  bool truncate = true;
  std::string f_name = "square";
  // When set, the statistic sums the degree-m polynomial approximant of f
  // instead of f itself (and is centered against the approximant's integral).
  std::optional<int> bernstein_m;
  double upsilon = 0.1;  // node margin of that approximant's fit window
  int replicates = 100;
  std::uint64_t base_seed = 1;
  double contour_eps = 0.2;
  double contour_v0 = 0.5;
  int nodes_per_side = 64;
  int threads = 1;

  bool operator==(const ExperimentConfig&) const = default;
};

struct LSSResult {
  int replicate_id = 0;
  std::uint64_t seed_used = 0;
  double lss_raw = 0.0;       // sum of f over the eigenvalues
  double lss_centered = 0.0;  // lss_raw - p * integral of f against the limit
  bool xi_event = false;      // any eigenvalue escaped the confinement band
  double max_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;
};

// Moments of a scalar entry law after truncation at |x| < threshold and
// exact re-standardization.  All supported laws are symmetric, so the
// truncated mean is zero; variance refers to the truncated-but-unnormalized
// law.  beta_eff/alpha_eff are the cumulant parameters of the normalized law
// that the CLT actually sees at finite n.
struct TruncatedMoments {
  double threshold = 0.0;
  double mass = 1.0;      // P(|x| < threshold)
  double variance = 1.0;  // E x^2 restricted to |x| < threshold
  double fourth = 3.0;    // E |x|^4 restricted, same normalization
  double alpha_eff = 1.0;
  double beta_eff = 0.0;
};

// Quadrature (or closed forms where available) of the truncated moments;
// results are cached per (law, nu, threshold).
TruncatedMoments truncated_moments(EntryLaw law, double nu, double threshold);

using EntryMatrix = std::variant<Eigen::MatrixXd, Eigen::MatrixXcd>;

// p x n matrix of i.i.d. standardized draws.  Entry order is fixed
// column-major so a (law, seed) pair is bitwise reproducible.
EntryMatrix draw_entries(int p, int n, EntryLaw law, double nu,
                         std::uint64_t seed);

// x -> x * 1{|x| < c}, then exact re-standardization by the truncated-law
// moments.  Throws DegenerateTruncationError when the truncated variance is
// below 1e-6.
EntryMatrix truncate_normalize(EntryMatrix entries,
                               const TruncatedMoments& moments);

// Eigenvalues of (1/n) T^{1/2} X X^* T^{1/2}, descending.  Computed from the
// singular values of n^{-1/2} diag(sqrt t) X; the p x p product matrix is
// never formed.
std::vector<double> eigenvalues_bn(const EntryMatrix& entries,
                                   const PopulationSpectrum& spectrum);

struct ExperimentMetadata {
  double y_n = 0.0;
  double centering_per_dim = 0.0;  // integral of f against the limit law
  double xi_lo = 0.0;              // confinement band checked per replicate
  double xi_hi = 0.0;
  bool truncated = false;
  TruncatedMoments moments;  // meaningful when truncated
  double effective_beta = 0.0;
  double effective_alpha = 1.0;
};

struct ExperimentOutput {
  std::vector<LSSResult> results;
  ExperimentMetadata meta;
};

// Full pipeline: draw -> (truncate) -> eigenvalues -> statistic -> center.
// Replicate k uses seed base_seed + k; the centering constant is computed
// once.  Results are ordered by replicate_id regardless of thread count.
ExperimentOutput run_experiment(const ExperimentConfig& config);

// Dispersion diagnostic p*[s_n(z) - s_n0(z)] between the empirical and
// deterministic transforms on a grid of off-axis points.
std::vector<Complex> stieltjes_diagnostic(const std::vector<double>& eigenvalues,
                                          const std::vector<Complex>& z_grid,
                                          const ModelParams& params,
                                          const PopulationSpectrum& spectrum);

}  // namespace lssclt

#endif  // LSSCLT_SIMULATOR_HPP_
