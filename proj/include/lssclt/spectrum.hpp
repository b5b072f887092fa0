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

#ifndef LSSCLT_SPECTRUM_HPP_
#define LSSCLT_SPECTRUM_HPP_

#include <string>
#include <vector>

namespace lssclt {

// Discrete spectral law H_p of the population covariance T: atoms t_k with
// probability masses w_k.  T itself is always used through this measure
// (diagonal convention); a general Hermitian T is eigendecomposed on
// ingestion.  All integrals over dH_p are exact finite sums.
struct PopulationSpectrum {
  std::vector<double> values;   // atom locations, nonnegative; < 1e-14 clamps to 0
  std::vector<double> weights;  // probability masses, sum to 1 within 1e-12
  double norm_bound = 1.0;      // recorded bound on the spectral norm

  double min_eigenvalue() const;
  double max_eigenvalue() const;
  // Integral of t^k dH_p (k >= 0).
  double moment(int k) const;

  static PopulationSpectrum identity();               // H_p = point mass at 1
  static PopulationSpectrum point_mass(double t0);    // H_p = point mass at t0
  static PopulationSpectrum two_point(double t1, double t2);  // equal weights
  static PopulationSpectrum zero();                   // T = 0
};

// Validates invariants (nonnegative atoms, weights sum to 1, norm bound) and
// normalizes: clamps tiny atoms to 0, merges duplicates.  Throws
// InvalidArgumentError / ValidationError.
PopulationSpectrum validate_spectrum(PopulationSpectrum spectrum);

// Loads a spectrum from a text file: one nonnegative real per line, optional
// second column weight; blank lines and '#' comments ignored.  Uniform
// weights when none are given.  rescale_to_norm_bound divides all atoms by
// the max so the recorded bound is 1.
PopulationSpectrum load_spectrum(const std::string& path,
                                 bool rescale_to_norm_bound = false);

// Resolves a config-file spectrum spec: "identity", "two_point:a,b", or
// "file:PATH" (a bare path is also accepted as a file).
PopulationSpectrum spectrum_from_spec(const std::string& spec);

// Length-p diagonal of T: atom t_k repeated w_k * p times.  Throws
// ValidationError when the masses are not realizable at dimension p.
std::vector<double> expand_to_dimension(const PopulationSpectrum& spectrum,
                                        int p);

// Entry-law symmetry class of the matrix model.
enum class EntryCase { kReal, kComplexAlphaZero };

// Dimensions and entry-law moment parameters of the sample covariance model
// B_n = (1/n) T^{1/2} X X* T^{1/2}.
struct ModelParams {
  int p = 0;                               // dimension
  int n = 0;                               // sample size
  double y_n = 0.0;                        // aspect ratio p/n, in (0,1)
  EntryCase entry_case = EntryCase::kReal;
  double beta_x = 0.0;   // fourth-cumulant parameter E|x|^4 - |Ex^2|^2 - 2
  double alpha_x = 1.0;  // |Ex^2|^2: 1 in the real case, 0 in the complex case
};

// Validates 0 < y_n < 1 and the moment inequality beta_x >= -1 - alpha_x
// (E|x|^4 >= (E|x|^2)^2 = 1 for standardized entries).  alpha_x is forced by
// the entry case.
ModelParams make_model_params(int p, int n, EntryCase entry_case,
                              double beta_x);

}  // namespace lssclt

#endif  // LSSCLT_SPECTRUM_HPP_
