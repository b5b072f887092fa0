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

#include "lssclt/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lssclt/errors.hpp"

namespace lssclt {

namespace {
constexpr double kZeroClamp = 1e-14;
constexpr double kWeightTol = 1e-12;
}  // namespace

double PopulationSpectrum::min_eigenvalue() const {
  if (values.empty()) throw InvalidArgumentError("empty spectrum");
  return *std::min_element(values.begin(), values.end());
}

double PopulationSpectrum::max_eigenvalue() const {
  if (values.empty()) throw InvalidArgumentError("empty spectrum");
  return *std::max_element(values.begin(), values.end());
}

double PopulationSpectrum::moment(int k) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += weights[i] * std::pow(values[i], k);
  }
  return acc;
}

PopulationSpectrum PopulationSpectrum::identity() {
  return PopulationSpectrum{{1.0}, {1.0}, 1.0};
}

PopulationSpectrum PopulationSpectrum::point_mass(double t0) {
  PopulationSpectrum s{{t0}, {1.0}, std::max(1.0, t0)};
  return validate_spectrum(std::move(s));
}

PopulationSpectrum PopulationSpectrum::two_point(double t1, double t2) {
  PopulationSpectrum s{{t1, t2}, {0.5, 0.5}, std::max(1.0, std::max(t1, t2))};
  return validate_spectrum(std::move(s));
}

PopulationSpectrum PopulationSpectrum::zero() {
  return PopulationSpectrum{{0.0}, {1.0}, 1.0};
}

PopulationSpectrum validate_spectrum(PopulationSpectrum spectrum) {
  if (spectrum.values.empty()) {
    throw InvalidArgumentError("spectrum must have at least one atom");
  }
  if (spectrum.weights.empty()) {
    spectrum.weights.assign(spectrum.values.size(),
                            1.0 / static_cast<double>(spectrum.values.size()));
  }
  if (spectrum.weights.size() != spectrum.values.size()) {
    throw InvalidArgumentError("spectrum values/weights length mismatch");
  }
  for (double& t : spectrum.values) {
    if (!std::isfinite(t) || t < 0.0) {
      throw ValidationError("population eigenvalues must be nonnegative");
    }
    if (t < kZeroClamp) t = 0.0;  // avoid spurious 1/(1+ts) blowups
  }
  double total = 0.0;
  for (double w : spectrum.weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("spectrum weights must be nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTol) {
    throw ValidationError("spectrum weights must sum to 1 within 1e-12");
  }
  for (double& w : spectrum.weights) w /= total;

  // Sort atoms and merge duplicates so downstream sums are canonical.
  std::vector<std::size_t> order(spectrum.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spectrum.values[a] < spectrum.values[b];
  });
  std::vector<double> values;
  std::vector<double> weights;
  for (std::size_t idx : order) {
    if (!values.empty() && spectrum.values[idx] == values.back()) {
      weights.back() += spectrum.weights[idx];
    } else {
      values.push_back(spectrum.values[idx]);
      weights.push_back(spectrum.weights[idx]);
    }
  }
  spectrum.values = std::move(values);
  spectrum.weights = std::move(weights);

  if (spectrum.norm_bound <= 0.0) {
    throw ValidationError("norm_bound must be positive");
  }
  if (spectrum.max_eigenvalue() > spectrum.norm_bound * (1.0 + 1e-12)) {
    throw ValidationError("max population eigenvalue exceeds norm_bound");
  }
  return spectrum;
}

PopulationSpectrum load_spectrum(const std::string& path,
                                 bool rescale_to_norm_bound) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spectrum file: " + path);
  PopulationSpectrum s;
  bool any_weight = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    double v;
    if (!(ss >> v)) continue;  // blank or comment-only line
    double w;
    if (ss >> w) {
      any_weight = true;
      s.weights.push_back(w);
    } else if (any_weight) {
      throw InvalidArgumentError("spectrum file mixes weighted and unweighted "
                                 "lines (line " + std::to_string(lineno) + ")");
    }
    std::string rest;
    if (ss >> rest) {
      throw InvalidArgumentError("trailing tokens in spectrum file (line " +
                                 std::to_string(lineno) + ")");
    }
    s.values.push_back(v);
  }
  if (s.values.empty()) {
    throw InvalidArgumentError("spectrum file has no eigenvalues: " + path);
  }
  if (any_weight && s.weights.size() != s.values.size()) {
    throw InvalidArgumentError("spectrum file mixes weighted and unweighted lines");
  }
  if (any_weight) {
    double total = std::accumulate(s.weights.begin(), s.weights.end(), 0.0);
    if (total <= 0.0) throw ValidationError("spectrum weights must sum > 0");
    for (double& w : s.weights) w /= total;
  }
  const double maxv = *std::max_element(s.values.begin(), s.values.end());
  if (rescale_to_norm_bound && maxv > 0.0) {
    for (double& v : s.values) v /= maxv;
    s.norm_bound = 1.0;
  } else {
    s.norm_bound = std::max(1.0, maxv);
  }
  return validate_spectrum(std::move(s));
}

PopulationSpectrum spectrum_from_spec(const std::string& spec) {
  if (spec == "identity") return PopulationSpectrum::identity();
  if (spec.rfind("point:", 0) == 0) {
    return PopulationSpectrum::point_mass(std::stod(spec.substr(6)));
  }
  if (spec.rfind("two_point:", 0) == 0) {
    const std::string args = spec.substr(10);
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgumentError("two_point spectrum needs two atoms: " + spec);
    }
    return PopulationSpectrum::two_point(std::stod(args.substr(0, comma)),
                                         std::stod(args.substr(comma + 1)));
  }
  if (spec.rfind("file:", 0) == 0) return load_spectrum(spec.substr(5));
  return load_spectrum(spec);
}

std::vector<double> expand_to_dimension(const PopulationSpectrum& spectrum,
                                        int p) {
  if (p < 1) throw InvalidArgumentError("dimension must be positive");
  std::vector<double> diag;
  diag.reserve(p);
  int assigned = 0;
  for (std::size_t k = 0; k < spectrum.values.size(); ++k) {
    const double exact = spectrum.weights[k] * p;
    const int count = static_cast<int>(std::lround(exact));
    if (std::abs(exact - count) > 1e-9) {
      throw ValidationError("spectrum masses are not realizable at dimension " +
                            std::to_string(p));
    }
    for (int i = 0; i < count; ++i) diag.push_back(spectrum.values[k]);
    assigned += count;
  }
  if (assigned != p) {
    throw ValidationError("spectrum masses do not fill dimension " +
                          std::to_string(p));
  }
  return diag;
}

ModelParams make_model_params(int p, int n, EntryCase entry_case,
                              double beta_x) {
  if (p < 1 || n < 1) {
    throw ValidationError("dimensions must be positive");
  }
  if (p >= n) {
    throw ValidationError(
        "model requires p < n so that the aspect ratio y_n = p/n lies in (0,1)");
  }
  ModelParams mp;
  mp.p = p;
  mp.n = n;
  mp.y_n = static_cast<double>(p) / static_cast<double>(n);
  mp.entry_case = entry_case;
  mp.alpha_x = (entry_case == EntryCase::kReal) ? 1.0 : 0.0;
  // E|x|^4 >= (E|x|^2)^2 = 1 forces beta_x >= -1 - alpha_x.
  if (beta_x < -1.0 - mp.alpha_x - 1e-12) {
    throw ValidationError("beta_x violates the fourth-moment lower bound");
  }
  mp.beta_x = beta_x;
  return mp;
}

}  // namespace lssclt
