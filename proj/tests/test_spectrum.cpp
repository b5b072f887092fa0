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

#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"
#include "lssclt/errors.hpp"
#include "lssclt/spectrum.hpp"

namespace lssclt {
namespace {

TEST_SUITE_BEGIN("spectrum");

TEST_CASE("factories build canonical spectra") {
  const auto id = PopulationSpectrum::identity();
  REQUIRE(id.values.size() == 1u);
  CHECK(id.values[0] == 1.0);
  CHECK(id.weights[0] == 1.0);
  CHECK(id.norm_bound == 1.0);

  const auto tp = PopulationSpectrum::two_point(0.5, 2.0);
  REQUIRE(tp.values.size() == 2u);
  CHECK(tp.values[0] == 0.5);
  CHECK(tp.values[1] == 2.0);
  CHECK(tp.norm_bound == 2.0);
  CHECK(tp.moment(1) == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(tp.moment(2) == doctest::Approx(2.125).epsilon(1e-15));

  const auto zero = PopulationSpectrum::zero();
  CHECK(zero.max_eigenvalue() == 0.0);
}

TEST_CASE("validation sorts atoms and merges duplicates") {
  PopulationSpectrum s{{2.0, 1.0, 2.0}, {0.25, 0.5, 0.25}, 2.0};
  const auto v = validate_spectrum(s);
  REQUIRE(v.values.size() == 2u);
  CHECK(v.values[0] == 1.0);
  CHECK(v.values[1] == 2.0);
  CHECK(v.weights[0] == doctest::Approx(0.5));
  CHECK(v.weights[1] == doctest::Approx(0.5));
}

TEST_CASE("validation fills equal weights when none are given") {
  PopulationSpectrum s{{1.0, 3.0}, {}, 3.0};
  const auto v = validate_spectrum(s);
  CHECK(v.weights[0] == doctest::Approx(0.5));
  CHECK(v.weights[1] == doctest::Approx(0.5));
}

TEST_CASE("validation rejects malformed spectra") {
  CHECK_THROWS_AS(validate_spectrum(PopulationSpectrum{{-0.5}, {1.0}, 1.0}),
                  ValidationError);
  CHECK_THROWS_AS(validate_spectrum(PopulationSpectrum{{1.0}, {0.9}, 1.0}),
                  ValidationError);
  CHECK_THROWS_AS(validate_spectrum(PopulationSpectrum{{2.0}, {1.0}, 1.0}),
                  ValidationError);
  CHECK_THROWS_AS(validate_spectrum(PopulationSpectrum{{}, {}, 1.0}),
                  InvalidArgumentError);
}

TEST_CASE("tiny negative eigenvalues are rejected, tiny positives clamped") {
  CHECK_THROWS_AS(validate_spectrum(PopulationSpectrum{{-1e-15}, {1.0}, 1.0}),
                  ValidationError);
  const auto v = validate_spectrum(PopulationSpectrum{{1e-15}, {1.0}, 1.0});
  CHECK(v.values[0] == 0.0);
}

TEST_CASE("spec strings map to spectra") {
  CHECK(spectrum_from_spec("identity").values[0] == 1.0);
  CHECK(spectrum_from_spec("point:0.5").values[0] == 0.5);
  const auto tp = spectrum_from_spec("two_point:0.5,2.0");
  CHECK(tp.values[1] == 2.0);
  CHECK_THROWS_AS(spectrum_from_spec("two_point:0.5"), InvalidArgumentError);
}

TEST_CASE("spectrum files parse with comments and optional weights") {
  const std::string path = "test_spectrum_tmp.txt";
  {
    std::ofstream out(path);
    out << "# two atoms, weighted 3:1\n";
    out << "1.0 0.75\n";
    out << "\n";
    out << "4.0 0.25  # heavy tail\n";
  }
  const auto s = load_spectrum(path);
  REQUIRE(s.values.size() == 2u);
  CHECK(s.weights[0] == doctest::Approx(0.75));
  CHECK(s.norm_bound == 4.0);

  {
    std::ofstream out(path);
    out << "1.0\n2.0 0.5\n";
  }
  CHECK_THROWS_AS(load_spectrum(path), InvalidArgumentError);

  CHECK_THROWS_AS(load_spectrum("does_not_exist_anywhere.txt"), IoError);
  std::remove(path.c_str());
}

TEST_CASE("expansion to a concrete dimension honors the weights") {
  const auto tp = PopulationSpectrum::two_point(0.5, 2.0);
  const auto diag = expand_to_dimension(tp, 4);
  REQUIRE(diag.size() == 4u);
  CHECK(diag[0] == 0.5);
  CHECK(diag[1] == 0.5);
  CHECK(diag[2] == 2.0);
  CHECK(diag[3] == 2.0);
  CHECK_THROWS_AS(expand_to_dimension(tp, 5), ValidationError);
}

TEST_CASE("model parameters enforce shape and moment constraints") {
  const auto mp = make_model_params(64, 128, EntryCase::kReal, 0.0);
  CHECK(mp.y_n == doctest::Approx(0.5));
  CHECK(mp.alpha_x == 1.0);

  const auto mc = make_model_params(64, 128, EntryCase::kComplexAlphaZero, 0.0);
  CHECK(mc.alpha_x == 0.0);

  // Real symmetric two-point entries sit exactly on the fourth-moment floor.
  CHECK_NOTHROW(make_model_params(64, 128, EntryCase::kReal, -2.0));
  CHECK_THROWS_AS(make_model_params(64, 128, EntryCase::kReal, -2.1),
                  ValidationError);
  CHECK_THROWS_AS(
      make_model_params(64, 128, EntryCase::kComplexAlphaZero, -1.1),
      ValidationError);
  CHECK_THROWS_AS(make_model_params(128, 128, EntryCase::kReal, 0.0),
                  ValidationError);
  CHECK_THROWS_AS(make_model_params(0, 128, EntryCase::kReal, 0.0),
                  ValidationError);
}

TEST_SUITE_END();

}  // namespace
}  // namespace lssclt
