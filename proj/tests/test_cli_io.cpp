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

#include "lssclt/cli_io.hpp"

#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lssclt/errors.hpp"

namespace lssclt {
namespace {

namespace fs = std::filesystem;

// Fresh scratch directory per test case, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("lssclt_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(static_cast<bool>(in));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const char* kMinimalConfig =
    "[model]\n"
    "p = 16\n"
    "n = 32\n"
    "law = real_gaussian\n"
    "\n"
    "[function]\n"
    "f = square\n"
    "\n"
    "[run]\n"
    "R = 8\n"
    "seed = 7\n";

TEST_CASE("parse: minimal config fills defaults") {
  const CliConfig config = parse_config_text(kMinimalConfig);
  const ExperimentConfig& e = config.experiment;
  CHECK(e.p == 16);
  CHECK(e.n == 32);
  CHECK(e.entry_law == EntryLaw::kRealGaussian);
  CHECK(e.spectrum_spec == "identity");
  CHECK(e.student_nu == 12.0);
  CHECK(e.truncate == true);
  CHECK(e.f_name == "square");
  CHECK_FALSE(e.bernstein_m.has_value());
  CHECK(e.upsilon == 0.1);
  CHECK(e.replicates == 8);
  CHECK(e.base_seed == 7);
  CHECK(e.contour_eps == 0.2);
  CHECK(e.contour_v0 == 0.5);
  CHECK(e.nodes_per_side == 64);
  CHECK(e.threads == 1);
  CHECK(config.rate_n == std::vector<int>{64, 128, 256, 512});
}

TEST_CASE("parse: comments, blank lines, and spacing are ignored") {
  const CliConfig config = parse_config_text(
      "# leading comment\n"
      "\n"
      "[model]\n"
      "  p=24   # inline comment\n"
      "\tn =\t48\n"
      "law = student_t\n"
      "nu = 8.5\n"
      "truncate = false\n"
      "spectrum = two_point:1,4\n"
      "\n"
      "[function]\n"
      "f = pow7half\n"
      "bernstein_m = 33\n"
      "upsilon = 0.07\n"
      "\n"
      "[contour]\n"
      "eps = 0.31\n"
      "v0 = 0.77\n"
      "nodes = 96\n"
      "\n"
      "[run]\n"
      "R = 5\n"
      "seed = 123456789012345\n"
      "rate_n = 32, 64, 96\n");
  const ExperimentConfig& e = config.experiment;
  CHECK(e.p == 24);
  CHECK(e.n == 48);
  CHECK(e.entry_law == EntryLaw::kStudentT);
  CHECK(e.student_nu == 8.5);
  CHECK(e.truncate == false);
  CHECK(e.spectrum_spec == "two_point:1,4");
  CHECK(e.f_name == "pow7half");
  CHECK(e.bernstein_m == 33);
  CHECK(e.upsilon == 0.07);
  CHECK(e.contour_eps == 0.31);
  CHECK(e.contour_v0 == 0.77);
  CHECK(e.nodes_per_side == 96);
  CHECK(e.replicates == 5);
  CHECK(e.base_seed == 123456789012345ull);
  CHECK(config.rate_n == std::vector<int>{32, 64, 96});
}

TEST_CASE("parse: structural problems raise ParseError with position") {
  // no '=' on line 2
  try {
    parse_config_text("[model]\np 16\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line == 2);
    CHECK(err.column == 1);
  }

  // unknown key, column points at the key
  try {
    parse_config_text("[model]\np = 16\nn = 32\n  rank = 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line == 4);
    CHECK(err.column == 3);
    CHECK(std::string(err.what()).find("rank") != std::string::npos);
  }

  // duplicate key
  CHECK_THROWS_AS(parse_config_text("[model]\np = 16\np = 17\nn = 32\n"),
                  ParseError);
  // key before any section
  CHECK_THROWS_AS(parse_config_text("p = 16\n"), ParseError);
  // unknown section
  CHECK_THROWS_AS(parse_config_text("[models]\np = 16\n"), ParseError);
  // malformed section header
  CHECK_THROWS_AS(parse_config_text("[model\np = 16\n"), ParseError);
  // key from the wrong section
  CHECK_THROWS_AS(parse_config_text("[contour]\np = 16\n"), ParseError);

  // malformed value, column points at the value
  try {
    parse_config_text("[model]\np = sixteen\nn = 32\n");
    FAIL("expected ParseError");
  } catch (const ParseError& err) {
    CHECK(err.line == 2);
    CHECK(err.column == 5);
  }
  CHECK_THROWS_AS(
      parse_config_text("[model]\np = 16\nn = 32\ntruncate = yes\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_config_text("[model]\np = 16\nn = 32\n[run]\nseed = -4\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_config_text("[model]\np = 16\nn = 32\n[run]\nrate_n = 16,,32\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_config_text("[model]\np = 16\nn = 32\nnu = 1e999\n"), ParseError);
}

std::string with_lines(const std::string& extra) {
  return std::string("[model]\np = 16\nn = 32\n") + extra;
}

TEST_CASE("parse: invariant violations raise ValidationError") {
  // aspect ratio
  try {
    parse_config_text("[model]\np = 32\nn = 32\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& err) {
    CHECK(std::string(err.what()).find("p < n") != std::string::npos);
  }
  // required keys
  CHECK_THROWS_AS(parse_config_text("[model]\nn = 32\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_text("[model]\np = 16\n"), ValidationError);
  // entry-law moment condition
  try {
    parse_config_text(with_lines("law = student_t\nnu = 4\n"));
    FAIL("expected ValidationError");
  } catch (const ValidationError& err) {
    CHECK(std::string(err.what()).find("nu > 4") != std::string::npos);
  }
  // value domains
  CHECK_THROWS_AS(parse_config_text(with_lines("law = cauchy\n")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_lines("[function]\nf = sine\n")),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_config_text(with_lines("[function]\nupsilon = 0.6\n")),
      ValidationError);
  CHECK_THROWS_AS(
      parse_config_text(with_lines("[function]\nbernstein_m = 0\n")),
      ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_lines("[contour]\neps = 0\n")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_lines("[contour]\nv0 = -1\n")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_lines("[contour]\nnodes = 1\n")),
                  ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_lines("[run]\nR = -1\n")),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_config_text(with_lines("[run]\nrate_n = 64,32\n")),
      ValidationError);
  CHECK_THROWS_AS(parse_config_text(with_lines("spectrum = two_point:1\n")),
                  ValidationError);
  // R = 0 parses fine; the refusal belongs to the commands that need samples
  CHECK(parse_config_text(with_lines("[run]\nR = 0\n")).experiment.replicates ==
        0);
}

TEST_CASE("serialize: canonical round trip and hash stability") {
  const std::string scrambled =
      "[run]\n"
      "seed = 99\n"
      "R = 41\n"
      "[function]\n"
      "upsilon = 0.07\n"
      "f = logshift\n"
      "[model]\n"
      "n = 96   # trailing comment\n"
      "p = 24\n"
      "law = complex_gaussian\n"
      "[contour]\n"
      "v0 = 0.77\n"
      "eps = 0.31\n";
  const std::string reordered =
      "[model]\n"
      "law = complex_gaussian\n"
      "p = 24\n"
      "n = 96\n"
      "[contour]\n"
      "eps = 0.31\n"
      "v0 = 0.77\n"
      "[function]\n"
      "f = logshift\n"
      "upsilon = 0.07\n"
      "[run]\n"
      "R = 41\n"
      "seed = 99\n";
  const CliConfig a = parse_config_text(scrambled);
  const CliConfig b = parse_config_text(reordered);
  CHECK(a == b);
  CHECK(config_hash(a) == config_hash(b));
  CHECK(serialize_config(a) == serialize_config(b));

  // round trip through the canonical form is exact
  const CliConfig c = parse_config_text(serialize_config(a));
  CHECK(c == a);

  // hash shape and sensitivity
  const std::string hash = config_hash(a);
  CHECK(hash.size() == 16);
  for (char ch : hash) CHECK(std::isxdigit(static_cast<unsigned char>(ch)));
  CliConfig d = a;
  d.experiment.base_seed = 100;
  CHECK(config_hash(d) != hash);

  // doubles that have no short decimal form still round-trip exactly
  CliConfig g = a;
  g.experiment.upsilon = 1.0 / 3.0;
  g.experiment.contour_eps = 0.1 + 0.2;
  const CliConfig h = parse_config_text(serialize_config(g));
  CHECK(h == g);
}

TEST_CASE("clt_config_from maps the contour settings") {
  CliConfig config = parse_config_text(kMinimalConfig);
  config.experiment.contour_eps = 0.25;
  config.experiment.contour_v0 = 0.6;
  config.experiment.nodes_per_side = 128;
  const CLTConfig clt = clt_config_from(config);
  CHECK(clt.eps == 0.25);
  CHECK(clt.v0 == 0.6);
  CHECK(clt.nodes_start == 128);
}

TEST_CASE("parse_config: file round trip and missing file") {
  TempDir dir("parse");
  const std::string path = dir.file("run.cfg");
  std::ofstream(path) << kMinimalConfig;
  const CliConfig config = parse_config(path);
  CHECK(config.experiment.p == 16);
  CHECK_THROWS_AS(parse_config(dir.file("absent.cfg")), IoError);
}

TEST_CASE("cmd_solve writes the density grid with provenance") {
  TempDir dir("solve");
  const CliConfig config = parse_config_text(kMinimalConfig);
  const LsdGrid grid = cmd_solve(config, dir.str());
  REQUIRE(grid.x.size() > 100);
  CHECK(grid.cdf.back() == doctest::Approx(1.0).epsilon(1e-6));

  const std::string csv = read_file(dir.file("density.csv"));
  CHECK(csv.rfind("# config_hash=" + config_hash(config), 0) == 0);
  CHECK(csv.find("x,pdf,cdf\n") != std::string::npos);

  const auto manifest = nlohmann::json::parse(read_file(dir.file("manifest.json")));
  CHECK(manifest["config_hash"] == config_hash(config));
  CHECK(manifest["tool_version"] == "0.1.0");
  CHECK(manifest["outputs"] == nlohmann::json::array({"density.csv"}));
  CHECK(manifest["started"].get<std::string>().size() == 20);
}

TEST_CASE("cmd_params reproduces the linear-statistic benchmark") {
  TempDir dir("params");
  CliConfig config = parse_config_text(kMinimalConfig);
  config.experiment.p = 64;
  config.experiment.n = 128;
  config.experiment.f_name = "affine";
  const CLTParams clt = cmd_params(config, dir.str());
  // trace statistic of the identity-spectrum model at y = 1/2: variance 1,
  // mean 0 (second-moment term cancels for real Gaussian entries)
  CHECK(clt.sigma2_n == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(std::abs(clt.mu_n) < 1e-6);

  const auto j = nlohmann::json::parse(read_file(dir.file("clt_params.json")));
  CHECK(j["config_hash"] == config_hash(config));
  CHECK(j["f"] == "affine");
  CHECK(j["entry_case"] == "real");
  CHECK(j["beta_x"].get<double>() == 0.0);
  CHECK(j["mu_n"].get<double>() == clt.mu_n);
  CHECK(j["sigma2_n"].get<double>() == clt.sigma2_n);
}

TEST_CASE("cmd_params without a polynomial degree needs an analytic f") {
  TempDir dir("params_c3");
  CliConfig config = parse_config_text(kMinimalConfig);
  config.experiment.f_name = "pow7half";
  CHECK_THROWS_AS(cmd_params(config, dir.str()), ValidationError);
  // the approximant's node window starts at the support's lower edge minus
  // the margin, so pick the aspect ratio whose window stays inside [0, inf)
  config.experiment.p = 8;
  config.experiment.bernstein_m = 48;
  const CLTParams clt = cmd_params(config, dir.str());
  CHECK(clt.sigma2_n > 0.0);
}

TEST_CASE("cmd_simulate is deterministic byte for byte") {
  TempDir dir("simulate");
  const CliConfig config = parse_config_text(kMinimalConfig);
  const ExperimentOutput out = cmd_simulate(config, dir.file("a"));
  REQUIRE(out.results.size() == 8);

  const std::string first = read_file(dir.file("a/replicates.csv"));
  cmd_simulate(config, dir.file("b"));
  CHECK(read_file(dir.file("b/replicates.csv")) == first);

  // schema: provenance comment, header, one row per replicate
  std::istringstream lines(first);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "# config_hash=" + config_hash(config));
  std::getline(lines, line);
  CHECK(line ==
        "replicate_id,seed_used,lss_raw,lss_centered,xi_event,"
        "max_eigenvalue,min_eigenvalue");
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 8);

  // a different seed changes the bytes
  CliConfig other = config;
  other.experiment.base_seed = 8;
  cmd_simulate(other, dir.file("c"));
  CHECK(read_file(dir.file("c/replicates.csv")) != first);
}

TEST_CASE("cmd_verify writes the goodness-of-fit report") {
  TempDir dir("verify");
  CliConfig config = parse_config_text(kMinimalConfig);
  config.experiment.replicates = 40;
  const KSReport report = cmd_verify(config, dir.str());
  CHECK(report.R == 40);
  CHECK(report.ks > 0.0);
  CHECK(report.ks < 1.0);

  const auto j = nlohmann::json::parse(read_file(dir.file("ks_report.json")));
  CHECK(j["config_hash"] == config_hash(config));
  CHECK(j["n"] == 32);
  CHECK(j["p"] == 16);
  CHECK(j["R"] == 40);
  CHECK(j["ks"].get<double>() == report.ks);
  CHECK(j["sigma2_n_used"].get<double>() == report.sigma2_n_used);

  CliConfig empty = config;
  empty.experiment.replicates = 0;
  CHECK_THROWS_AS(cmd_verify(empty, dir.str()), ValidationError);
}

TEST_CASE("cmd_rate sweeps n at fixed aspect ratio") {
  TempDir dir("rate");
  CliConfig config = parse_config_text(kMinimalConfig);
  config.experiment.replicates = 20;
  config.rate_n = {16, 24, 32};
  const RateFit fit = cmd_rate(config, dir.str());
  REQUIRE(fit.points.size() == 3);
  CHECK(fit.points[0].first == 16);
  CHECK(fit.points[2].first == 32);

  // p rescales with n so every sweep point keeps p/n = 1/2
  const std::string jsonl = read_file(dir.file("ks_reports.jsonl"));
  std::istringstream lines(jsonl);
  std::string line;
  std::vector<int> ps;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j["config_hash"] == config_hash(config));
    ps.push_back(j["p"].get<int>());
  }
  CHECK(ps == std::vector<int>{8, 12, 16});

  const std::string csv = read_file(dir.file("rate.csv"));
  CHECK(csv.rfind("# config_hash=" + config_hash(config), 0) == 0);
  CHECK(csv.find("n,ks,slope\n") != std::string::npos);

  const auto j = nlohmann::json::parse(read_file(dir.file("rate.json")));
  CHECK(j["slope"].get<double>() == fit.slope);
  CHECK(j["points"].size() == 3);

  const auto manifest =
      nlohmann::json::parse(read_file(dir.file("manifest.json")));
  CHECK(manifest["outputs"].size() == 3);

  // too few sweep points to fit
  CliConfig short_sweep = config;
  short_sweep.rate_n = {16, 24};
  CHECK_THROWS_AS(cmd_rate(short_sweep, dir.str()), ValidationError);
}

TEST_CASE("rate_from_jsonl refuses mixed provenance") {
  TempDir dir("jsonl");
  const std::string good =
      R"({"config_hash":"00000000deadbeef","n":64,"ks":0.2})" "\n"
      R"({"config_hash":"00000000deadbeef","n":128,"ks":0.15})" "\n"
      R"({"config_hash":"00000000deadbeef","n":256,"ks":0.1})" "\n";
  const std::string path = dir.file("reports.jsonl");
  std::ofstream(path) << good;
  const RateFit fit = rate_from_jsonl(path, "00000000deadbeef");
  CHECK(fit.points.size() == 3);
  CHECK(fit.slope < 0.0);

  // one line from a different configuration poisons the file
  std::ofstream(path, std::ios::app)
      << R"({"config_hash":"1111111111111111","n":512,"ks":0.08})" "\n";
  CHECK_THROWS_AS(rate_from_jsonl(path, "00000000deadbeef"), ValidationError);

  // unreadable and unparseable inputs are I/O failures
  CHECK_THROWS_AS(rate_from_jsonl(dir.file("absent.jsonl"), "x"), IoError);
  std::ofstream(path, std::ios::trunc) << "not json\n";
  CHECK_THROWS_AS(rate_from_jsonl(path, "00000000deadbeef"), IoError);
}

}  // namespace
}  // namespace lssclt
