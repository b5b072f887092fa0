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

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lssclt/errors.hpp"
#include "lssclt/log.hpp"
#include "lssclt/version.hpp"

namespace lssclt {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// formatting helpers

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  }
  return std::string(buf, ptr);
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// file helpers

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + dir +
                  "': " + ec.message());
  }
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// config parsing

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

struct ValueToken {
  std::string text;
  int line = 0;
  int column = 0;  // 1-based column of the first value character
};

long long to_ll(const ValueToken& v, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const long long parsed = std::strtoll(v.text.c_str(), &end, 10);
  if (v.text.empty() || errno == ERANGE ||
      end != v.text.c_str() + v.text.size()) {
    throw ParseError("expected an integer for '" + key + "', got '" + v.text +
                         "'",
                     v.line, v.column);
  }
  return parsed;
}

int to_int(const ValueToken& v, const std::string& key) {
  const long long parsed = to_ll(v, key);
  if (parsed < INT32_MIN || parsed > INT32_MAX) {
    throw ParseError("value for '" + key + "' is out of range", v.line,
                     v.column);
  }
  return static_cast<int>(parsed);
}

std::uint64_t to_u64(const ValueToken& v, const std::string& key) {
  if (v.text.empty() || v.text[0] == '-') {
    throw ParseError("expected a nonnegative integer for '" + key +
                         "', got '" + v.text + "'",
                     v.line, v.column);
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(v.text.c_str(), &end, 10);
  if (errno == ERANGE || end != v.text.c_str() + v.text.size()) {
    throw ParseError("expected a nonnegative integer for '" + key +
                         "', got '" + v.text + "'",
                     v.line, v.column);
  }
  return static_cast<std::uint64_t>(parsed);
}

double to_double(const ValueToken& v, const std::string& key) {
  errno = 0;
  char* end = nullptr;
  const double parsed = std::strtod(v.text.c_str(), &end);
  if (v.text.empty() || errno == ERANGE ||
      end != v.text.c_str() + v.text.size() || !std::isfinite(parsed)) {
    throw ParseError("expected a finite number for '" + key + "', got '" +
                         v.text + "'",
                     v.line, v.column);
  }
  return parsed;
}

bool to_bool(const ValueToken& v, const std::string& key) {
  if (v.text == "true") return true;
  if (v.text == "false") return false;
  throw ParseError("expected true or false for '" + key + "', got '" + v.text +
                       "'",
                   v.line, v.column);
}

std::vector<int> to_int_list(const ValueToken& v, const std::string& key) {
  std::vector<int> out;
  std::size_t begin = 0;
  while (begin <= v.text.size()) {
    std::size_t comma = v.text.find(',', begin);
    if (comma == std::string::npos) comma = v.text.size();
    ValueToken item{trim(v.text.substr(begin, comma - begin)), v.line,
                    v.column + static_cast<int>(begin)};
    out.push_back(to_int(item, key));
    begin = comma + 1;
    if (comma == v.text.size()) break;
  }
  return out;
}

// Validates everything the parser cannot reject token by token; every throw
// names the invariant being enforced.
void validate_config(const CliConfig& config, bool p_set, bool n_set) {
  const ExperimentConfig& e = config.experiment;
  if (!p_set) throw ValidationError("[model] p is required");
  if (!n_set) throw ValidationError("[model] n is required");
  if (e.p < 1) throw ValidationError("p must be a positive dimension");
  if (e.n < 1) throw ValidationError("n must be a positive sample size");
  if (e.p >= e.n) {
    throw ValidationError(
        "requires p < n: the aspect ratio y_n = p/n must lie in (0, 1)");
  }
  if (e.entry_law == EntryLaw::kStudentT && !(e.student_nu > 4.0)) {
    throw ValidationError(
        "student_t requires nu > 4 so the entry fourth moment is finite");
  }
  if (!(e.upsilon > 0.0) || !(e.upsilon < 0.5)) {
    throw ValidationError("upsilon must lie in (0, 0.5)");
  }
  if (e.bernstein_m.has_value() && *e.bernstein_m < 1) {
    throw ValidationError("bernstein_m must be a positive degree");
  }
  if (!(e.contour_eps > 0.0)) {
    throw ValidationError("contour eps must be positive");
  }
  if (!(e.contour_v0 > 0.0)) {
    throw ValidationError("contour v0 must be positive");
  }
  if (e.nodes_per_side < 2) {
    throw ValidationError("contour nodes must be >= 2 per side");
  }
  if (e.replicates < 0) {
    throw ValidationError("R must be a nonnegative replicate count");
  }
  if (config.rate_n.empty()) {
    throw ValidationError("rate_n must list at least one sample size");
  }
  for (std::size_t i = 0; i < config.rate_n.size(); ++i) {
    if (config.rate_n[i] < 2) {
      throw ValidationError("rate_n entries must be sample sizes >= 2");
    }
    if (i > 0 && config.rate_n[i] <= config.rate_n[i - 1]) {
      throw ValidationError("rate_n must be strictly increasing");
    }
  }

  // registry membership and non-file spectrum grammar are value-domain
  // checks, so they surface as ValidationError rather than ParseError
  const auto names = test_function_names();
  bool known = false;
  for (const auto& name : names) known = known || name == e.f_name;
  if (!known) {
    std::string list;
    for (const auto& name : names) {
      if (!list.empty()) list += ", ";
      list += name;
    }
    throw ValidationError("unknown test function '" + e.f_name +
                          "' (available: " + list + ")");
  }
  if (e.spectrum_spec == "identity" || starts_with(e.spectrum_spec, "point:") ||
      starts_with(e.spectrum_spec, "two_point:")) {
    try {
      spectrum_from_spec(e.spectrum_spec);
    } catch (const Error& err) {
      throw ValidationError(err.what());
    }
  }
  // anything else is a file path, resolved when a command actually runs
}

}  // namespace

CliConfig parse_config_text(const std::string& text) {
  CliConfig config;
  ExperimentConfig& e = config.experiment;
  std::string section;
  std::set<std::string> seen;
  bool p_set = false;
  bool n_set = false;

  std::istringstream stream(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(stream, raw)) {
    ++lineno;
    const std::size_t hash_pos = raw.find('#');
    std::string line = hash_pos == std::string::npos ? raw : raw.substr(0, hash_pos);
    const std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = trim(line);

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError("malformed section header '" + line + "'", lineno,
                         static_cast<int>(first) + 1);
      }
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name != "model" && name != "function" && name != "contour" &&
          name != "run") {
        throw ParseError("unknown section '[" + name + "]'", lineno,
                         static_cast<int>(first) + 1);
      }
      section = name;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", lineno,
                       static_cast<int>(first) + 1);
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) {
      throw ParseError("missing key before '='", lineno,
                       static_cast<int>(first) + 1);
    }
    const int key_col = static_cast<int>(first) + 1;
    if (section.empty()) {
      throw ParseError("key '" + key + "' appears before any [section] header",
                       lineno, key_col);
    }
    if (!seen.insert(section + "." + key).second) {
      throw ParseError("duplicate key '" + key + "' in [" + section + "]",
                       lineno, key_col);
    }
    const std::string value_raw = line.substr(eq + 1);
    const std::size_t value_skip = value_raw.find_first_not_of(" \t\r");
    ValueToken value{trim(value_raw), lineno,
                     static_cast<int>(first + eq + 1 +
                                      (value_skip == std::string::npos
                                           ? 0
                                           : value_skip)) +
                         1};

    bool known_key = true;
    if (section == "model") {
      if (key == "p") {
        e.p = to_int(value, key);
        p_set = true;
      } else if (key == "n") {
        e.n = to_int(value, key);
        n_set = true;
      } else if (key == "law") {
        try {
          e.entry_law = entry_law_from_string(value.text);
        } catch (const Error& err) {
          throw ValidationError(err.what());
        }
      } else if (key == "spectrum") {
        e.spectrum_spec = value.text;
      } else if (key == "nu") {
        e.student_nu = to_double(value, key);
      } else if (key == "truncate") {
        e.truncate = to_bool(value, key);
      } else {
        known_key = false;
      }
    } else if (section == "function") {
      if (key == "f") {
        e.f_name = value.text;
      } else if (key == "bernstein_m") {
        e.bernstein_m = to_int(value, key);
      } else if (key == "upsilon") {
        e.upsilon = to_double(value, key);
      } else {
        known_key = false;
      }
    } else if (section == "contour") {
      if (key == "eps") {
        e.contour_eps = to_double(value, key);
      } else if (key == "v0") {
        e.contour_v0 = to_double(value, key);
      } else if (key == "nodes") {
        e.nodes_per_side = to_int(value, key);
      } else {
        known_key = false;
      }
    } else {  // run
      if (key == "R") {
        e.replicates = to_int(value, key);
      } else if (key == "seed") {
        e.base_seed = to_u64(value, key);
      } else if (key == "rate_n") {
        config.rate_n = to_int_list(value, key);
      } else {
        known_key = false;
      }
    }
    if (!known_key) {
      throw ParseError("unknown key '" + key + "' in [" + section + "]",
                       lineno, key_col);
    }
  }

  validate_config(config, p_set, n_set);
  return config;
}

CliConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failed for config file '" + path + "'");
  return parse_config_text(buffer.str());
}

std::string serialize_config(const CliConfig& config) {
  const ExperimentConfig& e = config.experiment;
  std::string s;
  s += "[model]\n";
  s += "law = " + to_string(e.entry_law) + "\n";
  s += "n = " + std::to_string(e.n) + "\n";
  s += "nu = " + format_double(e.student_nu) + "\n";
  s += "p = " + std::to_string(e.p) + "\n";
  s += "spectrum = " + e.spectrum_spec + "\n";
  s += std::string("truncate = ") + (e.truncate ? "true" : "false") + "\n";
  s += "\n[function]\n";
  if (e.bernstein_m.has_value()) {
    s += "bernstein_m = " + std::to_string(*e.bernstein_m) + "\n";
  }
  s += "f = " + e.f_name + "\n";
  s += "upsilon = " + format_double(e.upsilon) + "\n";
  s += "\n[contour]\n";
  s += "eps = " + format_double(e.contour_eps) + "\n";
  s += "nodes = " + std::to_string(e.nodes_per_side) + "\n";
  s += "v0 = " + format_double(e.contour_v0) + "\n";
  s += "\n[run]\n";
  s += "R = " + std::to_string(e.replicates) + "\n";
  s += "rate_n = " + join_ints(config.rate_n) + "\n";
  s += "seed = " + std::to_string(e.base_seed) + "\n";
  return s;
}

std::string config_hash(const CliConfig& config) {
  const std::string canon = serialize_config(config);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

CLTConfig clt_config_from(const CliConfig& config) {
  CLTConfig clt;
  clt.eps = config.experiment.contour_eps;
  clt.v0 = config.experiment.contour_v0;
  clt.nodes_start = config.experiment.nodes_per_side;
  return clt;
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  ordered_json j;
  j["config_hash"] = manifest.config_hash;
  j["tool_version"] = manifest.tool_version;
  j["started"] = manifest.started;
  j["finished"] = manifest.finished;
  j["outputs"] = manifest.outputs;
  write_text_file(path, j.dump(2) + "\n");
}

namespace {

// ---------------------------------------------------------------------------
// shared command plumbing

ModelParams nominal_params(const ExperimentConfig& e) {
  return make_model_params(e.p, e.n, law_entry_case(e.entry_law),
                           law_nominal_beta(e.entry_law, e.student_nu));
}

// The statistic's representation on the contour: the exact analytic test
// function, or -- when bernstein_m is set or f has no complex continuation --
// the polynomial approximant fitted over the support bracket, matching what
// run_experiment sums.
ContourFn statistic_contour_fn(const ExperimentConfig& e,
                               const ModelParams& params,
                               const PopulationSpectrum& spectrum) {
  const TestFunction& f = test_function(e.f_name);
  if (e.bernstein_m.has_value()) {
    const auto [lo, hi] = support_bounds(params, spectrum);
    const BernsteinApproximant approx =
        fit(f, lo, hi, e.upsilon, *e.bernstein_m);
    return contour_fn_from(approx, f.name + "_bernstein");
  }
  if (!f.complex_eval || !f.complex_deriv) {
    throw ValidationError("function '" + e.f_name +
                          "' has no complex continuation; set bernstein_m to "
                          "use its polynomial approximant instead");
  }
  return contour_fn_from(f);
}

// verify pipeline without artifact writing: run the experiment, compute the
// CLT parameters with the truncation-adjusted fourth-cumulant value, report
// the normalized sample's fit to the standard normal.
KSReport verify_report(const CliConfig& config) {
  const ExperimentConfig& e = config.experiment;
  const ExperimentOutput out = run_experiment(e);
  const PopulationSpectrum spectrum = spectrum_from_spec(e.spectrum_spec);
  const ModelParams params = make_model_params(
      e.p, e.n, law_entry_case(e.entry_law), out.meta.effective_beta);
  const ContourFn fn = statistic_contour_fn(e, params, spectrum);
  const CLTParams clt =
      clt_params_for(fn, params, spectrum, clt_config_from(config));
  return make_ks_report(out.results, e.n, e.p, clt.mu_n, clt.sigma2_n);
}

ordered_json ks_report_json(const KSReport& report, const std::string& hash) {
  ordered_json j;
  j["config_hash"] = hash;
  j["n"] = report.n;
  j["p"] = report.p;
  j["R"] = report.R;
  j["ks"] = report.ks;
  j["empirical_mean"] = report.empirical_mean;
  j["empirical_var"] = report.empirical_var;
  j["mu_n_used"] = report.mu_n_used;
  j["sigma2_n_used"] = report.sigma2_n_used;
  return j;
}

}  // namespace

LsdGrid cmd_solve(const CliConfig& config, const std::string& out_dir) {
  const std::string started = iso_utc_now();
  const std::string hash = config_hash(config);
  ensure_dir(out_dir);
  const ExperimentConfig& e = config.experiment;
  const PopulationSpectrum spectrum = spectrum_from_spec(e.spectrum_spec);
  const LsdGrid grid = build_lsd_grid(nominal_params(e), spectrum);

  std::string csv = "# config_hash=" + hash + "\n";
  csv += "x,pdf,cdf\n";
  for (std::size_t i = 0; i < grid.x.size(); ++i) {
    csv += format_double(grid.x[i]) + "," + format_double(grid.pdf[i]) + "," +
           format_double(grid.cdf[i]) + "\n";
  }
  write_text_file(join_path(out_dir, "density.csv"), csv);
  write_manifest({hash, kToolVersion, started, iso_utc_now(), {"density.csv"}},
                 join_path(out_dir, "manifest.json"));
  log_info("solve: wrote density.csv (" + std::to_string(grid.x.size()) +
           " grid points)");
  return grid;
}

CLTParams cmd_params(const CliConfig& config, const std::string& out_dir) {
  const std::string started = iso_utc_now();
  const std::string hash = config_hash(config);
  ensure_dir(out_dir);
  const ExperimentConfig& e = config.experiment;
  const PopulationSpectrum spectrum = spectrum_from_spec(e.spectrum_spec);
  const ModelParams params = nominal_params(e);
  const ContourFn fn = statistic_contour_fn(e, params, spectrum);
  const CLTParams clt =
      clt_params_for(fn, params, spectrum, clt_config_from(config));

  ordered_json j;
  j["config_hash"] = hash;
  j["f"] = e.f_name;
  j["p"] = e.p;
  j["n"] = e.n;
  j["y_n"] = params.y_n;
  j["entry_case"] = params.entry_case == EntryCase::kReal ? "real" : "complex";
  j["alpha_x"] = params.alpha_x;
  j["beta_x"] = params.beta_x;
  j["mu_n"] = clt.mu_n;
  j["sigma2_n"] = clt.sigma2_n;
  j["quad_error_estimate"] = clt.quad_error_estimate;
  write_text_file(join_path(out_dir, "clt_params.json"), j.dump(2) + "\n");
  write_manifest(
      {hash, kToolVersion, started, iso_utc_now(), {"clt_params.json"}},
      join_path(out_dir, "manifest.json"));
  log_info("params: mu_n = " + format_double(clt.mu_n) + ", sigma2_n = " +
           format_double(clt.sigma2_n));
  return clt;
}

ExperimentOutput cmd_simulate(const CliConfig& config,
                              const std::string& out_dir) {
  const std::string started = iso_utc_now();
  const std::string hash = config_hash(config);
  ensure_dir(out_dir);
  const ExperimentOutput out = run_experiment(config.experiment);

  std::string csv = "# config_hash=" + hash + "\n";
  csv +=
      "replicate_id,seed_used,lss_raw,lss_centered,xi_event,"
      "max_eigenvalue,min_eigenvalue\n";
  for (const LSSResult& r : out.results) {
    csv += std::to_string(r.replicate_id) + "," +
           std::to_string(r.seed_used) + "," + format_double(r.lss_raw) + "," +
           format_double(r.lss_centered) + "," + (r.xi_event ? "1" : "0") +
           "," + format_double(r.max_eigenvalue) + "," +
           format_double(r.min_eigenvalue) + "\n";
  }
  write_text_file(join_path(out_dir, "replicates.csv"), csv);
  write_manifest(
      {hash, kToolVersion, started, iso_utc_now(), {"replicates.csv"}},
      join_path(out_dir, "manifest.json"));
  log_info("simulate: wrote " + std::to_string(out.results.size()) +
           " replicates");
  return out;
}

KSReport cmd_verify(const CliConfig& config, const std::string& out_dir) {
  const std::string started = iso_utc_now();
  const std::string hash = config_hash(config);
  ensure_dir(out_dir);
  const KSReport report = verify_report(config);

  write_text_file(join_path(out_dir, "ks_report.json"),
                  ks_report_json(report, hash).dump(2) + "\n");
  write_manifest(
      {hash, kToolVersion, started, iso_utc_now(), {"ks_report.json"}},
      join_path(out_dir, "manifest.json"));
  log_info("verify: ks = " + format_double(report.ks) + " at R = " +
           std::to_string(report.R));
  return report;
}

RateFit cmd_rate(const CliConfig& config, const std::string& out_dir) {
  const std::string started = iso_utc_now();
  const std::string hash = config_hash(config);
  ensure_dir(out_dir);
  const ExperimentConfig& e = config.experiment;
  if (config.rate_n.size() < 3) {
    throw ValidationError("rate_n needs at least 3 sample sizes to fit a rate");
  }

  std::string jsonl;
  for (std::size_t i = 0; i < config.rate_n.size(); ++i) {
    const int nk = config.rate_n[i];
    const int pk = static_cast<int>(
        std::llround(static_cast<double>(e.p) * nk / static_cast<double>(e.n)));
    if (pk < 1 || pk >= nk) {
      throw ValidationError("rate sweep at n = " + std::to_string(nk) +
                            " rescales p to " + std::to_string(pk) +
                            "; requires 1 <= p < n");
    }
    CliConfig scaled = config;
    scaled.experiment.p = pk;
    scaled.experiment.n = nk;
    // disjoint seed blocks per sweep point, all derived from base_seed
    scaled.experiment.base_seed =
        e.base_seed + 1000000ull * static_cast<std::uint64_t>(i);
    const KSReport report = verify_report(scaled);
    jsonl += ks_report_json(report, hash).dump() + "\n";
    log_info("rate: n = " + std::to_string(nk) + ", ks = " +
             format_double(report.ks));
  }
  const std::string jsonl_path = join_path(out_dir, "ks_reports.jsonl");
  write_text_file(jsonl_path, jsonl);

  // fit from the artifact itself so provenance mixing cannot slip through
  const RateFit fit = rate_from_jsonl(jsonl_path, hash);

  std::string csv = "# config_hash=" + hash + "\n";
  csv += "n,ks,slope\n";
  for (const auto& [nk, ks] : fit.points) {
    csv += std::to_string(nk) + "," + format_double(ks) + "," +
           format_double(fit.slope) + "\n";
  }
  write_text_file(join_path(out_dir, "rate.csv"), csv);

  ordered_json j;
  j["config_hash"] = hash;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["points"] = ordered_json::array();
  for (const auto& [nk, ks] : fit.points) {
    ordered_json point;
    point["n"] = nk;
    point["ks"] = ks;
    j["points"].push_back(point);
  }
  write_text_file(join_path(out_dir, "rate.json"), j.dump(2) + "\n");

  write_manifest({hash,
                  kToolVersion,
                  started,
                  iso_utc_now(),
                  {"ks_reports.jsonl", "rate.csv", "rate.json"}},
                 join_path(out_dir, "manifest.json"));
  log_info("rate: slope = " + format_double(fit.slope));
  return fit;
}

RateFit rate_from_jsonl(const std::string& path,
                        const std::string& expected_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::pair<int, double>> points;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& err) {
      throw IoError("cannot parse '" + path + "' line " +
                    std::to_string(lineno) + ": " + err.what());
    }
    if (!j.contains("config_hash") || !j["config_hash"].is_string() ||
        j["config_hash"].get<std::string>() != expected_hash) {
      throw ValidationError(
          "'" + path + "' line " + std::to_string(lineno) +
          " carries a different config_hash; refusing to mix reports "
          "from different configurations");
    }
    if (!j.contains("n") || !j.contains("ks")) {
      throw IoError("'" + path + "' line " + std::to_string(lineno) +
                    " is missing the n/ks fields");
    }
    points.emplace_back(j["n"].get<int>(), j["ks"].get<double>());
  }
  return fit_rate(points);
}

}  // namespace lssclt
