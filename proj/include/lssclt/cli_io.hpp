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

#ifndef LSSCLT_CLI_IO_HPP_
#define LSSCLT_CLI_IO_HPP_

#include <string>
#include <vector>

#include "lssclt/clt_params.hpp"
#include "lssclt/mp_core.hpp"
#include "lssclt/simulator.hpp"
#include "lssclt/stats_harness.hpp"

namespace lssclt {

// Full run configuration: the experiment itself plus the n-sweep used by the
// rate subcommand.  Worker-thread count is deliberately NOT part of this
// state: it cannot change any artifact byte, so it stays a CLI flag and is
// excluded from serialization and hashing.
struct CliConfig {
  ExperimentConfig experiment;
  std::vector<int> rate_n = {64, 128, 256, 512};

  bool operator==(const CliConfig&) const = default;
};

// Parses the flat INI-style config format:
//
//   [model]     p, n, law (real_gaussian | complex_gaussian | rademacher |
//               student_t), spectrum (identity | point:v | two_point:a,b |
//               file:PATH), nu, truncate (true | false)
//   [function]  f (registry name), bernstein_m, upsilon
//   [contour]   eps, v0, nodes
//   [run]       R, seed, rate_n (comma-separated)
//
// '#' starts a comment; blank lines are ignored; keys must follow a section
// header.  p and n are required, everything else has a default.  Syntax
// problems (unknown key, duplicate key, missing '=', malformed value) raise
// ParseError with 1-based line/column; a well-formed file whose values break
// a model invariant raises ValidationError naming that invariant.  Spectrum
// file paths are resolved when a command runs, not here.
CliConfig parse_config_text(const std::string& text);

// Reads the file, then parse_config_text.  Unreadable path raises IoError.
CliConfig parse_config(const std::string& path);

// Canonical form: fixed section order (model, function, contour, run), keys
// sorted within each section, shortest round-trip number formatting, no
// comments.  parse_config_text of the result reproduces the config exactly,
// so two files differing only in ordering/comments canonicalize identically.
std::string serialize_config(const CliConfig& config);

// 64-bit FNV-1a digest of the canonical serialization, as 16 lowercase hex
// characters.  Every artifact written by the subcommands carries this value.
std::string config_hash(const CliConfig& config);

// Maps the config's contour settings onto the CLT quadrature configuration
// (nodes_per_side becomes the starting node count of the doubling loop).
CLTConfig clt_config_from(const CliConfig& config);

// Provenance record written as manifest.json next to every artifact set.
// Timestamps are ISO-8601 UTC and are the only non-deterministic bytes a run
// produces; every other artifact is a pure function of the config.
struct RunManifest {
  std::string config_hash;
  std::string tool_version;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;  // artifact file names inside the out dir
};

void write_manifest(const RunManifest& manifest, const std::string& path);

// Subcommand bodies.  Each creates out_dir if needed, writes its artifacts
// plus manifest.json there, and returns the in-memory result.  Artifact
// files start with a "# config_hash=<hex>" header line (CSV) or carry a
// config_hash field (JSON).
//
//   solve     density.csv          x,pdf,cdf grid of the limiting law
//   params    clt_params.json      asymptotic mean/variance for f, using the
//                                  entry law's nominal fourth-cumulant value
//   simulate  replicates.csv       one row per replicate; byte-identical
//                                  across reruns of the same config
//   verify    ks_report.json       normalized-sample fit to the standard
//                                  normal, using the truncation-adjusted
//                                  (effective) fourth-cumulant value
//   rate      ks_reports.jsonl     one verify line per n in rate_n, with p
//             rate.csv, rate.json  rescaled to keep p/n fixed; the fit is
//                                  re-read from the jsonl artifact
LsdGrid cmd_solve(const CliConfig& config, const std::string& out_dir);
CLTParams cmd_params(const CliConfig& config, const std::string& out_dir);
ExperimentOutput cmd_simulate(const CliConfig& config,
                              const std::string& out_dir);
KSReport cmd_verify(const CliConfig& config, const std::string& out_dir);
RateFit cmd_rate(const CliConfig& config, const std::string& out_dir);

// Reads the per-n reports written by cmd_rate and fits the power law.
// Every line must carry expected_hash; a file mixing reports from different
// configurations raises ValidationError.
RateFit rate_from_jsonl(const std::string& path,
                        const std::string& expected_hash);

}  // namespace lssclt

#endif  // LSSCLT_CLI_IO_HPP_
