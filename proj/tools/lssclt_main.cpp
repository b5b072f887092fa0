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

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <thread>

#include "lssclt/cli_io.hpp"
#include "lssclt/errors.hpp"
#include "lssclt/version.hpp"

namespace {

// Exit codes: 0 success, 1 unexpected, 2 configuration, 3 numeric failure,
// 4 I/O failure.
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("lssclt ") + lssclt::kToolVersion +
               " -- spectral-statistics toolkit for sample covariance "
               "matrices"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "./out";
  int threads = default_threads();
  int nodes_override = 0;
  bool no_truncate = false;
  app.add_option("--config", config_path, "configuration file (required)")
      ->required();
  app.add_option("--out", out_dir, "output directory (default ./out)");
  app.add_option("--threads", threads,
                 "worker threads (default: logical cores)");
  app.add_option("--nodes-per-side", nodes_override,
                 "override the contour node count per side");
  app.add_flag("--no-truncate", no_truncate, "disable entry truncation");

  CLI::App* solve =
      app.add_subcommand("solve", "write the limiting density/CDF grid");
  CLI::App* params =
      app.add_subcommand("params", "write the asymptotic mean/variance");
  CLI::App* simulate =
      app.add_subcommand("simulate", "write per-replicate statistics");
  CLI::App* verify = app.add_subcommand(
      "verify", "test the normalized statistics against the standard normal");
  CLI::App* rate =
      app.add_subcommand("rate", "sweep n and fit the convergence rate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    lssclt::CliConfig config = lssclt::parse_config(config_path);
    if (threads < 1) {
      throw lssclt::ValidationError("--threads must be >= 1");
    }
    config.experiment.threads = threads;
    if (nodes_override != 0) {
      if (nodes_override < 2) {
        throw lssclt::ValidationError("--nodes-per-side must be >= 2");
      }
      config.experiment.nodes_per_side = nodes_override;
    }
    if (no_truncate) config.experiment.truncate = false;

    if (solve->parsed()) {
      lssclt::cmd_solve(config, out_dir);
    } else if (params->parsed()) {
      const lssclt::CLTParams clt = lssclt::cmd_params(config, out_dir);
      std::printf("mu_n=%.12g sigma2_n=%.12g\n", clt.mu_n, clt.sigma2_n);
    } else if (simulate->parsed()) {
      lssclt::cmd_simulate(config, out_dir);
    } else if (verify->parsed()) {
      const lssclt::KSReport report = lssclt::cmd_verify(config, out_dir);
      std::printf("n=%d p=%d R=%d ks=%.6g\n", report.n, report.p, report.R,
                  report.ks);
    } else if (rate->parsed()) {
      const lssclt::RateFit fit = lssclt::cmd_rate(config, out_dir);
      std::printf("slope=%.6g intercept=%.6g r2=%.6g\n", fit.slope,
                  fit.intercept, fit.r2);
    }
    return 0;
  } catch (const lssclt::IoError& err) {
    std::fprintf(stderr, "lssclt: I/O error: %s\n", err.what());
    return kExitIo;
  } catch (const lssclt::NumericError& err) {
    std::fprintf(stderr, "lssclt: numeric failure: %s\n", err.what());
    return kExitNumeric;
  } catch (const lssclt::Error& err) {
    std::fprintf(stderr, "lssclt: configuration error: %s\n", err.what());
    return kExitConfig;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "lssclt: unexpected error: %s\n", err.what());
    return kExitUnexpected;
  }
}
