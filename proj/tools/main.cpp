//------------------------------------------------------------------------------
//
//   Copyright 2026 The wptrelay Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wptrelay/cli.hpp"
#include "wptrelay/errors.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitNumerical = 4;

struct Overrides {
  std::string config_path;
  std::optional<std::vector<std::size_t>> n_list;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> fading;
  std::optional<std::string> output_dir;
  std::optional<double> resolution;
  std::optional<double> heatmap_resolution;
  std::optional<double> quad_tol;
  std::optional<double> reward_c;
  std::optional<int> threads;
  bool with_analytic = false;
};

wptrelay::RunConfig resolve_config(const Overrides& ov) {
  wptrelay::RunConfig cfg = ov.config_path.empty()
                                ? wptrelay::default_config()
                                : wptrelay::load_config(ov.config_path);
  if (ov.n_list) cfg.n_list = *ov.n_list;
  if (ov.trials) cfg.trials = *ov.trials;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.fading) cfg.fading = *ov.fading;
  if (ov.output_dir) cfg.output_dir = *ov.output_dir;
  if (ov.resolution) cfg.grid_resolution_m = *ov.resolution;
  if (ov.heatmap_resolution) cfg.heatmap_resolution_m = *ov.heatmap_resolution;
  if (ov.quad_tol) cfg.quadrature_tol = *ov.quad_tol;
  if (ov.reward_c) cfg.reward_c = *ov.reward_c;
  if (ov.threads) cfg.threads = *ov.threads;
  if (ov.with_analytic) cfg.simulate_with_analytic = true;

  if (cfg.output_dir.empty()) {
    const char* env_dir = std::getenv("WPTRELAY_OUTDIR");
    cfg.output_dir = (env_dir != nullptr && env_dir[0] != '\0') ? env_dir
                                                                : "out";
  }
  // Re-validate after overrides; flag values get the same scrutiny as the
  // config file.
  return wptrelay::config_from_json(wptrelay::config_to_json(cfg));
}

void add_common_options(CLI::App* cmd, Overrides* ov) {
  cmd->add_option("-c,--config", ov->config_path,
                  "JSON config file (defaults cover every key)");
  cmd->add_option_function<std::vector<std::size_t>>(
         "-n,--n",
         [ov](const std::vector<std::size_t>& v) { ov->n_list = v; },
         "candidate counts, comma separated")
      ->delimiter(',');
  cmd->add_option_function<std::size_t>(
      "--trials", [ov](std::size_t v) { ov->trials = v; },
      "Monte Carlo trials per n");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [ov](std::uint64_t v) { ov->seed = v; }, "random seed");
  cmd->add_option_function<std::string>(
         "--fading", [ov](const std::string& v) { ov->fading = v; },
         "fading model: lognormal or rayleigh")
      ->check(CLI::IsMember({"lognormal", "rayleigh"}));
  cmd->add_option_function<std::string>(
      "-o,--output-dir", [ov](const std::string& v) { ov->output_dir = v; },
      "artifact directory (default: $WPTRELAY_OUTDIR or ./out)");
  cmd->add_option_function<double>(
      "--resolution", [ov](double v) { ov->resolution = v; },
      "spatial integration cell size in meters");
  cmd->add_option_function<double>(
      "--quad-tol", [ov](double v) { ov->quad_tol = v; },
      "absolute tolerance of the fading quadrature");
  cmd->add_option_function<double>(
      "--reward-c", [ov](double v) { ov->reward_c = v; },
      "communication success reward");
  cmd->add_option_function<int>(
      "--threads", [ov](int v) { ov->threads = v; },
      "worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wptrelay: auction-based relay selection with wireless power transfer "
      "as payment -- Monte Carlo experiments and analytic outage curves"};
  app.require_subcommand(1);

  Overrides ov;
  CLI::App* simulate =
      app.add_subcommand("simulate", "run all three mechanisms per n and "
                                     "write aggregate statistics");
  add_common_options(simulate, &ov);
  simulate->add_flag("--with-analytic", ov.with_analytic,
                     "append the analytic outage column");

  CLI::App* analytic = app.add_subcommand(
      "analytic", "outage probabilities by numerical integration");
  add_common_options(analytic, &ov);

  CLI::App* heatmap = app.add_subcommand(
      "heatmap", "per-position conditional candidate outage grid");
  add_common_options(heatmap, &ov);
  heatmap->add_option_function<double>(
      "--heatmap-resolution",
      [&ov](double v) { ov.heatmap_resolution = v; },
      "heatmap cell size in meters");

  CLI::App* critical = app.add_subcommand(
      "critical-c", "success reward at which both auctions tie");
  add_common_options(critical, &ov);

  CLI::App* regularity = app.add_subcommand(
      "check-regularity", "minimum virtual-valuation slope per fading model");
  add_common_options(regularity, &ov);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const wptrelay::RunConfig cfg = resolve_config(ov);
    if (simulate->parsed()) {
      wptrelay::run_simulate(cfg, std::cout);
    } else if (analytic->parsed()) {
      wptrelay::run_analytic(cfg, std::cout);
    } else if (heatmap->parsed()) {
      wptrelay::run_heatmap(cfg, std::cout);
    } else if (critical->parsed()) {
      wptrelay::run_critical_c(cfg, std::cout);
    } else if (regularity->parsed()) {
      wptrelay::run_check_regularity(cfg, std::cout);
    }
    return kExitOk;
  } catch (const wptrelay::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const wptrelay::GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const wptrelay::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }
}
