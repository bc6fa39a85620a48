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

#include "wptrelay/cli.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "wptrelay/analytic.hpp"
#include "wptrelay/errors.hpp"
#include "wptrelay/mechanism.hpp"
#include "wptrelay/simulate.hpp"

namespace wptrelay {

namespace {

namespace fs = std::filesystem;

fs::path prepare_output_dir(const RunConfig& config) {
  if (config.output_dir.empty()) {
    throw ConfigError("output directory is not set");
  }
  const fs::path dir(config.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + config.output_dir +
                      "': " + ec.message());
  }
  return dir;
}

std::ofstream open_artifact(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

void echo_resolved_config(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);
  std::ofstream out = open_artifact(dir / "resolved_config.json");
  out << config_to_json(config).dump(2) << "\n";
}

void run_simulate(const RunConfig& config, std::ostream& log) {
  const fs::path dir = prepare_output_dir(config);
  const Environment env = make_environment(config);
  const SystemParams params = make_system_params(config);

  AnalyticOutageColumns analytic;
  if (config.simulate_with_analytic) {
    const OutageComponents components =
        outage_components(env, params, config.grid_resolution_m,
                          config.quadrature_tol, config.threads);
    for (std::size_t n : config.n_list) {
      const OutageBreakdown b = combine_outage(components, n);
      analytic[n] = {b.p_out_star, b.p_out_myerson};
    }
  }

  std::vector<AggregateStats> stats;
  stats.reserve(config.n_list.size());
  for (std::size_t n : config.n_list) {
    const std::vector<TrialRecord> records = run_trials(
        env, params, n, config.trials, config.seed, config.threads);
    stats.push_back(aggregate(records, n));
    const MechanismStats& v = stats.back().vickrey;
    const MechanismStats& m = stats.back().myerson;
    log << "simulate n=" << n << " trials=" << config.trials
        << " outage vickrey=" << v.outage_rate
        << " myerson=" << m.outage_rate << "\n";
  }

  std::ofstream out = open_artifact(dir / "simulate.csv");
  write_aggregate_csv(stats, out,
                      config.simulate_with_analytic ? &analytic : nullptr);
  echo_resolved_config(config);
  log << "wrote " << (dir / "simulate.csv").string() << "\n";
}

void run_analytic(const RunConfig& config, std::ostream& log) {
  const fs::path dir = prepare_output_dir(config);
  const Environment env = make_environment(config);
  const SystemParams params = make_system_params(config);

  const OutageComponents components =
      outage_components(env, params, config.grid_resolution_m,
                        config.quadrature_tol, config.threads);
  nlohmann::json per_n = nlohmann::json::array();
  for (std::size_t n : config.n_list) {
    const OutageBreakdown b = combine_outage(components, n);
    per_n.push_back({{"n", n},
                     {"p_out_star", b.p_out_star},
                     {"p_out_myerson_gap", b.p_out_myerson_gap},
                     {"p_out_myerson", b.p_out_myerson}});
  }
  const OutageBreakdown base = combine_outage(components, 1);
  const nlohmann::json doc = {
      {"p_out_source", base.p_out_source},
      {"p_out_candidate", base.p_out_candidate},
      {"p_out_candidate_error", base.candidate_error_estimate},
      {"p_below_pmax", base.p_below_pmax},
      {"p_below_threshold", base.p_below_threshold},
      {"p_below_threshold_error", base.threshold_error_estimate},
      {"gap_mass", base.gap_mass},
      {"per_n", per_n},
  };
  std::ofstream out = open_artifact(dir / "analytic.json");
  out << doc.dump(2) << "\n";
  echo_resolved_config(config);
  log << "p_out_source=" << base.p_out_source
      << " p_out_candidate=" << base.p_out_candidate
      << " gap_mass=" << base.gap_mass << "\n";
  log << "wrote " << (dir / "analytic.json").string() << "\n";
}

void run_heatmap(const RunConfig& config, std::ostream& log) {
  const fs::path dir = prepare_output_dir(config);
  const Environment env = make_environment(config);
  const SystemParams params = make_system_params(config);
  const Heatmap map =
      outage_heatmap(env, params, config.heatmap_resolution_m,
                     config.quadrature_tol, config.threads);
  std::ofstream out = open_artifact(dir / "heatmap.csv");
  write_heatmap_csv(map, out);
  echo_resolved_config(config);
  log << "wrote " << (dir / "heatmap.csv").string() << " ("
      << map.xs.size() << "x" << map.ys.size() << " cells)\n";
}

void run_critical_c(const RunConfig& config, std::ostream& log) {
  const fs::path dir = prepare_output_dir(config);
  const Environment env = make_environment(config);
  const SystemParams params = make_system_params(config);

  std::vector<CriticalReward> rows;
  rows.reserve(config.n_list.size());
  for (std::size_t n : config.n_list) {
    const std::vector<TrialRecord> records = run_trials(
        env, params, n, config.trials, config.seed, config.threads);
    const AggregateStats stats = aggregate(records, n);
    rows.push_back(critical_reward(stats.vickrey, stats.myerson, params));
    log << "critical-c n=" << n << " c_star=" << rows.back().c_star
        << " valid=" << rows.back().valid << "\n";
  }
  std::ofstream out = open_artifact(dir / "critical_c.csv");
  write_critical_reward_csv(rows, out);
  echo_resolved_config(config);
  log << "wrote " << (dir / "critical_c.csv").string() << "\n";
}

void run_check_regularity(const RunConfig& config, std::ostream& log) {
  const fs::path dir = prepare_output_dir(config);
  const SystemParams params = make_system_params(config);

  // Slopes are scale-free in fading_cost/cost_scale, so a unit cost scale
  // and a 12-decade grid around it cover the operating range.
  const std::vector<double> grid = log_grid(1e-6, 1e6, 241);
  nlohmann::json models = nlohmann::json::array();
  const auto report = [&](const std::string& name, const FadingModel& model) {
    const double slope = check_regularity(model, 1.0, grid);
    models.push_back({{"model", name},
                      {"min_slope", slope},
                      {"regular", slope >= 0.0}});
    log << "check-regularity " << name << " min_slope=" << slope
        << (slope >= 0.0 ? " (regular)" : " (NOT regular)") << "\n";
  };
  if (fading_kind(config) == FadingKind::rayleigh) {
    report("rayleigh(psi=" + std::to_string(config.rayleigh_psi) + ")",
           params.fading_los);
  } else {
    report("lognormal_los(sigma_db=" +
               std::to_string(config.lognormal_sigma_los_db) + ")",
           params.fading_los);
    report("lognormal_nlos(sigma_db=" +
               std::to_string(config.lognormal_sigma_nlos_db) + ")",
           params.fading_nlos);
  }
  std::ofstream out = open_artifact(dir / "regularity.json");
  out << nlohmann::json{{"models", models}}.dump(2) << "\n";
  echo_resolved_config(config);
  log << "wrote " << (dir / "regularity.json").string() << "\n";
}

}  // namespace wptrelay
