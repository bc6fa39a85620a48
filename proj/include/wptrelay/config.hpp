#pragma once
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

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "wptrelay/channel.hpp"
#include "wptrelay/geometry.hpp"

namespace wptrelay {

/// Flat, unit-explicit run configuration as read from the JSON file.
/// Every dB/dBm quantity carries the unit in its key name; linear-unit
/// conversion happens once, in make_system_params. Unknown keys are
/// rejected so a typo cannot silently fall back to a default.
struct RunConfig {
  // geometry (meters)
  double source_x_m = 5.76;
  double source_y_m = 5.76;
  struct Blockage {
    double center_x_m = 2.88;
    double center_y_m = 2.88;
    double radius_m = 1.5;
    bool operator==(const Blockage&) const = default;
  };
  std::vector<Blockage> blockages = {Blockage{}};
  double box_min_x_m = -2.0;
  double box_min_y_m = -2.0;
  double box_max_x_m = 8.0;
  double box_max_y_m = 8.0;

  // physics and protocol
  double noise_dbm = -75.0;
  double p_max_mw = 100.0;
  double t_s = 1.0;
  double d_bits_per_hz = 8.0;
  double alpha = 0.2;
  double aperture_m2 = 0.01;
  double reward_c = 150.0;
  double pathloss_k_los_db = 0.0;
  double pathloss_eta_los = 2.5;
  double pathloss_k_nlos_db = -25.0;
  double pathloss_eta_nlos = 5.76;

  // fading selection
  std::string fading = "lognormal";  // "lognormal" | "rayleigh"
  double lognormal_sigma_los_db = 8.66;
  double lognormal_sigma_nlos_db = 9.02;
  // "db": sigmas above are dB-domain spreads (the measurement-table
  // convention); "natural": they are natural-log standard deviations.
  std::string lognormal_sigma_scale = "db";
  double rayleigh_psi = 0.70710678118654752440;

  // experiment controls
  std::vector<std::size_t> n_list = {1, 2, 4, 8};
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  // Empty = unresolved; the CLI falls back to $WPTRELAY_OUTDIR, then "out".
  std::string output_dir;
  double grid_resolution_m = 0.1;
  double quadrature_tol = 1e-8;
  double heatmap_resolution_m = 0.25;
  int threads = 0;  // 0 = hardware concurrency
  bool simulate_with_analytic = false;  // append analytic outage column

  bool operator==(const RunConfig&) const = default;
};

RunConfig default_config();

/// Parses and validates; throws ConfigError on unknown keys, wrong types,
/// or violated physics invariants, GeometryError on impossible geometry.
RunConfig load_config(const std::string& path);
RunConfig config_from_json(const nlohmann::json& j);

/// Fully resolved echo; reloading it reproduces identical runs.
nlohmann::json config_to_json(const RunConfig& config);

Environment make_environment(const RunConfig& config);
SystemParams make_system_params(const RunConfig& config);
FadingKind fading_kind(const RunConfig& config);

}  // namespace wptrelay
