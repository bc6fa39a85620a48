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

#include "wptrelay/config.hpp"

#include <fstream>
#include <set>

#include "wptrelay/errors.hpp"

namespace wptrelay {

namespace {

using nlohmann::json;

class KeyChecker {
public:
  KeyChecker(const json& j, std::string scope)
      : object_(j), scope_(std::move(scope)) {
    if (!object_.is_object()) {
      throw ConfigError(scope_ + ": expected a JSON object");
    }
  }

  template <typename T>
  void take(const char* key, T* out) {
    seen_.insert(key);
    const auto it = object_.find(key);
    if (it == object_.end()) return;  // keep the default
    try {
      *out = it->get<T>();
    } catch (const json::exception&) {
      throw ConfigError(scope_ + "." + key + ": wrong type");
    }
  }

  void finish() const {
    for (const auto& item : object_.items()) {
      if (seen_.count(item.key()) == 0) {
        throw ConfigError(scope_ + ": unknown key '" + item.key() + "'");
      }
    }
  }

private:
  const json& object_;
  std::string scope_;
  std::set<std::string> seen_;
};

void validate(const RunConfig& c) {
  if (c.fading != "lognormal" && c.fading != "rayleigh") {
    if (c.fading == "rician") {
      throw ConfigError(
          "fading: 'rician' is not supported; its virtual valuation is not "
          "monotone (the auction is not regular), so the Myerson payment "
          "rule is undefined without ironing");
    }
    throw ConfigError("fading: expected 'lognormal' or 'rayleigh', got '" +
                      c.fading + "'");
  }
  if (c.lognormal_sigma_scale != "db" && c.lognormal_sigma_scale != "natural") {
    throw ConfigError(
        "lognormal_sigma_scale: expected 'db' or 'natural', got '" +
        c.lognormal_sigma_scale + "'");
  }
  if (c.trials == 0) throw ConfigError("trials: must be at least 1");
  if (!(c.grid_resolution_m > 0.0)) {
    throw ConfigError("grid_resolution_m: must be positive");
  }
  if (!(c.heatmap_resolution_m > 0.0)) {
    throw ConfigError("heatmap_resolution_m: must be positive");
  }
  if (!(c.quadrature_tol > 0.0)) {
    throw ConfigError("quadrature_tol: must be positive");
  }
  if (c.n_list.empty()) throw ConfigError("n_list: must not be empty");
  // Physics invariants and geometry run through the same validators the
  // library applies everywhere else.
  make_system_params(c).validate();
  make_environment(c).validate();
}

}  // namespace

RunConfig default_config() { return RunConfig{}; }

RunConfig config_from_json(const json& j) {
  RunConfig c;
  KeyChecker root(j, "config");
  root.take("source_x_m", &c.source_x_m);
  root.take("source_y_m", &c.source_y_m);

  json blockages_json;
  root.take("blockages", &blockages_json);
  if (!blockages_json.is_null()) {
    if (!blockages_json.is_array()) {
      throw ConfigError("config.blockages: expected an array");
    }
    c.blockages.clear();
    std::size_t index = 0;
    for (const json& bj : blockages_json) {
      KeyChecker checker(bj, "config.blockages[" + std::to_string(index) + "]");
      RunConfig::Blockage b;
      checker.take("center_x_m", &b.center_x_m);
      checker.take("center_y_m", &b.center_y_m);
      checker.take("radius_m", &b.radius_m);
      checker.finish();
      c.blockages.push_back(b);
      ++index;
    }
  }

  root.take("box_min_x_m", &c.box_min_x_m);
  root.take("box_min_y_m", &c.box_min_y_m);
  root.take("box_max_x_m", &c.box_max_x_m);
  root.take("box_max_y_m", &c.box_max_y_m);
  root.take("noise_dbm", &c.noise_dbm);
  root.take("p_max_mw", &c.p_max_mw);
  root.take("t_s", &c.t_s);
  root.take("d_bits_per_hz", &c.d_bits_per_hz);
  root.take("alpha", &c.alpha);
  root.take("aperture_m2", &c.aperture_m2);
  root.take("reward_c", &c.reward_c);
  root.take("pathloss_k_los_db", &c.pathloss_k_los_db);
  root.take("pathloss_eta_los", &c.pathloss_eta_los);
  root.take("pathloss_k_nlos_db", &c.pathloss_k_nlos_db);
  root.take("pathloss_eta_nlos", &c.pathloss_eta_nlos);
  root.take("fading", &c.fading);
  root.take("lognormal_sigma_los_db", &c.lognormal_sigma_los_db);
  root.take("lognormal_sigma_nlos_db", &c.lognormal_sigma_nlos_db);
  root.take("lognormal_sigma_scale", &c.lognormal_sigma_scale);
  root.take("rayleigh_psi", &c.rayleigh_psi);
  root.take("n_list", &c.n_list);
  root.take("trials", &c.trials);
  root.take("seed", &c.seed);
  root.take("output_dir", &c.output_dir);
  root.take("grid_resolution_m", &c.grid_resolution_m);
  root.take("quadrature_tol", &c.quadrature_tol);
  root.take("heatmap_resolution_m", &c.heatmap_resolution_m);
  root.take("threads", &c.threads);
  root.take("simulate_with_analytic", &c.simulate_with_analytic);
  root.finish();

  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " +
                      e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& c) {
  json blockages = json::array();
  for (const RunConfig::Blockage& b : c.blockages) {
    blockages.push_back(json{{"center_x_m", b.center_x_m},
                             {"center_y_m", b.center_y_m},
                             {"radius_m", b.radius_m}});
  }
  return json{
      {"source_x_m", c.source_x_m},
      {"source_y_m", c.source_y_m},
      {"blockages", blockages},
      {"box_min_x_m", c.box_min_x_m},
      {"box_min_y_m", c.box_min_y_m},
      {"box_max_x_m", c.box_max_x_m},
      {"box_max_y_m", c.box_max_y_m},
      {"noise_dbm", c.noise_dbm},
      {"p_max_mw", c.p_max_mw},
      {"t_s", c.t_s},
      {"d_bits_per_hz", c.d_bits_per_hz},
      {"alpha", c.alpha},
      {"aperture_m2", c.aperture_m2},
      {"reward_c", c.reward_c},
      {"pathloss_k_los_db", c.pathloss_k_los_db},
      {"pathloss_eta_los", c.pathloss_eta_los},
      {"pathloss_k_nlos_db", c.pathloss_k_nlos_db},
      {"pathloss_eta_nlos", c.pathloss_eta_nlos},
      {"fading", c.fading},
      {"lognormal_sigma_los_db", c.lognormal_sigma_los_db},
      {"lognormal_sigma_nlos_db", c.lognormal_sigma_nlos_db},
      {"lognormal_sigma_scale", c.lognormal_sigma_scale},
      {"rayleigh_psi", c.rayleigh_psi},
      {"n_list", c.n_list},
      {"trials", c.trials},
      {"seed", c.seed},
      {"output_dir", c.output_dir},
      {"grid_resolution_m", c.grid_resolution_m},
      {"quadrature_tol", c.quadrature_tol},
      {"heatmap_resolution_m", c.heatmap_resolution_m},
      {"threads", c.threads},
      {"simulate_with_analytic", c.simulate_with_analytic},
  };
}

Environment make_environment(const RunConfig& c) {
  Environment env;
  env.source = Point(c.source_x_m, c.source_y_m);
  for (const RunConfig::Blockage& b : c.blockages) {
    env.blockages.push_back(Disk{Point(b.center_x_m, b.center_y_m), b.radius_m});
  }
  env.sampling_box = Eigen::AlignedBox2d(Point(c.box_min_x_m, c.box_min_y_m),
                                         Point(c.box_max_x_m, c.box_max_y_m));
  return env;
}

SystemParams make_system_params(const RunConfig& c) {
  const bool natural = c.lognormal_sigma_scale == "natural";
  const auto lognormal = [natural](double sigma) {
    return natural ? FadingModel::lognormal_from_natural(sigma)
                   : FadingModel::lognormal_from_db(sigma);
  };
  SystemParams p{
      db_to_linear(c.noise_dbm),
      c.p_max_mw,
      c.t_s,
      c.d_bits_per_hz,
      c.alpha,
      c.aperture_m2,
      c.reward_c,
      PathLossParams{c.pathloss_k_los_db, c.pathloss_eta_los,
                     c.pathloss_k_nlos_db, c.pathloss_eta_nlos},
      lognormal(c.lognormal_sigma_los_db),
      lognormal(c.lognormal_sigma_nlos_db),
  };
  if (c.fading == "rayleigh") {
    p.fading_los = FadingModel::rayleigh(c.rayleigh_psi);
    p.fading_nlos = FadingModel::rayleigh(c.rayleigh_psi);
  }
  return p;
}

FadingKind fading_kind(const RunConfig& c) {
  return c.fading == "rayleigh" ? FadingKind::rayleigh : FadingKind::lognormal;
}

}  // namespace wptrelay
