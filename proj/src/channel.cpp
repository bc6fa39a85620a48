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

#include "wptrelay/channel.hpp"

#include <cmath>
#include <string>

#include "wptrelay/errors.hpp"
#include "wptrelay/numeric.hpp"

namespace wptrelay {

namespace {
constexpr double kLn10Over10 = 0.23025850929940457;
}

FadingModel FadingModel::lognormal_from_db(double sigma_db) {
  if (!(sigma_db > 0.0)) {
    throw ConfigError("lognormal fading: sigma_db must be positive");
  }
  return FadingModel(Lognormal{sigma_db * kLn10Over10});
}

FadingModel FadingModel::lognormal_from_natural(double sigma_ln) {
  if (!(sigma_ln > 0.0)) {
    throw ConfigError("lognormal fading: sigma_ln must be positive");
  }
  return FadingModel(Lognormal{sigma_ln});
}

FadingModel FadingModel::rayleigh(double psi) {
  if (!(psi > 0.0)) {
    throw ConfigError("rayleigh fading: psi must be positive");
  }
  return FadingModel(Rayleigh{psi});
}

double FadingModel::mean_power() const {
  if (is_lognormal()) {
    const double s = sigma_ln();
    return std::exp(0.5 * s * s);
  }
  return 2.0 * psi() * psi();
}

void SystemParams::validate() const {
  if (!(noise_mw > 0.0)) throw ConfigError("noise power must be positive");
  if (!(p_max_mw > 0.0)) throw ConfigError("p_max_mw must be positive");
  if (!(t_s > 0.0)) throw ConfigError("t_s must be positive");
  if (!(d_bits_per_hz > 0.0)) {
    throw ConfigError("d_bits_per_hz must be positive");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in (0, 1]");
  }
  if (!(aperture_m2 > 0.0)) throw ConfigError("aperture_m2 must be positive");
  if (!(pathloss.eta_los > 0.0 && pathloss.eta_nlos > 0.0)) {
    throw ConfigError("path loss exponents must be positive");
  }
  if (!(reward_c > t_s * p_max_mw)) {
    throw ConfigError(
        "reward_c must exceed t_s * p_max_mw (" +
        std::to_string(t_s * p_max_mw) +
        "), otherwise the source can prefer silence over communicating");
  }
}

SystemParams default_system_params(FadingKind kind) {
  const double inv_sqrt2 = 0.70710678118654752440;
  SystemParams p{
      /*noise_mw=*/db_to_linear(-75.0),
      /*p_max_mw=*/100.0,
      /*t_s=*/1.0,
      /*d_bits_per_hz=*/8.0,
      /*alpha=*/0.2,
      /*aperture_m2=*/0.01,
      /*reward_c=*/150.0,
      /*pathloss=*/PathLossParams{0.0, 2.5, -25.0, 5.76},
      /*fading_los=*/FadingModel::lognormal_from_db(8.66),
      /*fading_nlos=*/FadingModel::lognormal_from_db(9.02),
  };
  if (kind == FadingKind::rayleigh) {
    p.fading_los = FadingModel::rayleigh(inv_sqrt2);
    p.fading_nlos = FadingModel::rayleigh(inv_sqrt2);
  }
  return p;
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double linear_to_db(double gain) { return 10.0 * std::log10(gain); }

double path_loss_gain(double d_m, const PathLossParams& params,
                      LinkClass cls) {
  if (!(d_m > 0.0)) {
    throw NumericalError("path_loss_gain: distance must be positive, got " +
                         std::to_string(d_m));
  }
  const double k_db = cls == LinkClass::los ? params.k_los_db : params.k_nlos_db;
  const double eta = cls == LinkClass::los ? params.eta_los : params.eta_nlos;
  return db_to_linear(k_db) * std::pow(d_m, -eta);
}

double fading_cdf(const FadingModel& model, double h) {
  if (!(h > 0.0)) return 0.0;
  if (model.is_lognormal()) {
    return normal_cdf(std::log(h) / model.sigma_ln());
  }
  const double mean = 2.0 * model.psi() * model.psi();
  return -std::expm1(-h / mean);
}

double fading_pdf(const FadingModel& model, double h) {
  if (!(h > 0.0)) {
    // Exponential density is flat at the origin; lognormal vanishes.
    if (h == 0.0 && model.is_rayleigh()) {
      return 1.0 / (2.0 * model.psi() * model.psi());
    }
    return 0.0;
  }
  if (model.is_lognormal()) {
    const double s = model.sigma_ln();
    return normal_pdf(std::log(h) / s) / (h * s);
  }
  const double mean = 2.0 * model.psi() * model.psi();
  return std::exp(-h / mean) / mean;
}

double sample_fading(const FadingModel& model, RngStream& rng) {
  if (model.is_lognormal()) {
    return std::exp(model.sigma_ln() * rng.normal());
  }
  return rng.exponential(2.0 * model.psi() * model.psi());
}

double max_rate(double p_tx_mw, double h, double noise_mw) {
  return std::log2(1.0 + p_tx_mw * h / noise_mw);
}

double min_received_power(const SystemParams& params) {
  return (std::exp2(params.d_bits_per_hz / params.t_s) - 1.0) *
         params.noise_mw;
}

}  // namespace wptrelay
