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

#include <variant>

#include "wptrelay/rng.hpp"

namespace wptrelay {

enum class LinkClass { los, nlos };

/// Power-law path loss, gain = 10^(K_dB/10) * d^(-eta), with separate
/// intercept/exponent pairs for LOS and NLOS links.
struct PathLossParams {
  double k_los_db = 0.0;
  double eta_los = 2.5;
  double k_nlos_db = -25.0;
  double eta_nlos = 5.76;
};

/// Small-scale fading distribution of the linear channel power.
///
/// Lognormal holds the natural-log standard deviation sigma_ln; measurement
/// tables quote the dB-domain spread, and the two scales differ by
/// ln(10)/10, so construction is explicit about which one is supplied.
/// Rayleigh is parameterized by the amplitude scale psi; the power is then
/// exponential with mean 2*psi^2.
class FadingModel {
public:
  struct Lognormal {
    double sigma_ln;
  };
  struct Rayleigh {
    double psi;
  };

  static FadingModel lognormal_from_db(double sigma_db);
  static FadingModel lognormal_from_natural(double sigma_ln);
  static FadingModel rayleigh(double psi);

  bool is_lognormal() const {
    return std::holds_alternative<Lognormal>(model_);
  }
  bool is_rayleigh() const { return std::holds_alternative<Rayleigh>(model_); }
  double sigma_ln() const { return std::get<Lognormal>(model_).sigma_ln; }
  double psi() const { return std::get<Rayleigh>(model_).psi; }
  /// Mean of the linear power (exp(sigma^2/2) lognormal, 2*psi^2 Rayleigh).
  double mean_power() const;

private:
  explicit FadingModel(Lognormal m) : model_(m) {}
  explicit FadingModel(Rayleigh m) : model_(m) {}
  std::variant<Lognormal, Rayleigh> model_;
};

enum class FadingKind { lognormal, rayleigh };

/// All scalar physics and protocol constants, already in linear units
/// (milliwatts, meters, seconds); dB/dBm conversion happens once, at load.
struct SystemParams {
  double noise_mw;
  double p_max_mw;
  double t_s;
  double d_bits_per_hz;
  double alpha;  // harvesting circuit efficiency, (0, 1]
  double aperture_m2;
  double reward_c;  // success reward in the same units as energy (mW*s)
  PathLossParams pathloss;
  FadingModel fading_los;
  FadingModel fading_nlos;

  void validate() const;  // throws ConfigError
};

/// Defaults: K_LOS=0 dB, eta_LOS=2.5, K_NLOS=-25 dB, eta_NLOS=5.76,
/// sigma_dB 8.66 (LOS) / 9.02 (NLOS) or psi=1/sqrt(2), noise -75 dBm,
/// P_max=100 mW, T=1 s, D=8 bit/Hz, alpha=0.2, A_r=0.01 m^2, C=150 mW*s.
SystemParams default_system_params(FadingKind kind);

double db_to_linear(double x_db);
double linear_to_db(double gain);

/// K * d^(-eta) for the given link class; rejects d <= 0.
double path_loss_gain(double d_m, const PathLossParams& params, LinkClass cls);

double fading_cdf(const FadingModel& model, double h);
double fading_pdf(const FadingModel& model, double h);
double sample_fading(const FadingModel& model, RngStream& rng);

/// Shannon spectral efficiency log2(1 + p*h/noise) in bit/s/Hz.
double max_rate(double p_tx_mw, double h, double noise_mw);

/// Received power needed to sustain D/T bit/s/Hz: (2^(D/T) - 1) * noise.
double min_received_power(const SystemParams& params);

}  // namespace wptrelay
