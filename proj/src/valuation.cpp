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

#include "wptrelay/valuation.hpp"

#include <cmath>

#include "wptrelay/errors.hpp"

namespace wptrelay {

double wpt_efficiency(double gain_to_source, const SystemParams& params) {
  return gain_to_source * params.aperture_m2 * params.alpha;
}

double harvested_power(double p_wpt_mw, double efficiency) {
  return efficiency * p_wpt_mw;
}

SourceValuation source_valuation(double gain_source_ap,
                                 double min_rx_power_mw, double p_max_mw) {
  const double direct_power = min_rx_power_mw / gain_source_ap;
  const bool feasible = direct_power <= p_max_mw;
  return SourceValuation{feasible ? direct_power : p_max_mw, feasible};
}

CandidateState candidate_valuation(double gain_to_source, double gain_to_ap,
                                   double min_rx_power_mw,
                                   const SystemParams& params) {
  CandidateState c;
  c.position = Point::Zero();
  c.gain_to_source = gain_to_source;
  c.gain_to_ap = gain_to_ap;
  c.wpt_efficiency = wpt_efficiency(gain_to_source, params);
  c.first_hop_power_mw = min_rx_power_mw / gain_to_source;
  c.relay_power_mw = min_rx_power_mw / gain_to_ap;
  c.valuation_mw = c.first_hop_power_mw + c.relay_power_mw / c.wpt_efficiency;
  // cost_scale needs the path-loss/fading split of gain_to_ap, which only the
  // trial sampler has; it stays zero in this fragment.
  c.cost_scale_mw = 0.0;
  return c;
}

TrialRealization realize_trial(const Environment& env,
                               const SystemParams& params, std::size_t n,
                               RngStream& rng) {
  const double zeta = min_received_power(params);

  TrialRealization trial;
  const std::vector<Point> positions = sample_positions(env, n, rng);

  const double source_dist = env.source.norm();
  const double source_pl =
      path_loss_gain(source_dist, params.pathloss, LinkClass::nlos);
  trial.gain_source_ap = source_pl * sample_fading(params.fading_nlos, rng);
  trial.direct_power_mw = zeta / trial.gain_source_ap;
  const SourceValuation sv =
      source_valuation(trial.gain_source_ap, zeta, params.p_max_mw);
  trial.source_valuation_mw = sv.v0_mw;
  trial.source_feasible = sv.feasible;

  trial.candidates.reserve(n);
  for (const Point& q : positions) {
    const double pl_to_source =
        path_loss_gain((q - env.source).norm(), params.pathloss, LinkClass::los);
    const double pl_to_ap =
        path_loss_gain(q.norm(), params.pathloss, LinkClass::los);
    const double h_si = pl_to_source * sample_fading(params.fading_los, rng);
    const double h_i = pl_to_ap * sample_fading(params.fading_los, rng);
    CandidateState c = candidate_valuation(h_si, h_i, zeta, params);
    c.position = q;
    // The cost scale divides out the fading draw, leaving path loss only.
    c.cost_scale_mw = zeta / (pl_to_ap * c.wpt_efficiency);
    trial.candidates.push_back(c);
  }
  return trial;
}

}  // namespace wptrelay
