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

#include <cstddef>
#include <vector>

#include "wptrelay/channel.hpp"
#include "wptrelay/geometry.hpp"

namespace wptrelay {

/// One candidate relay in a sampled world.
///
/// The valuation is the source transmit power that exactly compensates the
/// candidate: first_hop_power to reach it plus relay_power/wpt_efficiency to
/// refund its own transmission through the harvesting chain. cost_scale is
/// the constant in valuation = first_hop_power + cost_scale / fading, the
/// piece the auctioneer knows without observing the candidate's downlink.
struct CandidateState {
  Point position;
  double gain_to_source;     // source-to-candidate channel power
  double gain_to_ap;         // candidate-to-AP channel power
  double wpt_efficiency;     // end-to-end harvested fraction
  double first_hop_power_mw;  // min source power to reach the candidate
  double relay_power_mw;      // min candidate power to reach the AP
  double cost_scale_mw;
  double valuation_mw;
};

/// One sampled world: the source's own direct-link state plus all candidates.
struct TrialRealization {
  double gain_source_ap;  // NLOS source-to-AP channel power
  double direct_power_mw;  // min power for the direct link
  double source_valuation_mw;  // min(direct_power, p_max)
  bool source_feasible;        // direct_power <= p_max
  std::vector<CandidateState> candidates;
};

/// End-to-end harvested fraction h_si * A_r * alpha.
double wpt_efficiency(double gain_to_source, const SystemParams& params);

/// Power banked by the winner when the source allocates p_wpt to transfer.
double harvested_power(double p_wpt_mw, double efficiency);

struct SourceValuation {
  double v0_mw;
  bool feasible;
};

/// Direct-link valuation min(zeta/h_s, p_max) with the feasibility flag.
SourceValuation source_valuation(double gain_source_ap, double min_rx_power_mw,
                                 double p_max_mw);

/// Fills the channel-derived fields of a candidate from its two link gains.
CandidateState candidate_valuation(double gain_to_source, double gain_to_ap,
                                   double min_rx_power_mw,
                                   const SystemParams& params);

/// Samples one world: candidate positions uniform over the dual-LOS region,
/// NLOS fading on the source-to-AP link, LOS fading on both candidate links.
TrialRealization realize_trial(const Environment& env,
                               const SystemParams& params, std::size_t n,
                               RngStream& rng);

}  // namespace wptrelay
