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
//
// Relay-selection mechanisms. Three variants run on the same inputs:
//
//  * run_baseline — cooperative reference: the cheapest participant serves
//    at exact cost, so candidates harvest nothing beyond their expense.
//  * run_vickrey  — sealed-bid second-price reverse auction: lowest
//    valuation wins, winner is paid the runner-up valuation. Never misses
//    a feasible relay.
//  * run_myerson  — virtual-valuation reverse auction: minimizes the
//    source's expected spend, at the price of occasionally rejecting a
//    feasible relay when the source itself cannot transmit.
//
// Index 0 always denotes the source bidding for its own direct link.

#include <cstddef>
#include <vector>

#include "wptrelay/channel.hpp"
#include "wptrelay/valuation.hpp"

namespace wptrelay {

struct CandidateBid {
  double valuation_mw;
  double cost_scale_mw;
  double first_hop_power_mw;
  double wpt_efficiency;
};

struct AuctionInput {
  double source_valuation_mw;  // capped at p_max by construction
  bool source_feasible;
  std::vector<CandidateBid> candidates;
  FadingModel fading_los;
};

AuctionInput to_auction_input(const TrialRealization& trial,
                              const SystemParams& params);

struct AuctionOutcome {
  std::size_t winner = 0;        // 0 = source, 1..n = candidate index
  double payment_mw = 0.0;       // total source transmit power
  bool communicated = false;
  double source_power_mw = 0.0;  // equals payment; 0 on outage
  double net_harvest_mw = 0.0;   // winner's power gain beyond its cost
};

AuctionOutcome run_baseline(const AuctionInput& input);
AuctionOutcome run_vickrey(const AuctionInput& input);
AuctionOutcome run_myerson(const AuctionInput& input);

/// Virtual valuation of the fading-driven cost component,
/// c(x) = x + F(x)/f(x) for the distribution of cost_scale / fading.
/// Rayleigh: x + 2*x^2*psi^2 / scale (closed form).
/// Lognormal: x * (1 + sigma * Phi(u)/phi(u)), u = ln(x/scale)/sigma.
double virtual_valuation(double fading_cost_mw, double cost_scale_mw,
                         const FadingModel& model);

/// Unique x with virtual_valuation(x) = target. Rayleigh inverts the
/// quadratic in closed form; lognormal bisects (the map is onto (0, inf)
/// and dominates the identity, so [tiny, target] always brackets).
double inverse_virtual_valuation(double target_mw, double cost_scale_mw,
                                 const FadingModel& model);

/// Bisection path for any model; the Rayleigh closed form is checked
/// against this in tests.
double inverse_virtual_valuation_bisect(double target_mw, double cost_scale_mw,
                                        const FadingModel& model);

/// Minimum difference quotient of ys over xs (both sorted by xs).
double min_difference_quotient(const std::vector<double>& xs,
                               const std::vector<double>& ys);

/// Minimum finite-difference slope of the virtual valuation over the grid;
/// the auction is regular iff this is nonnegative.
double check_regularity(const FadingModel& model, double cost_scale_mw,
                        const std::vector<double>& fading_cost_grid);

/// Log-spaced grid of n points covering [lo, hi], for regularity scans.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace wptrelay
