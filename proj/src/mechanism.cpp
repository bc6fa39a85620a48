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

#include "wptrelay/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wptrelay/errors.hpp"
#include "wptrelay/numeric.hpp"

namespace wptrelay {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Winner when the source keeps the job: transmits at its valuation if the
// direct link is feasible, otherwise stays silent (outage).
AuctionOutcome source_wins(const AuctionInput& input) {
  AuctionOutcome out;
  out.winner = 0;
  out.communicated = input.source_feasible;
  out.payment_mw = input.source_feasible ? input.source_valuation_mw : 0.0;
  out.source_power_mw = out.payment_mw;
  out.net_harvest_mw = 0.0;
  return out;
}

AuctionOutcome candidate_wins(const AuctionInput& input, std::size_t winner,
                              double payment_mw) {
  const CandidateBid& bid = input.candidates[winner - 1];
  AuctionOutcome out;
  out.winner = winner;
  out.communicated = true;
  out.payment_mw = payment_mw;
  out.source_power_mw = payment_mw;
  out.net_harvest_mw = bid.wpt_efficiency * (payment_mw - bid.valuation_mw);
  return out;
}

// Index of the lowest value; ties resolve to the lowest index, so the
// source (index 0) beats an equal candidate.
std::size_t argmin_index(const std::vector<double>& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

void require_regular_model(const FadingModel& model) {
  if (!model.is_lognormal() && !model.is_rayleigh()) {
    throw NumericalError(
        "run_myerson: fading model lacks a monotone virtual valuation "
        "(regularity); only lognormal and Rayleigh are supported");
  }
}

}  // namespace

AuctionInput to_auction_input(const TrialRealization& trial,
                              const SystemParams& params) {
  AuctionInput input{trial.source_valuation_mw, trial.source_feasible,
                     {}, params.fading_los};
  input.candidates.reserve(trial.candidates.size());
  for (const CandidateState& c : trial.candidates) {
    input.candidates.push_back(CandidateBid{c.valuation_mw, c.cost_scale_mw,
                                            c.first_hop_power_mw,
                                            c.wpt_efficiency});
  }
  return input;
}

AuctionOutcome run_baseline(const AuctionInput& input) {
  std::vector<double> values;
  values.reserve(input.candidates.size() + 1);
  values.push_back(input.source_valuation_mw);
  for (const CandidateBid& bid : input.candidates) {
    values.push_back(bid.valuation_mw);
  }
  const std::size_t winner = argmin_index(values);
  if (winner == 0) return source_wins(input);
  return candidate_wins(input, winner, values[winner]);
}

AuctionOutcome run_vickrey(const AuctionInput& input) {
  std::vector<double> values;
  values.reserve(input.candidates.size() + 1);
  values.push_back(input.source_valuation_mw);
  for (const CandidateBid& bid : input.candidates) {
    values.push_back(bid.valuation_mw);
  }
  const std::size_t winner = argmin_index(values);
  if (winner == 0) return source_wins(input);

  double second = kInfinity;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != winner) second = std::min(second, values[i]);
  }
  return candidate_wins(input, winner, second);
}

AuctionOutcome run_myerson(const AuctionInput& input) {
  require_regular_model(input.fading_los);

  // Work in shifted space: valuation = first_hop_power + fading_cost, with
  // first_hop_power known to the auctioneer, so the virtual valuation is
  // first_hop_power + c(fading_cost) and its inverse shifts the same way.
  std::vector<double> virtuals;
  virtuals.reserve(input.candidates.size() + 1);
  virtuals.push_back(input.source_valuation_mw);
  for (const CandidateBid& bid : input.candidates) {
    const double fading_cost = bid.valuation_mw - bid.first_hop_power_mw;
    if (!(fading_cost > 0.0)) {
      throw NumericalError(
          "run_myerson: candidate valuation must exceed its first-hop power");
    }
    virtuals.push_back(
        bid.first_hop_power_mw +
        virtual_valuation(fading_cost, bid.cost_scale_mw, input.fading_los));
  }

  const std::size_t winner = argmin_index(virtuals);
  if (winner == 0) return source_wins(input);

  double rivals_best = kInfinity;
  for (std::size_t i = 0; i < virtuals.size(); ++i) {
    if (i != winner) rivals_best = std::min(rivals_best, virtuals[i]);
  }
  // Threshold payment: the highest bid at which the winner still wins.
  const CandidateBid& bid = input.candidates[winner - 1];
  const double payment =
      bid.first_hop_power_mw +
      inverse_virtual_valuation(rivals_best - bid.first_hop_power_mw,
                                bid.cost_scale_mw, input.fading_los);
  return candidate_wins(input, winner, payment);
}

double virtual_valuation(double fading_cost_mw, double cost_scale_mw,
                         const FadingModel& model) {
  if (!(fading_cost_mw > 0.0) || !(cost_scale_mw > 0.0)) {
    throw NumericalError(
        "virtual_valuation: fading cost and cost scale must be positive");
  }
  if (model.is_rayleigh()) {
    const double psi = model.psi();
    return fading_cost_mw +
           2.0 * fading_cost_mw * fading_cost_mw * psi * psi / cost_scale_mw;
  }
  const double sigma = model.sigma_ln();
  const double u = std::log(fading_cost_mw / cost_scale_mw) / sigma;
  // F/f of the cost distribution collapses to a Mills ratio of the
  // underlying normal: F(x)/f(x) = x * sigma * Phi(u)/phi(u).
  return fading_cost_mw * (1.0 + sigma * upper_mills_ratio(-u));
}

double inverse_virtual_valuation(double target_mw, double cost_scale_mw,
                                 const FadingModel& model) {
  if (!(target_mw > 0.0)) {
    throw NumericalError("inverse_virtual_valuation: target must be positive");
  }
  if (model.is_rayleigh()) {
    const double psi2 = model.psi() * model.psi();
    const double x = 8.0 * psi2 * target_mw / cost_scale_mw;
    // Positive root of 2*psi^2*v^2/scale + v - target, written to avoid
    // cancellation when x is tiny.
    return 2.0 * target_mw / (1.0 + std::sqrt(1.0 + x));
  }
  return inverse_virtual_valuation_bisect(target_mw, cost_scale_mw, model);
}

double inverse_virtual_valuation_bisect(double target_mw, double cost_scale_mw,
                                        const FadingModel& model) {
  if (!(target_mw > 0.0)) {
    throw NumericalError("inverse_virtual_valuation: target must be positive");
  }
  // c(x) >= x, so the root lies in (0, target]; 1e-30*scale is far below
  // any cost the fading tails can produce.
  const double lo = std::min(1e-30 * cost_scale_mw, 0.5 * target_mw);
  const auto c = [&](double x) {
    return virtual_valuation(x, cost_scale_mw, model);
  };
  return bisect_increasing_log(c, target_mw, lo, target_mw, 200);
}

double min_difference_quotient(const std::vector<double>& xs,
                               const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw NumericalError("min_difference_quotient: need two aligned points");
  }
  double min_slope = kInfinity;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double dx = xs[i + 1] - xs[i];
    if (!(dx > 0.0)) {
      throw NumericalError("min_difference_quotient: grid must increase");
    }
    min_slope = std::min(min_slope, (ys[i + 1] - ys[i]) / dx);
  }
  return min_slope;
}

double check_regularity(const FadingModel& model, double cost_scale_mw,
                        const std::vector<double>& fading_cost_grid) {
  std::vector<double> values;
  values.reserve(fading_cost_grid.size());
  for (double x : fading_cost_grid) {
    values.push_back(virtual_valuation(x, cost_scale_mw, model));
  }
  return min_difference_quotient(fading_cost_grid, values);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2) {
    throw NumericalError("log_grid: need 0 < lo < hi and n >= 2");
  }
  std::vector<double> grid(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo * std::exp(step * static_cast<double>(i));
  }
  grid.back() = hi;
  return grid;
}

}  // namespace wptrelay
