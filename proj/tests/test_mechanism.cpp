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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "wptrelay/errors.hpp"
#include "wptrelay/mechanism.hpp"
#include "wptrelay/numeric.hpp"
#include "wptrelay/valuation.hpp"

using namespace wptrelay;

namespace {

const FadingModel kRayleigh = FadingModel::rayleigh(1.0 / std::sqrt(2.0));
const FadingModel kLognormal = FadingModel::lognormal_from_db(8.66);

AuctionInput plain_input(double v0, bool feasible, std::vector<double> vals,
                         const FadingModel& model = kRayleigh) {
  AuctionInput in{v0, feasible, {}, model};
  for (double v : vals) {
    in.candidates.push_back(CandidateBid{v, 1.0, 0.0, 1e-4});
  }
  return in;
}

// Synthetic world with valuations actually drawn from the model the Myerson
// transform assumes, so incentive and distribution checks are exact.
AuctionInput random_input(const FadingModel& model, std::size_t n,
                          RngStream& rng, double p_max = 100.0) {
  const double direct = std::pow(10.0, rng.uniform(-1.0, 3.0));
  AuctionInput in{std::min(direct, p_max), direct <= p_max, {}, model};
  for (std::size_t i = 0; i < n; ++i) {
    const double cost_scale = std::pow(10.0, rng.uniform(-1.0, 3.0));
    const double first_hop = std::pow(10.0, rng.uniform(-5.0, -1.0));
    const double fading = sample_fading(model, rng);
    const double valuation = first_hop + cost_scale / fading;
    const double eff = std::pow(10.0, rng.uniform(-5.0, -2.0));
    in.candidates.push_back(
        CandidateBid{valuation, cost_scale, first_hop, eff});
  }
  return in;
}

// Numeric F/f quotient of the fading-cost distribution, independent of the
// closed forms under test. The fading survival is computed subtraction-free
// so the oracle itself stays well conditioned in the tails.
double fading_survival(const FadingModel& model, double h) {
  if (model.is_lognormal()) {
    return 0.5 * std::erfc(std::log(h) /
                           (model.sigma_ln() * 1.4142135623730950488));
  }
  return std::exp(-h / model.mean_power());
}

double quotient_virtual(double fading_cost, double cost_scale,
                        const FadingModel& model) {
  const double h = cost_scale / fading_cost;
  const double tail = fading_survival(model, h);
  const double pdf =
      fading_pdf(model, h) * cost_scale / (fading_cost * fading_cost);
  return fading_cost + tail / pdf;
}

// Cost range (in decades around the scale) where the quotient oracle is
// representable: the exponential density underflows once cost/scale drops
// below ~1/700.
double oracle_low_decade(const FadingModel& model) {
  return model.is_rayleigh() ? -2.0 : -4.0;
}

double candidate_utility(const AuctionInput& truth, std::size_t index,
                         const AuctionOutcome& outcome) {
  if (outcome.winner != index + 1) return 0.0;
  const CandidateBid& bid = truth.candidates[index];
  return bid.wpt_efficiency * (outcome.payment_mw - bid.valuation_mw);
}

}  // namespace

TEST_SUITE("mechanism") {

TEST_CASE("baseline picks the cheapest participant at cost") {
  const AuctionOutcome c = run_baseline(plain_input(5, true, {2, 3}));
  CHECK(c.winner == 1);
  CHECK(c.payment_mw == 2.0);
  CHECK(c.communicated);
  CHECK(c.net_harvest_mw == 0.0);

  const AuctionOutcome outage = run_baseline(plain_input(100, false, {150}));
  CHECK(outage.winner == 0);
  CHECK(outage.payment_mw == 0.0);
  CHECK(outage.source_power_mw == 0.0);
  CHECK_FALSE(outage.communicated);

  const AuctionOutcome direct = run_baseline(plain_input(4, true, {5, 6}));
  CHECK(direct.winner == 0);
  CHECK(direct.payment_mw == 4.0);
  CHECK(direct.communicated);
}

TEST_CASE("vickrey pays the runner-up") {
  const AuctionOutcome two = run_vickrey(plain_input(5, true, {2, 3}));
  CHECK(two.winner == 1);
  CHECK(two.payment_mw == 3.0);
  CHECK(two.communicated);

  // Single candidate: the source's own valuation is the runner-up.
  const AuctionOutcome single = run_vickrey(plain_input(10, true, {7}));
  CHECK(single.winner == 1);
  CHECK(single.payment_mw == 10.0);

  // Infeasible source and an overpriced candidate: the only outage case.
  const AuctionOutcome outage = run_vickrey(plain_input(100, false, {120}));
  CHECK(outage.winner == 0);
  CHECK_FALSE(outage.communicated);
  CHECK(outage.source_power_mw == 0.0);
}

TEST_CASE("argmin ties resolve to the source") {
  const AuctionOutcome tie = run_vickrey(plain_input(5, true, {5, 9}));
  CHECK(tie.winner == 0);
  CHECK(tie.payment_mw == 5.0);
}

TEST_CASE("virtual valuation closed forms") {
  // Exponential cost power: c(x) = x + 2 x^2 psi^2 / scale.
  CHECK(virtual_valuation(1.0, 1.0, kRayleigh) ==
        doctest::Approx(2.0).epsilon(1e-14));
  CHECK(virtual_valuation(1e-12, 1.0, kRayleigh) ==
        doctest::Approx(1e-12).epsilon(1e-9));

  // Lognormal at x = scale: multiplier 1 + sigma*sqrt(2*pi)/2.
  const double sigma = kLognormal.sigma_ln();
  CHECK(virtual_valuation(3.7, 3.7, kLognormal) ==
        doctest::Approx(3.7 * (1.0 + sigma * 1.2533141373155001))
            .epsilon(1e-12));

  CHECK_THROWS_AS(virtual_valuation(-1.0, 1.0, kRayleigh), NumericalError);
  CHECK_THROWS_AS(virtual_valuation(1.0, 0.0, kRayleigh), NumericalError);
}

TEST_CASE("closed forms agree with the numeric F/f quotient") {
  RngStream rng(8);
  for (const FadingModel& model : {kRayleigh, kLognormal}) {
    for (int i = 0; i < 300; ++i) {
      const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
      const double x =
          scale * std::pow(10.0, rng.uniform(oracle_low_decade(model), 4.0));
      CHECK(virtual_valuation(x, scale, model) ==
            doctest::Approx(quotient_virtual(x, scale, model)).epsilon(1e-8));
    }
  }
}

TEST_CASE("shift identity: full virtual valuation from the shifted quotient") {
  RngStream rng(80);
  for (const FadingModel& model : {kRayleigh, kLognormal}) {
    for (int i = 0; i < 200; ++i) {
      const double scale = std::pow(10.0, rng.uniform(-2.0, 2.0));
      const double first_hop = std::pow(10.0, rng.uniform(-4.0, 1.0));
      const double v =
          first_hop +
          scale * std::pow(10.0, rng.uniform(oracle_low_decade(model), 3.0));
      // F_V(v)/f_V(v) with V = first_hop + fading cost equals the quotient
      // of the unshifted cost at v - first_hop.
      const double full = first_hop +
                          virtual_valuation(v - first_hop, scale, model);
      const double numeric = v - first_hop +
                             (quotient_virtual(v - first_hop, scale, model) -
                              (v - first_hop)) +
                             first_hop;
      CHECK(full == doctest::Approx(numeric).epsilon(1e-8));
    }
  }
}

TEST_CASE("inverse virtual valuation") {
  // Root of x + x^2 = 6.
  CHECK(inverse_virtual_valuation(6.0, 1.0, kRayleigh) ==
        doctest::Approx(2.0).epsilon(1e-12));

  for (const FadingModel& model : {kRayleigh, kLognormal}) {
    const double scale = 0.37;
    for (double x : log_grid(1e-6 * scale, 1e6 * scale, 49)) {
      const double target = virtual_valuation(x, scale, model);
      CHECK(inverse_virtual_valuation(target, scale, model) ==
            doctest::Approx(x).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(inverse_virtual_valuation(0.0, 1.0, kRayleigh),
                  NumericalError);
  CHECK_THROWS_AS(inverse_virtual_valuation(-3.0, 1.0, kLognormal),
                  NumericalError);
}

TEST_CASE("rayleigh closed-form inverse agrees with bisection") {
  for (double target : log_grid(1e-8, 1e8, 33)) {
    const double closed = inverse_virtual_valuation(target, 2.5, kRayleigh);
    const double bisected =
        inverse_virtual_valuation_bisect(target, 2.5, kRayleigh);
    CHECK(closed == doctest::Approx(bisected).epsilon(1e-9));
  }
}

TEST_CASE("lognormal inverse agrees with a grid-scan oracle") {
  const double scale = 1.7;
  for (double target : {0.01, 0.4, 3.0, 250.0}) {
    const double root = inverse_virtual_valuation(target, scale, kLognormal);
    // Dense log grid straddling the root; interpolate the crossing.
    const std::vector<double> xs =
        log_grid(root * 1e-3, std::min(target, root * 1e3), 200001);
    double oracle = -1.0;
    double prev_x = xs[0];
    double prev_c = virtual_valuation(prev_x, scale, kLognormal);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double c = virtual_valuation(xs[i], scale, kLognormal);
      if (prev_c <= target && target <= c) {
        const double w = (target - prev_c) / (c - prev_c);
        oracle = prev_x + w * (xs[i] - prev_x);
        break;
      }
      prev_x = xs[i];
      prev_c = c;
    }
    REQUIRE(oracle > 0.0);
    CHECK(root == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("myerson: source keeps the job when its value beats the virtuals") {
  // Candidate below the cap in plain value but above it after the
  // transform: the auction walks away and communication fails.
  AuctionInput in{100.0, false, {}, kRayleigh};
  // c(90) = 90 + 2*90^2*0.5/C = 120 for C = 270.
  in.candidates.push_back(CandidateBid{90.0, 270.0, 0.0, 1e-4});
  CHECK(virtual_valuation(90.0, 270.0, kRayleigh) ==
        doctest::Approx(120.0).epsilon(1e-12));
  const AuctionOutcome out = run_myerson(in);
  CHECK(out.winner == 0);
  CHECK_FALSE(out.communicated);
  CHECK(out.source_power_mw == 0.0);

  // Same numbers with a feasible source: it simply transmits.
  AuctionInput feasible = in;
  feasible.source_feasible = true;
  feasible.source_valuation_mw = 80.0;
  const AuctionOutcome direct = run_myerson(feasible);
  CHECK(direct.winner == 0);
  CHECK(direct.communicated);
  CHECK(direct.source_power_mw == 80.0);
}

TEST_CASE("myerson: single candidate pays the inverse virtual of v0") {
  AuctionInput in{6.0, true, {}, kRayleigh};
  in.candidates.push_back(CandidateBid{1.0, 1.0, 0.0, 1e-4});
  const AuctionOutcome out = run_myerson(in);
  CHECK(out.winner == 1);
  CHECK(out.payment_mw == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(out.communicated);
  CHECK(out.net_harvest_mw ==
        doctest::Approx(1e-4 * (2.0 - 1.0)).epsilon(1e-10));
}

TEST_CASE("myerson equals vickrey for symmetric candidates") {
  RngStream rng(4);
  for (const FadingModel& model : {kRayleigh, kLognormal}) {
    for (int i = 0; i < 200; ++i) {
      const double scale = std::pow(10.0, rng.uniform(-1.0, 2.0));
      const double first_hop = std::pow(10.0, rng.uniform(-4.0, -1.0));
      AuctionInput in{std::pow(10.0, rng.uniform(0.0, 2.0)), true, {}, model};
      for (int k = 0; k < 2; ++k) {
        const double v = first_hop + scale / sample_fading(model, rng);
        in.candidates.push_back(CandidateBid{v, scale, first_hop, 1e-4});
      }
      const AuctionOutcome m = run_myerson(in);
      const AuctionOutcome v = run_vickrey(in);
      if (m.winner != 0 && v.winner != 0) {
        // Equal distributions: the transform preserves the candidate order,
        // and when both rivals' virtuals beat v0 the payment collapses to
        // the second-lowest valuation.
        CHECK(m.winner == v.winner);
        const double rival_virtual =
            first_hop + virtual_valuation(
                            in.candidates[2 - m.winner].valuation_mw - first_hop,
                            scale, model);
        if (rival_virtual < in.source_valuation_mw) {
          CHECK(m.payment_mw ==
                doctest::Approx(in.candidates[2 - m.winner].valuation_mw)
                    .epsilon(1e-9));
          CHECK(m.payment_mw == doctest::Approx(v.payment_mw).epsilon(1e-9));
        }
      }
    }
  }
}

TEST_CASE("myerson rejects bids at or below the first-hop power") {
  AuctionInput in{50.0, true, {}, kRayleigh};
  in.candidates.push_back(CandidateBid{1.0, 1.0, 2.0, 1e-4});
  CHECK_THROWS_AS(run_myerson(in), NumericalError);
}

TEST_CASE("incentive compatibility under unilateral deviations") {
  RngStream rng(2718);
  for (const FadingModel& model : {kRayleigh, kLognormal}) {
    for (int r = 0; r < 300; ++r) {
      const AuctionInput truth = random_input(model, 3, rng);
      const AuctionOutcome vick_true = run_vickrey(truth);
      const AuctionOutcome myer_true = run_myerson(truth);
      for (std::size_t i = 0; i < truth.candidates.size(); ++i) {
        const double u_vick = candidate_utility(truth, i, vick_true);
        const double u_myer = candidate_utility(truth, i, myer_true);
        for (int d = 0; d < 20; ++d) {
          AuctionInput dev = truth;
          const CandidateBid& bid = truth.candidates[i];
          // Vickrey tolerates any positive bid; the Myerson transform needs
          // bids inside the valuation support, above the first-hop power.
          const double cost = bid.valuation_mw - bid.first_hop_power_mw;
          dev.candidates[i].valuation_mw =
              bid.first_hop_power_mw +
              cost * std::pow(10.0, rng.uniform(-2.0, 2.0));
          CHECK(candidate_utility(truth, i, run_vickrey(dev)) <=
                u_vick + 1e-9);
          CHECK(candidate_utility(truth, i, run_myerson(dev)) <=
                u_myer + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("individual rationality and payment caps") {
  RngStream rng(99);
  for (const FadingModel& model : {kRayleigh, kLognormal}) {
    for (int r = 0; r < 500; ++r) {
      const AuctionInput in = random_input(model, 4, rng);
      for (const AuctionOutcome& out : {run_vickrey(in), run_myerson(in)}) {
        if (out.winner != 0) {
          const CandidateBid& w = in.candidates[out.winner - 1];
          CHECK(out.payment_mw >= w.valuation_mw);
          CHECK(out.net_harvest_mw >= 0.0);
          // A winning relay never costs more than the source's own option.
          CHECK(out.payment_mw <= in.source_valuation_mw + 1e-9);
        } else {
          CHECK(out.net_harvest_mw == 0.0);
          if (!out.communicated) CHECK(out.source_power_mw == 0.0);
        }
      }
    }
  }
}

TEST_CASE("vickrey outage happens only with no feasible route") {
  RngStream rng(123);
  for (int r = 0; r < 2000; ++r) {
    const AuctionInput in = random_input(kRayleigh, 3, rng);
    const AuctionOutcome out = run_vickrey(in);
    double min_candidate = std::numeric_limits<double>::infinity();
    for (const CandidateBid& b : in.candidates) {
      min_candidate = std::min(min_candidate, b.valuation_mw);
    }
    const bool no_route =
        !in.source_feasible && min_candidate > in.source_valuation_mw;
    CHECK(out.communicated == !no_route);
    // And the baseline agrees trial by trial.
    CHECK(run_baseline(in).communicated == out.communicated);
  }
}

TEST_CASE("system energy overhead of the second-price auction") {
  RngStream rng(7);
  const double t_s = 1.0;
  for (int r = 0; r < 1000; ++r) {
    const AuctionInput in = random_input(kRayleigh, 3, rng);
    const AuctionOutcome base = run_baseline(in);
    const AuctionOutcome vick = run_vickrey(in);
    if (vick.winner == 0) continue;
    REQUIRE(base.winner == vick.winner);
    const CandidateBid& w = in.candidates[vick.winner - 1];
    const double lhs = (t_s * vick.source_power_mw -
                        t_s * vick.net_harvest_mw) -
                       t_s * base.source_power_mw;
    const double rhs =
        (1.0 - w.wpt_efficiency) * t_s * (vick.payment_mw - w.valuation_mw);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("ex-post payment ordering") {
  RngStream rng(17);
  for (int r = 0; r < 1000; ++r) {
    const AuctionInput in = random_input(kLognormal, 3, rng);
    const AuctionOutcome base = run_baseline(in);
    const AuctionOutcome vick = run_vickrey(in);
    const AuctionOutcome myer = run_myerson(in);
    if (base.winner != 0 && vick.winner != 0) {
      CHECK(base.payment_mw <= vick.payment_mw + 1e-12);
    }
    if (base.winner != 0 && myer.winner != 0) {
      CHECK(base.payment_mw <= myer.payment_mw + 1e-12);
    }
  }
}

TEST_CASE("regularity scans") {
  const std::vector<double> grid = log_grid(1e-6, 1e6, 241);
  // Derivative of the exponential-model transform is 1 + 4 psi^2 x / scale.
  CHECK(check_regularity(kRayleigh, 1.0, grid) >= 1.0);
  CHECK(check_regularity(kRayleigh, 123.4, grid) >= 1.0);
  CHECK(check_regularity(kLognormal, 1.0, grid) > 0.0);
  CHECK(check_regularity(FadingModel::lognormal_from_db(9.02), 1.0, grid) >
        0.0);

  // Detector sanity: a concave-down transform has negative slopes.
  std::vector<double> xs = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> ys = {-1.0, -4.0, -9.0, -16.0};
  CHECK(min_difference_quotient(xs, ys) < 0.0);
  CHECK_THROWS_AS(min_difference_quotient({1.0}, {2.0}), NumericalError);
}

TEST_CASE("auction input carries the realization fields") {
  const Environment env = default_environment();
  const SystemParams params = default_system_params(FadingKind::rayleigh);
  RngStream rng(3);
  const TrialRealization trial = realize_trial(env, params, 4, rng);
  const AuctionInput in = to_auction_input(trial, params);
  CHECK(in.source_valuation_mw == trial.source_valuation_mw);
  CHECK(in.source_feasible == trial.source_feasible);
  REQUIRE(in.candidates.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(in.candidates[i].valuation_mw == trial.candidates[i].valuation_mw);
    CHECK(in.candidates[i].cost_scale_mw == trial.candidates[i].cost_scale_mw);
  }
}

}  // TEST_SUITE
