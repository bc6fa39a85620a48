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

#include "doctest.h"
#include "wptrelay/analytic.hpp"
#include "wptrelay/valuation.hpp"

using namespace wptrelay;

TEST_SUITE("valuation") {

TEST_CASE("wpt efficiency and harvested power") {
  const SystemParams p = default_system_params(FadingKind::lognormal);
  CHECK(wpt_efficiency(1.0, p) == doctest::Approx(0.002).epsilon(1e-14));
  CHECK(wpt_efficiency(0.05, p) == doctest::Approx(1e-4).epsilon(1e-12));
  SystemParams ideal = p;
  ideal.alpha = 1.0;
  ideal.aperture_m2 = 1.0;
  CHECK(wpt_efficiency(1.0, ideal) == doctest::Approx(1.0));

  CHECK(harvested_power(0.0, 1e-4) == 0.0);
  CHECK(harvested_power(10.0, 1e-4) == doctest::Approx(1e-3).epsilon(1e-14));
  CHECK(harvested_power(7.3, 1.0) == doctest::Approx(7.3));
}

TEST_CASE("source valuation clamps at the power cap") {
  const double zeta = 8.0631e-6;
  // Boundary case constructed so the direct power is exactly the cap.
  const SourceValuation exact = source_valuation(zeta / 100.0, zeta, 100.0);
  CHECK(exact.v0_mw == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(exact.feasible);

  const SourceValuation clamped = source_valuation(zeta / 1e6, zeta, 100.0);
  CHECK(clamped.v0_mw == 100.0);
  CHECK_FALSE(clamped.feasible);

  const SourceValuation cheap = source_valuation(zeta / 1.0, zeta, 100.0);
  CHECK(cheap.v0_mw == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cheap.feasible);
}

TEST_CASE("candidate valuation arithmetic") {
  const SystemParams p = default_system_params(FadingKind::lognormal);

  // Unit gains with the default harvesting chain: efficiency 0.002, so the
  // downlink refund dominates the valuation.
  const CandidateState unit = candidate_valuation(1.0, 1.0, 1.0, p);
  CHECK(unit.wpt_efficiency == doctest::Approx(0.002));
  CHECK(unit.valuation_mw == doctest::Approx(501.0).epsilon(1e-12));

  const double zeta = 8.0631e-6;
  const CandidateState c = candidate_valuation(0.05, 0.01, zeta, p);
  CHECK(c.first_hop_power_mw ==
        doctest::Approx(1.61262e-4).epsilon(1e-10));
  CHECK(c.wpt_efficiency == doctest::Approx(1e-4).epsilon(1e-12));
  CHECK(c.relay_power_mw == doctest::Approx(8.0631e-4).epsilon(1e-12));
  CHECK(c.valuation_mw == doctest::Approx(8.063261262).epsilon(1e-10));

  // A superb first hop makes both the feed power and the refund vanish.
  const CandidateState limit = candidate_valuation(1e12, 1.0, zeta, p);
  CHECK(limit.valuation_mw < 1e-10);
}

TEST_CASE("realize_trial: degenerate and deterministic") {
  const Environment env = default_environment();
  const SystemParams params = default_system_params(FadingKind::lognormal);

  RngStream rng(17);
  const TrialRealization empty = realize_trial(env, params, 0, rng);
  CHECK(empty.candidates.empty());
  CHECK(empty.source_valuation_mw > 0.0);
  CHECK(empty.source_valuation_mw <= params.p_max_mw);
  CHECK(empty.source_feasible == (empty.direct_power_mw <= params.p_max_mw));

  RngStream a(99), b(99);
  const TrialRealization ta = realize_trial(env, params, 5, a);
  const TrialRealization tb = realize_trial(env, params, 5, b);
  CHECK(ta.gain_source_ap == tb.gain_source_ap);
  REQUIRE(ta.candidates.size() == tb.candidates.size());
  for (std::size_t i = 0; i < ta.candidates.size(); ++i) {
    CHECK(ta.candidates[i].position == tb.candidates[i].position);
    CHECK(ta.candidates[i].valuation_mw == tb.candidates[i].valuation_mw);
    CHECK(ta.candidates[i].cost_scale_mw == tb.candidates[i].cost_scale_mw);
  }
}

TEST_CASE("realize_trial: per-candidate identities") {
  const Environment env = default_environment();
  for (FadingKind kind : {FadingKind::lognormal, FadingKind::rayleigh}) {
    const SystemParams params = default_system_params(kind);
    const double zeta = min_received_power(params);
    RngStream rng(31);
    const TrialRealization trial = realize_trial(env, params, 200, rng);
    CHECK(trial.source_valuation_mw <= params.p_max_mw);
    CHECK(trial.direct_power_mw ==
          doctest::Approx(zeta / trial.gain_source_ap).epsilon(1e-12));
    for (const CandidateState& c : trial.candidates) {
      CHECK(in_sampling_region(c.position, env));
      CHECK(c.valuation_mw > 0.0);
      CHECK(c.cost_scale_mw > 0.0);
      // valuation = first_hop + cost_scale / downlink-fading, with the
      // fading draw recovered from the stored gain and path loss.
      const double pl_to_ap =
          path_loss_gain(c.position.norm(), params.pathloss, LinkClass::los);
      const double fading_draw = c.gain_to_ap / pl_to_ap;
      const double reconstructed =
          c.first_hop_power_mw + c.cost_scale_mw / fading_draw;
      CHECK(reconstructed ==
            doctest::Approx(c.valuation_mw).epsilon(1e-10));
      // cost_scale / fading also equals relay_power / efficiency.
      CHECK(c.cost_scale_mw / fading_draw ==
            doctest::Approx(c.relay_power_mw / c.wpt_efficiency)
                .epsilon(1e-10));
    }
  }
}

TEST_CASE("feasibility frequency matches the analytic candidate outage") {
  const Environment env = default_environment();
  const SystemParams params = default_system_params(FadingKind::rayleigh);
  RngStream rng(2024);
  const TrialRealization trial = realize_trial(env, params, 1000, rng);
  std::size_t feasible = 0;
  for (const CandidateState& c : trial.candidates) {
    if (c.valuation_mw <= params.p_max_mw) ++feasible;
  }
  const double p_feasible = static_cast<double>(feasible) / 1000.0;
  const double analytic =
      1.0 - candidate_outage_prob(env, params, 0.1, 1e-8).value;
  const double se = std::sqrt(analytic * (1.0 - analytic) / 1000.0);
  CHECK(std::abs(p_feasible - analytic) < 3.0 * se);
}

}  // TEST_SUITE
