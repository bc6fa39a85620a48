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
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wptrelay/channel.hpp"
#include "wptrelay/geometry.hpp"

namespace wptrelay {

enum class Mechanism { baseline, vickrey, myerson };

const char* mechanism_name(Mechanism mechanism);

struct TrialRecord {
  std::size_t trial_id = 0;
  Mechanism mechanism = Mechanism::baseline;
  std::size_t winner = 0;
  bool communicated = false;
  double source_energy_mws = 0.0;
  double net_harvest_energy_mws = 0.0;
};

/// Runs `trials` independent worlds, evaluating all three mechanisms on the
/// identical realization (common random numbers). Each trial draws from a
/// substream of (seed, trial_id), so records are byte-identical for any
/// thread count. Returns 3 records per trial, grouped by trial in order
/// baseline, vickrey, myerson.
std::vector<TrialRecord> run_trials(const Environment& env,
                                    const SystemParams& params, std::size_t n,
                                    std::size_t trials, std::uint64_t seed,
                                    int threads = 0);

struct MechanismStats {
  Mechanism mechanism = Mechanism::baseline;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t outages = 0;
  double outage_rate = 0.0;
  double outage_se = 0.0;
  /// Mean source energy over communicated trials; absent if all trials
  /// ended in outage.
  std::optional<double> mean_source_energy_mws;
  /// Mean source energy over all trials, outages counted as zero.
  double mean_source_energy_uncond_mws = 0.0;
  /// Mean winner net harvest over candidate-win trials; absent if the
  /// source won every trial.
  std::optional<double> mean_net_harvest_mws;
  std::size_t candidate_wins = 0;
};

struct AggregateStats {
  std::size_t n = 0;
  std::size_t trials = 0;
  MechanismStats baseline;
  MechanismStats vickrey;
  MechanismStats myerson;
};

AggregateStats aggregate(const std::vector<TrialRecord>& records,
                         std::size_t n);

struct CriticalReward {
  std::size_t n = 0;
  double c_star = 0.0;
  bool valid = false;
};

/// Success reward at which the source's expected utility is the same under
/// both auctions: the utility is affine in the reward, so the crossing is
///   C* = T * (E[P_vickrey] - E[P_myerson]) / (p_out_myerson - p_out_vickrey)
/// with unconditional mean powers. Invalid when the outage rates coincide
/// or the crossing is non-positive. Rejects stats with mismatched n.
CriticalReward critical_reward(const MechanismStats& vickrey,
                               const MechanismStats& myerson,
                               const SystemParams& params);

/// Optional analytic outage columns for the aggregate CSV, keyed by n:
/// (p_out_star, p_out_myerson).
using AnalyticOutageColumns = std::map<std::size_t, std::pair<double, double>>;

/// One row per (n, mechanism). Columns: n, mechanism, trials, outage_rate,
/// outage_se, mean_src_energy_mws, mean_src_energy_uncond_mws,
/// mean_harvest_mws, then p_out_analytic when columns are supplied.
/// Conditional means are empty fields when undefined.
void write_aggregate_csv(const std::vector<AggregateStats>& stats,
                         std::ostream& os,
                         const AnalyticOutageColumns* analytic = nullptr);

void write_critical_reward_csv(const std::vector<CriticalReward>& rows,
                               std::ostream& os);

}  // namespace wptrelay
