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

#include "wptrelay/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>

#include "wptrelay/errors.hpp"
#include "wptrelay/mechanism.hpp"
#include "wptrelay/numeric.hpp"
#include "wptrelay/valuation.hpp"

namespace wptrelay {

const char* mechanism_name(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::baseline:
      return "baseline";
    case Mechanism::vickrey:
      return "vickrey";
    case Mechanism::myerson:
      return "myerson";
  }
  return "unknown";
}

namespace {

TrialRecord to_record(std::size_t trial_id, Mechanism mechanism,
                      const AuctionOutcome& outcome, double t_s) {
  TrialRecord rec;
  rec.trial_id = trial_id;
  rec.mechanism = mechanism;
  rec.winner = outcome.winner;
  rec.communicated = outcome.communicated;
  rec.source_energy_mws = t_s * outcome.source_power_mw;
  rec.net_harvest_energy_mws = t_s * outcome.net_harvest_mw;
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_trials(const Environment& env,
                                    const SystemParams& params, std::size_t n,
                                    std::size_t trials, std::uint64_t seed,
                                    int threads) {
  if (trials == 0) {
    throw NumericalError("run_trials: need at least one trial");
  }
  std::vector<TrialRecord> records(3 * trials);

  const auto run_one = [&](std::size_t t) {
    RngStream rng = RngStream::substream(seed, t);
    const TrialRealization trial = realize_trial(env, params, n, rng);
    const AuctionInput input = to_auction_input(trial, params);
    records[3 * t + 0] =
        to_record(t, Mechanism::baseline, run_baseline(input), params.t_s);
    records[3 * t + 1] =
        to_record(t, Mechanism::vickrey, run_vickrey(input), params.t_s);
    records[3 * t + 2] =
        to_record(t, Mechanism::myerson, run_myerson(input), params.t_s);
  };

  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 0) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(trials));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) run_one(t);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      try {
        for (;;) {
          const std::size_t t = next.fetch_add(1);
          if (t >= trials) return;
          run_one(t);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(trials);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

namespace {

MechanismStats reduce(Mechanism mechanism,
                      const std::vector<TrialRecord>& records, std::size_t n) {
  MechanismStats s;
  s.mechanism = mechanism;
  s.n = n;
  KahanSum energy_all;
  KahanSum energy_success;
  KahanSum harvest;
  std::size_t successes = 0;
  for (const TrialRecord& rec : records) {
    if (rec.mechanism != mechanism) continue;
    ++s.trials;
    energy_all.add(rec.source_energy_mws);
    if (rec.communicated) {
      ++successes;
      energy_success.add(rec.source_energy_mws);
    } else {
      ++s.outages;
    }
    if (rec.winner != 0) {
      ++s.candidate_wins;
      harvest.add(rec.net_harvest_energy_mws);
    }
  }
  if (s.trials == 0) {
    throw NumericalError("aggregate: no records for mechanism");
  }
  const auto trials = static_cast<double>(s.trials);
  s.outage_rate = static_cast<double>(s.outages) / trials;
  s.outage_se = std::sqrt(s.outage_rate * (1.0 - s.outage_rate) / trials);
  s.mean_source_energy_uncond_mws = energy_all.value() / trials;
  if (successes > 0) {
    s.mean_source_energy_mws =
        energy_success.value() / static_cast<double>(successes);
  }
  if (s.candidate_wins > 0) {
    s.mean_net_harvest_mws =
        harvest.value() / static_cast<double>(s.candidate_wins);
  }
  return s;
}

}  // namespace

AggregateStats aggregate(const std::vector<TrialRecord>& records,
                         std::size_t n) {
  if (records.empty()) {
    throw NumericalError("aggregate: record list is empty");
  }
  AggregateStats out;
  out.n = n;
  out.baseline = reduce(Mechanism::baseline, records, n);
  out.vickrey = reduce(Mechanism::vickrey, records, n);
  out.myerson = reduce(Mechanism::myerson, records, n);
  out.trials = out.baseline.trials;
  return out;
}

CriticalReward critical_reward(const MechanismStats& vickrey,
                               const MechanismStats& myerson,
                               const SystemParams& params) {
  if (vickrey.n != myerson.n) {
    throw NumericalError("critical_reward: stats computed for different n");
  }
  (void)params;  // energies already carry the factor of T
  CriticalReward out;
  out.n = vickrey.n;
  const double outage_delta = myerson.outage_rate - vickrey.outage_rate;
  if (outage_delta == 0.0) {
    out.valid = false;
    return out;
  }
  out.c_star = (vickrey.mean_source_energy_uncond_mws -
                myerson.mean_source_energy_uncond_mws) /
               outage_delta;
  out.valid = out.c_star > 0.0;
  return out;
}

namespace {

void append_optional(std::string* row, const std::optional<double>& v) {
  char buf[64];
  if (v.has_value()) {
    std::snprintf(buf, sizeof(buf), ",%.12g", *v);
    *row += buf;
  } else {
    *row += ",";
  }
}

void write_row(std::ostream& os, const MechanismStats& s,
               const AnalyticOutageColumns* analytic) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%zu,%s,%zu,%.12g,%.12g", s.n,
                mechanism_name(s.mechanism), s.trials, s.outage_rate,
                s.outage_se);
  std::string row(buf);
  append_optional(&row, s.mean_source_energy_mws);
  std::snprintf(buf, sizeof(buf), ",%.12g", s.mean_source_energy_uncond_mws);
  row += buf;
  append_optional(&row, s.mean_net_harvest_mws);
  if (analytic != nullptr) {
    const auto it = analytic->find(s.n);
    if (it != analytic->end()) {
      const double p = s.mechanism == Mechanism::myerson ? it->second.second
                                                         : it->second.first;
      std::snprintf(buf, sizeof(buf), ",%.12g", p);
      row += buf;
    } else {
      row += ",";
    }
  }
  os << row << "\n";
}

}  // namespace

void write_aggregate_csv(const std::vector<AggregateStats>& stats,
                         std::ostream& os,
                         const AnalyticOutageColumns* analytic) {
  os << "n,mechanism,trials,outage_rate,outage_se,mean_src_energy_mws,"
        "mean_src_energy_uncond_mws,mean_harvest_mws";
  if (analytic != nullptr) os << ",p_out_analytic";
  os << "\n";
  for (const AggregateStats& s : stats) {
    write_row(os, s.baseline, analytic);
    write_row(os, s.vickrey, analytic);
    write_row(os, s.myerson, analytic);
  }
}

void write_critical_reward_csv(const std::vector<CriticalReward>& rows,
                               std::ostream& os) {
  os << "n,c_star,valid\n";
  char buf[96];
  for (const CriticalReward& r : rows) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g,%d\n", r.n, r.c_star,
                  r.valid ? 1 : 0);
    os << buf;
  }
}

}  // namespace wptrelay
