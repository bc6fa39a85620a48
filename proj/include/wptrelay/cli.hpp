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

#include <iosfwd>
#include <string>

#include "wptrelay/config.hpp"

namespace wptrelay {

// Batch entry points behind the CLI subcommands. Each writes its artifact
// files plus resolved_config.json into config.output_dir (which must be
// resolved to a non-empty path) and logs a short summary. Errors surface as
// the library exception types; the binary maps them to exit codes.

/// simulate.csv: aggregate rows per (n, mechanism).
void run_simulate(const RunConfig& config, std::ostream& log);

/// analytic.json: outage probabilities and the auction outage gap per n.
void run_analytic(const RunConfig& config, std::ostream& log);

/// heatmap.csv: per-cell conditional candidate outage.
void run_heatmap(const RunConfig& config, std::ostream& log);

/// critical_c.csv: per n, the success reward equalizing the two auctions.
void run_critical_c(const RunConfig& config, std::ostream& log);

/// regularity.json: minimum virtual-valuation slope per fading model.
void run_check_regularity(const RunConfig& config, std::ostream& log);

/// Writes resolved_config.json; every runner calls this itself.
void echo_resolved_config(const RunConfig& config);

}  // namespace wptrelay
