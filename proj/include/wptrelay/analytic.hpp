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
// Closed-form and quadrature evaluation of the outage probabilities the
// simulator estimates empirically: the direct-link outage, the per-candidate
// outage averaged over placement and fading, the floor p_s * p_c^n shared by
// the baseline and the second-price auction, and the extra mass the
// virtual-valuation auction adds on top of that floor.

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "wptrelay/channel.hpp"
#include "wptrelay/geometry.hpp"

namespace wptrelay {

struct SpatialAverage {
  double value = 0.0;
  /// |fine - coarse| from re-evaluating at twice the cell size.
  double error_estimate = 0.0;
  std::size_t cells = 0;
};

/// Midpoint-rule average of f over the dual-LOS region: uniform grid over
/// the sampling box, cells kept iff their center lies in the region.
/// threads <= 0 selects hardware concurrency. Throws GeometryError when no
/// cell center lands in the region.
SpatialAverage region_average(const Environment& env, double resolution_m,
                              const std::function<double(const Point&)>& f,
                              int threads = 0);

/// Probability the direct source-to-AP link cannot carry the payload at
/// p_max: NLOS fading CDF at (min power) / (path loss * p_max).
double source_outage_prob(const Environment& env, const SystemParams& params);

/// Probability a candidate fixed at q costs more than p_max, integrating
/// over both LOS fading draws: conditioned on the downlink draw h, the
/// first-hop fading must fall below
///   t(h) = zeta/(p_max * PL_sc) * (1 + 1/(alpha * A_r * PL_c * h)),
/// so the value is E_h[ F(t(h)) ]. Throws GeometryError for q outside the
/// dual-LOS region.
double conditional_candidate_outage(const Point& q, const Environment& env,
                                    const SystemParams& params,
                                    double quad_tol = 1e-8);

/// Spatial average of conditional_candidate_outage over the dual-LOS region.
SpatialAverage candidate_outage_prob(const Environment& env,
                                     const SystemParams& params,
                                     double resolution_m = 0.1,
                                     double quad_tol = 1e-8, int threads = 0);

/// Probability a candidate's valuation falls below the price cap implied by
/// the virtual-valuation auction (the inverse virtual valuation of p_max),
/// averaged over placement and first-hop fading.
SpatialAverage prob_valuation_below_threshold(const Environment& env,
                                              const SystemParams& params,
                                              double resolution_m = 0.1,
                                              double quad_tol = 1e-8,
                                              int threads = 0);

/// Outage floor p_source * p_candidate^n.
double min_outage_prob(double p_out_source, double p_out_candidate,
                       std::size_t n);
double min_outage_prob(const Environment& env, const SystemParams& params,
                       std::size_t n, double resolution_m = 0.1,
                       double quad_tol = 1e-8);

struct OutageBreakdown {
  double p_out_source = 0.0;
  double p_out_candidate = 0.0;      // Pr(valuation > p_max), one candidate
  double p_below_pmax = 0.0;         // 1 - p_out_candidate
  double p_below_threshold = 0.0;    // Pr(valuation <= inverse-virtual cap)
  double gap_mass = 0.0;             // p_below_pmax - p_below_threshold
  std::size_t n = 0;
  double p_out_star = 0.0;           // p_source * p_candidate^n
  double p_out_myerson_gap = 0.0;
  double p_out_myerson = 0.0;        // p_out_star + gap
  double candidate_error_estimate = 0.0;
  double threshold_error_estimate = 0.0;
};

/// The n-independent integrals, computed once and combined per n.
struct OutageComponents {
  double p_out_source = 0.0;
  SpatialAverage candidate_outage;
  SpatialAverage below_threshold;
};

OutageComponents outage_components(const Environment& env,
                                   const SystemParams& params,
                                   double resolution_m = 0.1,
                                   double quad_tol = 1e-8, int threads = 0);

OutageBreakdown combine_outage(const OutageComponents& components,
                               std::size_t n);

/// All analytic outage quantities for n candidates. The Myerson gap is
///   p_source * [ (1 - p_below_threshold)^n - p_out_candidate^n ]:
/// an auction-induced outage needs the source infeasible, every candidate
/// priced out of the virtual-valuation cap, and at least one candidate
/// feasible in the plain sense.
OutageBreakdown outage_breakdown(const Environment& env,
                                 const SystemParams& params, std::size_t n,
                                 double resolution_m = 0.1,
                                 double quad_tol = 1e-8, int threads = 0);

double myerson_outage_gap(const Environment& env, const SystemParams& params,
                          std::size_t n, double resolution_m = 0.1,
                          double quad_tol = 1e-8);

/// Sentinel stored in heatmap cells outside the dual-LOS region.
inline constexpr double kHeatmapSentinel = -1.0;

struct Heatmap {
  std::vector<double> xs;  // cell-center abscissas
  std::vector<double> ys;  // cell-center ordinates
  Eigen::ArrayXXd value;   // (ys.size() x xs.size()); sentinel outside region
  Eigen::ArrayXXi in_region;
};

/// conditional_candidate_outage on a regular grid over the sampling box.
Heatmap outage_heatmap(const Environment& env, const SystemParams& params,
                       double resolution_m, double quad_tol = 1e-8,
                       int threads = 0);

/// Rows x_m,y_m,p_out,in_region ordered by y then x.
void write_heatmap_csv(const Heatmap& map, std::ostream& os);

}  // namespace wptrelay
