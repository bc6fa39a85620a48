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

#include "wptrelay/analytic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "wptrelay/errors.hpp"
#include "wptrelay/mechanism.hpp"
#include "wptrelay/numeric.hpp"

namespace wptrelay {

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  const int workers =
      std::min<int>(resolve_threads(threads),
                    static_cast<int>(std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          body(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> cell_centers(double lo, double hi, double step) {
  std::vector<double> centers;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step));
  centers.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    centers.push_back(lo + (static_cast<double>(i) + 0.5) * step);
  }
  return centers;
}

double masked_midpoint_average(const Environment& env, double resolution_m,
                               const std::function<double(const Point&)>& f,
                               int threads, std::size_t* cells_out) {
  const Point lo = env.sampling_box.min();
  const Point hi = env.sampling_box.max();
  const std::vector<double> xs = cell_centers(lo.x(), hi.x(), resolution_m);
  const std::vector<double> ys = cell_centers(lo.y(), hi.y(), resolution_m);

  std::vector<Point> cells;
  for (double y : ys) {
    for (double x : xs) {
      const Point q(x, y);
      if (in_sampling_region(q, env)) cells.push_back(q);
    }
  }
  if (cells.empty()) {
    throw GeometryError(
        "region_average: no grid cell falls in the dual-LOS region at "
        "resolution " +
        std::to_string(resolution_m) + " m");
  }
  std::vector<double> values(cells.size());
  parallel_for(cells.size(), threads,
               [&](std::size_t i) { values[i] = f(cells[i]); });
  KahanSum sum;
  for (double v : values) sum.add(v);
  if (cells_out != nullptr) *cells_out = cells.size();
  return sum.value() / static_cast<double>(cells.size());
}

// Integration window for the fading power in log space, wide enough that
// the truncated tail mass is far below the quadrature tolerance.
void fading_log_bounds(const FadingModel& model, double* s_lo, double* s_hi) {
  if (model.is_lognormal()) {
    const double s = model.sigma_ln();
    *s_lo = -10.0 * s;
    *s_hi = 10.0 * s;
    return;
  }
  const double mean = 2.0 * model.psi() * model.psi();
  *s_lo = std::log(mean) - 40.0;
  *s_hi = std::log(50.0 * mean);
}

struct LinkBudget {
  double pl_to_source;  // LOS path loss, source to q
  double pl_to_ap;      // LOS path loss, q to AP
};

LinkBudget link_budget(const Point& q, const Environment& env,
                       const SystemParams& params) {
  return LinkBudget{
      path_loss_gain((q - env.source).norm(), params.pathloss, LinkClass::los),
      path_loss_gain(q.norm(), params.pathloss, LinkClass::los)};
}

}  // namespace

SpatialAverage region_average(const Environment& env, double resolution_m,
                              const std::function<double(const Point&)>& f,
                              int threads) {
  if (!(resolution_m > 0.0)) {
    throw NumericalError("region_average: resolution must be positive");
  }
  SpatialAverage out;
  out.value = masked_midpoint_average(env, resolution_m, f, threads, &out.cells);
  const double coarse =
      masked_midpoint_average(env, 2.0 * resolution_m, f, threads, nullptr);
  out.error_estimate = std::abs(out.value - coarse);
  return out;
}

double source_outage_prob(const Environment& env, const SystemParams& params) {
  const double pl =
      path_loss_gain(env.source.norm(), params.pathloss, LinkClass::nlos);
  const double zeta = min_received_power(params);
  return fading_cdf(params.fading_nlos, zeta / (pl * params.p_max_mw));
}

double conditional_candidate_outage(const Point& q, const Environment& env,
                                    const SystemParams& params,
                                    double quad_tol) {
  if (!in_sampling_region(q, env)) {
    throw GeometryError(
        "conditional_candidate_outage: point is outside the dual-LOS region");
  }
  const LinkBudget pl = link_budget(q, env, params);
  const double zeta = min_received_power(params);
  const double chain = params.alpha * params.aperture_m2 * pl.pl_to_ap;
  const double base = zeta / (params.p_max_mw * pl.pl_to_source);
  const FadingModel& los = params.fading_los;

  // Condition on the downlink fading h; the candidate is infeasible iff the
  // first-hop fading lands below t(h).
  const auto integrand = [&](double s) {
    const double h = std::exp(s);
    const double t = base * (1.0 + 1.0 / (chain * h));
    return fading_pdf(los, h) * h * fading_cdf(los, t);
  };
  double s_lo = 0.0, s_hi = 0.0;
  fading_log_bounds(los, &s_lo, &s_hi);
  const double p = adaptive_simpson(integrand, s_lo, s_hi, quad_tol);
  return std::clamp(p, 0.0, 1.0);
}

SpatialAverage candidate_outage_prob(const Environment& env,
                                     const SystemParams& params,
                                     double resolution_m, double quad_tol,
                                     int threads) {
  return region_average(
      env, resolution_m,
      [&](const Point& q) {
        return conditional_candidate_outage(q, env, params, quad_tol);
      },
      threads);
}

namespace {

// Pr(valuation <= inverse-virtual cap | position q), integrating over the
// first-hop fading g. For each g the remaining randomness is the downlink
// fading, and valuation <= nu iff the fading cost C/h falls below
// tau = c^{-1}(p_max - first-hop power), i.e. h >= C/tau.
double below_threshold_fraction(const Point& q, const Environment& env,
                                const SystemParams& params, double quad_tol) {
  const LinkBudget pl = link_budget(q, env, params);
  const double zeta = min_received_power(params);
  const double kappa = params.alpha * params.aperture_m2;
  const FadingModel& los = params.fading_los;

  // Below g_min the first hop alone exceeds the power cap.
  const double g_min = zeta / (pl.pl_to_source * params.p_max_mw);
  double s_lo = 0.0, s_hi = 0.0;
  fading_log_bounds(los, &s_lo, &s_hi);
  s_lo = std::max(s_lo, std::log(g_min));
  if (!(s_lo < s_hi)) return 0.0;

  const auto integrand = [&](double s) {
    const double g = std::exp(s);
    const double first_hop = zeta / (pl.pl_to_source * g);
    const double margin = params.p_max_mw - first_hop;
    if (!(margin > 0.0)) return 0.0;
    const double efficiency = pl.pl_to_source * g * kappa;
    const double cost_scale = zeta / (pl.pl_to_ap * efficiency);
    const double tau = inverse_virtual_valuation(margin, cost_scale, los);
    const double p_below = 1.0 - fading_cdf(los, cost_scale / tau);
    return fading_pdf(los, g) * g * p_below;
  };
  const double p = adaptive_simpson(integrand, s_lo, s_hi, quad_tol);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

SpatialAverage prob_valuation_below_threshold(const Environment& env,
                                              const SystemParams& params,
                                              double resolution_m,
                                              double quad_tol, int threads) {
  return region_average(
      env, resolution_m,
      [&](const Point& q) {
        return below_threshold_fraction(q, env, params, quad_tol);
      },
      threads);
}

double min_outage_prob(double p_out_source, double p_out_candidate,
                       std::size_t n) {
  return p_out_source * std::pow(p_out_candidate, static_cast<double>(n));
}

double min_outage_prob(const Environment& env, const SystemParams& params,
                       std::size_t n, double resolution_m, double quad_tol) {
  return min_outage_prob(source_outage_prob(env, params),
                         candidate_outage_prob(env, params, resolution_m,
                                               quad_tol)
                             .value,
                         n);
}

OutageComponents outage_components(const Environment& env,
                                   const SystemParams& params,
                                   double resolution_m, double quad_tol,
                                   int threads) {
  OutageComponents c;
  c.p_out_source = source_outage_prob(env, params);
  c.candidate_outage =
      candidate_outage_prob(env, params, resolution_m, quad_tol, threads);
  c.below_threshold = prob_valuation_below_threshold(env, params, resolution_m,
                                                     quad_tol, threads);
  return c;
}

OutageBreakdown combine_outage(const OutageComponents& components,
                               std::size_t n) {
  OutageBreakdown out;
  out.n = n;
  out.p_out_source = components.p_out_source;
  out.p_out_candidate = components.candidate_outage.value;
  out.candidate_error_estimate = components.candidate_outage.error_estimate;
  out.p_below_pmax = 1.0 - out.p_out_candidate;
  out.p_below_threshold = components.below_threshold.value;
  out.threshold_error_estimate = components.below_threshold.error_estimate;
  out.gap_mass = std::max(0.0, out.p_below_pmax - out.p_below_threshold);
  out.p_out_star = min_outage_prob(out.p_out_source, out.p_out_candidate, n);
  const double reject_all =
      std::pow(1.0 - out.p_below_threshold, static_cast<double>(n));
  const double infeasible_all =
      std::pow(out.p_out_candidate, static_cast<double>(n));
  out.p_out_myerson_gap =
      std::max(0.0, out.p_out_source * (reject_all - infeasible_all));
  out.p_out_myerson = out.p_out_star + out.p_out_myerson_gap;
  return out;
}

OutageBreakdown outage_breakdown(const Environment& env,
                                 const SystemParams& params, std::size_t n,
                                 double resolution_m, double quad_tol,
                                 int threads) {
  return combine_outage(
      outage_components(env, params, resolution_m, quad_tol, threads), n);
}

double myerson_outage_gap(const Environment& env, const SystemParams& params,
                          std::size_t n, double resolution_m,
                          double quad_tol) {
  return outage_breakdown(env, params, n, resolution_m, quad_tol)
      .p_out_myerson_gap;
}

Heatmap outage_heatmap(const Environment& env, const SystemParams& params,
                       double resolution_m, double quad_tol, int threads) {
  if (!(resolution_m > 0.0)) {
    throw NumericalError("outage_heatmap: resolution must be positive");
  }
  const Point lo = env.sampling_box.min();
  const Point hi = env.sampling_box.max();
  Heatmap map;
  map.xs = cell_centers(lo.x(), hi.x(), resolution_m);
  map.ys = cell_centers(lo.y(), hi.y(), resolution_m);
  const auto ny = static_cast<Eigen::Index>(map.ys.size());
  const auto nx = static_cast<Eigen::Index>(map.xs.size());
  map.value = Eigen::ArrayXXd::Constant(ny, nx, kHeatmapSentinel);
  map.in_region = Eigen::ArrayXXi::Zero(ny, nx);

  parallel_for(static_cast<std::size_t>(ny), threads, [&](std::size_t iy) {
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
      const Point q(map.xs[static_cast<std::size_t>(ix)], map.ys[iy]);
      if (!in_sampling_region(q, env)) continue;
      map.in_region(static_cast<Eigen::Index>(iy), ix) = 1;
      map.value(static_cast<Eigen::Index>(iy), ix) =
          conditional_candidate_outage(q, env, params, quad_tol);
    }
  });
  return map;
}

void write_heatmap_csv(const Heatmap& map, std::ostream& os) {
  os << "x_m,y_m,p_out,in_region\n";
  char buf[128];
  for (std::size_t iy = 0; iy < map.ys.size(); ++iy) {
    for (std::size_t ix = 0; ix < map.xs.size(); ++ix) {
      const auto r = static_cast<Eigen::Index>(iy);
      const auto c = static_cast<Eigen::Index>(ix);
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%d\n", map.xs[ix],
                    map.ys[iy], map.value(r, c), map.in_region(r, c));
      os << buf;
    }
  }
}

}  // namespace wptrelay
