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

#include "wptrelay/geometry.hpp"

#include <cmath>
#include <string>

#include "wptrelay/errors.hpp"

namespace wptrelay {

namespace {

constexpr std::size_t kPilotProposals = 10000;
constexpr std::size_t kProposalsPerPoint = 1000000;

bool inside_disk(const Point& p, const Disk& d) {
  return (p - d.center).norm() < d.radius_m;
}

}  // namespace

void Environment::validate() const {
  if (!source.allFinite()) {
    throw GeometryError("environment: source coordinates must be finite");
  }
  if (sampling_box.isEmpty() || !(sampling_box.sizes().minCoeff() > 0.0)) {
    throw GeometryError("environment: sampling box must have positive area");
  }
  const Point ap = Point::Zero();
  for (std::size_t i = 0; i < blockages.size(); ++i) {
    const Disk& d = blockages[i];
    if (!(d.radius_m > 0.0) || !d.center.allFinite()) {
      throw GeometryError("environment: blockage " + std::to_string(i) +
                          " must have a finite center and positive radius");
    }
    if (inside_disk(ap, d)) {
      throw GeometryError("environment: blockage " + std::to_string(i) +
                          " contains the access point");
    }
    if (inside_disk(source, d)) {
      throw GeometryError("environment: blockage " + std::to_string(i) +
                          " contains the source");
    }
  }
}

Environment default_environment() {
  Environment env;
  env.source = Point(5.76, 5.76);
  env.blockages = {Disk{Point(2.88, 2.88), 1.5}};
  env.sampling_box = Eigen::AlignedBox2d(Point(-2.0, -2.0), Point(8.0, 8.0));
  return env;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

bool los_clear(const Point& a, const Point& b, const Environment& env) {
  if (a == b) return true;
  for (const Disk& d : env.blockages) {
    if (point_segment_distance(d.center, a, b) < d.radius_m) return false;
  }
  return true;
}

bool in_sampling_region(const Point& q, const Environment& env) {
  if (!env.sampling_box.contains(q)) return false;
  for (const Disk& d : env.blockages) {
    if (inside_disk(q, d)) return false;
  }
  return los_clear(q, Point::Zero(), env) && los_clear(q, env.source, env);
}

std::vector<Point> sample_positions(const Environment& env, std::size_t n,
                                    RngStream& rng) {
  std::vector<Point> points;
  points.reserve(n);
  if (n == 0) return points;

  const Point lo = env.sampling_box.min();
  const Point hi = env.sampling_box.max();
  const std::size_t budget = n * kProposalsPerPoint;
  std::size_t proposals = 0;
  while (points.size() < n) {
    if (proposals >= kPilotProposals && points.empty()) {
      throw GeometryError(
          "sample_positions: no proposal out of " +
          std::to_string(proposals) +
          " landed in the dual-LOS region; the environment admits no relays");
    }
    if (proposals >= budget) {
      throw GeometryError(
          "sample_positions: proposal budget exhausted after accepting " +
          std::to_string(points.size()) + "/" + std::to_string(n) +
          " points; the dual-LOS region is vanishingly small");
    }
    const double x = rng.uniform(lo.x(), hi.x());
    const double y = rng.uniform(lo.y(), hi.y());
    ++proposals;
    const Point q(x, y);
    if (in_sampling_region(q, env)) points.push_back(q);
  }
  return points;
}

}  // namespace wptrelay
