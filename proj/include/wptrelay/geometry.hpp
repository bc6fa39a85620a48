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

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "wptrelay/rng.hpp"

namespace wptrelay {

using Point = Eigen::Vector2d;

/// Circular blockage. Radius must be strictly positive.
struct Disk {
  Point center;
  double radius_m = 0.0;
};

/// 2-D deployment: the access point sits at the origin, the source at
/// `source`, and candidate relays are drawn from the part of `sampling_box`
/// that has line of sight to both endpoints and lies outside every blockage.
struct Environment {
  Point source;
  std::vector<Disk> blockages;
  Eigen::AlignedBox2d sampling_box;

  /// Throws GeometryError if a blockage swallows the source or the access
  /// point, a radius is non-positive, or the box has no area.
  void validate() const;
};

/// Desk-scale layout used when a config gives no geometry: source at
/// (5.76, 5.76) m, one disk of radius 1.5 m centered at (2.88, 2.88) m
/// (squarely between source and access point), box [-2, 8]^2.
Environment default_environment();

/// Minimum distance from p to the closed segment [a, b].
double point_segment_distance(const Point& p, const Point& a, const Point& b);

/// True iff the open segment a-b misses the interior of every blockage.
/// Tangency (distance exactly equal to the radius) counts as clear, and
/// a == b is clear by convention.
bool los_clear(const Point& a, const Point& b, const Environment& env);

/// True iff q lies in the candidate sampling region: inside the box, outside
/// every disk, with line of sight to both the access point and the source.
bool in_sampling_region(const Point& q, const Environment& env);

/// Draws n points uniformly over the sampling region by rejection from the
/// box. Throws GeometryError when a 10,000-proposal pilot accepts nothing or
/// the per-point proposal budget (10^6) is exhausted.
std::vector<Point> sample_positions(const Environment& env, std::size_t n,
                                    RngStream& rng);

}  // namespace wptrelay
