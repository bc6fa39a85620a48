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

#include <cmath>
#include <cstdint>
#include <random>

namespace wptrelay {

/// Deterministic random stream.
///
/// Wraps std::mt19937_64 with hand-rolled variate transforms (Box-Muller,
/// inversion) instead of the std distributions, whose algorithms are
/// implementation-defined. Seeded the same way, a stream yields an
/// identical sequence on every platform and standard library.
///
/// Parallel Monte Carlo derives one substream per trial from (seed, id);
/// results then do not depend on thread count or execution order.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(mix(mix(seed) + kGolden)) {}

  static RngStream substream(std::uint64_t seed, std::uint64_t stream_id) {
    return RngStream(mix(mix(seed) ^ mix(stream_id + kGolden)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Standard normal via Box-Muller; the sine mate is cached, so draws
  /// consume two uniforms on even calls and none on odd calls.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double exponential(double mean) {
    return -mean * std::log(1.0 - uniform01());
  }

private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  // splitmix64 finalizer; spreads structured seeds over the full state space.
  static std::uint64_t mix(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wptrelay
