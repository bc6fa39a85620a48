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

#include <functional>

namespace wptrelay {

/// Scaled complementary error function exp(x^2) * erfc(x).
///
/// Stable for large positive x where erfc underflows and exp overflows.
/// For x < 0 the result grows like 2*exp(x^2) and saturates to +inf once
/// that product leaves double range (|x| > ~26.6).
double erfcx(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal PDF.
double normal_pdf(double x);

/// Upper Mills ratio (1 - Phi(g)) / phi(g), computed through erfcx so the
/// 0/0 tail cancellation never materializes. Strictly positive, ~1/g for
/// large g, ~sqrt(2*pi)*exp(g^2/2) for very negative g.
double upper_mills_ratio(double g);

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance.
/// Throws NumericalError on non-finite integrand values or depth exhaustion.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol);

/// Solves f(x) = target for strictly increasing f on [lo, hi], bisecting on
/// ln(x) so brackets spanning many decades still converge. Requires
/// f(lo) <= target <= f(hi) and 0 < lo < hi; throws NumericalError otherwise.
double bisect_increasing_log(const std::function<double(double)>& f,
                             double target, double lo, double hi,
                             int max_iter = 200);

/// Compensated (Kahan) accumulator for order-insensitive mean computation.
class KahanSum {
public:
  void add(double x) {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace wptrelay
