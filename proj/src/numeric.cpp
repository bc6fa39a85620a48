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

#include "wptrelay/numeric.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wptrelay/errors.hpp"

namespace wptrelay {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

// Asymptotic expansion valid for large x: the alternating double-factorial
// series truncated where terms fall below double precision for x >= 25.
double erfcx_asymptotic(double x) {
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 6; ++k) {
    term *= -(2.0 * k - 1.0) * inv2x2;
    sum += term;
  }
  return sum / (x * kSqrtPi);
}

}  // namespace

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x >= 0.0) {
    if (x > 25.0) return erfcx_asymptotic(x);
    return std::exp(x * x) * std::erfc(x);
  }
  // erfcx(-x) = 2*exp(x^2) - erfcx(x)
  const double e = std::exp(x * x);
  if (!std::isfinite(e)) return std::numeric_limits<double>::infinity();
  return 2.0 * e - erfcx(-x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double upper_mills_ratio(double g) {
  // (1 - Phi(g)) / phi(g) = sqrt(pi/2) * erfcx(g / sqrt(2))
  constexpr double kSqrtHalfPi = 1.2533141373155002512;
  return kSqrtHalfPi * erfcx(g / kSqrt2);
}

namespace {

double simpson_panel(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm) {
  (void)f;
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double eval_checked(const std::function<double(double)>& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    throw NumericalError("adaptive_simpson: integrand not finite at x=" +
                         std::to_string(x));
  }
  return v;
}

double simpson_recurse(const std::function<double(double)>& f, double a,
                       double fa, double b, double fb, double m, double fm,
                       double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = eval_checked(f, lm);
  const double frm = eval_checked(f, rm);
  const double left = simpson_panel(f, a, fa, m, fm, lm, flm);
  const double right = simpson_panel(f, m, fm, b, fb, rm, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (std::abs(a) + 1.0)) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw NumericalError("adaptive_simpson: recursion depth exhausted");
  }
  return simpson_recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                         depth - 1) +
         simpson_recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                         depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = eval_checked(f, a);
  const double fb = eval_checked(f, b);
  const double fm = eval_checked(f, m);
  const double whole = simpson_panel(f, a, fa, b, fb, m, fm);
  return simpson_recurse(f, a, fa, b, fb, m, fm, whole, abs_tol, 48);
}

double bisect_increasing_log(const std::function<double(double)>& f,
                             double target, double lo, double hi,
                             int max_iter) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw NumericalError("bisect_increasing_log: invalid bracket");
  }
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > target || fhi < target) {
    throw NumericalError(
        "bisect_increasing_log: target not bracketed; f(lo)=" +
        std::to_string(flo) + " f(hi)=" + std::to_string(fhi) +
        " target=" + std::to_string(target));
  }
  double llo = std::log(lo);
  double lhi = std::log(hi);
  for (int i = 0; i < max_iter; ++i) {
    const double lmid = 0.5 * (llo + lhi);
    const double mid = std::exp(lmid);
    const double fmid = f(mid);
    if (fmid < target) {
      llo = lmid;
    } else {
      lhi = lmid;
    }
    if (lhi - llo < 1e-15) break;
  }
  return std::exp(0.5 * (llo + lhi));
}

}  // namespace wptrelay
