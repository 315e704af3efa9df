#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's numerics; laws are evaluated from first principles.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle_ref {

/// erf by its Maclaurin series in long double; accurate for |x| <= ~4.5.
inline long double erf_series(long double x) {
  long double term = x;
  long double sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= -x * x / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-22L * std::fabs(sum)) break;
  }
  return 2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum;
}

inline double normal_cdf(double x) {
  return static_cast<double>(0.5L * (1.0L + erf_series(x / std::numbers::sqrt2_v<long double>)));
}

inline double normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

/// Plain bisection for increasing F on [lo, hi].
inline double bisect_increasing(const std::function<double(double)>& F, double target, double lo,
                                double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (F(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double normal_quantile(double u) { return bisect_increasing(normal_cdf, u, -9.0, 9.0); }

/// Raw Student-t cdf with 3 degrees of freedom, closed form.
inline double t3_cdf(double t) {
  const double s = t / std::sqrt(3.0);
  return 0.5 + (s / (1.0 + s * s) + std::atan(s)) / std::numbers::pi;
}

inline double t3_pdf(double t) {
  return 6.0 * std::sqrt(3.0) / (std::numbers::pi * (3.0 + t * t) * (3.0 + t * t));
}

inline double t3_quantile(double u) { return bisect_increasing(t3_cdf, u, -1e4, 1e4); }

/// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 60) {
  const auto rec = [&](auto&& self, double lo, double hi, double flo, double fmid, double fhi,
                       double whole, double eps, int d) -> double {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid);
    const double rm = 0.5 * (mid + hi);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    if (d <= 0 || std::fabs(left + right - whole) <= 15.0 * eps) {
      return left + right + (left + right - whole) / 15.0;
    }
    return self(self, lo, mid, flo, flm, fmid, left, eps / 2, d - 1) +
           self(self, mid, hi, fmid, frm, fhi, right, eps / 2, d - 1);
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec(rec, a, b, fa, fm, fb, whole, tol, depth);
}

/// Integral over the real line of g(x) via x = tan(theta).
inline double integrate_real_line(const std::function<double(double)>& g, double tol) {
  const double h = std::numbers::pi / 2;
  return simpson(
      [&](double th) {
        const double c = std::cos(th);
        if (c <= 0.0) return 0.0;
        return g(std::tan(th)) / (c * c);
      },
      -h + 1e-12, h - 1e-12, tol);
}

}  // namespace oracle_ref
