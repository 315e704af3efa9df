#pragma once

#include <array>
#include <functional>

namespace mrisk::numerics {

/// Tolerance used for every monotone inversion in the library.
inline constexpr double kInversionTol = 1e-12;

/// Smallest x in [lo, hi] (to `tol`) with f(x) >= target, for non-decreasing f.
///
/// Requires f(lo) < target <= f(hi); otherwise RootBracketError. This is the
/// generalized (lower) inverse, so flats in f are resolved to their left end.
double lower_inverse(const std::function<double(double)>& f, double target, double lo, double hi,
                     double tol = kInversionTol);

/// Widen [lo, hi] geometrically until f(lo) < target <= f(hi), then call lower_inverse.
/// Gives up (RootBracketError) once |x| exceeds `limit`.
double lower_inverse_unbounded(const std::function<double(double)>& f, double target,
                               double lo = -1.0, double hi = 1.0, double limit = 1e300,
                               double tol = kInversionTol);

/// Root of a strictly decreasing g on [lo, hi] by bisection to `tol` in x.
double bisect_decreasing(const std::function<double(double)>& g, double lo, double hi,
                         double tol = kInversionTol);

/// 64-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre64 {
  std::array<double, 64> nodes;
  std::array<double, 64> weights;
};

const GaussLegendre64& gauss_legendre64();

/// Integral of f over [a, b] with 2^k equal panels of 64-point Gauss-Legendre,
/// doubling k until two successive estimates agree to `rel_tol` relative to the integral of |f|.
/// Throws IntegrabilityError when the estimates do not settle or go non-finite.
double integrate_doubling(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, int max_doublings = 14);

}  // namespace mrisk::numerics
