#include "modelrisk/numerics.hpp"

#include <cmath>
#include <numbers>

#include "modelrisk/errors.hpp"

namespace mrisk::numerics {

double lower_inverse(const std::function<double(double)>& f, double target, double lo, double hi,
                     double tol) {
  if (!(f(lo) < target) || !(f(hi) >= target)) {
    throw RootBracketError("lower_inverse: target not bracketed");
  }
  // Invariant: f(lo) < target <= f(hi).
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double lower_inverse_unbounded(const std::function<double(double)>& f, double target, double lo,
                               double hi, double limit, double tol) {
  if (lo >= hi) throw DomainError("lower_inverse_unbounded: empty initial bracket");
  while (!(f(lo) < target)) {
    lo = lo < 0.0 ? 2.0 * lo - 1.0 : -1.0;
    if (std::abs(lo) > limit) throw RootBracketError("lower_inverse_unbounded: no lower bracket");
  }
  while (!(f(hi) >= target)) {
    hi = hi > 0.0 ? 2.0 * hi + 1.0 : 1.0;
    if (std::abs(hi) > limit) throw RootBracketError("lower_inverse_unbounded: no upper bracket");
  }
  return lower_inverse(f, target, lo, hi, tol);
}

double bisect_decreasing(const std::function<double(double)>& g, double lo, double hi,
                         double tol) {
  double glo = g(lo);
  double ghi = g(hi);
  if (!(glo >= 0.0) || !(ghi <= 0.0)) {
    throw RootBracketError("bisect_decreasing: root not bracketed");
  }
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

namespace {

GaussLegendre64 build_rule() {
  constexpr int n = 64;
  GaussLegendre64 rule{};
  for (int i = 0; i < n / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

struct Sums {
  double value;
  double magnitude;  // integral of |f|, the scale for the stopping rule
};

Sums composite(const std::function<double(double)>& f, double a, double b, int panels) {
  const auto& rule = gauss_legendre64();
  const double h = (b - a) / panels;
  Sums total{0.0, 0.0};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double s = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double y = f(mid + 0.5 * h * rule.nodes[i]);
      s += rule.weights[i] * y;
      m += rule.weights[i] * std::abs(y);
    }
    total.value += 0.5 * h * s;
    total.magnitude += 0.5 * h * m;
  }
  return total;
}

}  // namespace

const GaussLegendre64& gauss_legendre64() {
  static const GaussLegendre64 rule = build_rule();
  return rule;
}

double integrate_doubling(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_doublings) {
  Sums prev = composite(f, a, b, 1);
  if (!std::isfinite(prev.value)) throw IntegrabilityError("integrand is not finite");
  int panels = 1;
  for (int k = 0; k < max_doublings; ++k) {
    panels *= 2;
    const Sums cur = composite(f, a, b, panels);
    if (!std::isfinite(cur.value)) throw IntegrabilityError("integrand is not finite");
    if (std::abs(cur.value - prev.value) <= rel_tol * std::max(cur.magnitude, 1e-300)) {
      return cur.value;
    }
    prev = cur;
  }
  throw IntegrabilityError("quadrature did not converge; tail integral may diverge");
}

}  // namespace mrisk::numerics
