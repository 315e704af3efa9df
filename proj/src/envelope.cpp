#include "modelrisk/envelope.hpp"

#include <algorithm>
#include <cmath>

#include "modelrisk/errors.hpp"
#include "modelrisk/numerics.hpp"

namespace mrisk {

namespace {

void check_radius(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("radius must be > 0");
}

double cm_max(double x) { return x <= 0.0 ? 1.0 / (1.0 + x * x) : 1.0; }
double cm_min(double x) { return x <= 0.0 ? 0.0 : x * x / (1.0 + x * x); }

double invert(const MonotoneFn& f, double alpha) {
  return numerics::lower_inverse_unbounded(f, alpha);
}

}  // namespace

EnvelopePair chebyshev_markov_envelope() {
  EnvelopePair e;
  e.Fmax = cm_max;
  e.Fmin = cm_min;
  e.low_limit = 0.0;
  e.high_limit = 1.0;
  e.invertible = true;
  e.Fmax_inverse = [](double a) { return -std::sqrt((1.0 - a) / a); };
  e.Fmin_inverse = [](double a) { return std::sqrt(a / (1.0 - a)); };
  return e;
}

QuantileRange extremal_quantiles(const EnvelopePair& e, double alpha) {
  if (!e.invertible) {
    throw NonInvertibleEnvelope("envelope has a flat; extremal quantiles are not its inverses");
  }
  if (!(alpha > e.low_limit && alpha < e.high_limit)) {
    throw AlphaOutOfRange("alpha must lie strictly between the envelope limits");
  }
  const double lo = e.Fmax_inverse ? (*e.Fmax_inverse)(alpha) : invert(e.Fmax, alpha);
  const double hi = e.Fmin_inverse ? (*e.Fmin_inverse)(alpha) : invert(e.Fmin, alpha);
  return {lo, hi};
}

EnvelopePair kolmogorov_ball_envelope(const Distribution& f0, double eps) {
  check_radius(eps);
  EnvelopePair e;
  e.Fmax = [f0, eps](double x) { return std::min(f0.cdf(x) + eps, 1.0); };
  e.Fmin = [f0, eps](double x) { return std::max(f0.cdf(x) - eps, 0.0); };
  e.low_limit = std::min(eps, 1.0);
  e.high_limit = std::max(1.0 - eps, 0.0);
  e.invertible = f0.is_absolutely_continuous();
  e.Fmax_inverse = [f0, eps](double a) { return f0.lower_quantile(a - eps); };
  e.Fmin_inverse = [f0, eps](double a) { return f0.lower_quantile(a + eps); };
  return e;
}

EnvelopePair levy_ball_envelope(const Distribution& f0, double eps) {
  check_radius(eps);
  EnvelopePair e;
  e.Fmax = [f0, eps](double x) { return std::min(f0.cdf(x + eps) + eps, 1.0); };
  e.Fmin = [f0, eps](double x) { return std::max(f0.cdf(x - eps) - eps, 0.0); };
  e.low_limit = std::min(eps, 1.0);
  e.high_limit = std::max(1.0 - eps, 0.0);
  e.invertible = f0.is_absolutely_continuous();
  e.Fmax_inverse = [f0, eps](double a) { return f0.lower_quantile(a - eps) - eps; };
  e.Fmin_inverse = [f0, eps](double a) { return f0.lower_quantile(a + eps) + eps; };
  return e;
}

EnvelopePair mixture_class_envelope(const Distribution& f0, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("mixture radius must lie in [0,1)");
  if (!is_standardized(f0)) throw MomentError("mixture class centre must be standardized");
  EnvelopePair e;
  e.Fmax = [f0, eps](double x) { return (1.0 - eps) * f0.cdf(x) + eps * cm_max(x); };
  e.Fmin = [f0, eps](double x) { return (1.0 - eps) * f0.cdf(x) + eps * cm_min(x); };
  e.low_limit = 0.0;
  e.high_limit = 1.0;
  e.invertible = f0.is_absolutely_continuous();
  return e;
}

EnvelopePair step_envelope(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("step height must lie in (0,1)");
  EnvelopePair e;
  e.Fmax = [alpha](double x) { return x < 0.0 ? 0.0 : (x < 1.0 ? alpha : 1.0); };
  e.Fmin = [alpha](double x) { return x < 1.0 ? 0.0 : 1.0; };
  e.low_limit = 0.0;
  e.high_limit = 1.0;
  e.invertible = false;
  return e;
}

StopLossTransformPair stop_loss_extremals() {
  return StopLossTransformPair{
      [](double x) { return 0.5 * (std::hypot(x, 1.0) - x); },
      [](double x) { return std::max(-x, 0.0); },
      Distribution::stop_loss_maximal(),
      Distribution::point_mass(0.0),
  };
}

}  // namespace mrisk
