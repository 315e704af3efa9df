#include "modelrisk/riskmeasure.hpp"

#include <cmath>
#include <variant>

#include <boost/math/distributions/students_t.hpp>

#include "modelrisk/errors.hpp"
#include "modelrisk/numerics.hpp"

namespace mrisk {

namespace {

constexpr double kAlphaMargin = 1e-6;

/// Closed-form ES of the unit law underlying an affine chain, if one exists.
std::optional<double> closed_form_es(const Distribution& d, double alpha) {
  const auto& v = d.law().v;
  if (std::holds_alternative<StandardNormalLaw>(v)) {
    return normal::pdf(normal::quantile(alpha)) / alpha;
  }
  if (const auto* t = std::get_if<StudentTLaw>(&v)) {
    const boost::math::students_t_distribution<double> dist(t->nu);
    const double q = boost::math::quantile(dist, alpha);
    const double es = boost::math::pdf(dist, q) * (t->nu + q * q) / (alpha * (t->nu - 1.0));
    return t->standardized ? es / t->scale_factor() : es;
  }
  if (const auto* a = std::get_if<AffineLaw>(&v)) {
    if (auto base = closed_form_es(a->base, alpha)) return a->scale * *base - a->location;
  }
  return std::nullopt;
}

}  // namespace

void check_alpha(double alpha) {
  if (!(alpha > kAlphaMargin && alpha < 1.0 - kAlphaMargin)) {
    throw DomainError("alpha must lie in (1e-6, 1-1e-6)");
  }
}

RiskMeasureSpec::RiskMeasureSpec(MeasureKind k, double a) : kind(k), alpha(a) { check_alpha(a); }

double RiskMeasureSpec::operator()(const Distribution& d) const {
  return kind == MeasureKind::VaR ? value_at_risk(d, alpha) : expected_shortfall(d, alpha);
}

double value_at_risk(const Distribution& d, double alpha) {
  check_alpha(alpha);
  return -d.lower_quantile(alpha);
}

double expected_shortfall_atomic(std::span<const Atom> atoms, double alpha) {
  // Quantile is piecewise constant: atom k covers levels (F_{k-1}, F_k].
  double cum = 0.0;
  double acc = 0.0;
  for (const Atom& a : atoms) {
    const double take = std::min(a.mass, alpha - cum);
    if (take <= 0.0) break;
    acc += take * a.value;
    cum += take;
  }
  return -acc / alpha;
}

double expected_shortfall_quadrature(const Distribution& d, double alpha) {
  check_alpha(alpha);
  // u = alpha t^2, du = 2 alpha t dt; integrand of ES is -q(u)/alpha.
  const auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double u = alpha * t * t;
    return -2.0 * t * d.lower_quantile(u);
  };
  return numerics::integrate_doubling(integrand, 0.0, 1.0);
}

double expected_shortfall(const Distribution& d, double alpha) {
  check_alpha(alpha);
  if (auto atoms = d.atoms()) return expected_shortfall_atomic(*atoms, alpha);
  if (auto es = closed_form_es(d, alpha)) return *es;
  return expected_shortfall_quadrature(d, alpha);
}

}  // namespace mrisk
