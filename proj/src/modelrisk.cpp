#include "modelrisk/modelrisk.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "modelrisk/envelope.hpp"
#include "modelrisk/errors.hpp"
#include "modelrisk/numerics.hpp"

namespace mrisk {

namespace {

constexpr double kSnap = 1e-12;

constexpr std::array<std::pair<FamilyKind, std::string_view>, 4> kFamilyNames{{
    {FamilyKind::Moments, "moments"},
    {FamilyKind::KolmogorovBall, "kolmogorov"},
    {FamilyKind::LevyBall, "levy"},
    {FamilyKind::MixtureClass, "mixture"},
}};

void require_standardized(const Distribution& x0) {
  if (!is_standardized(x0)) throw MomentError("reference law must have mean 0 and stdev 1");
}

void check_ball(double eps, double alpha) {
  if (!(eps > 0.0)) throw DomainError("radius must be > 0");
  if (!(eps < std::min(alpha, 1.0 - alpha))) {
    throw RadiusTooLarge("ball radius must be below min(alpha, 1-alpha)");
  }
}

VarRange from_quantiles(const QuantileRange& q) { return {-q.sup_q, -q.inf_q}; }

}  // namespace

ModelRiskReport report(double rho0, double rho_sup, double rho_inf) {
  if (!std::isfinite(rho0) || !std::isfinite(rho_sup) || !std::isfinite(rho_inf)) {
    throw OutOfRange("risk figures must be finite");
  }
  if (!(rho0 > 0.0)) throw NonPositiveReference("reference risk must be > 0");
  if (!(rho_inf < rho_sup)) throw DegenerateRange("need rho_inf < rho_sup");
  if (rho0 > rho_sup + kSnap || rho0 < rho_inf - kSnap) {
    throw OutOfRange("reference risk lies outside [rho_inf, rho_sup]");
  }
  if (std::abs(rho0 - rho_sup) <= kSnap) rho0 = rho_sup;
  if (std::abs(rho0 - rho_inf) <= kSnap) rho0 = rho_inf;

  ModelRiskReport r{};
  r.rho0 = rho0;
  r.rho_sup = rho_sup;
  r.rho_inf = rho_inf;
  r.M_K = rho_sup - rho0;
  r.AM = rho0 == rho_sup ? 0.0 : rho_sup / rho0 - 1.0;
  r.RM = rho0 == rho_sup ? 0.0 : (rho0 == rho_inf ? 1.0 : (rho_sup - rho0) / (rho_sup - rho_inf));
  return r;
}

ModelRiskReport moment_class_var_report(const Distribution& x0, double alpha) {
  require_standardized(x0);
  const double var0 = value_at_risk(x0, alpha);
  const auto q = extremal_quantiles(chebyshev_markov_envelope(), alpha);
  return report(var0, -q.inf_q, -q.sup_q);
}

ModelRiskReport moment_class_es_report(const Distribution& x0, double alpha) {
  require_standardized(x0);
  const double es0 = expected_shortfall(x0, alpha);
  return report(es0, std::sqrt((1.0 - alpha) / alpha), 0.0);
}

ModelRiskReport moment_class_report(MeasureKind kind, const Distribution& x0, double alpha) {
  return kind == MeasureKind::VaR ? moment_class_var_report(x0, alpha)
                                  : moment_class_es_report(x0, alpha);
}

Acceptability acceptability(double mu, double sigma, double alpha) {
  MomentClass{mu, sigma};
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
  const double denom = mu * mu + sigma * sigma;
  if (mu > 0.0 && alpha > sigma * sigma / denom) return Acceptability::AllAcceptable;
  if (mu < 0.0 && alpha < mu * mu / denom) return Acceptability::AllNonAcceptable;
  return Acceptability::Mixed;
}

FamilyKind family_kind(const PerturbationFamily& family) {
  return static_cast<FamilyKind>(family.index());
}

std::string_view to_string(FamilyKind kind) {
  for (const auto& [k, name] : kFamilyNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  for (const auto& [k, n] : kFamilyNames) {
    if (n == name) return k;
  }
  throw DomainError("unknown family '" + std::string(name) + "'");
}

PerturbationFamily make_family(FamilyKind kind, const Distribution& center, double eps) {
  switch (kind) {
    case FamilyKind::Moments:
      return MomentClass{center.mean(), center.stdev()};
    case FamilyKind::KolmogorovBall:
      if (!(eps > 0.0)) throw DomainError("radius must be > 0");
      return KolmogorovBall{center, eps};
    case FamilyKind::LevyBall:
      if (!(eps > 0.0)) throw DomainError("radius must be > 0");
      return LevyBall{center, eps};
    case FamilyKind::MixtureClass:
      if (!(eps >= 0.0 && eps < 1.0)) throw DomainError("mixture radius must lie in [0,1)");
      require_standardized(center);
      return MixtureClass{center, eps};
  }
  throw DomainError("unknown family");
}

double mixture_sup_residual(const Distribution& f0, double eps, double alpha, double r) {
  return (1.0 - eps) * f0.cdf(-r) + eps / (1.0 + r * r) - alpha;
}

VarRange finite_radius_var_extremes(const PerturbationFamily& family, double alpha) {
  check_alpha(alpha);
  if (const auto* m = std::get_if<MomentClass>(&family)) {
    return {-m->mu - m->sigma * std::sqrt(alpha / (1.0 - alpha)),
            -m->mu + m->sigma * std::sqrt((1.0 - alpha) / alpha)};
  }
  if (const auto* k = std::get_if<KolmogorovBall>(&family)) {
    check_ball(k->eps, alpha);
    return from_quantiles(extremal_quantiles(kolmogorov_ball_envelope(k->center, k->eps), alpha));
  }
  if (const auto* l = std::get_if<LevyBall>(&family)) {
    check_ball(l->eps, alpha);
    return from_quantiles(extremal_quantiles(levy_ball_envelope(l->center, l->eps), alpha));
  }
  const auto& mix = std::get<MixtureClass>(family);
  const Distribution& f0 = mix.center;
  const double eps = mix.eps;
  if (!(alpha <= (1.0 - eps) * f0.cdf(0.0))) {
    throw RadiusTooLarge("mixture class needs alpha <= (1-eps) F0(0)");
  }
  const double inf_var = value_at_risk(f0, alpha / (1.0 - eps));
  const auto g = [&](double r) { return mixture_sup_residual(f0, eps, alpha, r); };
  double hi = std::max(1.0, value_at_risk(f0, alpha));
  while (g(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw RootBracketError("mixture sup-VaR root could not be bracketed");
  }
  const double sup_var = numerics::bisect_decreasing(g, 0.0, hi);
  return {inf_var, sup_var};
}

ModelRiskReport family_var_report(const PerturbationFamily& family, double alpha) {
  const auto range = finite_radius_var_extremes(family, alpha);
  const double var0 = std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, MomentClass>) {
          throw PreconditionError("a moment class has no centre; use moment_class_report");
        } else {
          return value_at_risk(f.center, alpha);
        }
      },
      family);
  return report(var0, range.sup_var, range.inf_var);
}

double relative_measure(double rho0, double rho_sup, double rho_inf) {
  if (!(rho_inf < rho_sup)) throw DegenerateRange("need rho_inf < rho_sup");
  return (rho_sup - rho0) / (rho_sup - rho_inf);
}

double local_measure(FamilyKind kind, const Distribution& x0, double alpha) {
  check_alpha(alpha);
  if (!x0.is_absolutely_continuous()) {
    throw PreconditionError("local measure needs an absolutely continuous reference");
  }
  switch (kind) {
    case FamilyKind::KolmogorovBall:
    case FamilyKind::LevyBall:
      return 0.5;
    case FamilyKind::MixtureClass: {
      require_standardized(x0);
      const double var0 = value_at_risk(x0, alpha);
      if (var0 < 0.0) throw PreconditionError("mixture local measure needs VaR_alpha(X0) >= 0");
      return 1.0 - alpha * (1.0 + var0 * var0);
    }
    case FamilyKind::Moments:
      break;
  }
  throw PreconditionError("local measure is not defined for a fixed moment class");
}

std::vector<LocalSweepRow> local_measure_sweep(FamilyKind kind, const Distribution& x0,
                                               double alpha, std::span<const double> radii) {
  const double var0 = value_at_risk(x0, alpha);
  std::vector<LocalSweepRow> rows;
  rows.reserve(radii.size());
  for (double eps : radii) {
    const auto range = finite_radius_var_extremes(make_family(kind, x0, eps), alpha);
    rows.push_back({eps, relative_measure(var0, range.sup_var, range.inf_var)});
  }
  return rows;
}

}  // namespace mrisk
