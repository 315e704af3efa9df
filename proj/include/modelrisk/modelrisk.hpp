#pragma once

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "modelrisk/dist.hpp"
#include "modelrisk/riskmeasure.hpp"

namespace mrisk {

/// rho(X0) together with the attainable range of rho over a class, and the
/// derived measures of model risk.
struct ModelRiskReport {
  double rho0;
  double rho_sup;
  double rho_inf;
  /// Absolute measure: rho_sup / rho0 - 1.
  double AM;
  /// Relative measure: (rho_sup - rho0) / (rho_sup - rho_inf), in [0, 1].
  double RM;
  /// Kerkhof et al.: rho_sup - rho0.
  double M_K;
};

/// Builds a report from the three risk figures.
///
/// Requires rho0 > 0 (NonPositiveReference), rho_inf < rho_sup (DegenerateRange)
/// and rho_inf <= rho0 <= rho_sup (OutOfRange). A rho0 within 1e-12 of either
/// end is snapped onto it.
ModelRiskReport report(double rho0, double rho_sup, double rho_inf);

/// Model risk of VaR_alpha on L_{0,1} for a standardized reference X0.
ModelRiskReport moment_class_var_report(const Distribution& x0, double alpha);
/// Model risk of ES_alpha on L_{0,1}; the best case is 0, the worst sqrt((1-alpha)/alpha).
ModelRiskReport moment_class_es_report(const Distribution& x0, double alpha);
ModelRiskReport moment_class_report(MeasureKind kind, const Distribution& x0, double alpha);

enum class Acceptability { AllAcceptable, AllNonAcceptable, Mixed };

/// Sign pattern of VaR_alpha over L_{mu,sigma}.
Acceptability acceptability(double mu, double sigma, double alpha);

struct KolmogorovBall {
  Distribution center;
  double eps;
};
struct LevyBall {
  Distribution center;
  double eps;
};
/// {(1-theta) F0 + theta F_Y : Y in L_{0,1}, theta in [0, eps]}.
struct MixtureClass {
  Distribution center;
  double eps;
};

using PerturbationFamily = std::variant<MomentClass, KolmogorovBall, LevyBall, MixtureClass>;

enum class FamilyKind { Moments, KolmogorovBall, LevyBall, MixtureClass };

FamilyKind family_kind(const PerturbationFamily& family);
std::string_view to_string(FamilyKind kind);
FamilyKind parse_family_kind(std::string_view name);

/// Builds the family of `kind` around `center` with radius `eps`.
PerturbationFamily make_family(FamilyKind kind, const Distribution& center, double eps);

struct VarRange {
  double inf_var;
  double sup_var;
};

/// inf and sup of VaR_alpha over the family.
///
/// Balls need eps < min(alpha, 1-alpha); the mixture class needs
/// alpha <= (1-eps) F0(0) (RadiusTooLarge otherwise). For the mixture class the
/// sup is the root r of (1-eps) F0(-r) + eps/(1+r^2) = alpha.
VarRange finite_radius_var_extremes(const PerturbationFamily& family, double alpha);

/// Left side minus alpha of the mixture-class sup-VaR equation.
double mixture_sup_residual(const Distribution& f0, double eps, double alpha, double r);

/// VaR model-risk report of X0 (the family centre) over the family.
ModelRiskReport family_var_report(const PerturbationFamily& family, double alpha);

/// Relative measure without the rho0 > 0 requirement of report().
double relative_measure(double rho0, double rho_sup, double rho_inf);

/// Limit of RM as the family shrinks to X0, from the closed forms.
/// Distance balls give 1/2; the mixture class gives 1 - alpha (1 + VaR_alpha(X0)^2).
double local_measure(FamilyKind kind, const Distribution& x0, double alpha);

struct LocalSweepRow {
  double eps;
  double rm;
};

/// RM at each finite radius, for corroborating local_measure numerically.
std::vector<LocalSweepRow> local_measure_sweep(FamilyKind kind, const Distribution& x0,
                                               double alpha, std::span<const double> radii);

}  // namespace mrisk
