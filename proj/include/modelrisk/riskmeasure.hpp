#pragma once

#include "modelrisk/dist.hpp"

namespace mrisk {

enum class MeasureKind { VaR, ES };

/// A risk measure rho: VaR or ES at level alpha, with alpha in (1e-6, 1 - 1e-6).
struct RiskMeasureSpec {
  MeasureKind kind;
  double alpha;

  RiskMeasureSpec(MeasureKind kind, double alpha);
  double operator()(const Distribution& d) const;
};

/// VaR_alpha(X) = -q_alpha(X).
double value_at_risk(const Distribution& d, double alpha);

/// ES_alpha(X) = (1/alpha) * integral of VaR_u(X) over u in (0, alpha].
///
/// Gaussian and Student-t laws (and their affine images) use closed forms,
/// atomic laws are summed exactly, everything else goes through
/// expected_shortfall_quadrature.
double expected_shortfall(const Distribution& d, double alpha);

/// The quantile-integral definition evaluated numerically with u = alpha t^2
/// and doubling 64-point Gauss-Legendre panels. Exposed for cross-checks.
double expected_shortfall_quadrature(const Distribution& d, double alpha);

/// Exact ES of a discrete law from its atoms.
double expected_shortfall_atomic(std::span<const Atom> atoms, double alpha);

void check_alpha(double alpha);

}  // namespace mrisk
