#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace mrisk {

enum class BoundKind { ChebyshevVaR, ChebyshevES, CantelliVaR, CantelliES, SharpVaR, SharpES };

bool is_es_kind(BoundKind kind);
std::string_view to_string(BoundKind kind);
/// Parses "chebyshev-var", "sharp-es", ...; DomainError on anything else.
BoundKind parse_bound_kind(std::string_view name);

/// Upper bound on rho(X) for every X with mean 0 and stdev sigma.
double bound(BoundKind kind, double sigma, double alpha);

/// The Cantelli ES bound with the antiderivative as originally printed,
/// (sigma/alpha)(sqrt(alpha - alpha^2) + atan(sqrt((1-alpha)/alpha))).
/// That expression is not the integral it claims to be; kept for diagnostics only.
double cantelli_es_printed(double sigma, double alpha);

/// bound(kind, 1, alpha) over the Gaussian figure: |z_alpha| for VaR kinds, phi(z_alpha)/alpha for ES kinds.
/// Defined for alpha in (0, 0.5).
double multiplier_ratio(BoundKind kind, double alpha);

struct RatioRow {
  double alpha;
  double ratio;
};

std::vector<RatioRow> ratio_curve(BoundKind kind, std::span<const double> alphas);

}  // namespace mrisk
