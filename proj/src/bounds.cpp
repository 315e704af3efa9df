#include "modelrisk/bounds.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "modelrisk/dist.hpp"
#include "modelrisk/errors.hpp"

namespace mrisk {

namespace {

constexpr std::array<std::pair<BoundKind, std::string_view>, 6> kNames{{
    {BoundKind::ChebyshevVaR, "chebyshev-var"},
    {BoundKind::ChebyshevES, "chebyshev-es"},
    {BoundKind::CantelliVaR, "cantelli-var"},
    {BoundKind::CantelliES, "cantelli-es"},
    {BoundKind::SharpVaR, "sharp-var"},
    {BoundKind::SharpES, "sharp-es"},
}};

void check_params(double sigma, double alpha) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
}

}  // namespace

bool is_es_kind(BoundKind kind) {
  return kind == BoundKind::ChebyshevES || kind == BoundKind::CantelliES ||
         kind == BoundKind::SharpES;
}

std::string_view to_string(BoundKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw DomainError("unknown bound kind '" + std::string(name) + "'");
}

double bound(BoundKind kind, double sigma, double alpha) {
  check_params(sigma, alpha);
  switch (kind) {
    case BoundKind::ChebyshevVaR:
      return sigma / std::sqrt(alpha);
    case BoundKind::ChebyshevES:
      return 2.0 * sigma / std::sqrt(alpha);
    case BoundKind::CantelliVaR:
    case BoundKind::SharpVaR:
    case BoundKind::SharpES:
      return sigma * std::sqrt((1.0 - alpha) / alpha);
    case BoundKind::CantelliES:
      // u = sin^2 t turns sqrt((1-u)/u) du into 2 cos^2 t dt.
      return sigma / alpha * (std::sqrt(alpha - alpha * alpha) + std::asin(std::sqrt(alpha)));
  }
  throw DomainError("unknown bound kind");
}

double cantelli_es_printed(double sigma, double alpha) {
  check_params(sigma, alpha);
  return sigma / alpha *
         (std::sqrt(alpha - alpha * alpha) + std::atan(std::sqrt((1.0 - alpha) / alpha)));
}

double multiplier_ratio(BoundKind kind, double alpha) {
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw DomainError("multiplier ratio needs alpha in (0, 0.5)");
  }
  const double z = normal::quantile(alpha);
  const double gaussian = is_es_kind(kind) ? normal::pdf(z) / alpha : std::abs(z);
  return bound(kind, 1.0, alpha) / gaussian;
}

std::vector<RatioRow> ratio_curve(BoundKind kind, std::span<const double> alphas) {
  std::vector<RatioRow> rows;
  rows.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (i > 0 && !(alphas[i] > alphas[i - 1])) {
      throw DomainError("alpha grid must be strictly increasing");
    }
    rows.push_back({alphas[i], multiplier_ratio(kind, alphas[i])});
  }
  return rows;
}

}  // namespace mrisk
