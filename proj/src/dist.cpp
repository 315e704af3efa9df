#include "modelrisk/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "modelrisk/errors.hpp"
#include "modelrisk/numerics.hpp"

namespace mrisk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_unit_open(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile level must lie in (0,1)");
}

std::vector<Atom> merge_atoms(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& l, const Atom& r) { return l.value < r.value; });
  std::vector<Atom> out;
  for (const Atom& a : atoms) {
    if (a.mass <= 0.0) continue;
    if (!out.empty() && out.back().value == a.value) {
      out.back().mass += a.mass;
    } else {
      out.push_back(a);
    }
  }
  return out;
}

double student_cdf(const StudentTLaw& t, double x) {
  const boost::math::students_t_distribution<double> dist(t.nu);
  const double raw = t.standardized ? x * t.scale_factor() : x;
  if (std::isinf(raw)) return raw > 0 ? 1.0 : 0.0;
  return boost::math::cdf(dist, raw);
}

}  // namespace

namespace normal {

double cdf(double x) { return 0.5 * boost::math::erfc(-x / std::numbers::sqrt2); }

double pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double quantile(double u) {
  check_unit_open(u);
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

}  // namespace normal

double StudentTLaw::scale_factor() const { return std::sqrt(nu / (nu - 2.0)); }

Distribution Distribution::standard_normal() {
  return Distribution(std::make_shared<const Law>(Law{StandardNormalLaw{}}));
}

Distribution Distribution::student_t(double nu, bool standardized) {
  if (!(nu > 2.0 + 1e-9) || !std::isfinite(nu)) {
    throw MomentError("Student-t needs nu > 2 for a finite variance");
  }
  return Distribution(std::make_shared<const Law>(Law{StudentTLaw{nu, standardized}}));
}

Distribution Distribution::two_point(double a, double b, double p) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("two-point law needs finite atoms a < b");
  }
  if (!(p > 0.0 && p < 1.0)) throw DomainError("two-point mass must lie in (0,1)");
  return Distribution(std::make_shared<const Law>(Law{TwoPointLaw{a, b, p}}));
}

Distribution Distribution::point_mass(double x) {
  if (!std::isfinite(x)) throw DomainError("point mass location must be finite");
  return Distribution(std::make_shared<const Law>(Law{PointMassLaw{x}}));
}

Distribution Distribution::stop_loss_maximal() {
  return Distribution(std::make_shared<const Law>(Law{StopLossMaximalLaw{}}));
}

Distribution Distribution::mixture(std::vector<Distribution> components,
                                   std::vector<double> weights) {
  if (components.empty() || components.size() != weights.size()) {
    throw DomainError("mixture needs one weight per component");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("mixture weights must lie in [0,1]");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
  return Distribution(
      std::make_shared<const Law>(Law{MixtureLaw{std::move(components), std::move(weights)}}));
}

Distribution Distribution::affine(const Distribution& base, double location, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(location)) {
    throw DomainError("affine map needs finite location and scale > 0");
  }
  if (const auto* inner = std::get_if<AffineLaw>(&base.law().v)) {
    return affine(inner->base, location + scale * inner->location, scale * inner->scale);
  }
  if (location == 0.0 && scale == 1.0) return base;
  return Distribution(std::make_shared<const Law>(Law{AffineLaw{base, location, scale}}));
}

Distribution::Kind Distribution::kind() const {
  return std::visit(overloaded{
                        [](const StandardNormalLaw&) { return Kind::StandardNormal; },
                        [](const StudentTLaw&) { return Kind::StudentT; },
                        [](const TwoPointLaw&) { return Kind::TwoPoint; },
                        [](const PointMassLaw&) { return Kind::PointMass; },
                        [](const StopLossMaximalLaw&) { return Kind::StopLossMaximal; },
                        [](const MixtureLaw&) { return Kind::Mixture; },
                        [](const AffineLaw&) { return Kind::AffineOf; },
                    },
                    law_->v);
}

double Distribution::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf argument is NaN");
  return std::visit(
      overloaded{
          [&](const StandardNormalLaw&) { return normal::cdf(x); },
          [&](const StudentTLaw& t) { return student_cdf(t, x); },
          [&](const TwoPointLaw& t) { return x < t.a ? 0.0 : (x < t.b ? t.p : 1.0); },
          [&](const PointMassLaw& m) { return x < m.x ? 0.0 : 1.0; },
          [&](const StopLossMaximalLaw&) {
            if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
            return 0.5 * (1.0 + x / std::hypot(x, 1.0));
          },
          [&](const MixtureLaw& m) {
            double s = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              s += m.weights[i] * m.components[i].cdf(x);
            }
            return std::clamp(s, 0.0, 1.0);
          },
          [&](const AffineLaw& a) { return a.base.cdf((x - a.location) / a.scale); },
      },
      law_->v);
}

double Distribution::lower_quantile(double u) const {
  check_unit_open(u);
  if (auto at = atoms()) {
    double cum = 0.0;
    for (const Atom& a : *at) {
      cum += a.mass;
      if (cum >= u) return a.value;
    }
    return at->back().value;
  }
  return std::visit(
      overloaded{
          [&](const StandardNormalLaw&) { return normal::quantile(u); },
          [&](const StudentTLaw& t) {
            const boost::math::students_t_distribution<double> dist(t.nu);
            const double q = boost::math::quantile(dist, u);
            return t.standardized ? q / t.scale_factor() : q;
          },
          [&](const StopLossMaximalLaw&) {
            return (2.0 * u - 1.0) / (2.0 * std::sqrt(u * (1.0 - u)));
          },
          [&](const MixtureLaw& m) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            for (const auto& c : m.components) {
              const double q = c.lower_quantile(u);
              lo = std::min(lo, q);
              hi = std::max(hi, q);
            }
            const auto f = [this](double x) { return cdf(x); };
            return numerics::lower_inverse_unbounded(f, u, lo - 1.0, hi);
          },
          [&](const AffineLaw& a) { return a.location + a.scale * a.base.lower_quantile(u); },
          // Atomic kinds are handled above.
          [&](const auto&) -> double { throw DomainError("unreachable quantile branch"); },
      },
      law_->v);
}

std::optional<double> Distribution::density(double x) const {
  if (!is_absolutely_continuous()) return std::nullopt;
  return std::visit(
      overloaded{
          [&](const StandardNormalLaw&) -> std::optional<double> { return normal::pdf(x); },
          [&](const StudentTLaw& t) -> std::optional<double> {
            const boost::math::students_t_distribution<double> dist(t.nu);
            if (!t.standardized) return boost::math::pdf(dist, x);
            const double k = t.scale_factor();
            return k * boost::math::pdf(dist, x * k);
          },
          [&](const StopLossMaximalLaw&) -> std::optional<double> {
            return 0.5 * std::pow(x * x + 1.0, -1.5);
          },
          [&](const MixtureLaw& m) -> std::optional<double> {
            double s = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              s += m.weights[i] * *m.components[i].density(x);
            }
            return s;
          },
          [&](const AffineLaw& a) -> std::optional<double> {
            return *a.base.density((x - a.location) / a.scale) / a.scale;
          },
          [&](const auto&) -> std::optional<double> { return std::nullopt; },
      },
      law_->v);
}

double Distribution::mean() const {
  return std::visit(overloaded{
                        [](const StandardNormalLaw&) { return 0.0; },
                        [](const StudentTLaw&) { return 0.0; },
                        [](const TwoPointLaw& t) { return t.p * t.a + (1.0 - t.p) * t.b; },
                        [](const PointMassLaw& m) { return m.x; },
                        [](const StopLossMaximalLaw&) { return 0.0; },
                        [](const MixtureLaw& m) {
                          double s = 0.0;
                          for (std::size_t i = 0; i < m.components.size(); ++i) {
                            s += m.weights[i] * m.components[i].mean();
                          }
                          return s;
                        },
                        [](const AffineLaw& a) { return a.location + a.scale * a.base.mean(); },
                    },
                    law_->v);
}

double Distribution::stdev() const {
  return std::visit(
      overloaded{
          [](const StandardNormalLaw&) { return 1.0; },
          [](const StudentTLaw& t) { return t.standardized ? 1.0 : t.scale_factor(); },
          [](const TwoPointLaw& t) { return (t.b - t.a) * std::sqrt(t.p * (1.0 - t.p)); },
          [](const PointMassLaw&) { return 0.0; },
          [](const StopLossMaximalLaw&) { return std::numeric_limits<double>::infinity(); },
          [this](const MixtureLaw& m) {
            const double mu = mean();
            double second = 0.0;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              const double mi = m.components[i].mean();
              const double si = m.components[i].stdev();
              second += m.weights[i] * (si * si + (mi - mu) * (mi - mu));
            }
            return std::sqrt(second);
          },
          [](const AffineLaw& a) { return a.scale * a.base.stdev(); },
      },
      law_->v);
}

bool Distribution::is_absolutely_continuous() const {
  return std::visit(overloaded{
                        [](const TwoPointLaw&) { return false; },
                        [](const PointMassLaw&) { return false; },
                        [](const MixtureLaw& m) {
                          for (std::size_t i = 0; i < m.components.size(); ++i) {
                            if (m.weights[i] > 0.0 && !m.components[i].is_absolutely_continuous()) {
                              return false;
                            }
                          }
                          return true;
                        },
                        [](const AffineLaw& a) { return a.base.is_absolutely_continuous(); },
                        [](const auto&) { return true; },
                    },
                    law_->v);
}

std::optional<std::vector<Atom>> Distribution::atoms() const {
  return std::visit(
      overloaded{
          [](const TwoPointLaw& t) -> std::optional<std::vector<Atom>> {
            return std::vector<Atom>{{t.a, t.p}, {t.b, 1.0 - t.p}};
          },
          [](const PointMassLaw& m) -> std::optional<std::vector<Atom>> {
            return std::vector<Atom>{{m.x, 1.0}};
          },
          [](const MixtureLaw& m) -> std::optional<std::vector<Atom>> {
            std::vector<Atom> all;
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              if (m.weights[i] == 0.0) continue;
              auto sub = m.components[i].atoms();
              if (!sub) return std::nullopt;
              for (const Atom& a : *sub) all.push_back({a.value, a.mass * m.weights[i]});
            }
            return merge_atoms(std::move(all));
          },
          [](const AffineLaw& a) -> std::optional<std::vector<Atom>> {
            auto sub = a.base.atoms();
            if (!sub) return std::nullopt;
            for (Atom& at : *sub) at.value = a.location + a.scale * at.value;
            return sub;
          },
          [](const auto&) -> std::optional<std::vector<Atom>> { return std::nullopt; },
      },
      law_->v);
}

MomentClass::MomentClass(double mu_, double sigma_) : mu(mu_), sigma(sigma_) {
  if (!std::isfinite(mu) || !(sigma > 0.0) || !std::isfinite(sigma)) {
    throw MomentError("moment class needs finite mean and sigma > 0");
  }
}

bool MomentClass::contains(const Distribution& d, double tol) const {
  return std::abs(d.mean() - mu) <= tol && std::abs(d.stdev() - sigma) <= tol;
}

bool is_standardized(const Distribution& d, double tol) { return MomentClass{}.contains(d, tol); }

Distribution standardize(const Distribution& d) {
  const double m = d.mean();
  const double s = d.stdev();
  if (!std::isfinite(m) || !std::isfinite(s) || !(s > 0.0)) {
    throw MomentError("standardize needs a finite mean and a finite positive stdev");
  }
  if (const auto* t = std::get_if<StudentTLaw>(&d.law().v); t && !t->standardized) {
    return Distribution::student_t(t->nu, true);
  }
  if (std::abs(m) < 1e-15 && std::abs(s - 1.0) < 1e-15) return d;
  return Distribution::affine(d, -m / s, 1.0 / s);
}

double mixture_cdf(const Distribution& f0, const Distribution& fy, double theta, double x) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("mixing weight must lie in [0,1]");
  return (1.0 - theta) * f0.cdf(x) + theta * fy.cdf(x);
}

}  // namespace mrisk
