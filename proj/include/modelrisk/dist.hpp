#pragma once

#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace mrisk {

struct Law;

/// One atom of a purely discrete law.
struct Atom {
  double value;
  double mass;
};

/// Immutable, cheaply copyable probability law on the real line.
///
/// Quantiles follow the lower convention q(u) = inf{x : F(x) >= u}. Laws are
/// built through the named constructors, which validate their parameters.
class Distribution {
 public:
  enum class Kind { StandardNormal, StudentT, TwoPoint, PointMass, StopLossMaximal, Mixture, AffineOf };

  static Distribution standard_normal();
  /// Student-t with `nu` > 2 degrees of freedom. When `standardized`, the
  /// variable is divided by sqrt(nu/(nu-2)) so that it has unit variance.
  static Distribution student_t(double nu, bool standardized = true);
  /// Mass `p` at `a`, mass 1-p at `b`; requires a < b and 0 < p < 1.
  static Distribution two_point(double a, double b, double p);
  static Distribution point_mass(double x);
  /// Law with cdf (1 + x/sqrt(x^2+1))/2: mean zero, infinite variance.
  static Distribution stop_loss_maximal();
  static Distribution mixture(std::vector<Distribution> components, std::vector<double> weights);
  /// Law of location + scale * X with X ~ base; nested affine maps are folded.
  static Distribution affine(const Distribution& base, double location, double scale);

  Kind kind() const;
  const Law& law() const { return *law_; }

  double cdf(double x) const;
  /// inf{x : cdf(x) >= u}; DomainError unless 0 < u < 1.
  double lower_quantile(double u) const;
  /// Density, absent when the law has atoms.
  std::optional<double> density(double x) const;
  double mean() const;
  /// May be +inf (stop-loss maximal law).
  double stdev() const;
  bool is_absolutely_continuous() const;
  /// Sorted atoms with merged duplicates for purely discrete laws, otherwise empty.
  std::optional<std::vector<Atom>> atoms() const;

 private:
  explicit Distribution(std::shared_ptr<const Law> law) : law_(std::move(law)) {}
  std::shared_ptr<const Law> law_;
};

struct StandardNormalLaw {};
struct StudentTLaw {
  double nu;
  bool standardized;
  /// sqrt(nu/(nu-2)), the stdev of the raw t variable.
  double scale_factor() const;
};
struct TwoPointLaw {
  double a;
  double b;
  double p;
};
struct PointMassLaw {
  double x;
};
struct StopLossMaximalLaw {};
struct MixtureLaw {
  std::vector<Distribution> components;
  std::vector<double> weights;
};
struct AffineLaw {
  Distribution base;
  double location;
  double scale;
};

struct Law {
  std::variant<StandardNormalLaw, StudentTLaw, TwoPointLaw, PointMassLaw, StopLossMaximalLaw,
               MixtureLaw, AffineLaw>
      v;
};

/// The moment class L_{mu,sigma}: every law with mean mu and stdev sigma.
struct MomentClass {
  double mu = 0.0;
  double sigma = 1.0;

  MomentClass() = default;
  MomentClass(double mu, double sigma);
  bool contains(const Distribution& d, double tol = 1e-6) const;
};

/// Affine image with mean 0 and stdev 1. Returns `d` itself when it is already standard.
/// MomentError when the stdev is zero or not finite.
Distribution standardize(const Distribution& d);

bool is_standardized(const Distribution& d, double tol = 1e-6);

/// (1-theta) F0(x) + theta FY(x): a mixture of distribution functions, which is
/// not the law of (1-theta) X0 + theta Y.
double mixture_cdf(const Distribution& f0, const Distribution& fy, double theta, double x);

namespace normal {
double cdf(double x);
double pdf(double x);
double quantile(double u);
}  // namespace normal

}  // namespace mrisk
