#include "modelrisk/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "modelrisk/errors.hpp"

namespace mrisk::oracle {

namespace {

constexpr double kPMin = 1e-12;
constexpr double kMomentTol = 1e-6;

void check_level(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
}

struct Atoms2 {
  double lower;
  double upper;
};

Atoms2 standard_atoms(double p) { return {-std::sqrt((1.0 - p) / p), std::sqrt(p / (1.0 - p))}; }

/// Lower alpha-quantile of a discrete law given atoms sorted ascending.
template <std::size_t N>
double atomic_quantile(const std::array<double, N>& x, const std::array<double, N>& m,
                       double alpha) {
  double cum = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    cum += m[i];
    if (cum >= alpha) return x[i];
  }
  return x[N - 1];
}

}  // namespace

void SearchConstraints::validate() const {
  if (atom_budget != 2 && atom_budget != 3) throw DomainError("atom budget must be 2 or 3");
  if (p_grid < 1000) throw DomainError("p_grid must be at least 1000");
  if (!(stdev > 0.0)) throw MomentError("stdev must be > 0");
}

Distribution two_point(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("two-point mass must lie in (0,1)");
  const auto a = standard_atoms(p);
  return Distribution::two_point(a.lower, a.upper, p);
}

std::vector<double> mass_grid(std::size_t n, std::span<const double> anchors) {
  if (n < 2) throw DomainError("grid needs at least two points");
  const double lo = std::log(kPMin / (1.0 - kPMin));
  const double hi = -lo;
  std::vector<double> grid;
  grid.reserve(n + anchors.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double s = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    grid.push_back(1.0 / (1.0 + std::exp(-s)));
  }
  for (double a : anchors) {
    if (a > 0.0 && a < 1.0) grid.push_back(a);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Extremes search_extremal_var(double alpha, const SearchConstraints& c) {
  check_level(alpha);
  c.validate();
  const std::array<double, 1> anchor{alpha};
  Extremes out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double p : mass_grid(c.p_grid, anchor)) {
    const auto a = standard_atoms(p);
    const std::array<double, 2> x{c.mean + c.stdev * a.lower, c.mean + c.stdev * a.upper};
    const std::array<double, 2> m{p, 1.0 - p};
    const double q = atomic_quantile(x, m, alpha);
    out.inf = std::min(out.inf, q);
    out.sup = std::max(out.sup, q);
  }
  return out;
}

double two_point_es(double p, double alpha) {
  check_level(alpha);
  const auto a = standard_atoms(p);
  // Levels (0, p] map to the lower atom, (p, 1] to the upper one.
  const double low_part = std::min(p, alpha) * a.lower;
  const double high_part = std::max(alpha - p, 0.0) * a.upper;
  return -(low_part + high_part) / alpha;
}

Extremes search_extremal_es(double alpha, const SearchConstraints& c) {
  check_level(alpha);
  c.validate();
  const std::array<double, 1> anchor{alpha};
  Extremes out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (double p : mass_grid(c.p_grid, anchor)) {
    const double es = -c.mean + c.stdev * two_point_es(p, alpha);
    out.inf = std::min(out.inf, es);
    out.sup = std::max(out.sup, es);
  }
  return out;
}

double two_point_skewness(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("two-point mass must lie in (0,1)");
  return (1.0 - 2.0 * p) / std::sqrt(p * (1.0 - p));
}

double two_point_mass_for_skewness(double xi) {
  return 0.5 * (1.0 - xi / std::sqrt(xi * xi + 4.0));
}

std::vector<SkewnessRow> skewness_experiment(double alpha, std::span<const double> xi_targets,
                                             const SearchConstraints& c) {
  check_level(alpha);
  c.validate();
  if (c.atom_budget != 3) throw DomainError("skewness experiment needs atom_budget = 3");
  const auto side =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(c.p_grid))));
  // Outer atoms x1 = -e^s, x3 = e^t with s, t evenly spaced in log scale.
  const double lmin = std::log(1e-3);
  const double lmax = std::log(1e3);
  std::vector<double> radii(side);
  for (std::size_t i = 0; i < side; ++i) {
    radii[i] = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) / static_cast<double>(side - 1));
  }

  std::vector<SkewnessRow> rows;
  rows.reserve(xi_targets.size());
  for (double xi : xi_targets) {
    if (!std::isfinite(xi)) throw InfeasibleConstraints("target skewness must be finite");
    SkewnessRow row{xi, std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity(), 0};
    const auto consider = [&](double q) {
      row.inf_q = std::min(row.inf_q, q);
      row.sup_q = std::max(row.sup_q, q);
      ++row.laws;
    };

    const double p2 = two_point_mass_for_skewness(xi);
    if (p2 > 0.0 && p2 < 1.0) {
      const auto a = standard_atoms(p2);
      consider(atomic_quantile(std::array<double, 2>{a.lower, a.upper},
                               std::array<double, 2>{p2, 1.0 - p2}, alpha));
    }

    for (double r1 : radii) {
      const double x1 = -r1;
      for (double x3 : radii) {
        const double d = 1.0 + x1 * x3;
        if (std::abs(d) < 1e-12) continue;
        // Third moment of a (0,1) three-point law is e1 + e3.
        const double x2 = (xi - x1 - x3) / d;
        if (!(x1 < x2 && x2 < x3)) continue;
        const std::array<double, 3> x{x1, x2, x3};
        const std::array<double, 3> m{
            (1.0 + x2 * x3) / ((x1 - x2) * (x1 - x3)),
            (1.0 + x1 * x3) / ((x2 - x1) * (x2 - x3)),
            (1.0 + x1 * x2) / ((x3 - x1) * (x3 - x2)),
        };
        if (m[0] < 0.0 || m[1] < 0.0 || m[2] < 0.0) continue;
        double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
          s0 += m[i];
          s1 += m[i] * x[i];
          s2 += m[i] * x[i] * x[i];
          s3 += m[i] * x[i] * x[i] * x[i];
        }
        if (std::abs(s0 - 1.0) > kMomentTol || std::abs(s1) > kMomentTol ||
            std::abs(s2 - 1.0) > kMomentTol || std::abs(s3 - xi) > kMomentTol) {
          continue;
        }
        consider(atomic_quantile(x, m, alpha));
      }
    }
    if (row.laws == 0) {
      throw InfeasibleConstraints("no three-point law matches the target skewness");
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mrisk::oracle
