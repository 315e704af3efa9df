#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "modelrisk/dist.hpp"

namespace mrisk::oracle {

/// Brute-force search space over small discrete laws.
struct SearchConstraints {
  double mean = 0.0;
  double stdev = 1.0;
  std::optional<double> skewness;
  int atom_budget = 2;
  std::size_t p_grid = 100000;

  void validate() const;
};

/// The two-atom law with mean 0 and variance 1 whose lower atom carries mass p:
/// -sqrt((1-p)/p) with mass p, sqrt(p/(1-p)) with mass 1-p.
Distribution two_point(double p);

/// Mass grid of n points, evenly spaced in logit(p) over [1e-12, 1 - 1e-12],
/// with the `anchors` merged in. Sorted and free of duplicates.
std::vector<double> mass_grid(std::size_t n, std::span<const double> anchors = {});

struct Extremes {
  double inf;
  double sup;
};

/// Extreme alpha-quantiles over the two-point laws of the grid. Uses only the
/// atoms and the lower-quantile definition.
Extremes search_extremal_var(double alpha, const SearchConstraints& c = {});

/// Extreme ES_alpha over the two-point laws of the grid, summing atoms exactly.
/// The grid always contains p = alpha.
Extremes search_extremal_es(double alpha, const SearchConstraints& c = {});

/// ES_alpha of the standard two-point law with lower mass p, from its atoms.
double two_point_es(double p, double alpha);

/// Lower mass of the standard two-point law with skewness xi.
double two_point_mass_for_skewness(double xi);
/// Skewness (1-2p)/sqrt(p(1-p)) of the standard two-point law.
double two_point_skewness(double p);

struct SkewnessRow {
  double xi;
  double inf_q;
  double sup_q;
  std::size_t laws;
};

/// For each target skewness, extreme alpha-quantiles over three-point laws
/// (plus the matching two-point law) with moments (0, 1, xi).
/// InfeasibleConstraints if no law matches a target.
std::vector<SkewnessRow> skewness_experiment(double alpha, std::span<const double> xi_targets,
                                             const SearchConstraints& c = {});

}  // namespace mrisk::oracle
