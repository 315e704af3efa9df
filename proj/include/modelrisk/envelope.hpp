#pragma once

#include <functional>
#include <optional>

#include "modelrisk/dist.hpp"

namespace mrisk {

using MonotoneFn = std::function<double(double)>;

/// Maximal and minimal functions of a class of laws: the pointwise sup and inf
/// of the member cdfs.
///
/// `low_limit` is Fmax(-inf) and `high_limit` is Fmin(+inf). Invertibility is
/// declared by the constructor, never detected numerically. Optional analytic
/// inverses are used in place of bisection when present.
struct EnvelopePair {
  MonotoneFn Fmax;
  MonotoneFn Fmin;
  double low_limit = 0.0;
  double high_limit = 1.0;
  bool invertible = true;
  std::optional<MonotoneFn> Fmax_inverse;
  std::optional<MonotoneFn> Fmin_inverse;
};

struct QuantileRange {
  double inf_q;
  double sup_q;
};

/// Chebyshev-Markov envelope of L_{0,1}.
EnvelopePair chebyshev_markov_envelope();

/// Extremal quantiles over the class: inf q_alpha = Fmax^{-1}(alpha), sup q_alpha = Fmin^{-1}(alpha).
/// NonInvertibleEnvelope when the pair is flagged non-invertible, AlphaOutOfRange
/// when alpha is outside (low_limit, high_limit).
QuantileRange extremal_quantiles(const EnvelopePair& e, double alpha);

/// Kolmogorov ball {X : sup|F_X - F0| <= eps}.
EnvelopePair kolmogorov_ball_envelope(const Distribution& f0, double eps);

/// Levy ball of radius eps around F0.
EnvelopePair levy_ball_envelope(const Distribution& f0, double eps);

/// Laws (1-theta) F0 + theta F_Y with theta in [0, eps] and Y standard.
EnvelopePair mixture_class_envelope(const Distribution& f0, double eps);

/// Envelope with a flat at height `alpha` on [0, 1): 0 below 0, alpha on [0,1), 1 from 1 on.
/// It is the maximal function of two-point laws on {0,1} with mass alpha - 1/n at 0.
EnvelopePair step_envelope(double alpha);

struct StopLossTransformPair {
  MonotoneFn Pi_max;
  MonotoneFn Pi_min;
  Distribution Fmax_SL;
  Distribution Fmin_SL;
};

/// Extremal stop-loss transforms on L_{0,1} and the laws they generate.
StopLossTransformPair stop_loss_extremals();

}  // namespace mrisk
