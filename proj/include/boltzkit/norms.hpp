// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <vector>

#include "boltzkit/charfun.hpp"

namespace boltzkit {

/// Extended-real norm results: flags instead of exceptions, so
/// classification pipelines compose.
struct KNormResult {
  double value = 0.0;
  bool infinite = false;
  double small_r_slope = 0.0;  // fitted d log ratio / d log r near 0
  explicit operator double() const { return value; }
};

/// sup_r |phi(r) - 1| / r^alpha. Infinite when the ratio grows without
/// bound as r -> 0 (fitted slope below -0.02).
KNormResult knorm(const RadialCharFn& phi, double alpha);
KNormResult knorm(const AnalyticCharFn& phi, double alpha);

/// sup_r |phi - psi| / r^alpha (grids must match for the sampled overload).
KNormResult knorm_diff(const RadialCharFn& phi, const RadialCharFn& psi,
                       double alpha);
KNormResult knorm_diff(const AnalyticCharFn& phi, const AnalyticCharFn& psi,
                       double alpha);

struct MNormResult {
  double value = 0.0;       // integral over [0, r_max] (sampled) or with
                            // analytic tail folded in (analytic families)
  double tail_bound = 0.0;  // bound on what lies beyond the truncation
  double quad_error = 0.0;
  bool diverged = false;      // fitted small-r integrand exponent <= -1
  bool inconclusive = false;  // fitted exponent within (-1.05, -0.95)
  double small_r_slope = 0.0;
};

/// 4 pi int |Re phi(r) - 1| r^(-1-alpha) dr, alpha in (0,2).
MNormResult mnorm_re(const RadialCharFn& phi, double alpha);
MNormResult mnorm_re(const AnalyticCharFn& phi, double alpha);
MNormResult mnorm_re_diff(const RadialCharFn& phi, const RadialCharFn& psi,
                          double alpha);

struct DisDistance {
  double total = 0.0;
  double mnorm_part = 0.0;
  double knorm_part = 0.0;
  double knorm_pow_part = 0.0;
  bool infinite = false;
};

/// dis(phi, psi) = ||phi-psi||_{M~alpha} + ||phi-psi||_beta
///               + ||phi-psi||_beta^eps, for 0 < beta < alpha < 2,
///               eps in (0,1).
DisDistance dis_distance(const RadialCharFn& phi, const RadialCharFn& psi,
                         double alpha, double beta, double eps);
DisDistance dis_distance(const AnalyticCharFn& phi, const AnalyticCharFn& psi,
                         double alpha, double beta, double eps);

struct Classification {
  bool in_K_alpha = false;
  bool in_M_tilde_alpha = false;
  bool inconclusive = false;
};

/// in_K_alpha: knorm finite. in_M_tilde_alpha: knorm finite and the
/// M-norm of Re phi shows no divergence flag.
Classification classify(const AnalyticCharFn& phi, double alpha);
Classification classify(const RadialCharFn& phi, double alpha);

struct MeanObstruction {
  bool bounded = true;
  double growth_exponent = 0.0;  // fitted exponent of the ratio in r
  std::vector<std::pair<double, double>> samples;  // (r, ratio)
};

/// Ratios |e^{-i r a} - 1| / r^alpha on r = 10^-k, k = 1..12: bounded for
/// alpha <= 1, blows up like r^{1-alpha} for alpha > 1.
MeanObstruction mean_obstruction(double a, double alpha);

}  // namespace boltzkit
