// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace boltzkit {

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
/// Cached per order; thread safe.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

/// Gauss-Lobatto nodes on [0, 1] (endpoints included), m >= 2.
std::vector<double> lobatto_nodes(int m);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;   // accumulated local error estimates + tail bounds
  long evaluations = 0;
  bool converged = true;
};

/// Adaptive bisection with a 15-point Gauss-Legendre base rule. Tolerance is
/// absolute. Integrable endpoint singularities are handled by letting the
/// bisection run deep (an x^p singularity sheds error like 2^((1+p) depth),
/// so the budget is generous); subintervals whose refinement changes less
/// than their share of the tolerance are accepted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth = 420);

/// Fixed-order Gauss-Legendre on [a, b].
double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int order);

struct TailResult {
  double value = 0.0;
  double bound = 0.0;  // rigorous bound on the truncation of the expansion
};

/// int_R^inf sin(a r)/(a r) * r^(-p) dr  for p > 1, a > 0, by repeated
/// integration by parts (asymptotic in 1/(aR) with an explicit remainder
/// bound).
TailResult sinc_power_tail(double a, double p, double R);

}  // namespace boltzkit
