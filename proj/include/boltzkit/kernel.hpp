// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boltzkit {

/// Angular collision cross-section b(cos theta) on theta in (0, pi/2]
/// (the symmetrized convention is baked in: tabulated input reaching past
/// pi/2 is folded as b(theta) + b(pi - theta)). An optional cutoff level n
/// clamps every evaluation to min{b, n}.
class AngularKernel {
 public:
  enum class Form { constant, power_law, tabulated };

  static AngularKernel constant(double level);
  /// b(cos theta) = K * theta^-(2+2s) * regular(theta), regular bounded,
  /// regular(0+) = 1. regular must be evaluable down to theta = 0.
  static AngularKernel power_law(double s, double K,
                                 std::function<double(double)> regular = {});
  /// Piecewise-linear in theta; below the first node the value follows the
  /// power fitted on the three smallest nodes.
  static AngularKernel tabulated(std::vector<double> theta,
                                 std::vector<double> values);

  AngularKernel with_cutoff(double n) const;
  AngularKernel without_cutoff() const;

  Form form() const { return form_; }
  bool has_cutoff() const { return cutoff_.has_value(); }
  double cutoff() const;
  double s() const { return s_; }
  double K() const { return K_; }
  double level() const { return level_; }

  /// min{b(cos theta), cutoff} for theta in (0, pi/2].
  double eval(double theta) const;
  /// b without the cutoff clamp.
  double eval_raw(double theta) const;

  /// True when the kernel is integrable on (0, pi/2] without a cutoff.
  bool integrable_without_cutoff() const;

  /// Interior points where the integrand may lose smoothness (cutoff
  /// crossover, tabulation nodes); used to split quadratures.
  std::vector<double> breakpoints() const;

  /// Power p with b ~ theta^p as theta -> 0 (exact for power_law, fitted
  /// for tabulated, 0 for constant).
  double small_angle_power() const;

  std::string spec() const;
  static AngularKernel parse(std::string_view spec);

 private:
  AngularKernel() = default;
  Form form_ = Form::constant;
  double level_ = 1.0;                       // constant form
  double s_ = 0.0, K_ = 1.0;                 // power_law form
  std::function<double(double)> regular_;    // power_law regular part
  std::vector<double> tab_theta_, tab_val_;  // tabulated (folded to [0,pi/2])
  double tab_power_ = 0.0;                   // fitted small-angle power
  std::optional<double> cutoff_;
};

struct SingularityIndex {
  double infimum;     // inf of admissible weight exponents (may be 0)
  double admissible;  // smallest exponent from the fixed scan grid > infimum
};

/// Smallest weight exponent making (sin theta/2)^a0 b(cos theta) sin theta
/// integrable near 0. Scan grid {0.05 k : k = 1..40}.
SingularityIndex singularity_index(const AngularKernel& kernel);

struct RateConstant {
  double gamma = 0.0;     // per-steradian collision rate at this exponent
  double lambda = 0.0;    // gamma_alpha - gamma_2
  double residual = 0.0;  // quadrature error estimate
};

struct KernelConstants {
  std::vector<double> exponents;
  std::vector<RateConstant> at;
  double gamma2 = 0.0;
  double gamma2_residual = 0.0;
  const RateConstant& operator()(double alpha) const;
};

/// gamma_alpha = 2 pi int_0^(pi/2) b_n (sin^a(t/2)+cos^a(t/2)) sin t dt and
/// lambda_alpha = gamma_alpha - gamma_2, by adaptive quadrature to abs_tol.
/// Requires a cutoff (or a kernel integrable without one).
KernelConstants rate_constants(const AngularKernel& kernel,
                               std::span<const double> exponents,
                               double abs_tol = 1e-12);

struct LambdaLimit {
  double value = 0.0;
  double residual = 0.0;
};

/// lambda_alpha for the non-cutoff kernel, by singularity-aware quadrature
/// (log-substitution near 0). Throws DivergenceError for alpha at or below
/// the singularity infimum.
LambdaLimit lambda_limit(const AngularKernel& kernel, double alpha,
                         double abs_tol = 1e-12);

/// Discrete theta rule for spherical-collision integrals: nodes t_q and
/// weights W_q = w_q * b_n(cos t_q) * sin t_q, split at kernel breakpoints.
/// Sum_q W_q f(t_q) approximates int_0^(pi/2) b_n f sin t dt.
struct ThetaRule {
  std::vector<double> theta;
  std::vector<double> weight;
  double total() const;  // = gamma_2 / (2 pi) up to quadrature error
};
ThetaRule make_theta_rule(const AngularKernel& kernel, int order);

}  // namespace boltzkit
