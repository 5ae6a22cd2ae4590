// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <optional>
#include <vector>

#include "boltzkit/charfun.hpp"
#include "boltzkit/kernel.hpp"
#include "boltzkit/moments.hpp"
#include "boltzkit/norms.hpp"

namespace boltzkit {

struct SolveConfig {
  double alpha = 1.5;
  double beta = 1.0;
  double eps = 0.3;
  double horizon = 1.0;

  double picard_tol = 1e-9;  // end-to-end fixed-point accuracy target
  int max_picard_iters = 200;
  enum class StepMode { adaptive, contraction_schedule };
  StepMode step_mode = StepMode::adaptive;
  int theta_order = 64;  // Gauss-Legendre order for the collision integral
  int time_order = 6;    // Lobatto collocation nodes per Duhamel step
  double contraction_C = -1.0;  // < 0: default 10 gamma_alpha^n
  double singularity_margin = 0.01;  // delta in eps <= 1 - (a0+delta)/beta
  double dt_factor = 0.15;           // adaptive dt cap = dt_factor / gamma2
  double rk_dt_factor = 0.015;       // cross-check integrator step factor
  double growth_slack = 1e-6;
  std::vector<double> snapshot_times;  // exact recording times (plus horizon)

  /// Theorem-style admissibility: 2 > alpha > beta > max(a0, alpha/2) and
  /// eps in (0, 1 - a0/beta) with the reported margin for power-law kernels.
  /// Throws ConfigError naming the violated constraint.
  void validate(const AngularKernel& kernel) const;
};

/// G_n - gamma_2^n acting on delta = phi - 1 sampled on a fixed grid:
///   Ghat(delta)(r) = 2 pi int b_n [d(r c) + d(r s) + d(r c) d(r s)] sin t dt
/// with c = cos(t/2), s = sin(t/2). Evaluation at a node only reads radii
/// <= that node (interpolated), so no extrapolation ever happens.
class CollisionOperator {
 public:
  CollisionOperator(const RadialGrid& grid, const AngularKernel& kernel_n,
                    int theta_order = 64);

  const RadialGrid& grid() const { return grid_; }
  const AngularKernel& kernel() const { return kernel_; }
  double gamma2() const { return gamma2_; }

  /// out = Ghat(delta); delta and out sized like the grid.
  void apply(std::span<const double> delta, std::span<double> out) const;
  std::vector<double> apply(const std::vector<double>& delta) const;

  /// Same reduction with a doubled theta rule, for residual estimation.
  double residual_estimate(const std::vector<double>& delta) const;

  /// Full G_n(phi)(r) = gamma_2 + Ghat at one radius (test hook).
  double eval_full_at(const RadialCharFn& phi, double r) const;

 private:
  void apply_rule(std::span<const double> delta, std::span<const double> slopes,
                  const std::vector<double>& weights, const HermitePlan& plus,
                  const HermitePlan& minus, std::size_t stride,
                  std::span<double> out) const;

  RadialGrid grid_;
  AngularKernel kernel_;
  ThetaRule rule_, rule_fine_;
  double gamma2_ = 0.0;
  SlopeOperator slopes_;
  HermitePlan plan_plus_, plan_minus_;        // grid x theta targets
  HermitePlan plan_plus_f_, plan_minus_f_;    // doubled rule
};

struct StepResult {
  std::vector<double> delta;
  int picard_iters = 0;
  double clip_magnitude = 0.0;
  bool converged = false;
};

/// One Duhamel step on [0, dt]: Picard iteration on
///   d(t) = d0 e^{-g2 t} + int_0^t e^{-g2 (t-tau)} Ghat(d(tau)) dtau
/// with Lobatto collocation in tau, starting from the constant-in-tau
/// extension of the input. step_tol is the per-step stopping tolerance.
StepResult duhamel_step(const CollisionOperator& op,
                        const std::vector<double>& delta_in, double dt,
                        int time_order, double step_tol, int max_iters);

/// Explicit RK4 on d' = Ghat(d) - g2 d: the independent fast-path
/// integrator used to cross-check the Picard construction.
std::vector<double> rk4_evolve(const CollisionOperator& op,
                               std::vector<double> delta, double horizon,
                               double dt);

/// T_m solving C0 e^{l (T_1+...+T_m)} T_m + g T_m + (g T_m)^eps = 1/2
/// by monotone bracketing (|residual| <= 1e-12).
std::vector<double> contraction_schedule(double C_n0, double lambda_beta_n,
                                         double gamma_beta_n, double eps,
                                         int m_max);

struct SnapshotDiagnostics {
  double t = 0.0;
  double knorm_beta = 0.0;
  double growth_bound = 0.0;  // e^{lambda_beta t} * knorm_beta(0)
  MNormResult mnorm_alpha;
  SecondMomentResult m2;
  int picard_iters = 0;
  double dt = 0.0;
  double clip = 0.0;
};

struct EvolutionTrace {
  RadialGrid grid;
  std::vector<double> times;
  std::vector<std::vector<double>> deltas;  // one per recorded time
  std::vector<SnapshotDiagnostics> diag;
  double gamma2 = 0.0;
  double lambda_beta = 0.0;
  double lambda_alpha = 0.0;
  double total_clip = 0.0;
  double collision_residual = 0.0;

  RadialCharFn snapshot(std::size_t i) const;
  /// index of a recorded time within 1e-9 of t; throws if absent
  std::size_t index_of(double t) const;
};

/// Evolve phi0 to the horizon. Asserts the X_n growth bound
/// ||1-phi(t)||_beta <= e^{lambda_beta^n t} ||1-phi0||_beta at every
/// accepted step (BoundViolation beyond growth_slack). Initial data must
/// classify into M~alpha; a pure shifted Dirac is rejected.
EvolutionTrace evolve(const AnalyticCharFn& phi0, const AngularKernel& kernel_n,
                      const SolveConfig& cfg, const RadialGrid& grid);

struct BoundCheckRow {
  double t = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct StabilityReport {
  std::vector<BoundCheckRow> alpha_rows;  // ||phi-psi||_alpha vs e^{l_a t} .
  std::vector<BoundCheckRow> mnorm_rows;  // M~ norm vs the A/B composite rhs
  double C_used = 0.0;
  bool alpha_ok = true;
  bool mnorm_ok = true;
  double worst_alpha_margin = 0.0;  // min (rhs - lhs)/max(rhs, tiny)
};

StabilityReport stability_experiment(const AnalyticCharFn& phi0,
                                     const AnalyticCharFn& psi0,
                                     const AngularKernel& kernel_n,
                                     const SolveConfig& cfg,
                                     const RadialGrid& grid,
                                     double rel_slack = 1e-3);

struct CutoffLimitReport {
  std::vector<double> levels;
  double t_compare = 0.0;
  struct PairGap {
    double n_lo = 0.0, n_hi = 0.0;
    double beta_gap = 0.0;  // ||phi_{2n}(t) - phi_n(t)||_beta at t_compare
    double sup_gap = 0.0;   // over the grid and all matched times
  };
  std::vector<PairGap> gaps;
  bool gaps_decreasing = true;
  double continuity_C = 0.0;  // fitted ||phi(t)-phi(s)||_b/(|t-s| e^{l max})
};

CutoffLimitReport cutoff_limit(const AnalyticCharFn& phi0,
                               const AngularKernel& kernel_noncutoff,
                               const std::vector<double>& n_levels,
                               const SolveConfig& cfg, const RadialGrid& grid,
                               double t_compare = 0.5);

}  // namespace boltzkit
