// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/bobylev.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "boltzkit/errors.hpp"
#include "boltzkit/quadrature.hpp"
#include "boltzkit/simd/kernels.hpp"

namespace boltzkit {

namespace {

std::vector<double> plan_targets(const RadialGrid& grid,
                                 const std::vector<double>& theta,
                                 bool plus) {
  std::vector<double> t;
  t.reserve(grid.size() * theta.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (double th : theta)
      t.push_back(grid[i] * (plus ? std::cos(0.5 * th) : std::sin(0.5 * th)));
  return t;
}

}  // namespace

void SolveConfig::validate(const AngularKernel& kernel) const {
  std::ostringstream why;
  const auto idx = singularity_index(kernel);
  const double a0 = idx.infimum;
  if (!(alpha < 2.0 && alpha > beta))
    why << "need 2 > alpha > beta (got alpha=" << alpha << ", beta=" << beta
        << ")";
  else if (!(beta > std::max(a0, 0.5 * alpha)))
    why << "need beta > max{alpha_0, alpha/2} = max{" << a0 << ", "
        << 0.5 * alpha << "}";
  else if (!(eps > 0.0 && eps < 1.0))
    why << "need eps in (0, 1)";
  else if (a0 > 0.0 && eps > 1.0 - (a0 + singularity_margin) / beta)
    why << "need eps <= 1 - (alpha_0 + margin)/beta = "
        << 1.0 - (a0 + singularity_margin) / beta << " (margin "
        << singularity_margin << ")";
  else if (!(horizon > 0.0))
    why << "need horizon > 0";
  else if (time_order < 3 || time_order > 12)
    why << "time_order must be in [3, 12]";
  if (!why.str().empty())
    throw ConfigError("solve config violates the admissibility constraints: " +
                      why.str());
}

CollisionOperator::CollisionOperator(const RadialGrid& grid,
                                     const AngularKernel& kernel_n,
                                     int theta_order)
    : grid_(grid),
      kernel_(kernel_n),
      rule_(make_theta_rule(kernel_n, theta_order)),
      rule_fine_(make_theta_rule(kernel_n, 2 * theta_order)),
      slopes_(grid),
      plan_plus_(grid, plan_targets(grid, rule_.theta, true)),
      plan_minus_(grid, plan_targets(grid, rule_.theta, false)),
      plan_plus_f_(grid, plan_targets(grid, rule_fine_.theta, true)),
      plan_minus_f_(grid, plan_targets(grid, rule_fine_.theta, false)) {
  if (!kernel_n.has_cutoff() && !kernel_n.integrable_without_cutoff())
    throw std::domain_error(
        "CollisionOperator: singular kernel without cutoff; evolve via a "
        "cutoff sequence");
  // the rule's own total keeps G(1) = gamma2 exact at the rule level
  gamma2_ = 2.0 * M_PI * rule_.total();
}

void CollisionOperator::apply_rule(std::span<const double> delta,
                                   std::span<const double> slopes,
                                   const std::vector<double>& weights,
                                   const HermitePlan& plus,
                                   const HermitePlan& minus, std::size_t nq,
                                   std::span<double> out) const {
  static thread_local std::vector<double> a, b;
  a.resize(plus.size());
  b.resize(minus.size());
  plus.eval(delta, slopes, a);
  minus.eval(delta, slopes, b);
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    out[i] = 2.0 * M_PI *
             simd::triple_sum(weights.data(), a.data() + i * nq,
                              b.data() + i * nq, nq);
  }
  out[0] = 0.0;
}

void CollisionOperator::apply(std::span<const double> delta,
                              std::span<double> out) const {
  static thread_local std::vector<double> slopes;
  slopes.resize(delta.size());
  slopes_.apply(delta, slopes);
  apply_rule(delta, slopes, rule_.weight, plan_plus_, plan_minus_,
             rule_.theta.size(), out);
}

std::vector<double> CollisionOperator::apply(
    const std::vector<double>& delta) const {
  std::vector<double> out(delta.size());
  apply(delta, out);
  return out;
}

double CollisionOperator::residual_estimate(
    const std::vector<double>& delta) const {
  std::vector<double> coarse(delta.size()), fine(delta.size());
  apply(delta, coarse);
  std::vector<double> slopes = slopes_.apply(delta);
  apply_rule(delta, slopes, rule_fine_.weight, plan_plus_f_, plan_minus_f_,
             rule_fine_.theta.size(), fine);
  return simd::max_abs_diff(coarse.data(), fine.data(), delta.size());
}

double CollisionOperator::eval_full_at(const RadialCharFn& phi,
                                       double r) const {
  double acc = 0.0;
  for (std::size_t q = 0; q < rule_fine_.theta.size(); ++q) {
    const double th = rule_fine_.theta[q];
    const double dp = phi.delta_at(r * std::cos(0.5 * th));
    const double dm = phi.delta_at(r * std::sin(0.5 * th));
    acc += rule_fine_.weight[q] * (1.0 + dp) * (1.0 + dm);
  }
  return 2.0 * M_PI * acc;
}

namespace {

// clip phi = 1 + delta into [-1, 1]; returns the largest clip applied
double clip_delta(std::vector<double>& delta) {
  double worst = 0.0;
  for (double& d : delta) {
    if (d > 0.0) {
      worst = std::max(worst, d);
      d = 0.0;
    } else if (d < -2.0) {
      worst = std::max(worst, -2.0 - d);
      d = -2.0;
    }
  }
  return worst;
}

// W[i][j] = int_0^{t_i} e^{-g2 (t_i - tau)} ell_j(tau) dtau over the
// Lobatto nodes t_j = c_j dt (Lagrange basis ell_j), by high-order GL
std::vector<std::vector<double>> duhamel_weights(double gamma2, double dt,
                                                 const std::vector<double>& c) {
  const std::size_t m = c.size();
  std::vector<double> tau(m);
  for (std::size_t j = 0; j < m; ++j) tau[j] = c[j] * dt;
  auto lagrange = [&](std::size_t j, double t) {
    double p = 1.0;
    for (std::size_t k = 0; k < m; ++k)
      if (k != j) p *= (t - tau[k]) / (tau[j] - tau[k]);
    return p;
  };
  std::vector<std::vector<double>> W(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      W[i][j] = integrate_gl(
          [&](double t) {
            return std::exp(-gamma2 * (tau[i] - t)) * lagrange(j, t);
          },
          0.0, tau[i], 24);
    }
  }
  return W;
}

}  // namespace

StepResult duhamel_step(const CollisionOperator& op,
                        const std::vector<double>& delta_in, double dt,
                        int time_order, double step_tol, int max_iters) {
  if (!(dt > 0.0)) throw std::domain_error("duhamel_step: dt > 0");
  const std::size_t n = delta_in.size();
  const std::size_t m = std::size_t(time_order);
  const auto c = lobatto_nodes(time_order);
  const auto W = duhamel_weights(op.gamma2(), dt, c);

  // iterate on the stored collocation states; node 0 is pinned to delta_in
  std::vector<std::vector<double>> state(m, delta_in);
  std::vector<std::vector<double>> g(m, std::vector<double>(n));
  op.apply(state[0], g[0]);

  StepResult out;
  std::vector<double> next(n);
  for (int iter = 1; iter <= max_iters; ++iter) {
    for (std::size_t j = 1; j < m; ++j) op.apply(state[j], g[j]);
    double change = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      const double decay = std::exp(-op.gamma2() * c[i] * dt);
      for (std::size_t r = 0; r < n; ++r) {
        double acc = decay * delta_in[r];
        for (std::size_t j = 0; j < m; ++j) acc += W[i][j] * g[j][r];
        next[r] = acc;
      }
      next[0] = 0.0;
      out.clip_magnitude = std::max(out.clip_magnitude, clip_delta(next));
      change = std::max(change,
                        simd::max_abs_diff(next.data(), state[i].data(), n));
      state[i].swap(next);
    }
    out.picard_iters = iter;
    if (change < step_tol) {
      out.converged = true;
      break;
    }
  }
  out.delta = std::move(state[m - 1]);
  return out;
}

std::vector<double> rk4_evolve(const CollisionOperator& op,
                               std::vector<double> delta, double horizon,
                               double dt) {
  const std::size_t n = delta.size();
  const double g2 = op.gamma2();
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  auto rhs = [&](const std::vector<double>& d, std::vector<double>& out) {
    op.apply(d, out);
    for (std::size_t i = 0; i < n; ++i) out[i] -= g2 * d[i];
  };
  double t = 0.0;
  while (t < horizon - 1e-14) {
    const double h = std::min(dt, horizon - t);
    rhs(delta, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = delta[i] + 0.5 * h * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = delta[i] + 0.5 * h * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = delta[i] + h * k3[i];
    rhs(tmp, k4);
    for (std::size_t i = 0; i < n; ++i)
      delta[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    delta[0] = 0.0;
    clip_delta(delta);
    t += h;
  }
  return delta;
}

std::vector<double> contraction_schedule(double C_n0, double lambda_beta_n,
                                         double gamma_beta_n, double eps,
                                         int m_max) {
  if (!(C_n0 > 0.0) || !(lambda_beta_n >= 0.0) || !(gamma_beta_n > 0.0) ||
      !(eps > 0.0 && eps < 1.0))
    throw std::domain_error("contraction_schedule: bad rate arguments");
  std::vector<double> T;
  T.reserve(std::size_t(m_max));
  double cumulative = 0.0;
  for (int m = 0; m < m_max; ++m) {
    auto f = [&](double t) {
      return C_n0 * std::exp(lambda_beta_n * (cumulative + t)) * t +
             gamma_beta_n * t + std::pow(gamma_beta_n * t, eps) - 0.5;
    };
    double lo = 0.0, hi = 1.0 / (C_n0 * std::exp(lambda_beta_n * cumulative) +
                                 gamma_beta_n + 1.0);
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (std::abs(f(mid)) < 1e-13) {
        lo = hi = mid;
        break;
      }
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    const double t_m = 0.5 * (lo + hi);
    T.push_back(t_m);
    cumulative += t_m;
  }
  return T;
}

RadialCharFn EvolutionTrace::snapshot(std::size_t i) const {
  return RadialCharFn(grid, deltas.at(i));
}

std::size_t EvolutionTrace::index_of(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i)
    if (std::abs(times[i] - t) < 1e-9) return i;
  throw std::out_of_range("EvolutionTrace: no snapshot at t = " +
                          std::to_string(t));
}

namespace {

SnapshotDiagnostics make_diag(const RadialCharFn& fn, double t,
                              const SolveConfig& cfg, double growth_rhs,
                              int iters, double dt, double clip) {
  SnapshotDiagnostics d;
  d.t = t;
  d.knorm_beta = knorm(fn, cfg.beta).value;
  d.growth_bound = growth_rhs;
  d.mnorm_alpha = mnorm_re(fn, cfg.alpha);
  d.m2 = second_moment(fn);
  d.picard_iters = iters;
  d.dt = dt;
  d.clip = clip;
  return d;
}

}  // namespace

EvolutionTrace evolve(const AnalyticCharFn& phi0, const AngularKernel& kernel_n,
                      const SolveConfig& cfg, const RadialGrid& grid) {
  cfg.validate(kernel_n);
  if (phi0.is_single_shifted_dirac())
    throw std::domain_error(
        "evolve: a single shifted Dirac mass is excluded as initial datum");
  if (!phi0.isotropic())
    throw std::domain_error("evolve: initial datum must be isotropic");
  {
    const auto cls = classify(phi0, cfg.alpha);
    if (!cls.in_K_alpha || !cls.in_M_tilde_alpha)
      throw std::domain_error(
          "evolve: initial datum does not classify into M~alpha at alpha = " +
          std::to_string(cfg.alpha));
  }

  CollisionOperator op(grid, kernel_n, cfg.theta_order);
  const auto consts =
      rate_constants(kernel_n, std::vector<double>{cfg.beta, cfg.alpha});

  EvolutionTrace trace;
  trace.grid = grid;
  trace.gamma2 = consts.gamma2;
  trace.lambda_beta = consts(cfg.beta).lambda;
  trace.lambda_alpha = consts(cfg.alpha).lambda;

  std::vector<double> delta(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    delta[i] = phi0.radial_delta(grid[i]);
  delta[0] = 0.0;

  const double kbeta0 = knorm(RadialCharFn(grid, delta), cfg.beta).value;

  // requested recording times; anything past the horizon is unreachable
  std::vector<double> stops;
  for (double t : cfg.snapshot_times)
    if (t > 0.0 && t <= cfg.horizon + 1e-12) stops.push_back(t);
  stops.push_back(cfg.horizon);
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              stops.end());

  // fidelity-mode schedule
  std::vector<double> schedule;
  std::size_t schedule_pos = 0;
  if (cfg.step_mode == SolveConfig::StepMode::contraction_schedule) {
    const double C =
        cfg.contraction_C > 0.0 ? cfg.contraction_C : 10.0 * consts(cfg.alpha).gamma;
    const double C_n0 = (consts(cfg.alpha).gamma + C) *
                        (3.0 + kbeta0 + std::pow(kbeta0, 1.0 - cfg.eps));
    schedule = contraction_schedule(C_n0, consts(cfg.beta).lambda,
                                    consts(cfg.beta).gamma, cfg.eps, 200000);
  }

  const double dt_cap = cfg.dt_factor / op.gamma2();
  double t = 0.0;
  trace.times.push_back(0.0);
  trace.deltas.push_back(delta);
  trace.diag.push_back(
      make_diag(RadialCharFn(grid, delta), 0.0, cfg, kbeta0, 0, 0.0, 0.0));

  std::size_t next_stop = 0;
  while (next_stop < stops.size() && stops[next_stop] <= 1e-12) ++next_stop;

  while (t < cfg.horizon - 1e-12) {
    double dt;
    if (cfg.step_mode == SolveConfig::StepMode::contraction_schedule) {
      if (schedule_pos >= schedule.size())
        throw NumericError("evolve: contraction schedule exhausted", t);
      dt = schedule[schedule_pos];
    } else {
      dt = dt_cap;
    }
    bool recording = false;
    if (next_stop < stops.size() && t + dt >= stops[next_stop] - 1e-12) {
      dt = stops[next_stop] - t;
      recording = true;
    }

    auto step_tol = [&](double h) {
      return cfg.picard_tol * std::min(1.0, h / std::max(cfg.horizon, 1.0)) *
             0.5;
    };
    StepResult step = duhamel_step(op, delta, dt, cfg.time_order, step_tol(dt),
                                   cfg.max_picard_iters);
    while (!step.converged) {
      if (cfg.step_mode == SolveConfig::StepMode::contraction_schedule)
        throw NumericError("evolve: Picard did not converge on a schedule step",
                           dt);
      dt *= 0.5;
      recording = false;  // the pending stop is reached by a later step
      if (dt < 1e-8)
        throw NumericError("evolve: Picard rejected steps down to dt < 1e-8",
                           dt);
      step = duhamel_step(op, delta, dt, cfg.time_order, step_tol(dt),
                          cfg.max_picard_iters);
    }

    delta = std::move(step.delta);
    t += dt;
    trace.total_clip += step.clip_magnitude;
    if (cfg.step_mode == SolveConfig::StepMode::contraction_schedule)
      ++schedule_pos;
    if (recording && next_stop < stops.size()) ++next_stop;

    RadialCharFn fn(grid, delta);
    const double lhs = knorm(fn, cfg.beta).value;
    const double rhs = std::exp(trace.lambda_beta * t) * kbeta0;
    if (lhs > rhs * (1.0 + cfg.growth_slack) + 1e-300) {
      std::ostringstream os;
      os << "evolve: X_n growth bound violated at t = " << t << " (lhs " << lhs
         << " > rhs " << rhs << ")";
      throw BoundViolation(os.str());
    }

    trace.times.push_back(t);
    trace.deltas.push_back(delta);
    trace.diag.push_back(make_diag(fn, t, cfg, rhs, step.picard_iters, dt,
                                   step.clip_magnitude));
  }

  trace.collision_residual = op.residual_estimate(delta);
  if (trace.total_clip > 1e-8)
    throw BoundViolation(
        "evolve: accumulated range clipping exceeded 1e-8 in sup magnitude");
  return trace;
}

namespace {

double expm1_div(double a, double b, double t) {
  // (e^{a t} - e^{b t}) / (a - b), continuous at a == b
  if (std::abs(a - b) < 1e-12 * std::max(std::abs(a), std::abs(b)) + 1e-300)
    return t * std::exp(a * t);
  return (std::exp(a * t) - std::exp(b * t)) / (a - b);
}

}  // namespace

StabilityReport stability_experiment(const AnalyticCharFn& phi0,
                                     const AnalyticCharFn& psi0,
                                     const AngularKernel& kernel_n,
                                     const SolveConfig& cfg,
                                     const RadialGrid& grid, double rel_slack) {
  SolveConfig run = cfg;
  std::erase_if(run.snapshot_times,
                [&](double t) { return t <= 0.0 || t > cfg.horizon + 1e-12; });
  if (run.snapshot_times.empty()) {
    for (int i = 1; i <= 10; ++i)
      run.snapshot_times.push_back(cfg.horizon * double(i) / 10.0);
  }
  if (std::none_of(run.snapshot_times.begin(), run.snapshot_times.end(),
                   [&](double t) { return std::abs(t - cfg.horizon) < 1e-12; }))
    run.snapshot_times.push_back(cfg.horizon);
  const auto trace_phi = evolve(phi0, kernel_n, run, grid);
  const auto trace_psi = evolve(psi0, kernel_n, run, grid);
  const auto consts =
      rate_constants(kernel_n, std::vector<double>{run.beta, run.alpha});
  const double la = consts(run.alpha).lambda;
  const double lb = consts(run.beta).lambda;
  const double C =
      run.contraction_C > 0.0 ? run.contraction_C : 10.0 * consts(run.alpha).gamma;

  StabilityReport rep;
  rep.C_used = C;

  const auto phi_at0 = trace_phi.snapshot(0);
  const auto psi_at0 = trace_psi.snapshot(0);
  const double kdiff0 = knorm_diff(phi_at0, psi_at0, run.alpha).value;
  const double kbdiff0 = knorm_diff(phi_at0, psi_at0, run.beta).value;
  const double kb_phi0 = knorm(phi_at0, run.beta).value;
  const double kb_psi0 = knorm(psi_at0, run.beta).value;
  const double mdiff0 = mnorm_re_diff(phi_at0, psi_at0, run.alpha).value;

  const double A = C * std::max(kb_phi0, kb_psi0) * kbdiff0;
  const double B =
      C * (kbdiff0 + std::pow(kb_psi0, 1.0 - run.eps) * std::pow(kbdiff0, run.eps));

  rep.worst_alpha_margin = 1e30;
  std::vector<double> checks = run.snapshot_times;
  checks.insert(checks.begin(), 0.0);
  for (double t : checks) {
    const auto i = trace_phi.index_of(t);
    const auto j = trace_psi.index_of(t);
    const auto ft = trace_phi.snapshot(i);
    const auto gt = trace_psi.snapshot(j);

    BoundCheckRow a;
    a.t = t;
    a.lhs = knorm_diff(ft, gt, run.alpha).value;
    a.rhs = std::exp(la * t) * kdiff0;
    rep.alpha_rows.push_back(a);
    if (a.lhs > a.rhs * (1.0 + rel_slack) + 1e-300) rep.alpha_ok = false;
    if (a.rhs > 0.0)
      rep.worst_alpha_margin =
          std::min(rep.worst_alpha_margin, (a.rhs - a.lhs) / a.rhs);

    // truncated norms on both sides: the [0, r_max] restriction is a
    // sub-norm, so the inequality transfers verbatim
    BoundCheckRow m;
    m.t = t;
    const auto md = mnorm_re_diff(ft, gt, run.alpha);
    m.lhs = md.value;
    m.rhs = std::exp(la * t) * mdiff0 + expm1_div(2.0 * lb, la, t) * A +
            expm1_div(lb, la, t) * B;
    rep.mnorm_rows.push_back(m);
    if (m.lhs > m.rhs * (1.0 + rel_slack) + 1e-300) rep.mnorm_ok = false;
  }
  return rep;
}

CutoffLimitReport cutoff_limit(const AnalyticCharFn& phi0,
                               const AngularKernel& kernel_noncutoff,
                               const std::vector<double>& n_levels,
                               const SolveConfig& cfg, const RadialGrid& grid,
                               double t_compare) {
  if (kernel_noncutoff.has_cutoff())
    throw std::domain_error("cutoff_limit: pass the non-cutoff kernel");
  if (n_levels.size() < 2)
    throw std::domain_error("cutoff_limit: need at least two levels");
  for (std::size_t i = 1; i < n_levels.size(); ++i)
    if (n_levels[i] <= n_levels[i - 1])
      throw std::domain_error("cutoff_limit: levels must increase");

  SolveConfig run = cfg;
  run.horizon = std::max(cfg.horizon, t_compare);
  run.snapshot_times.clear();
  for (int i = 1; i <= 10; ++i)
    run.snapshot_times.push_back(run.horizon * double(i) / 10.0);
  if (std::none_of(run.snapshot_times.begin(), run.snapshot_times.end(),
                   [&](double t) { return std::abs(t - t_compare) < 1e-12; }))
    run.snapshot_times.push_back(t_compare);

  CutoffLimitReport rep;
  rep.levels = n_levels;
  rep.t_compare = t_compare;

  std::vector<EvolutionTrace> traces;
  for (double n : n_levels)
    traces.push_back(evolve(phi0, kernel_noncutoff.with_cutoff(n), run, grid));

  for (std::size_t k = 0; k + 1 < traces.size(); ++k) {
    CutoffLimitReport::PairGap gap;
    gap.n_lo = n_levels[k];
    gap.n_hi = n_levels[k + 1];
    const auto& lo = traces[k];
    const auto& hi = traces[k + 1];
    gap.beta_gap = knorm_diff(lo.snapshot(lo.index_of(t_compare)),
                              hi.snapshot(hi.index_of(t_compare)), run.beta)
                       .value;
    for (double t : run.snapshot_times) {
      const auto& a = lo.deltas[lo.index_of(t)];
      const auto& b = hi.deltas[hi.index_of(t)];
      gap.sup_gap = std::max(
          gap.sup_gap, simd::max_abs_diff(a.data(), b.data(), a.size()));
    }
    rep.gaps.push_back(gap);
  }
  for (std::size_t k = 1; k < rep.gaps.size(); ++k)
    if (rep.gaps[k].beta_gap > rep.gaps[k - 1].beta_gap)
      rep.gaps_decreasing = false;

  // time-continuity modulus on the finest level, non-cutoff lambda_beta
  const double lb = lambda_limit(kernel_noncutoff, run.beta).value;
  const auto& fine = traces.back();
  double fitted = 0.0;
  for (std::size_t i = 0; i + 1 < run.snapshot_times.size(); ++i) {
    for (std::size_t j = i + 1; j < run.snapshot_times.size(); ++j) {
      const double s = run.snapshot_times[i], t = run.snapshot_times[j];
      const double gap =
          knorm_diff(fine.snapshot(fine.index_of(s)),
                     fine.snapshot(fine.index_of(t)), run.beta)
              .value;
      fitted = std::max(
          fitted, gap / ((t - s) * std::exp(lb * std::max(s, t))));
    }
  }
  rep.continuity_C = fitted;
  return rep;
}

}  // namespace boltzkit
