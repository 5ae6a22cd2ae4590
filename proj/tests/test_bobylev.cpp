// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boltzkit/bobylev.hpp"
#include "boltzkit/errors.hpp"
#include "oracle_utils.hpp"

using namespace boltzkit;

namespace {

SolveConfig cfg_for(double alpha, double beta, double eps, double horizon) {
  SolveConfig cfg;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.eps = eps;
  cfg.horizon = horizon;
  return cfg;
}

}  // namespace

TEST_CASE("collision operator on the trivial inputs") {
  auto grid = RadialGrid::make();
  const auto kernel = AngularKernel::constant(1.0);
  CollisionOperator op(grid, kernel, 64);
  CHECK(op.gamma2() == doctest::Approx(2.0 * M_PI).epsilon(1e-12));

  // phi == 1: G_n(phi) = gamma_2 at every radius
  auto one = RadialCharFn::sample(AnalyticCharFn::point_mass(), grid);
  for (double r : {0.1, 1.0, 7.5})
    CHECK(op.eval_full_at(one, r) ==
          doctest::Approx(op.gamma2()).epsilon(1e-12));
  auto ghat_one = op.apply(std::vector<double>(grid.size(), 0.0));
  for (std::size_t i = 0; i < grid.size(); i += 137)
    CHECK(std::abs(ghat_one[i]) <= 1e-14);

  // gaussian: |xi+|^2 + |xi-|^2 = |xi|^2 makes it an eigenfunction
  // (accuracy limited by the grid interpolation, a few 1e-9)
  auto gauss = RadialCharFn::sample(AnalyticCharFn::gaussian(1.0), grid);
  for (double r : {0.5, 2.0, 10.0})
    CHECK(op.eval_full_at(gauss, r) ==
          doctest::Approx(op.gamma2() * std::exp(-0.5 * r * r))
              .epsilon(1e-7));

  // frozen independent-quadrature oracle:
  //   G(e^-r; b=1)(r=1) = 2 pi int e^{-cos(t/2)-sin(t/2)} sin t dt
  auto expo = RadialCharFn::sample(AnalyticCharFn::stable(1.0), grid);
  CHECK(op.eval_full_at(expo, 1.0) ==
        doctest::Approx(1.6627918685484997).epsilon(1e-8));
  // and the oracle recomputed here with adaptive Simpson
  const double simpson =
      2.0 * M_PI *
      oracle::integrate(
          [](double t) {
            return std::exp(-std::cos(0.5 * t) - std::sin(0.5 * t)) *
                   std::sin(t);
          },
          0.0, 0.5 * M_PI, 1e-13);
  CHECK(simpson == doctest::Approx(1.6627918685484997).epsilon(1e-12));

  CHECK(op.residual_estimate(std::vector<double>(
            expo.delta_re().begin(), expo.delta_re().end())) <= 1e-9);
}

TEST_CASE("collision operator requires an integrable kernel") {
  auto grid = RadialGrid::make();
  CHECK_THROWS_AS(
      CollisionOperator(grid, AngularKernel::power_law(0.25, 1.0), 64),
      std::domain_error);
}

TEST_CASE("duhamel step: fixed points and rejection") {
  auto grid = RadialGrid::make();
  CollisionOperator op(grid, AngularKernel::constant(1.0), 64);

  // phi == 1 stays put
  std::vector<double> zero(grid.size(), 0.0);
  auto s0 = duhamel_step(op, zero, 0.02, 6, 1e-12, 50);
  CHECK(s0.converged);
  for (double v : s0.delta) CHECK(std::abs(v) <= 1e-14);

  // gaussian is the stationary Duhamel input
  auto gauss = RadialCharFn::sample(AnalyticCharFn::gaussian(1.0), grid);
  std::vector<double> d(gauss.delta_re().begin(), gauss.delta_re().end());
  auto s1 = duhamel_step(op, d, 0.02, 6, 1e-12, 60);
  CHECK(s1.converged);
  double drift = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i)
    drift = std::max(drift, std::abs(s1.delta[i] - d[i]));
  CHECK(drift <= 1e-8);
  CHECK(s1.delta[0] == 0.0);

  CHECK_THROWS_AS(duhamel_step(op, d, 0.0, 6, 1e-10, 50), std::domain_error);

  // a step far beyond the contraction range fails to converge
  auto s2 = duhamel_step(op, d, 10.0 / op.gamma2(), 4, 1e-12, 5);
  CHECK_FALSE(s2.converged);
}

TEST_CASE("duhamel and runge-kutta integrations agree") {
  auto grid = RadialGrid::make();
  const auto kernel = AngularKernel::constant(1.0);
  CollisionOperator op(grid, kernel, 64);
  auto cfg = cfg_for(0.9, 0.6, 0.5, 0.25);

  auto trace = evolve(AnalyticCharFn::stable(1.0), kernel, cfg, grid);
  const auto& picard = trace.deltas.back();

  auto start = trace.deltas.front();
  auto rk = rk4_evolve(op, start, cfg.horizon, cfg.rk_dt_factor / op.gamma2());
  double gap = 0.0;
  for (std::size_t i = 0; i < rk.size(); ++i)
    gap = std::max(gap, std::abs(rk[i] - picard[i]));
  CHECK(gap <= 10.0 * cfg.picard_tol);
}

TEST_CASE("contraction schedule") {
  auto T = contraction_schedule(1.0, 1.0, 1.0, 0.5, 1000);
  REQUIRE(T.size() == 1000);
  // frozen root of e^T T + T + sqrt(T) = 1/2 (independent bisection oracle)
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::exp(mid) * mid + mid + std::sqrt(mid) < 0.5 ? lo : hi) = mid;
  }
  CHECK(T[0] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
  CHECK(T[0] == doctest::Approx(0.0929940207441447).epsilon(1e-10));

  double cum = 0.0;
  for (std::size_t m = 0; m < T.size(); ++m) {
    if (m) CHECK(T[m] < T[m - 1]);
    const double resid =
        std::exp(cum + T[m]) * T[m] + T[m] + std::sqrt(T[m]) - 0.5;
    CHECK(std::abs(resid) <= 1e-10);
    cum += T[m];
  }
  CHECK(cum > 3.0);  // partial sums keep growing
}

TEST_CASE("evolve: mass, realness, range, and the growth bound") {
  auto grid = RadialGrid::make();
  auto cfg = cfg_for(0.9, 0.6, 0.5, 0.5);
  auto trace =
      evolve(AnalyticCharFn::stable(1.0), AngularKernel::constant(1.0), cfg,
             grid);

  for (std::size_t k = 0; k < trace.deltas.size(); ++k) {
    CHECK(trace.deltas[k][0] == 0.0);  // phi(t, 0) = 1 exactly
    for (std::size_t i = 0; i < grid.size(); i += 53) {
      CHECK(trace.deltas[k][i] <= 0.0);
      CHECK(trace.deltas[k][i] >= -2.0);
    }
  }
  CHECK(trace.total_clip <= 1e-8);

  // growth bound margins recorded per step
  for (const auto& d : trace.diag)
    CHECK(d.knorm_beta <= d.growth_bound * (1.0 + 1e-6) + 1e-300);

  // the isotropic reduction keeps real data real
  for (std::size_t k = 0; k < trace.deltas.size(); k += 9)
    CHECK(trace.snapshot(k).is_real());

  // requested snapshot times are hit exactly; times past the horizon are
  // dropped rather than chased
  auto cfg2 = cfg_for(0.9, 0.6, 0.5, 0.5);
  cfg2.snapshot_times = {0.125, 0.25, 0.75};
  auto t2 = evolve(AnalyticCharFn::stable(1.0), AngularKernel::constant(1.0),
                   cfg2, grid);
  CHECK_NOTHROW((void)t2.index_of(0.125));
  CHECK_NOTHROW((void)t2.index_of(0.25));
  CHECK_NOTHROW((void)t2.index_of(0.5));
  CHECK_THROWS_AS((void)t2.index_of(0.75), std::out_of_range);
}

TEST_CASE("contraction-schedule stepping matches the adaptive path") {
  auto grid = RadialGrid::make();
  const auto kernel = AngularKernel::constant(1.0);
  const double horizon = 0.02;

  auto fidelity = cfg_for(0.9, 0.6, 0.5, horizon);
  fidelity.step_mode = SolveConfig::StepMode::contraction_schedule;
  auto adaptive = cfg_for(0.9, 0.6, 0.5, horizon);

  auto a = evolve(AnalyticCharFn::stable(1.0), kernel, fidelity, grid);
  auto b = evolve(AnalyticCharFn::stable(1.0), kernel, adaptive, grid);
  const auto& da = a.deltas[a.index_of(horizon)];
  const auto& db = b.deltas[b.index_of(horizon)];
  double gap = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i)
    gap = std::max(gap, std::abs(da[i] - db[i]));
  CHECK(gap <= 1e-8);
  CHECK(a.times.size() > b.times.size());  // schedule steps are shorter
}

TEST_CASE("evolve rejects inadmissible configurations and bad initial data") {
  auto grid = RadialGrid::make();
  const auto kernel = AngularKernel::constant(1.0);

  CHECK_THROWS_AS(evolve(AnalyticCharFn::gaussian(1.0), kernel,
                         cfg_for(1.0, 1.5, 0.3, 1.0), grid),
                  ConfigError);  // beta > alpha
  CHECK_THROWS_AS(evolve(AnalyticCharFn::gaussian(1.0), kernel,
                         cfg_for(1.5, 0.6, 0.3, 1.0), grid),
                  ConfigError);  // beta < alpha/2
  CHECK_THROWS_AS(evolve(AnalyticCharFn::gaussian(1.0),
                         AngularKernel::power_law(0.25, 1.0).with_cutoff(8.0),
                         cfg_for(1.5, 1.0, 0.8, 1.0), grid),
                  ConfigError);  // eps beyond 1 - (a0+margin)/beta

  // stable(1.5) has no alpha = 1.5 moment: not in M~alpha
  CHECK_THROWS_AS(evolve(AnalyticCharFn::stable(1.5), kernel,
                         cfg_for(1.5, 1.0, 0.3, 1.0), grid),
                  std::domain_error);
  // a single shifted Dirac is excluded
  CHECK_THROWS_AS(evolve(AnalyticCharFn::shifted_dirac(1.0), kernel,
                         cfg_for(0.9, 0.6, 0.5, 1.0), grid),
                  std::domain_error);
  // the point mass at the origin is a legal fixed point
  auto trace = evolve(AnalyticCharFn::point_mass(), kernel,
                      cfg_for(0.9, 0.6, 0.5, 0.2), grid);
  for (double v : trace.deltas.back()) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("stability experiment basics") {
  auto grid = RadialGrid::make();
  auto cfg = cfg_for(1.5, 1.0, 0.3, 0.4);
  const auto kernel = AngularKernel::constant(1.0);

  // identical initial data: both sides vanish
  auto same = stability_experiment(AnalyticCharFn::gaussian(1.0),
                                   AnalyticCharFn::gaussian(1.0), kernel, cfg,
                                   grid);
  CHECK(same.alpha_ok);
  for (const auto& row : same.alpha_rows) {
    CHECK(row.lhs <= 1e-10);
    CHECK(row.rhs <= 1e-10);
  }

  auto rep = stability_experiment(AnalyticCharFn::gaussian(1.0),
                                  AnalyticCharFn::gaussian(1.15), kernel, cfg,
                                  grid);
  CHECK(rep.alpha_ok);
  CHECK(rep.mnorm_ok);
  CHECK(rep.worst_alpha_margin >= 0.0);
  // the measured rhs at t uses the kernel-module constants
  auto consts = rate_constants(kernel, std::vector<double>{1.0, 1.5});
  const double la = consts(1.5).lambda;
  for (const auto& row : rep.alpha_rows)
    CHECK(row.rhs == doctest::Approx(std::exp(la * row.t) *
                                     rep.alpha_rows.front().rhs)
                         .epsilon(1e-9));
}

TEST_CASE("cutoff limit: constant kernels coincide once the clamp is idle") {
  auto grid = RadialGrid::make();
  auto cfg = cfg_for(0.9, 0.6, 0.5, 0.3);
  // levels above the kernel bound leave b unchanged, so all runs agree to
  // solver precision
  auto rep = cutoff_limit(AnalyticCharFn::stable(1.0),
                          AngularKernel::constant(1.0), {2.0, 4.0, 8.0}, cfg,
                          grid, 0.3);
  for (const auto& g : rep.gaps) {
    CHECK(g.sup_gap <= 1e-10);
    CHECK(g.beta_gap <= 1e-9);
  }
  CHECK(rep.continuity_C > 0.0);
  CHECK(std::isfinite(rep.continuity_C));
}
