// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/verify.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "boltzkit/bobylev.hpp"
#include "boltzkit/dsmc.hpp"
#include "boltzkit/moments.hpp"
#include "boltzkit/povzner.hpp"

namespace boltzkit {

namespace {

struct Check {
  std::ostringstream details;
  bool ok = true;
  int parts = 0;

  void expect(bool cond, const std::string& what) {
    ++parts;
    if (!cond) {
      ok = false;
      details << (details.str().empty() ? "" : "; ") << "FAILED: " << what;
    }
  }
  void note(const std::string& what) {
    details << (details.str().empty() ? "" : "; ") << what;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

SolveConfig base_config(double alpha, double beta, double eps,
                        double horizon) {
  SolveConfig cfg;
  cfg.alpha = alpha;
  cfg.beta = beta;
  cfg.eps = eps;
  cfg.horizon = horizon;
  return cfg;
}

Vec3 random_velocity(Rng& rng, double lo, double hi) {
  // log-uniform speed in [lo, hi], isotropic direction
  const double u = std::exp(std::log(lo) +
                            (std::log(hi) - std::log(lo)) * rng.uniform());
  const double ct = 2.0 * rng.uniform() - 1.0;
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double ph = 2.0 * M_PI * rng.uniform();
  return {u * st * std::cos(ph), u * st * std::sin(ph), u * ct};
}

// ---- criterion bodies ----------------------------------------------------

void c01_rate_constants(Check& c) {
  const double two_pi = 2.0 * M_PI;
  const std::vector<double> exps{0.0, 0.5, 1.0, 1.5, 2.0};

  std::vector<AngularKernel> kernels{
      AngularKernel::constant(1.0), AngularKernel::constant(2.5),
      AngularKernel::power_law(0.25, 1.0).with_cutoff(20.0),
      AngularKernel::power_law(0.6, 0.7).with_cutoff(8.0)};
  for (const auto& k : kernels) {
    auto rc = rate_constants(k, exps);
    c.expect(std::abs(rc(2.0).lambda) <= 1e-12,
             k.spec() + ": |lambda_2| = " + fmt(std::abs(rc(2.0).lambda)));
  }

  auto unit = rate_constants(AngularKernel::constant(1.0), exps);
  c.expect(std::abs(unit(1.0).lambda - two_pi / 3.0) <= 1e-10,
           "b=1: lambda_1 vs 2pi/3, err " +
               fmt(std::abs(unit(1.0).lambda - two_pi / 3.0)));
  c.expect(std::abs(unit(0.0).lambda - two_pi) <= 1e-10,
           "b=1: lambda_0 vs 2pi, err " +
               fmt(std::abs(unit(0.0).lambda - two_pi)));
  c.expect(std::abs(unit.gamma2 - two_pi) <= 1e-10,
           "b=1: gamma_2 vs 2pi, err " + fmt(std::abs(unit.gamma2 - two_pi)));
}

void c02_cutoff_limit_monotone(Check& c) {
  auto kernel = AngularKernel::power_law(0.25, 1.0);
  const double limit = lambda_limit(kernel, 1.0).value;
  double prev = -1.0;
  double final_gap = 0.0;
  std::ostringstream gaps;
  for (double n : {1e1, 1e2, 1e3, 1e4}) {
    const auto rc = rate_constants(kernel.with_cutoff(n),
                                   std::vector<double>{1.0});
    const double lam = rc(1.0).lambda;
    c.expect(lam >= prev - 1e-12,
             "lambda_1^n nondecreasing at n=" + fmt(n));
    prev = lam;
    final_gap = (limit - lam) / limit;
    gaps << " n=" << n << ": " << fmt(100.0 * final_gap) << "%";
  }
  c.note("lambda_1 limit " + fmt(limit) + "; relative gaps" + gaps.str());
  c.expect(final_gap <= 0.01,
           "lambda_1^{10^4} within 1% of the limit (measured " +
               fmt(100.0 * final_gap) +
               "%; the cutoff error decays like n^-0.2, so 1% needs n ~ 4e9)");
}

void c03_moment_identity(Check& c) {
  const double pi2 = M_PI * M_PI;
  const double route1 = levy_constant(1.0).value;
  const double ev = 2.0 * std::sqrt(2.0 / M_PI);
  const double route2 = mnorm_re(AnalyticCharFn::gaussian(1.0), 1.0).value / ev;
  c.expect(std::abs(route1 - pi2) <= 1e-6,
           "c(1) radial quadrature vs pi^2, err " + fmt(std::abs(route1 - pi2)));
  c.expect(std::abs(route2 - pi2) <= 1e-6,
           "c(1) gaussian-identity route vs pi^2, err " +
               fmt(std::abs(route2 - pi2)));

  const auto m = moment_from_charfn(AnalyticCharFn::gaussian(1.0), 1.0);
  c.expect(std::abs(m.value - ev) <= 1e-5,
           "gaussian |v| moment vs 2 sqrt(2/pi), err " +
               fmt(std::abs(m.value - ev)));

  for (double a : {0.5, 1.0, 2.0}) {
    for (double alpha : {0.5, 1.0, 1.5}) {
      const auto md = moment_from_charfn(AnalyticCharFn::dirac_pair(a), alpha);
      const double expect = std::pow(a, alpha);
      c.expect(std::abs(md.value - expect) <= 1e-5 * expect,
               "dirac scaling a=" + fmt(a) + " alpha=" + fmt(alpha) +
                   " rel err " + fmt(std::abs(md.value - expect) / expect));
    }
  }
}

void c04_classification(Check& c) {
  const auto s15 = AnalyticCharFn::stable(1.5);
  const auto hi = classify(s15, 1.5);
  c.expect(hi.in_K_alpha && !hi.in_M_tilde_alpha,
           "classify(stable(1.5), 1.5) = (true,false), got (" +
               std::to_string(hi.in_K_alpha) + "," +
               std::to_string(hi.in_M_tilde_alpha) + ")");
  const auto lo = classify(s15, 1.0);
  c.expect(lo.in_K_alpha && lo.in_M_tilde_alpha,
           "classify(stable(1.5), 1.0) = (true,true), got (" +
               std::to_string(lo.in_K_alpha) + "," +
               std::to_string(lo.in_M_tilde_alpha) + ")");
  const auto mo = mean_obstruction(1.0, 1.5);
  c.expect(!mo.bounded, "mean_obstruction(1, 1.5) unbounded");
  c.expect(std::abs(mo.growth_exponent + 0.5) <= 0.05,
           "growth exponent -0.5 +- 0.05, got " + fmt(mo.growth_exponent));
}

void c05_lift_identity(Check& c) {
  std::vector<double> nodes;
  for (int i = 0; i <= 600; ++i) nodes.push_back(0.01 * i);
  auto grid = RadialGrid::from_nodes(std::move(nodes));
  auto phi = RadialCharFn::sample(AnalyticCharFn::gaussian(1.0), grid);
  auto lift = laplacian_lift(phi, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > 5.0) break;
    const double r2 = grid[i] * grid[i];
    const double exact = (4.0 - r2) * std::exp(-0.5 * r2);
    worst = std::max(worst, std::abs(lift.psi[i] - exact));
  }
  c.expect(worst <= 1e-6,
           "(1-Lap) gaussian vs (4-r^2)e^{-r^2/2} sup err " + fmt(worst));
  c.expect(std::abs(lift.psi0 - 4.0) <= 1e-8, "psi(0) = 4");
}

void c06_gaussian_fixed_point(Check& c) {
  const auto grid = RadialGrid::make();
  const auto phi0 = AnalyticCharFn::gaussian(1.0);
  for (const auto& kernel :
       {AngularKernel::constant(1.0),
        AngularKernel::power_law(0.25, 1.0).with_cutoff(16.0)}) {
    auto cfg = base_config(1.5, 1.0, 0.3, 1.0);
    auto trace = evolve(phi0, kernel, cfg, grid);
    const auto& d0 = trace.deltas.front();
    const auto& d1 = trace.deltas.back();
    double drift = 0.0;
    for (std::size_t i = 0; i < d0.size(); ++i)
      drift = std::max(drift, std::abs(d1[i] - d0[i]));
    c.expect(drift <= 1e-6,
             kernel.spec() + ": fixed-point drift " + fmt(drift));

    CollisionOperator op(grid, kernel, cfg.theta_order);
    auto rk = rk4_evolve(op, d0, cfg.horizon, cfg.rk_dt_factor / op.gamma2());
    double gap = 0.0;
    for (std::size_t i = 0; i < d0.size(); ++i)
      gap = std::max(gap, std::abs(rk[i] - d1[i]));
    c.expect(gap <= 10.0 * cfg.picard_tol,
             kernel.spec() + ": integrator paths gap " + fmt(gap));
  }
}

void c07_growth_bound(Check& c) {
  const auto grid = RadialGrid::make();
  auto cfg = base_config(0.9, 0.6, 0.5, 1.0);
  // evolve() itself enforces the bound; re-check the recorded margins here
  auto trace =
      evolve(AnalyticCharFn::stable(1.0), AngularKernel::constant(1.0), cfg,
             grid);
  double worst = 0.0;
  for (const auto& d : trace.diag)
    worst = std::max(worst, d.knorm_beta - d.growth_bound);
  c.expect(worst <= 1e-6 * std::max(1.0, trace.diag.front().knorm_beta),
           "X_n growth bound margin " + fmt(worst));
  c.note("lambda_beta " + fmt(trace.lambda_beta) + ", steps " +
         std::to_string(trace.times.size() - 1));
}

void c08_stability(Check& c) {
  const auto grid = RadialGrid::make();
  auto cfg = base_config(1.5, 1.0, 0.3, 1.0);
  Rng rng(20260811u);
  double worst_margin = 1e30;
  for (int pair = 0; pair < 10; ++pair) {
    const double s1 = 0.75 + 0.6 * rng.uniform();
    const double s2 = 0.75 + 0.6 * rng.uniform();
    auto rep = stability_experiment(AnalyticCharFn::gaussian(s1),
                                    AnalyticCharFn::gaussian(s2),
                                    AngularKernel::constant(1.0), cfg, grid);
    c.expect(rep.alpha_ok, "alpha-norm stability, pair " +
                               std::to_string(pair) + " (sigma^2 " + fmt(s1) +
                               " vs " + fmt(s2) + ")");
    c.expect(rep.mnorm_ok,
             "M-norm stability rhs domination, pair " + std::to_string(pair));
    worst_margin = std::min(worst_margin, rep.worst_alpha_margin);
  }
  c.note("worst alpha-bound relative margin " + fmt(worst_margin));
}

void c09_energy_conservation(Check& c) {
  const auto grid = RadialGrid::make();
  auto cfg = base_config(1.5, 1.0, 0.3, 1.0);
  auto phi0 = AnalyticCharFn::mixture(
      {{0.5, AnalyticCharFn::gaussian(1.0)},
       {0.5, AnalyticCharFn::dirac_pair(2.0)}});
  auto trace = evolve(phi0, AngularKernel::constant(1.0), cfg, grid);
  const double m0 = trace.diag.front().m2.value;
  double worst = 0.0;
  for (const auto& d : trace.diag) {
    c.expect(!d.m2.infinite, "finite second moment along the trace");
    worst = std::max(worst, std::abs(d.m2.value - m0) / m0);
  }
  c.expect(worst <= 1e-4,
           "second moment drift " + fmt(worst) + " (m2(0) = " + fmt(m0) + ")");
  c.note("relative drift " + fmt(worst) + " over horizon 1");
}

void c10_cutoff_cauchy_trend(Check& c) {
  const auto grid = RadialGrid::make();
  auto cfg = base_config(1.2, 0.8, 0.3, 0.5);
  auto rep = cutoff_limit(AnalyticCharFn::stable(1.5),
                          AngularKernel::power_law(0.25, 1.0),
                          {4.0, 8.0, 16.0, 32.0}, cfg, grid, 0.5);
  std::ostringstream os;
  for (const auto& g : rep.gaps) {
    os << " (" << g.n_lo << "," << g.n_hi << "): " << fmt(g.beta_gap);
    c.expect(std::isfinite(g.beta_gap) && g.beta_gap > 0.0,
             "beta-norm gap finite and positive");
  }
  c.note("beta-norm gaps at t=0.5:" + os.str());
  c.expect(rep.gaps_decreasing, "pairwise beta-norm gaps decrease");
  c.expect(std::isfinite(rep.continuity_C) && rep.continuity_C > 0.0,
           "continuity constant finite");
  c.note("fitted time-continuity constant " + fmt(rep.continuity_C));
}

void c11_povzner(Check& c) {
  Rng rng(77001u);
  const auto kernel = AngularKernel::constant(1.0);

  double worst_energy = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 v = random_velocity(rng, 0.1, 10.0);
    const Vec3 w = random_velocity(rng, 0.1, 10.0);
    const auto frame = CollisionFrame::make(v, w);
    const auto sigma = frame.sigma(M_PI * rng.uniform() / 2.0,
                                   2.0 * M_PI * rng.uniform());
    const auto [vp, wp] = post_collision(v, w, sigma);
    const double e_in = dot(v, v) + dot(w, w);
    const double e_out = dot(vp, vp) + dot(wp, wp);
    const Vec3 p_in{v[0] + w[0], v[1] + w[1], v[2] + w[2]};
    const Vec3 p_out{vp[0] + wp[0], vp[1] + wp[1], vp[2] + wp[2]};
    worst_energy = std::max(worst_energy,
                            std::abs(e_out - e_in) / std::max(1.0, e_in));
    for (int k = 0; k < 3; ++k)
      worst_energy = std::max(worst_energy, std::abs(p_out[k] - p_in[k]) /
                                                std::max(1.0, std::abs(p_in[k])));
  }
  c.expect(worst_energy <= 1e-12,
           "momentum/energy identity, worst " + fmt(worst_energy));

  double worst_k = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Vec3 v = random_velocity(rng, 0.1, 10.0);
    const Vec3 w = random_velocity(rng, 0.1, 10.0);
    const auto split = povzner_split_psi(v, w, kernel, 1.0, 32, 16);
    worst_k = std::max(worst_k, std::abs(split.K));
  }
  c.expect(worst_k <= 1e-12, "K = 0 for linear Psi, worst " + fmt(worst_k));

  double worst_h = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vec3 v = random_velocity(rng, 0.1, 10.0);
    const Vec3 w = random_velocity(rng, 0.1, 10.0);
    const YZ yz = yz_decomposition(v, w, M_PI * 0.5 * rng.uniform());
    // 1D -H integrand sign at sampled angles, then the full quadrature on a
    // thinned sample
    (void)yz;
    if (i % 10 == 0) {
      const auto split = povzner_split(v, w, kernel, 1, 0.5, 32, 16);
      worst_h = std::max(worst_h, split.minus_H);
    }
  }
  c.expect(worst_h <= 1e-12, "-H <= 0, worst " + fmt(worst_h));

  auto fit_c = [&](int count) {
    double cmax = 0.0;
    for (int i = 0; i < count; ++i) {
      const Vec3 v = random_velocity(rng, 0.1, 10.0);
      const Vec3 w = random_velocity(rng, 0.1, 10.0);
      const auto split = povzner_split(v, w, kernel, 1, 0.5, 32, 16);
      cmax = std::max(cmax, split.G / (dot(v, v) * dot(w, w)));
    }
    return cmax;
  };
  const double c1 = fit_c(2000);
  const double c2 = fit_c(2000);
  c.expect(std::isfinite(c1) && std::isfinite(c2),
           "fitted G constants finite");
  c.expect(std::abs(c1 - c2) <= 0.2 * std::max(c1, c2),
           "fitted G constant stable: " + fmt(c1) + " vs " + fmt(c2));
}

void c12_oracle_equivalence(Check& c) {
  const auto grid = RadialGrid::make();
  const auto kernel = AngularKernel::constant(1.0);
  const std::size_t N = 100000;
  const double band = 5.0 / std::sqrt(double(N));
  const std::vector<double> times{0.25, 0.5, 1.0};
  double worst = 0.0;

  struct Case {
    AnalyticCharFn family;
    SolveConfig cfg;
    const char* name;
  };
  std::vector<Case> cases{
      {AnalyticCharFn::gaussian(1.0), base_config(1.5, 1.0, 0.3, 1.0),
       "gaussian(1)"},
      {AnalyticCharFn::stable(1.0), base_config(0.9, 0.6, 0.5, 1.0),
       "stable(1)"}};

  for (auto& cs : cases) {
    cs.cfg.snapshot_times = times;
    auto trace = evolve(cs.family, kernel, cs.cfg, grid);

    ThetaSampler sampler(kernel);
    auto ensemble = sample_initial(cs.family, N, 4242);
    Rng rng(990017u);
    const double dt = 0.02 / sampler.total_rate();
    double t = 0.0;
    for (double target : times) {
      while (t < target - 1e-12) {
        const double h = std::min(dt, target - t);
        nanbu_step(ensemble, sampler, h, rng);
        t += h;
      }
      auto emp = empirical_charfn(ensemble, grid);
      const auto& solver = trace.deltas[trace.index_of(target)];
      auto de = emp.fn.delta_re();
      double gap = 0.0;
      for (std::size_t i = 0; i < solver.size(); ++i)
        gap = std::max(gap, std::abs(de[i] - solver[i]));
      c.expect(gap <= band, std::string(cs.name) + " t=" + fmt(target) +
                                ": sup gap " + fmt(gap) + " vs band " +
                                fmt(band));
      worst = std::max(worst, gap);
    }
  }
  c.note("worst sup gap " + fmt(worst) + " vs band " + fmt(band));
}

void c13_moment_propagation(Check& c) {
  auto rep = moment_propagation_experiment(
      AnalyticCharFn::gaussian(1.0), AngularKernel::constant(1.0), 1, 1.0,
      1.0, 100000, 31337);
  c.expect(rep.bounded, "trajectory admits a finite envelope");
  c.expect(std::isfinite(rep.fitted_C) && rep.fitted_C < 100.0,
           "fitted C finite, got " + fmt(rep.fitted_C));
  double peak = 0.0;
  for (double m : rep.moments) peak = std::max(peak, m / rep.initial);
  c.note("fitted C " + fmt(rep.fitted_C) + ", peak m(t)/m(0) " + fmt(peak));
}

void c14_contraction_schedule(Check& c) {
  auto T = contraction_schedule(1.0, 1.0, 1.0, 0.5, 1000);
  c.expect(std::abs(T[0] - 0.0929940207441447) <= 1e-9,
           "T_1 root, err " + fmt(std::abs(T[0] - 0.0929940207441447)));

  double cumulative = 0.0;
  bool decreasing = true, equality = true, positive = true;
  for (std::size_t m = 0; m < T.size(); ++m) {
    if (m > 0 && T[m] >= T[m - 1]) decreasing = false;
    if (T[m] <= 0.0) positive = false;
    const double lhs = std::exp(cumulative + T[m]) * T[m] + T[m] +
                       std::sqrt(T[m]);
    if (std::abs(lhs - 0.5) > 1e-10) equality = false;
    cumulative += T[m];
  }
  c.expect(positive, "every T_m > 0");
  c.expect(decreasing, "T_m strictly decreasing");
  c.expect(equality, "extension equality holds to 1e-10 for every m");

  auto partial = [&](std::size_t upto) {
    double s = 0.0;
    for (std::size_t m = 0; m < upto; ++m) s += T[m];
    return s;
  };
  const double s250 = partial(250), s500 = partial(500), s1000 = partial(1000);
  c.expect(s1000 > s500 && s500 > s250, "partial sums keep growing");
  // logarithmic divergence signature: doubling m adds a near-constant amount
  c.expect(s1000 - s500 >= 0.5 * (s500 - s250),
           "no geometric tailing off (S(2m)-S(m) stays level)");
  c.note("S(250) " + fmt(s250) + ", S(500) " + fmt(s500) + ", S(1000) " +
         fmt(s1000));
}

}  // namespace

std::vector<CriterionResult> run_verification(std::ostream& log,
                                              const std::vector<int>& filter) {
  struct Entry {
    int id;
    const char* name;
    std::function<void(Check&)> body;
  };
  const std::vector<Entry> entries{
      {1, "rate-constants", c01_rate_constants},
      {2, "monotone-cutoff-limit", c02_cutoff_limit_monotone},
      {3, "moment-identity", c03_moment_identity},
      {4, "classification", c04_classification},
      {5, "lift-identity", c05_lift_identity},
      {6, "gaussian-fixed-point", c06_gaussian_fixed_point},
      {7, "growth-bound", c07_growth_bound},
      {8, "stability", c08_stability},
      {9, "energy-conservation", c09_energy_conservation},
      {10, "cutoff-cauchy-trend", c10_cutoff_cauchy_trend},
      {11, "povzner-suite", c11_povzner},
      {12, "oracle-equivalence", c12_oracle_equivalence},
      {13, "moment-propagation", c13_moment_propagation},
      {14, "contraction-schedule", c14_contraction_schedule},
  };

  std::vector<CriterionResult> results;
  for (const auto& e : entries) {
    if (!filter.empty() &&
        std::find(filter.begin(), filter.end(), e.id) == filter.end())
      continue;
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.body(check);
    } catch (const std::exception& ex) {
      check.ok = false;
      check.note(std::string("exception: ") + ex.what());
    }
    const auto t1 = std::chrono::steady_clock::now();
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    r.passed = check.ok;
    r.details = check.details.str();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    results.push_back(r);
    log << (r.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << r.id << " "
        << r.name << " (" << std::fixed << std::setprecision(1) << r.seconds
        << "s)" << std::defaultfloat;
    if (!r.details.empty()) log << " -- " << r.details;
    log << "\n" << std::flush;
  }
  return results;
}

int verification_exit_code(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return 1;
  return 0;
}

}  // namespace boltzkit
