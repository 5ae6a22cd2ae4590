// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/dsmc.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "boltzkit/errors.hpp"
#include "boltzkit/povzner.hpp"
#include "boltzkit/quadrature.hpp"
#include "boltzkit/simd/kernels.hpp"

namespace boltzkit {

namespace {
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t Rng::next_() { return splitmix64(state_); }

std::uint64_t Rng::raw() { return next_(); }

double Rng::uniform() {
  // (0,1): 53 bits, offset by half an ulp so 0 never appears
  return (double(next_() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform(), u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * M_PI * u2;
  spare_ = mag * std::sin(ang);
  have_spare_ = true;
  return mag * std::cos(ang);
}

double Rng::exponential() { return -std::log(uniform()); }

std::uint64_t Rng::below(std::uint64_t n) {
  // multiply-shift; bias is ~n/2^64, irrelevant at Monte Carlo scales
  return std::uint64_t((__uint128_t(next_()) * n) >> 64);
}

double ParticleEnsemble::energy() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    acc += vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i];
  return acc;
}

std::array<double, 3> ParticleEnsemble::momentum() const {
  std::array<double, 3> m{};
  for (std::size_t i = 0; i < size(); ++i) {
    m[0] += vx[i];
    m[1] += vy[i];
    m[2] += vz[i];
  }
  return m;
}

std::vector<double> ParticleEnsemble::speeds() const {
  std::vector<double> u(size());
  for (std::size_t i = 0; i < size(); ++i)
    u[i] = std::sqrt(vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i]);
  return u;
}

double ParticleEnsemble::moment(double p) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double s2 = vx[i] * vx[i] + vy[i] * vy[i] + vz[i] * vz[i];
    acc += std::pow(s2, 0.5 * p);
  }
  return acc / double(size());
}

namespace {

// positive rho-stable with E exp(-l A) = exp(-l^rho), rho in (0,1)
// (Chambers-Mallows-Stuck, totally skewed; this normalisation is checked
// against the Laplace transform in the tests)
double sample_positive_stable(double rho, Rng& rng) {
  const double theta = M_PI * (rng.uniform() - 0.5);  // (-pi/2, pi/2)
  const double w = rng.exponential();
  const double a = rho * (theta + 0.5 * M_PI);
  return std::sin(a) / std::pow(std::cos(theta), 1.0 / rho) *
         std::pow(std::cos(theta - a) / w, (1.0 - rho) / rho);
}

void push_sample(ParticleEnsemble& e, const AnalyticCharFn::Component& c,
                 Rng& rng) {
  using F = AnalyticCharFn::Family;
  switch (c.family) {
    case F::gaussian: {
      const double s = std::sqrt(c.p1);
      e.vx.push_back(s * rng.normal());
      e.vy.push_back(s * rng.normal());
      e.vz.push_back(s * rng.normal());
      break;
    }
    case F::stable: {
      const double A = sample_positive_stable(0.5 * c.p1, rng);
      const double s = c.p2 * std::sqrt(2.0 * A);
      e.vx.push_back(s * rng.normal());
      e.vy.push_back(s * rng.normal());
      e.vz.push_back(s * rng.normal());
      break;
    }
    case F::dirac_pair: {
      const double sign = (rng.raw() & 1ULL) ? 1.0 : -1.0;
      e.vx.push_back(0.0);
      e.vy.push_back(0.0);
      e.vz.push_back(sign * c.p1);
      break;
    }
    case F::shifted_dirac:
      e.vx.push_back(0.0);
      e.vy.push_back(0.0);
      e.vz.push_back(c.p1);
      break;
    case F::point_mass:
      e.vx.push_back(0.0);
      e.vy.push_back(0.0);
      e.vz.push_back(0.0);
      break;
  }
}

}  // namespace

ParticleEnsemble sample_initial(const AnalyticCharFn& family, std::size_t n,
                                std::uint64_t seed) {
  if (n < 2) throw std::domain_error("sample_initial: need N >= 2");
  ParticleEnsemble e;
  e.seed = seed;
  e.provenance = family.spec();
  e.vx.reserve(n);
  e.vy.reserve(n);
  e.vz.reserve(n);
  Rng rng(seed);
  const auto& comps = family.components();
  for (std::size_t i = 0; i < n; ++i) {
    double u = rng.uniform();
    std::size_t pick = comps.size() - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < comps.size(); ++k) {
      acc += comps[k].weight;
      if (u <= acc) {
        pick = k;
        break;
      }
    }
    push_sample(e, comps[pick], rng);
  }
  e.energy0 = e.energy();
  e.momentum0 = e.momentum();
  return e;
}

ThetaSampler::ThetaSampler(const AngularKernel& kernel_n, int knots) {
  if (!kernel_n.has_cutoff() && !kernel_n.integrable_without_cutoff())
    throw std::domain_error("ThetaSampler: kernel must be cutoff");
  const double hi = 0.5 * M_PI;
  theta_.resize(std::size_t(knots) + 1);
  cdf_.resize(theta_.size());
  for (std::size_t i = 0; i < theta_.size(); ++i)
    theta_[i] = hi * double(i) / double(knots);
  cdf_[0] = 0.0;
  for (std::size_t i = 1; i < theta_.size(); ++i) {
    cdf_[i] = cdf_[i - 1] +
              integrate_gl(
                  [&](double t) { return kernel_n.eval(t) * std::sin(t); },
                  theta_[i - 1], theta_[i], 8);
  }
  gamma2_ = 2.0 * M_PI * cdf_.back();
  for (double& c : cdf_) c /= cdf_.back();
}

double ThetaSampler::sample(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t j = (it == cdf_.begin()) ? 1 : std::size_t(it - cdf_.begin());
  j = std::min(j, cdf_.size() - 1);
  const double c0 = cdf_[j - 1], c1 = cdf_[j];
  const double w = (c1 > c0) ? (u - c0) / (c1 - c0) : 0.5;
  return theta_[j - 1] + w * (theta_[j] - theta_[j - 1]);
}

void nanbu_step(ParticleEnsemble& e, const ThetaSampler& sampler, double dt,
                Rng& rng) {
  if (dt < 0.0) throw std::domain_error("nanbu_step: dt >= 0");
  if (dt == 0.0) return;
  const double gamma2 = sampler.total_rate();
  if (gamma2 * dt > 0.5)
    throw std::domain_error("nanbu_step: gamma2 * dt must be <= 0.5");
  const std::size_t n = e.size();
  const double q = -std::expm1(-gamma2 * dt);

  // disjoint uniform pairing (Fisher-Yates)
  static thread_local std::vector<std::uint32_t> perm;
  perm.resize(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = rng.below(i + 1);
    std::swap(perm[i], perm[j]);
  }

  for (std::size_t p = 0; p + 1 < n; p += 2) {
    if (rng.uniform() >= q) continue;
    const std::size_t a = perm[p], b = perm[p + 1];
    Vec3 v{e.vx[a], e.vy[a], e.vz[a]};
    Vec3 w{e.vx[b], e.vy[b], e.vz[b]};
    const Vec3 rel{v[0] - w[0], v[1] - w[1], v[2] - w[2]};
    if (dot(rel, rel) == 0.0) continue;  // identical velocities: no-op
    const double theta = sampler.sample(rng.uniform());
    const double phi = 2.0 * M_PI * rng.uniform();
    const auto frame = CollisionFrame::make(v, w);
    const auto [vp, wp] = post_collision(v, w, frame.sigma(theta, phi));
    e.vx[a] = vp[0];
    e.vy[a] = vp[1];
    e.vz[a] = vp[2];
    e.vx[b] = wp[0];
    e.vy[b] = wp[1];
    e.vz[b] = wp[2];
  }
  ++e.history_steps;
}

EmpiricalCharFn empirical_charfn(const ParticleEnsemble& e,
                                 const RadialGrid& grid) {
  const auto u = e.speeds();
  std::vector<double> delta(grid.size());
  for (std::size_t i = 1; i < grid.size(); ++i)
    delta[i] =
        simd::sinc_delta_sum(grid[i], u.data(), u.size()) / double(u.size());
  delta[0] = 0.0;
  return {RadialCharFn(grid, std::move(delta)),
          1.0 / std::sqrt(double(e.size()))};
}

MomentPropagationReport moment_propagation_experiment(
    const AnalyticCharFn& family, const AngularKernel& kernel_n, int n,
    double alpha, double horizon, std::size_t particles, std::uint64_t seed,
    double dt) {
  if (n < 1 || !(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("moment_propagation: n >= 1, alpha in (0,2]");
  const double p = 2.0 * n + alpha;
  if (!family.moment(p).has_value())
    throw std::domain_error(
        "moment_propagation: initial (2n+alpha)-moment is infinite");

  ThetaSampler sampler(kernel_n);
  if (dt <= 0.0) dt = 0.02 / sampler.total_rate();
  auto ensemble = sample_initial(family, particles, seed);
  Rng rng(seed ^ 0xd1b54a32d192ed03ULL);

  MomentPropagationReport rep;
  rep.dt = dt;
  rep.initial = ensemble.moment(p);
  rep.times.push_back(0.0);
  rep.moments.push_back(rep.initial);
  double t = 0.0;
  while (t < horizon - 1e-12) {
    const double step = std::min(dt, horizon - t);
    nanbu_step(ensemble, sampler, step, rng);
    t += step;
    rep.times.push_back(t);
    rep.moments.push_back(ensemble.moment(p));
  }

  // smallest C with m(t) <= C e^{C t} m(0) for all recorded t
  auto ok = [&](double C) {
    for (std::size_t i = 0; i < rep.times.size(); ++i)
      if (rep.moments[i] > C * std::exp(C * rep.times[i]) * rep.initial)
        return false;
    return true;
  };
  double lo = 1e-6, hi = 1.0;
  while (!ok(hi) && hi < 1e6) hi *= 2.0;
  if (!ok(hi)) {
    rep.bounded = false;
    rep.fitted_C = std::numeric_limits<double>::infinity();
    return rep;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  rep.fitted_C = hi;
  return rep;
}

}  // namespace boltzkit
