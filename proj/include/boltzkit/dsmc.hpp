// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boltzkit/charfun.hpp"
#include "boltzkit/kernel.hpp"

namespace boltzkit {

/// Deterministic generator used everywhere randomness is needed: a
/// splitmix64 stream with fixed mappings, so identical seeds give bit
/// identical results on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  double uniform();               // (0, 1)
  double normal();                // standard normal (Box-Muller, cached pair)
  double exponential();           // rate 1
  std::uint64_t below(std::uint64_t n);  // uniform integer in [0, n)
  std::uint64_t raw();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
  std::uint64_t next_();
};

struct ParticleEnsemble {
  std::vector<double> vx, vy, vz;
  std::uint64_t seed = 0;
  std::string provenance;
  int history_steps = 0;
  double energy0 = 0.0;  // recorded at construction, drift tracked
  std::array<double, 3> momentum0{};

  std::size_t size() const { return vx.size(); }
  double energy() const;  // sum |v|^2 over particles
  std::array<double, 3> momentum() const;
  std::vector<double> speeds() const;
  double moment(double p) const;  // (1/N) sum |v|^p
};

/// Samplers: gaussian by Box-Muller per axis; dirac_pair by coin flip
/// +- a e_z; stable(alpha_s) by subordination V = sqrt(2A) G with A a
/// positive (alpha_s/2)-stable variable (Chambers-Mallows-Stuck) normalised
/// to E exp(-l A) = exp(-l^(alpha_s/2)); mixtures by weight.
ParticleEnsemble sample_initial(const AnalyticCharFn& family, std::size_t n,
                                std::uint64_t seed);

/// Inverse-CDF sampler for theta ~ b_n(cos t) sin t on [0, pi/2],
/// tabulated on 4096 knots.
class ThetaSampler {
 public:
  explicit ThetaSampler(const AngularKernel& kernel_n, int knots = 4096);
  double sample(double u) const;  // u in (0,1)
  double total_rate() const { return gamma2_; }  // 2 pi int b_n sin t dt

 private:
  std::vector<double> theta_, cdf_;
  double gamma2_ = 0.0;
};

/// One Nanbu-Babovsky sweep: disjoint random pairs, each colliding with
/// probability 1 - exp(-gamma2 dt); both partners update so every collision
/// conserves momentum and energy exactly. Requires gamma2 * dt <= 0.5.
void nanbu_step(ParticleEnsemble& ensemble, const ThetaSampler& sampler,
                double dt, Rng& rng);

struct EmpiricalCharFn {
  RadialCharFn fn;
  double clt_band;  // 1/sqrt(N)
};

/// phi_hat(r) = (1/N) sum_j sin(r |v_j|)/(r |v_j|): the exact direction
/// average of e^{-i xi . v} over the sphere.
EmpiricalCharFn empirical_charfn(const ParticleEnsemble& ensemble,
                                 const RadialGrid& grid);

struct MomentPropagationReport {
  std::vector<double> times;
  std::vector<double> moments;  // empirical (1/N) sum |v|^(2n+alpha)
  double initial = 0.0;
  double fitted_C = 0.0;  // smallest C with m(t) <= C e^(C t) m(0)
  bool bounded = true;
  double dt = 0.0;
};

MomentPropagationReport moment_propagation_experiment(
    const AnalyticCharFn& family, const AngularKernel& kernel_n, int n,
    double alpha, double horizon, std::size_t particles, std::uint64_t seed,
    double dt = 0.0 /* 0: pick 0.02 / gamma2 */);

}  // namespace boltzkit
