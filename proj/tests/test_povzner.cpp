// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boltzkit/povzner.hpp"
#include "oracle_utils.hpp"

using namespace boltzkit;

namespace {

Vec3 rand_vel(oracle::TestRng& rng, double lo = 0.1, double hi = 10.0) {
  const double u = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * rng());
  const double ct = 2.0 * rng() - 1.0;
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double ph = 2.0 * M_PI * rng();
  return {u * st * std::cos(ph), u * st * std::sin(ph), u * ct};
}

}  // namespace

TEST_CASE("post collision: identity, swap, and the worked example") {
  const Vec3 v{1.0, 0.0, 0.0}, w{0.0, 1.0, 0.0};
  const double rel = std::sqrt(2.0);

  Vec3 k{(v[0] - w[0]) / rel, (v[1] - w[1]) / rel, 0.0};
  auto [a, b] = post_collision(v, w, k);
  for (int i = 0; i < 3; ++i) {
    CHECK(a[i] == doctest::Approx(v[i]).epsilon(1e-14));
    CHECK(b[i] == doctest::Approx(w[i]).epsilon(1e-14));
  }

  Vec3 mk{-k[0], -k[1], -k[2]};
  auto [c, d] = post_collision(v, w, mk);
  for (int i = 0; i < 3; ++i) {
    CHECK(c[i] == doctest::Approx(w[i]).epsilon(1e-14));
    CHECK(d[i] == doctest::Approx(v[i]).epsilon(1e-14));
  }

  auto [p, q] = post_collision(v, w, Vec3{0.0, 0.0, 1.0});
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.5));
  CHECK(p[2] == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(q[2] == doctest::Approx(-std::sqrt(2.0) / 2.0));

  CHECK_THROWS_AS(post_collision(v, w, Vec3{0.0, 0.0, 1.5}),
                  std::domain_error);
}

TEST_CASE("momentum and energy identities on random inputs") {
  oracle::TestRng rng(11);
  double worst = 0.0;
  for (int i = 0; i < 5000; ++i) {
    const Vec3 v = rand_vel(rng), w = rand_vel(rng);
    const auto frame = CollisionFrame::make(v, w);
    const Vec3 sigma = frame.sigma(M_PI * 0.5 * rng(), 2.0 * M_PI * rng());
    CHECK(std::abs(dot(sigma, sigma) - 1.0) <= 1e-12);
    auto [a, b] = post_collision(v, w, sigma);
    const double de = dot(a, a) + dot(b, b) - dot(v, v) - dot(w, w);
    worst = std::max(worst, std::abs(de) / (dot(v, v) + dot(w, w)));
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(a[j] + b[j] - v[j] - w[j]) /
                                  std::max(1.0, std::abs(v[j] + w[j])));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("yz decomposition reproduces |v'|^2 over azimuth sweeps") {
  oracle::TestRng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Vec3 v = rand_vel(rng), w = rand_vel(rng);
    const double theta = M_PI * 0.5 * rng();
    const auto frame = CollisionFrame::make(v, w);
    const YZ yz = yz_decomposition(v, w, theta);
    for (int i = 0; i < 16; ++i) {
      const double phi = 2.0 * M_PI * i / 16.0;
      auto [a, b] = post_collision(v, w, frame.sigma(theta, phi));
      CHECK(dot(a, a) ==
            doctest::Approx(yz.Y + yz.Z * std::cos(phi)).epsilon(1e-12));
      CHECK(dot(b, b) ==
            doctest::Approx(yz.Y_reflected - yz.Z * std::cos(phi))
                .epsilon(1e-12));
    }
    // energy identity of the decomposition itself
    CHECK(yz.Y + yz.Y_reflected ==
          doctest::Approx(dot(v, v) + dot(w, w)).epsilon(1e-13));
  }

  // worked example: |v|=|v*|=1 orthogonal, theta = pi/2
  const YZ yz = yz_decomposition({1, 0, 0}, {0, 1, 0}, 0.5 * M_PI);
  CHECK(yz.Y == doctest::Approx(1.0));
  CHECK(yz.Y_reflected == doctest::Approx(1.0));
  CHECK(yz.Z == doctest::Approx(1.0));

  // theta = 0
  const YZ z0 = yz_decomposition({2, 0, 0}, {0, 1, 0}, 0.0);
  CHECK(z0.Y == doctest::Approx(4.0));
  CHECK(z0.Z == 0.0);
}

TEST_CASE("degenerate aligned velocities give azimuth-independent results") {
  const Vec3 v{1.0, 0.0, 0.0}, w{-0.5, 0.0, 0.0};
  const auto frame = CollisionFrame::make(v, w);  // v x w = 0
  const double theta = 0.7;
  auto [a0, b0] = post_collision(v, w, frame.sigma(theta, 0.3));
  auto [a1, b1] = post_collision(v, w, frame.sigma(theta, 2.9));
  CHECK(dot(a0, a0) == doctest::Approx(dot(a1, a1)).epsilon(1e-12));
  CHECK(dot(b0, b0) == doctest::Approx(dot(b1, b1)).epsilon(1e-12));
  CHECK(yz_decomposition(v, w, theta).Z == 0.0);
}

TEST_CASE("povzner split: linear Psi, sign of -H, reconstruction") {
  oracle::TestRng rng(37);
  const auto kernel = AngularKernel::constant(1.0);

  double worst_k = 0.0, worst_h = 0.0, worst_rec = 0.0;
  for (int i = 0; i < 300; ++i) {
    const Vec3 v = rand_vel(rng), w = rand_vel(rng);
    const auto lin = povzner_split_psi(v, w, kernel, 1.0, 32, 16);
    worst_k = std::max(worst_k, std::abs(lin.K));

    const auto split = povzner_split(v, w, kernel, 1, 0.5, 32, 16);
    worst_h = std::max(worst_h, split.minus_H);
    worst_rec = std::max(
        worst_rec, std::abs(split.reconstruction_error()) /
                       std::max(1.0, std::abs(split.K)));
  }
  CHECK(worst_k <= 1e-12);
  CHECK(worst_h <= 1e-12);
  CHECK(worst_rec <= 1e-9);
}

TEST_CASE("povzner split under a cutoff power-law kernel") {
  oracle::TestRng rng(53);
  const auto kernel = AngularKernel::power_law(0.25, 1.0).with_cutoff(20.0);
  for (int i = 0; i < 40; ++i) {
    const Vec3 v = rand_vel(rng), w = rand_vel(rng);
    const auto split = povzner_split(v, w, kernel, 1, 0.5, 48, 24);
    CHECK(split.minus_H <= 1e-12);
    CHECK(split.G >= -1e-12);
    CHECK(std::abs(split.reconstruction_error()) <=
          1e-8 * std::max(1.0, std::abs(split.K)) + split.residual);
  }
}

TEST_CASE("G is quadratically bounded for n = 1") {
  oracle::TestRng rng(71);
  const auto kernel = AngularKernel::constant(1.0);
  auto fit = [&](int count) {
    double c = 0.0;
    for (int i = 0; i < count; ++i) {
      const Vec3 v = rand_vel(rng), w = rand_vel(rng);
      const auto split = povzner_split(v, w, kernel, 1, 0.5, 32, 16);
      c = std::max(c, split.G / (dot(v, v) * dot(w, w)));
    }
    return c;
  };
  const double c1 = fit(800), c2 = fit(800);
  CHECK(std::isfinite(c1));
  CHECK(c1 > 0.0);
  CHECK(std::abs(c1 - c2) <= 0.2 * std::max(c1, c2));
}

TEST_CASE("weight function") {
  // delta -> 0 recovers <v>^{2n+alpha}; the relative gap is
  // delta * <v>^{2n+alpha} / (1 + ...), about 3.2e-6 at speed 10
  for (double speed : {0.0, 0.5, 3.0, 10.0}) {
    const Vec3 v{speed, 0.0, 0.0};
    const double unweighted = std::pow(1.0 + speed * speed, 1.0 + 0.25);
    CHECK(weight_wdelta(v, 1e-8, 1, 0.5) ==
          doctest::Approx(unweighted).epsilon(1e-6 + 1e-8 * unweighted));
  }
  CHECK(weight_wdelta({0, 0, 0}, 0.5, 1, 0.5) ==
        doctest::Approx(1.0 / 1.5).epsilon(1e-14));
  CHECK_THROWS_AS(weight_wdelta({1, 0, 0}, 0.0, 1, 0.5), std::domain_error);

  // sampled subadditivity constant of W(v') <= c (W(v) + W(v*))
  oracle::TestRng rng(101);
  double c_fit = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Vec3 v = rand_vel(rng), w = rand_vel(rng);
    const auto frame = CollisionFrame::make(v, w);
    auto [a, b] = post_collision(v, w,
                                 frame.sigma(M_PI * 0.5 * rng(), 2 * M_PI * rng()));
    const double lhs = weight_wdelta(a, 0.1, 1, 0.5);
    const double rhs = weight_wdelta(v, 0.1, 1, 0.5) +
                       weight_wdelta(w, 0.1, 1, 0.5);
    c_fit = std::max(c_fit, lhs / rhs);
  }
  CHECK(std::isfinite(c_fit));
  // analytic cap: <v'>^2 <= 2(<v>^2 + <v*>^2) gives c <= 2^(2(n+a/2)-... )
  CHECK(c_fit <= std::pow(2.0, 2.0 * (1.0 + 0.25)));
}
