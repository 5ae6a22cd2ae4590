// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boltzkit/grid.hpp"
#include "boltzkit/quadrature.hpp"
#include "oracle_utils.hpp"

using namespace boltzkit;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  // order-n rule is exact through degree 2n-1
  for (int n : {2, 5, 15, 64}) {
    const int deg = 2 * n - 1;
    auto f = [&](double x) { return std::pow(x, deg) + std::pow(x, deg - 1); };
    // int_-1^1 x^deg dx = 0 (odd), int x^(deg-1) = 2/deg
    const double exact = 2.0 / deg;
    CHECK(std::abs(integrate_gl(f, -1.0, 1.0, n) - exact) <= 1e-13);
  }
}

TEST_CASE("adaptive quadrature handles smooth and endpoint-singular cases") {
  auto smooth = integrate_adaptive([](double x) { return std::exp(-x * x); },
                                   0.0, 5.0, 1e-13);
  CHECK(smooth.converged);
  CHECK(std::abs(smooth.value - 0.5 * std::sqrt(M_PI) * std::erf(5.0)) <=
        1e-13);

  // integrable singularity x^-0.9 at 0: exact 10 * 1^0.1
  auto singular = integrate_adaptive(
      [](double x) { return std::pow(x, -0.9); }, 0.0, 1.0, 1e-10);
  CHECK(std::abs(singular.value - 10.0) <= 1e-8);

  auto vs_simpson = integrate_adaptive(
      [](double x) { return std::sin(3.0 * x) / (1.0 + x * x); }, 0.0, 4.0,
      1e-12);
  const double simpson = oracle::integrate(
      [](double x) { return std::sin(3.0 * x) / (1.0 + x * x); }, 0.0, 4.0);
  CHECK(std::abs(vs_simpson.value - simpson) <= 1e-10);
}

TEST_CASE("sinc power tail matches brute force") {
  // int_R^inf sin(ar)/(ar) r^-p dr vs oscillation-aware Simpson out to a
  // large truncation
  for (double a : {0.5, 1.0, 2.0}) {
    for (double p : {1.5, 2.0, 3.2}) {
      const double R = 40.0;
      auto t = sinc_power_tail(a, p, R);
      double brute = 0.0;
      double lo = R;
      // integrate period by period out to 4e4 and accept the alternating
      // remainder as below the last period's magnitude
      const double period = M_PI / a;
      double last = 0.0;
      while (lo < 4e4) {
        last = oracle::integrate(
            [&](double r) { return std::sin(a * r) / (a * r) * std::pow(r, -p); },
            lo, lo + period, 1e-14);
        brute += last;
        lo += period;
      }
      CHECK(std::abs(t.value - brute) <=
            std::abs(last) + t.bound + 1e-12);
      CHECK(t.bound < 1e-6);
    }
  }
}

TEST_CASE("lobatto nodes bracket the interval and are symmetric") {
  for (int m : {3, 4, 6, 8}) {
    auto c = lobatto_nodes(m);
    REQUIRE(int(c.size()) == m);
    CHECK(c.front() == 0.0);
    CHECK(c.back() == 1.0);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) CHECK(c[i] < c[i + 1]);
    for (std::size_t i = 0; i < c.size(); ++i)
      CHECK(std::abs(c[i] + c[c.size() - 1 - i] - 1.0) <= 1e-12);
  }
}

TEST_CASE("fornberg weights reproduce derivatives of polynomials") {
  std::vector<double> x{0.0, 0.1, 0.25, 0.45, 0.7};
  auto w = fornberg_weights(0.25, x, 2);
  // f(x) = 2 + 3x - x^2 + 0.5 x^3: f'(0.25) = 3 - 0.5 + 0.09375
  auto f = [](double t) { return 2.0 + 3.0 * t - t * t + 0.5 * t * t * t; };
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d1 += w[1][i] * f(x[i]);
    d2 += w[2][i] * f(x[i]);
  }
  CHECK(std::abs(d1 - (3.0 - 0.5 + 3.0 * 0.5 * 0.0625)) <= 1e-12);
  CHECK(std::abs(d2 - (-2.0 + 3.0 * 0.25)) <= 1e-11);
}
