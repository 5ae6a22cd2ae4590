// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "boltzkit/errors.hpp"
#include "boltzkit/kernel.hpp"
#include "oracle_utils.hpp"

using namespace boltzkit;

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
// closed form for b == 1 (u = sin^2(t/2) substitution):
//   gamma_alpha = 2 pi * 4 / (alpha + 2)
double const_gamma(double alpha) { return 8.0 * M_PI / (alpha + 2.0); }
}  // namespace

TEST_CASE("eval_b forms and cutoff") {
  auto c1 = AngularKernel::constant(1.0);
  CHECK(c1.eval(M_PI / 4.0) == 1.0);

  auto pl = AngularKernel::power_law(0.25, 1.0);
  const double th = 1e-4;
  CHECK(pl.eval(th) * std::pow(th, 2.5) == doctest::Approx(1.0).epsilon(1e-2));

  auto clamped = pl.with_cutoff(5.0);
  CHECK(clamped.eval(th) == 5.0);
  CHECK(clamped.eval(1.5) == pl.eval(1.5));  // inactive away from 0

  CHECK_THROWS_AS((void)pl.eval(0.0), std::domain_error);
  CHECK_THROWS_AS((void)pl.eval(2.0), std::domain_error);
  CHECK_THROWS_AS(AngularKernel::power_law(1.5, 1.0), std::domain_error);
}

TEST_CASE("tabulated kernels fold [0, pi] onto [0, pi/2]") {
  // b(theta) = 1 + cos(theta) on [0, pi]: folded value is exactly 2
  std::vector<double> theta, values;
  for (int i = 1; i <= 60; ++i) {
    theta.push_back(M_PI * i / 61.0);
    values.push_back(1.0 + std::cos(theta.back()));
  }
  auto tab = AngularKernel::tabulated(theta, values);
  for (double t : {0.3, 0.7, 1.2})
    CHECK(tab.eval(t) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("singularity index") {
  auto s = singularity_index(AngularKernel::power_law(0.25, 1.0));
  CHECK(s.infimum == doctest::Approx(0.5));
  CHECK(s.admissible > 0.5);
  CHECK(s.admissible <= 0.56);

  CHECK(singularity_index(AngularKernel::constant(1.0)).infimum == 0.0);
  CHECK(singularity_index(AngularKernel::power_law(0.9, 2.0)).infimum ==
        doctest::Approx(1.8));

  // tabulated samples of theta^-4.6: no integrable weight exponent <= 2
  std::vector<double> theta, values;
  for (int i = 1; i <= 40; ++i) {
    theta.push_back(1.5 * i / 40.0);
    values.push_back(std::pow(theta.back(), -4.6));
  }
  CHECK_THROWS_AS(singularity_index(AngularKernel::tabulated(theta, values)),
                  ClassificationError);
}

TEST_CASE("rate constants against the closed form for b == 1") {
  auto rc = rate_constants(AngularKernel::constant(1.0),
                           std::vector<double>{0.0, 0.5, 1.0, 1.7, 2.0});
  CHECK(std::abs(rc.gamma2 - kTwoPi) <= 1e-10);
  CHECK(std::abs(rc(1.0).lambda - kTwoPi / 3.0) <= 1e-10);
  CHECK(std::abs(rc(0.0).lambda - kTwoPi) <= 1e-10);
  for (double a : {0.0, 0.5, 1.0, 1.7, 2.0})
    CHECK(std::abs(rc(a).gamma - const_gamma(a)) <= 1e-10);
  CHECK(std::abs(rc(2.0).lambda) <= 1e-12);
  CHECK(rc(0.5).residual < 1e-10);
}

TEST_CASE("rate constant properties across kernels") {
  const std::vector<double> exps{0.0, 0.3, 0.6, 0.9, 1.2, 1.5, 1.8, 2.0};
  const std::vector<AngularKernel> kernels{
      AngularKernel::constant(2.0),
      AngularKernel::power_law(0.25, 1.0).with_cutoff(50.0),
      AngularKernel::power_law(0.7, 0.4).with_cutoff(12.0)};
  for (const auto& k : kernels) {
    CAPTURE(k.spec());
    auto rc = rate_constants(k, exps);
    CHECK(std::abs(rc(2.0).lambda) <= 1e-12);
    CHECK(std::abs(rc(0.0).gamma - 2.0 * rc.gamma2) <= 1e-10);  // exact
    for (std::size_t i = 0; i + 1 < exps.size(); ++i) {
      CHECK(rc.at[i].gamma >= rc.at[i + 1].gamma - 1e-12);  // nonincreasing
      CHECK(rc.at[i].lambda >= -1e-12);
    }
  }
  // lambda nondecreasing in the cutoff level
  double prev = -1.0;
  for (double n : {2.0, 8.0, 32.0, 128.0}) {
    auto rc = rate_constants(
        AngularKernel::power_law(0.25, 1.0).with_cutoff(n),
        std::vector<double>{1.0});
    CHECK(rc(1.0).lambda >= prev - 1e-12);
    prev = rc(1.0).lambda;
  }
}

TEST_CASE("independent oracle: adaptive Simpson reproduces gamma") {
  auto k = AngularKernel::power_law(0.4, 0.8).with_cutoff(9.0);
  auto rc = rate_constants(k, std::vector<double>{0.8});
  const double simpson =
      kTwoPi * oracle::integrate(
                   [&](double t) {
                     if (t <= 0.0) return 0.0;
                     return k.eval(t) *
                            (std::pow(std::sin(0.5 * t), 0.8) +
                             std::pow(std::cos(0.5 * t), 0.8)) *
                            std::sin(t);
                   },
                   1e-9, M_PI / 2.0, 1e-13);
  CHECK(rc(0.8).gamma == doctest::Approx(simpson).epsilon(1e-9));
}

TEST_CASE("rate constants refuse singular kernels without cutoff") {
  CHECK_THROWS_AS(rate_constants(AngularKernel::power_law(0.25, 1.0),
                                 std::vector<double>{1.0}),
                  std::domain_error);
  CHECK_THROWS_AS(rate_constants(AngularKernel::constant(1.0),
                                 std::vector<double>{2.5}),
                  std::domain_error);
}

TEST_CASE("lambda_limit: frozen values, monotone cutoff approach, divergence") {
  auto kernel = AngularKernel::power_law(0.25, 1.0);
  auto lim = lambda_limit(kernel, 1.0);
  // frozen high-precision independent-quadrature values computed before
  // the build
  CHECK(lim.value == doctest::Approx(6.2981119895831174).epsilon(1e-10));
  CHECK(lambda_limit(kernel, 0.8).value ==
        doctest::Approx(12.280642814956732).epsilon(1e-9));
  CHECK(lambda_limit(AngularKernel::power_law(0.6, 0.7), 1.5).value ==
        doctest::Approx(4.2684949379164581).epsilon(1e-7));

  // the cutoff sequence increases toward the limit like n^(-1/5)
  double prev = -1.0;
  std::vector<double> gaps;
  for (double n : {10.0, 100.0, 1000.0}) {
    auto rc = rate_constants(kernel.with_cutoff(n), std::vector<double>{1.0});
    CHECK(rc(1.0).lambda > prev);
    prev = rc(1.0).lambda;
    gaps.push_back(lim.value - rc(1.0).lambda);
  }
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    CHECK(gaps[i + 1] < gaps[i]);
    // rate check: gap * n^0.2 is near constant
    const double ratio = (gaps[i + 1] * std::pow(10.0, 0.2 * (i + 2))) /
                         (gaps[i] * std::pow(10.0, 0.2 * (i + 1)));
    CHECK(ratio > 0.8);
    CHECK(ratio < 1.2);
  }

  CHECK(std::abs(lambda_limit(kernel, 2.0).value) <= 1e-10);
  CHECK_THROWS_AS(lambda_limit(kernel, 0.4), DivergenceError);
}

TEST_CASE("theta rule total equals gamma2 / 2pi") {
  for (const auto& k :
       {AngularKernel::constant(1.5),
        AngularKernel::power_law(0.25, 1.0).with_cutoff(30.0)}) {
    auto rule = make_theta_rule(k, 64);
    auto rc = rate_constants(k, std::vector<double>{2.0});
    CHECK(2.0 * M_PI * rule.total() ==
          doctest::Approx(rc.gamma2).epsilon(1e-11));
  }
}

TEST_CASE("kernel spec strings round-trip") {
  auto k = AngularKernel::parse("power_law(s=0.25,K=2);cutoff=16");
  CHECK(k.form() == AngularKernel::Form::power_law);
  CHECK(k.cutoff() == 16.0);
  CHECK(k.s() == 0.25);
  auto k2 = AngularKernel::parse(k.spec());
  CHECK(k2.spec() == k.spec());
  CHECK_THROWS_AS(AngularKernel::parse("nonsense(1)"), ConfigError);
}
