// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "boltzkit/charfun.hpp"
#include "boltzkit/errors.hpp"
#include "boltzkit/norms.hpp"
#include "oracle_utils.hpp"

using namespace boltzkit;

TEST_CASE("knorm on the analytic catalog") {
  // phi == 1
  CHECK(knorm(AnalyticCharFn::point_mass(), 1.0).value == 0.0);

  // stable(a) at its own exponent: (1-e^-x)/x is decreasing, sup -> 1
  for (double a : {0.5, 1.0, 1.5}) {
    auto k = knorm(AnalyticCharFn::stable(a), a);
    CHECK_FALSE(k.infinite);
    const double scan = oracle::dense_log_sup(
        [&](double r) { return -std::expm1(-std::pow(r, a)) / std::pow(r, a); },
        1e-9, 1e3);
    CHECK(k.value == doctest::Approx(scan).epsilon(1e-10));
    CHECK(k.value == doctest::Approx(1.0).epsilon(1e-4));
  }

  // gaussian at alpha = 2: (1-e^{-r^2/2})/r^2 -> 1/2
  auto g = knorm(AnalyticCharFn::gaussian(1.0), 2.0);
  CHECK(g.value == doctest::Approx(0.5).epsilon(1e-6));

  // frozen dense-scan oracle: sup (1-e^{-r^2/2})/sqrt(r) at r* ~ 2.1618
  auto g05 = knorm(AnalyticCharFn::gaussian(1.0), 0.5);
  CHECK(g05.value == doctest::Approx(0.6143978849716989).epsilon(1e-7));
}

TEST_CASE("knorm_diff examples") {
  auto g1 = AnalyticCharFn::gaussian(1.0);
  CHECK(knorm_diff(g1, g1, 1.0).value == 0.0);

  // two gaussians at alpha = 2: limit |sigma1^2 - sigma2^2| / 2
  auto d = knorm_diff(g1, AnalyticCharFn::gaussian(1.21), 2.0);
  CHECK(d.value == doctest::Approx(0.105).epsilon(1e-6));

  // dirac_pair(1) vs 1 at alpha = 2: sup (1 - cos r)/r^2 = 1/2 (axis values)
  auto dp = knorm_diff(AnalyticCharFn::dirac_pair(1.0),
                       AnalyticCharFn::point_mass(), 2.0);
  CHECK(dp.value == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("knorm_diff triangle inequality on random triples") {
  oracle::TestRng rng(314);
  auto g = RadialGrid::make();
  for (int trial = 0; trial < 12; ++trial) {
    auto a = RadialCharFn::sample(AnalyticCharFn::gaussian(0.5 + rng()), g);
    auto b = RadialCharFn::sample(AnalyticCharFn::stable(0.5 + 1.2 * rng()), g);
    auto c = RadialCharFn::sample(AnalyticCharFn::dirac_pair(0.2 + 2.0 * rng()), g);
    const double alpha = 0.3 + 1.5 * rng();
    const double ab = knorm_diff(a, b, alpha).value;
    const double ac = knorm_diff(a, c, alpha).value;
    const double cb = knorm_diff(c, b, alpha).value;
    CHECK(ab <= ac + cb + 1e-12);
  }
}

TEST_CASE("mnorm_re: gaussian closed form and divergence flags") {
  CHECK(mnorm_re(AnalyticCharFn::point_mass(), 1.0).value == 0.0);

  // 4 pi int (1-e^{-r^2/2}) r^-2 dr = 4 pi sqrt(pi/2)
  auto m = mnorm_re(AnalyticCharFn::gaussian(1.0), 1.0);
  CHECK_FALSE(m.diverged);
  CHECK(m.value ==
        doctest::Approx(4.0 * M_PI * std::sqrt(0.5 * M_PI)).epsilon(1e-7));

  // stable(1.5) at alpha = 1.5: integrand ~ 1/r at the origin
  auto s = mnorm_re(AnalyticCharFn::stable(1.5), 1.5);
  CHECK(s.diverged);
  CHECK(s.inconclusive);  // the fitted slope sits in the borderline band
  CHECK(std::isinf(s.value));

  auto s_ok = mnorm_re(AnalyticCharFn::stable(1.5), 1.0);
  CHECK_FALSE(s_ok.diverged);
  CHECK(std::isfinite(s_ok.value));
}

TEST_CASE("mnorm scaling law for dirac pairs") {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const double base = mnorm_re(AnalyticCharFn::dirac_pair(1.0), alpha).value;
    for (double a : {0.5, 2.0}) {
      const double scaled =
          mnorm_re(AnalyticCharFn::dirac_pair(a), alpha).value;
      CHECK(scaled / base == doctest::Approx(std::pow(a, alpha)).epsilon(1e-6));
    }
  }
}

TEST_CASE("grid-path mnorm against the analytic path") {
  auto g = RadialGrid::make();
  auto fn = RadialCharFn::sample(AnalyticCharFn::gaussian(1.0), g);
  auto grid_m = mnorm_re(fn, 1.0);
  auto exact = mnorm_re(AnalyticCharFn::gaussian(1.0), 1.0);
  // the sampled path truncates at r_max = 20; the missing tail is
  // int_20^inf (1 - e^{-r^2/2}) r^-2 dr ~ 1/20, i.e. 4 pi * 0.05
  const double missing_tail = 4.0 * M_PI * 0.05;
  CHECK(grid_m.value ==
        doctest::Approx(exact.value - missing_tail).epsilon(1e-5));
  CHECK(grid_m.tail_bound >= missing_tail);
  CHECK(grid_m.tail_bound ==
        doctest::Approx(8.0 * M_PI * std::pow(20.0, -1.0)).epsilon(1e-12));
}

TEST_CASE("dis_distance composition, symmetry, and parameter checks") {
  auto g1 = AnalyticCharFn::gaussian(1.0);
  auto one = AnalyticCharFn::point_mass();

  auto d = dis_distance(g1, one, 1.0, 0.5, 0.5);
  const double m = mnorm_re(g1, 1.0).value;
  const double k = knorm(g1, 0.5).value;
  CHECK(d.total ==
        doctest::Approx(m + k + std::pow(k, 0.5)).epsilon(1e-12));

  CHECK(dis_distance(g1, g1, 1.0, 0.5, 0.5).total == 0.0);

  // symmetry on sampled pairs
  auto grid = RadialGrid::make();
  auto A = RadialCharFn::sample(AnalyticCharFn::gaussian(0.8), grid);
  auto B = RadialCharFn::sample(AnalyticCharFn::stable(1.2), grid);
  CHECK(dis_distance(A, B, 1.1, 0.6, 0.4).total ==
        doctest::Approx(dis_distance(B, A, 1.1, 0.6, 0.4).total)
            .epsilon(1e-12));

  CHECK_THROWS_AS(dis_distance(g1, one, 0.5, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(dis_distance(g1, one, 1.0, 0.5, 1.5), std::domain_error);
}

TEST_CASE("classification and the embedding chain") {
  CHECK(classify(AnalyticCharFn::gaussian(1.0), 1.5).in_K_alpha);
  CHECK(classify(AnalyticCharFn::gaussian(1.0), 1.5).in_M_tilde_alpha);

  auto s = classify(AnalyticCharFn::stable(1.5), 1.5);
  CHECK(s.in_K_alpha);
  CHECK_FALSE(s.in_M_tilde_alpha);

  // K^gamma membership implies M~alpha implies K^alpha implies K^beta,
  // beta < alpha < gamma, on the catalog
  const std::vector<AnalyticCharFn> catalog{
      AnalyticCharFn::gaussian(1.0), AnalyticCharFn::dirac_pair(1.5),
      AnalyticCharFn::mixture({{0.7, AnalyticCharFn::gaussian(2.0)},
                               {0.3, AnalyticCharFn::point_mass()}})};
  for (const auto& fn : catalog) {
    const double gamma = 1.8, alpha = 1.2, beta = 0.7;
    if (!knorm(fn, gamma).infinite) {
      auto mid = classify(fn, alpha);
      CHECK(mid.in_M_tilde_alpha);
      CHECK(mid.in_K_alpha);
      CHECK_FALSE(knorm(fn, beta).infinite);
    }
  }
}

TEST_CASE("mean obstruction") {
  auto blows = mean_obstruction(1.0, 1.5);
  CHECK_FALSE(blows.bounded);
  CHECK(blows.growth_exponent == doctest::Approx(-0.5).epsilon(0.05));
  CHECK(blows.samples.size() == 12);

  auto flat = mean_obstruction(1.0, 1.0);
  CHECK(flat.bounded);
  for (const auto& [r, ratio] : flat.samples) CHECK(ratio <= 1.0 + 1e-12);

  auto zero = mean_obstruction(0.0, 1.5);
  CHECK(zero.bounded);
  for (const auto& [r, ratio] : zero.samples) CHECK(ratio == 0.0);
}

TEST_CASE("radial charfn invariants and csv round trip") {
  auto g = RadialGrid::make();
  auto fn = RadialCharFn::sample(AnalyticCharFn::dirac_pair(2.0), g);
  CHECK(fn.is_real());
  CHECK(fn.delta_re()[0] == 0.0);

  std::stringstream ss;
  fn.write_csv(ss);
  auto back = RadialCharFn::read_csv(ss);
  CHECK(back.size() == fn.size());
  // full-precision decimals survive the trip bit-exactly at the nodes
  for (std::size_t i = 0; i < fn.size(); i += 101)
    CHECK(back.value_re(i) == doctest::Approx(fn.value_re(i)).epsilon(1e-15));

  // |phi| > 1 must be rejected
  std::vector<double> bad(g.size(), 0.0);
  bad[5] = 0.5;  // phi = 1.5
  CHECK_THROWS_AS(RadialCharFn(g, std::move(bad)), std::invalid_argument);

  // phi(0) != 1 must be rejected
  std::vector<double> bad0(g.size(), 0.0);
  bad0[0] = 1e-13;
  CHECK_THROWS_AS(RadialCharFn(g, std::move(bad0)), std::invalid_argument);
}

TEST_CASE("family spec parsing") {
  auto m = AnalyticCharFn::parse("mixture(0.5*gaussian(1)+0.5*dirac_pair(2))");
  CHECK(m.components().size() == 2);
  CHECK(m.second_moment().value() == doctest::Approx(3.5));
  auto again = AnalyticCharFn::parse(m.spec());
  CHECK(again.spec() == m.spec());

  CHECK(AnalyticCharFn::parse("stable(1.5)").moment(1.0).has_value());
  CHECK_FALSE(AnalyticCharFn::parse("stable(1.5)").moment(1.6).has_value());
  CHECK_THROWS_AS(AnalyticCharFn::parse("quux(1)"), ConfigError);
  CHECK_THROWS_AS(AnalyticCharFn::parse("mixture(0.5*gaussian(1))"),
                  std::domain_error);
}
