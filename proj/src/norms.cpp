// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/norms.hpp"

#include <cmath>
#include <limits>

#include "boltzkit/detail/fit.hpp"
#include "boltzkit/errors.hpp"
#include "boltzkit/quadrature.hpp"

namespace boltzkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ratios decrease toward 0 as r -> 0 when the fitted slope is positive;
// a clearly negative slope means the sup blows up at the origin
constexpr double kBlowupSlope = -0.02;

struct RatioScan {
  double sup = 0.0;
  double slope = 0.0;
  double smallest = 0.0;  // ratio at the smallest radius
};

// sup of fn(r), slope of log fn near the small end of the radii list;
// radii must be increasing, fn >= 0
template <typename F>
RatioScan scan_ratios(const std::vector<double>& radii, F&& fn) {
  RatioScan out;
  std::vector<double> small_r, small_v;
  for (double r : radii) {
    const double v = fn(r);
    out.sup = std::max(out.sup, v);
    if (small_r.empty()) out.smallest = v;
    if (small_r.size() < 3) {
      small_r.push_back(r);
      small_v.push_back(v);
    }
  }
  out.slope = detail::loglog_slope(small_r, small_v);
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  std::vector<double> r(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = std::exp(a + (b - a) * double(i) / double(n - 1));
  return r;
}

// sharpen a scanned sup: ternary search between the scan neighbours of the
// argmax (the bracket is fine enough for local unimodality)
template <typename F>
double refine_sup(const std::vector<double>& radii, F&& fn, double scan_sup) {
  std::size_t best = 0;
  double best_v = -1.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double v = fn(radii[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double lo = radii[best == 0 ? 0 : best - 1];
  double hi = radii[std::min(best + 1, radii.size() - 1)];
  for (int it = 0; it < 80; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (fn(m1) < fn(m2))
      lo = m1;
    else
      hi = m2;
  }
  return std::max(scan_sup, fn(0.5 * (lo + hi)));
}

bool needs_direction_scan(const AnalyticCharFn& f) {
  for (const auto& c : f.components())
    if ((c.family == AnalyticCharFn::Family::dirac_pair ||
         c.family == AnalyticCharFn::Family::shifted_dirac) &&
        c.p1 > 0.0)
      return true;
  return false;
}

// |phi(r, direction) - 1| maximized over the polar angle against the
// distinguished axis; anisotropic components make this direction dependent
double max_abs_delta_dir(const AnalyticCharFn& f, double r, bool dir_scan) {
  if (!dir_scan) return std::abs(f.radial_delta(r));
  double best = 0.0;
  const int nt = 65;
  for (int i = 0; i < nt; ++i) {
    const double t = double(i) / double(nt - 1);
    best = std::max(best, std::abs(f.axis_delta(r, t)));
  }
  return best;
}

KNormResult finish_knorm(const RatioScan& scan) {
  KNormResult out;
  out.small_r_slope = scan.slope;
  // a genuine blow-up at the origin shows the negative slope AND carries
  // the running sup at the smallest radius; a negative slope on ratios far
  // below the sup is rounding noise (e.g. differences of near-identical
  // solutions)
  if (scan.slope < kBlowupSlope && scan.smallest >= 0.5 * scan.sup &&
      scan.smallest > 0.0) {
    out.infinite = true;
    out.value = kInf;
  } else {
    out.value = scan.sup;
  }
  return out;
}

void check_mnorm_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::domain_error("mnorm_re: alpha must lie in (0, 2)");
}

// small-r divergence analysis of g(r) = |num(r)| r^(-1-alpha)
template <typename F>
void fit_small_r(MNormResult& out, double alpha, F&& num, double r_lo,
                 double r_hi) {
  auto radii = log_grid(r_lo, r_hi, 40);
  std::vector<double> g;
  for (double r : radii) g.push_back(std::abs(num(r)) * std::pow(r, -1.0 - alpha));
  out.small_r_slope = detail::loglog_slope(radii, g);
  out.diverged = out.small_r_slope <= -1.0;
  out.inconclusive =
      out.small_r_slope > -1.05 && out.small_r_slope < -0.95;
}

}  // namespace

namespace {

// node ratios |delta_phi - delta_psi| / r^alpha for the sampled overloads
// (psi omitted for the plain norm); index 0 of the result sits at grid
// node 1, the smallest positive radius
RatioScan scan_node_ratios(const RadialCharFn& phi, const RadialCharFn* psi,
                           double alpha) {
  const auto& g = phi.grid();
  auto re1 = phi.delta_re();
  auto im1 = phi.delta_im();
  std::span<const double> re2, im2;
  if (psi) {
    re2 = psi->delta_re();
    im2 = psi->delta_im();
  }
  RatioScan out;
  std::vector<double> small_r, small_v;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double dr = re1[i] - (re2.empty() ? 0.0 : re2[i]);
    const double di = (im1.empty() ? 0.0 : im1[i]) -
                      (im2.empty() ? 0.0 : im2[i]);
    const double v =
        std::sqrt(dr * dr + di * di) * std::pow(g[i], -alpha);
    out.sup = std::max(out.sup, v);
    if (small_r.empty()) out.smallest = v;
    if (small_r.size() < 3) {
      small_r.push_back(g[i]);
      small_v.push_back(v);
    }
  }
  out.slope = detail::loglog_slope(small_r, small_v);
  return out;
}

}  // namespace

KNormResult knorm(const RadialCharFn& phi, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("knorm: alpha must lie in (0, 2]");
  return finish_knorm(scan_node_ratios(phi, nullptr, alpha));
}

KNormResult knorm(const AnalyticCharFn& phi, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("knorm: alpha must lie in (0, 2]");
  const bool dir_scan = needs_direction_scan(phi);
  auto radii = log_grid(1e-9, std::max(1e3, phi.suggested_r_star()), 4000);
  auto ratio = [&](double r) {
    return max_abs_delta_dir(phi, r, dir_scan) * std::pow(r, -alpha);
  };
  auto scan = scan_ratios(radii, ratio);
  auto out = finish_knorm(scan);
  if (!out.infinite) out.value = refine_sup(radii, ratio, out.value);
  return out;
}

KNormResult knorm_diff(const RadialCharFn& phi, const RadialCharFn& psi,
                       double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("knorm_diff: alpha must lie in (0, 2]");
  if (!(phi.grid() == psi.grid()))
    throw std::invalid_argument("knorm_diff: grids differ");
  return finish_knorm(scan_node_ratios(phi, &psi, alpha));
}

KNormResult knorm_diff(const AnalyticCharFn& phi, const AnalyticCharFn& psi,
                       double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("knorm_diff: alpha must lie in (0, 2]");
  const bool any_dir = needs_direction_scan(phi) || needs_direction_scan(psi);
  auto radii = log_grid(
      1e-9, std::max({1e3, phi.suggested_r_star(), psi.suggested_r_star()}),
      4000);
  auto ratio = [&](double r) {
    if (!any_dir)
      return std::abs(phi.radial_delta(r) - psi.radial_delta(r)) *
             std::pow(r, -alpha);
    double best = 0.0;
    for (int i = 0; i < 65; ++i) {
      const double t = double(i) / 64.0;
      best = std::max(best, std::abs(phi.axis_delta(r, t) -
                                     psi.axis_delta(r, t)));
    }
    return best * std::pow(r, -alpha);
  };
  auto scan = scan_ratios(radii, ratio);
  auto out = finish_knorm(scan);
  if (!out.infinite) out.value = refine_sup(radii, ratio, out.value);
  return out;
}

MNormResult mnorm_re(const AnalyticCharFn& phi, double alpha) {
  check_mnorm_alpha(alpha);
  MNormResult out;
  fit_small_r(out, alpha, [&](double r) { return phi.radial_delta(r); },
              1e-8, 1e-2);
  if (out.diverged) {
    out.value = kInf;
    return out;
  }

  const double R = phi.suggested_r_star();
  const double r_lo = 1e-7;
  auto integrand = [&](double r) {
    return -phi.radial_delta(r) * std::pow(r, -1.0 - alpha);
  };
  auto bulk = integrate_adaptive(integrand, r_lo, R, 1e-11);
  out.quad_error += 4.0 * M_PI * bulk.error;

  // (0, r_lo] from the fitted local power
  const double rho = out.small_r_slope;
  const double g_lo = integrand(r_lo);
  double head = 0.0;
  if (g_lo > 0.0 && rho > -1.0) {
    head = g_lo * r_lo / (rho + 1.0);
    out.quad_error += 4.0 * M_PI * head * 0.05;
  }

  // component tails beyond R
  double tail_value = 0.0;
  for (const auto& c : phi.components()) {
    using F = AnalyticCharFn::Family;
    switch (c.family) {
      case F::gaussian: {
        if (c.p1 == 0.0) break;  // degenerate: phi == 1
        tail_value += c.weight * std::pow(R, -alpha) / alpha;
        out.quad_error += 4.0 * M_PI * c.weight *
                          std::exp(-0.5 * c.p1 * R * R) *
                          std::pow(R, -alpha) / alpha;
        break;
      }
      case F::stable: {
        tail_value += c.weight * std::pow(R, -alpha) / alpha;
        out.quad_error += 4.0 * M_PI * c.weight *
                          std::exp(-std::pow(c.p2 * R, c.p1)) *
                          std::pow(R, -alpha) / alpha;
        break;
      }
      case F::dirac_pair:
      case F::shifted_dirac: {
        if (c.p1 == 0.0) break;
        auto t = sinc_power_tail(c.p1, 1.0 + alpha, R);
        tail_value += c.weight * (std::pow(R, -alpha) / alpha - t.value);
        out.quad_error += 4.0 * M_PI * c.weight * t.bound;
        break;
      }
      case F::point_mass:
        break;
    }
  }
  out.value = 4.0 * M_PI * (bulk.value + head + tail_value);
  out.tail_bound = out.quad_error;
  return out;
}

namespace {

// shared by the sampled-path single and difference M-norms
MNormResult mnorm_grid_impl(const RadialCharFn& phi, const RadialCharFn* psi,
                            double alpha) {
  check_mnorm_alpha(alpha);
  const auto& g = phi.grid();
  auto num = [&](double r) {
    return psi ? phi.delta_at(r) - psi->delta_at(r) : phi.delta_at(r);
  };
  MNormResult out;
  const double r1 = g[1];
  fit_small_r(out, alpha, num, r1, std::min(1e3 * r1, g.r_max() * 0.5));
  if (out.diverged) {
    out.value = kInf;
    out.tail_bound = 8.0 * M_PI * std::pow(g.r_max(), -alpha) / alpha;
    return out;
  }

  double acc = 0.0, err = 0.0;
  auto integrand = [&](double r) {
    return std::abs(num(r)) * std::pow(r, -1.0 - alpha);
  };
  for (std::size_t j = 1; j + 1 < g.size(); ++j) {
    const double i8 = integrate_gl(integrand, g[j], g[j + 1], 8);
    const double i16 = integrate_gl(integrand, g[j], g[j + 1], 16);
    acc += i16;
    err += std::abs(i16 - i8);
  }
  // (0, r1] from the fitted local power of the numerator
  const double q_slope = out.small_r_slope + 1.0 + alpha;  // |num| ~ r^q
  if (q_slope > alpha + 0.02) {
    acc += std::abs(num(r1)) * std::pow(r1, -alpha) / (q_slope - alpha);
  } else {
    out.inconclusive = true;
  }
  out.value = 4.0 * M_PI * acc;
  out.quad_error = 4.0 * M_PI * err;
  out.tail_bound = 8.0 * M_PI * std::pow(g.r_max(), -alpha) / alpha;
  return out;
}

}  // namespace

MNormResult mnorm_re(const RadialCharFn& phi, double alpha) {
  return mnorm_grid_impl(phi, nullptr, alpha);
}

MNormResult mnorm_re_diff(const RadialCharFn& phi, const RadialCharFn& psi,
                          double alpha) {
  if (!(phi.grid() == psi.grid()))
    throw std::invalid_argument("mnorm_re_diff: grids differ");
  return mnorm_grid_impl(phi, &psi, alpha);
}

namespace {

void check_dis_params(double alpha, double beta, double eps) {
  if (!(beta > 0.0 && beta < alpha && alpha < 2.0))
    throw std::domain_error("dis_distance: need 0 < beta < alpha < 2");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("dis_distance: need eps in (0, 1)");
}

DisDistance assemble_dis(const MNormResult& m, const KNormResult& k,
                         double eps) {
  DisDistance d;
  d.infinite = m.diverged || k.infinite;
  d.mnorm_part = m.value;
  d.knorm_part = k.value;
  d.knorm_pow_part = k.infinite ? kInf : std::pow(k.value, eps);
  d.total = d.infinite ? kInf : d.mnorm_part + d.knorm_part + d.knorm_pow_part;
  return d;
}

}  // namespace

DisDistance dis_distance(const RadialCharFn& phi, const RadialCharFn& psi,
                         double alpha, double beta, double eps) {
  check_dis_params(alpha, beta, eps);
  return assemble_dis(mnorm_re_diff(phi, psi, alpha),
                      knorm_diff(phi, psi, beta), eps);
}

DisDistance dis_distance(const AnalyticCharFn& phi, const AnalyticCharFn& psi,
                         double alpha, double beta, double eps) {
  check_dis_params(alpha, beta, eps);
  const bool phi_one = phi.components().size() == 1 &&
                       phi.components()[0].family ==
                           AnalyticCharFn::Family::point_mass;
  const bool psi_one = psi.components().size() == 1 &&
                       psi.components()[0].family ==
                           AnalyticCharFn::Family::point_mass;
  MNormResult m;
  if (psi_one)
    m = mnorm_re(phi, alpha);
  else if (phi_one)
    m = mnorm_re(psi, alpha);
  else {
    // |Re phi - Re psi| does not direction-average, so the sampled diff
    // path is only exact for isotropic pairs
    if (!phi.isotropic() || !psi.isotropic())
      throw std::invalid_argument(
          "dis_distance: anisotropic pairs are only supported against the "
          "point mass");
    auto grid = RadialGrid::make();
    m = mnorm_re_diff(RadialCharFn::sample(phi, grid),
                      RadialCharFn::sample(psi, grid), alpha);
  }
  return assemble_dis(m, knorm_diff(phi, psi, beta), eps);
}

Classification classify(const AnalyticCharFn& phi, double alpha) {
  check_mnorm_alpha(alpha);
  Classification c;
  auto k = knorm(phi, alpha);
  c.in_K_alpha = !k.infinite;
  if (!c.in_K_alpha) return c;
  auto m = mnorm_re(phi, alpha);
  c.in_M_tilde_alpha = !m.diverged;
  c.inconclusive = m.inconclusive;
  return c;
}

Classification classify(const RadialCharFn& phi, double alpha) {
  check_mnorm_alpha(alpha);
  Classification c;
  auto k = knorm(phi, alpha);
  c.in_K_alpha = !k.infinite;
  if (!c.in_K_alpha) return c;
  auto m = mnorm_re(phi, alpha);
  c.in_M_tilde_alpha = !m.diverged;
  c.inconclusive = m.inconclusive;
  return c;
}

MeanObstruction mean_obstruction(double a, double alpha) {
  if (a < 0.0) throw std::domain_error("mean_obstruction: a >= 0");
  MeanObstruction out;
  std::vector<double> radii, ratios;
  for (int k = 1; k <= 12; ++k) {
    const double r = std::pow(10.0, -k);
    const double ratio =
        2.0 * std::abs(std::sin(0.5 * r * a)) * std::pow(r, -alpha);
    out.samples.emplace_back(r, ratio);
    radii.push_back(r);
    ratios.push_back(ratio);
  }
  out.growth_exponent = detail::loglog_slope(radii, ratios);
  out.bounded = out.growth_exponent > -0.025;
  return out;
}

}  // namespace boltzkit
