// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/moments.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "boltzkit/detail/fit.hpp"
#include "boltzkit/errors.hpp"
#include "boltzkit/quadrature.hpp"

namespace boltzkit {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

LevyConstant levy_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw DivergenceError("levy_constant diverges outside alpha in (0, 2)");

  static std::map<double, LevyConstant> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(alpha);
    if (it != cache.end()) return it->second;
  }

  const double r_lo = 1e-3, R = 60.0;
  auto integrand = [&](double r) {
    const double d = (r < 1e-3)
                         ? r * r / 6.0 * (1.0 - r * r / 20.0)
                         : 1.0 - std::sin(r) / r;
    return d * std::pow(r, -1.0 - alpha);
  };
  auto bulk = integrate_adaptive(integrand, r_lo, R, 1e-11);
  // series head: (1-sinc) = r^2/6 - r^4/120 + O(r^6)
  const double head = std::pow(r_lo, 2.0 - alpha) / (6.0 * (2.0 - alpha)) -
                      std::pow(r_lo, 4.0 - alpha) / (120.0 * (4.0 - alpha));
  auto tail = sinc_power_tail(1.0, 1.0 + alpha, R);
  LevyConstant c;
  c.value = 4.0 * M_PI *
            (bulk.value + head + std::pow(R, -alpha) / alpha - tail.value);
  c.error = 4.0 * M_PI * (bulk.error + tail.bound +
                          std::pow(r_lo, 6.0 - alpha) / (5040.0 * (6.0 - alpha)));

  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(alpha, c);
  return c;
}

namespace {

MomentResult divide_by_levy(const MNormResult& m, double alpha,
                            double extra_error) {
  const auto c = levy_constant(alpha);
  MomentResult out;
  if (m.diverged) {
    out.infinite = true;
    out.value = kInf;
    return out;
  }
  out.inconclusive = m.inconclusive;
  out.value = m.value / c.value;
  out.error = (m.quad_error + extra_error) / c.value +
              out.value * c.error / c.value;
  return out;
}

}  // namespace

MomentResult moment_from_charfn(const AnalyticCharFn& phi, double alpha) {
  return divide_by_levy(mnorm_re(phi, alpha), alpha, 0.0);
}

MomentResult moment_from_charfn(const RadialCharFn& phi, double alpha) {
  auto m = mnorm_re(phi, alpha);
  // The sampled norm stops at r_max. When phi has visibly decayed by the
  // edge of the grid, extend with the vanishing-tail value
  // 4 pi r_max^-alpha / alpha (exact up to sup_{r>r_max} |phi|, which the
  // last nodes estimate); otherwise the full tail bound goes into the error.
  const auto& g = phi.grid();
  double tail_sup = 0.0;
  for (std::size_t i = g.size() - g.size() / 10; i < g.size(); ++i)
    tail_sup = std::max(tail_sup, std::abs(1.0 + phi.delta_re()[i]));
  double extra_error = m.tail_bound;
  if (!m.diverged && tail_sup < 1e-6) {
    const double tail = 4.0 * M_PI * std::pow(g.r_max(), -alpha) / alpha;
    m.value += tail;
    extra_error = 2.0 * tail_sup * tail + m.quad_error;
  }
  return divide_by_levy(m, alpha, extra_error);
}

SecondMomentResult second_moment(const RadialCharFn& phi) {
  if (!phi.is_real())
    throw std::domain_error("second_moment: phi must be real radial");
  SecondMomentResult out;
  const auto& g = phi.grid();
  auto d = phi.delta_re();
  std::vector<double> r(5), v(5), av(5);
  double vmax = 0.0;
  for (int i = 0; i < 5; ++i) {
    r[i] = g[i + 1];
    v[i] = d[i + 1];
    av[i] = std::abs(v[i]);
    vmax = std::max(vmax, av[i]);
  }
  if (vmax < 1e-300) return out;  // flat: zero second moment
  out.fit_slope = detail::loglog_slope(r, av);
  if (out.fit_slope < 1.9) {
    out.infinite = true;
    out.value = kInf;
    return out;
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 5; ++i) {
    num += v[i] * r[i] * r[i];
    den += r[i] * r[i] * r[i] * r[i];
  }
  out.value = -6.0 * num / den;
  return out;
}

RadialCharFn LiftResult::normalized() const {
  std::vector<double> delta(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    delta[i] = psi[i] / psi0 - 1.0;
  delta[0] = 0.0;
  return RadialCharFn(grid, std::move(delta));
}

namespace {

// one application of (1 - Laplacian) to a gaussian polynomial factor
// p(u) e^{-s2 u / 2}, u = r^2; Laplacian = 4u d^2/du^2 + 6 d/du
std::vector<double> lift_gaussian_poly(const std::vector<double>& p,
                                       double s2) {
  const std::size_t n = p.size();
  std::vector<double> q(n + 1, 0.0);
  auto at = [&](std::size_t k) { return k < n ? p[k] : 0.0; };
  for (std::size_t k = 0; k <= n; ++k) {
    const double dk = (k + 1.0) * (4.0 * k + 6.0) * at(k + 1) -
                      s2 * (4.0 * k + 3.0) * at(k) +
                      s2 * s2 * (k >= 1 ? at(k - 1) : 0.0);
    q[k] = at(k) - dk;
  }
  while (q.size() > 1 && q.back() == 0.0) q.pop_back();
  return q;
}

double poly_eval(const std::vector<double>& p, double u) {
  double acc = 0.0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * u + p[k];
  return acc;
}

// radial Laplacian of sampled values by Fornberg stencils; even mirror
// through r = 0 on the left edge
std::vector<double> radial_laplacian_fd(const RadialGrid& g,
                                        const std::vector<double>& v,
                                        int half) {
  const int n = int(g.size());
  const int width = 2 * half + 1;
  std::vector<double> out(n);
  std::vector<double> xs(width), vs(width);
  for (int i = 0; i < n; ++i) {
    if (i < half) {
      // window centred on node i with mirrored negative indices (even
      // extension through the origin)
      for (int k = 0; k < width; ++k) {
        const int j = i + k - half;
        if (j < 0) {
          xs[k] = -g[std::size_t(-j)];
          vs[k] = v[std::size_t(-j)];
        } else {
          xs[k] = g[std::size_t(j)];
          vs[k] = v[std::size_t(j)];
        }
      }
    } else {
      const int lo = std::min(i - half, n - width);
      for (int k = 0; k < width; ++k) {
        xs[k] = g[std::size_t(lo + k)];
        vs[k] = v[std::size_t(lo + k)];
      }
    }
    auto w = fornberg_weights(g[std::size_t(i)], xs, 2);
    double d1 = 0.0, d2 = 0.0;
    for (int k = 0; k < width; ++k) {
      d1 += w[1][std::size_t(k)] * vs[k];
      d2 += w[2][std::size_t(k)] * vs[k];
    }
    out[std::size_t(i)] = (i == 0) ? 3.0 * d2 : d2 + 2.0 / g[std::size_t(i)] * d1;
  }
  return out;
}

}  // namespace

LiftResult laplacian_lift(const AnalyticCharFn& phi, int n,
                          const RadialGrid& grid) {
  if (n < 1) throw std::domain_error("laplacian_lift: n >= 1");
  using F = AnalyticCharFn::Family;
  LiftResult out;
  out.grid = grid;
  out.psi.assign(grid.size(), 0.0);
  for (const auto& c : phi.components()) {
    switch (c.family) {
      case F::gaussian: {
        std::vector<double> p{1.0};
        for (int k = 0; k < n; ++k) p = lift_gaussian_poly(p, c.p1);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double u = grid[i] * grid[i];
          out.psi[i] += c.weight * poly_eval(p, u) * std::exp(-0.5 * c.p1 * u);
        }
        break;
      }
      case F::dirac_pair: {
        // sinc(ar) is a radial Laplace eigenfunction: (1-L)^n -> (1+a^2)^n
        const double factor = std::pow(1.0 + c.p1 * c.p1, n);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double x = c.p1 * grid[i];
          const double sinc = (x == 0.0) ? 1.0 : std::sin(x) / x;
          out.psi[i] += c.weight * factor * sinc;
        }
        break;
      }
      case F::point_mass:
        for (std::size_t i = 0; i < grid.size(); ++i) out.psi[i] += c.weight;
        break;
      case F::stable:
        throw NumericError(
            "laplacian_lift: stable component has unbounded curvature at 0",
            kInf);
      case F::shifted_dirac:
        throw std::invalid_argument(
            "laplacian_lift: shifted_dirac is not radial");
    }
  }
  out.psi0 = out.psi[0];
  return out;
}

LiftResult laplacian_lift(const RadialCharFn& phi, int n, double tolerance) {
  if (n < 1) throw std::domain_error("laplacian_lift: n >= 1");
  if (!phi.is_real())
    throw std::domain_error("laplacian_lift: phi must be real radial");
  LiftResult out;
  out.grid = phi.grid();
  std::vector<double> c7(phi.delta_re().begin(), phi.delta_re().end());
  for (double& x : c7) x += 1.0;
  std::vector<double> c5 = c7;
  for (int k = 0; k < n; ++k) {
    auto lap7 = radial_laplacian_fd(out.grid, c7, 3);
    auto lap5 = radial_laplacian_fd(out.grid, c5, 2);
    for (std::size_t i = 0; i < c7.size(); ++i) {
      c7[i] -= lap7[i];
      c5[i] -= lap5[i];
    }
  }
  double scale = 0.0, err = 0.0;
  for (std::size_t i = 0; i < c7.size(); ++i) {
    scale = std::max(scale, std::abs(c7[i]));
    err = std::max(err, std::abs(c7[i] - c5[i]));
  }
  out.derivative_error = err;
  if (err > tolerance * std::max(1.0, scale))
    throw NumericError("laplacian_lift: derivative estimates disagree", err);
  out.psi = std::move(c7);
  out.psi0 = out.psi[0];
  return out;
}

}  // namespace boltzkit
