// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/povzner.hpp"

#include <cmath>
#include <stdexcept>

#include "boltzkit/quadrature.hpp"

namespace boltzkit {

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

namespace {

Vec3 scaled(const Vec3& a, double s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}

Vec3 plus(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Vec3 minus(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 any_orthonormal(const Vec3& k) {
  // pick the axis least aligned with k
  Vec3 e = {1.0, 0.0, 0.0};
  if (std::abs(k[1]) < std::abs(k[0])) e = {0.0, 1.0, 0.0};
  if (std::abs(k[2]) < std::abs(k[0]) && std::abs(k[2]) < std::abs(k[1]))
    e = {0.0, 0.0, 1.0};
  Vec3 i = cross(k, e);
  return scaled(i, 1.0 / norm(i));
}

}  // namespace

CollisionFrame CollisionFrame::make(const Vec3& v, const Vec3& vstar) {
  CollisionFrame f;
  Vec3 rel = minus(v, vstar);
  const double rn = norm(rel);
  if (rn == 0.0)
    throw std::domain_error("CollisionFrame: v == v*, no relative velocity");
  f.k = scaled(rel, 1.0 / rn);
  Vec3 c = cross(v, vstar);
  const double cn = norm(c);
  f.i = (cn > 1e-14 * norm(v) * norm(vstar)) ? scaled(c, 1.0 / cn)
                                             : any_orthonormal(f.k);
  f.h = cross(f.i, f.k);
  return f;
}

Vec3 CollisionFrame::sigma(double theta, double phi) const {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  return {k[0] * ct + st * (h[0] * cp + i[0] * sp),
          k[1] * ct + st * (h[1] * cp + i[1] * sp),
          k[2] * ct + st * (h[2] * cp + i[2] * sp)};
}

std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& vstar,
                                     const Vec3& sigma) {
  if (std::abs(dot(sigma, sigma) - 1.0) > 1e-9)
    throw std::domain_error("post_collision: sigma is not a unit vector");
  const Vec3 centre = scaled(plus(v, vstar), 0.5);
  const double half_rel = 0.5 * norm(minus(v, vstar));
  const Vec3 offset = scaled(sigma, half_rel);
  return {plus(centre, offset), minus(centre, offset)};
}

YZ yz_decomposition(const Vec3& v, const Vec3& vstar, double theta) {
  const double c2 = std::pow(std::cos(0.5 * theta), 2);
  const double s2 = std::pow(std::sin(0.5 * theta), 2);
  const double vv = dot(v, v), ww = dot(vstar, vstar);
  YZ out;
  out.Y = vv * c2 + ww * s2;
  out.Y_reflected = vv * s2 + ww * c2;
  out.Z = norm(cross(v, vstar)) * std::sin(theta);
  return out;
}

PovznerSplit povzner_split_psi(const Vec3& v, const Vec3& vstar,
                               const AngularKernel& kernel_n, double p,
                               int theta_order, int phi_order) {
  if (!kernel_n.has_cutoff() && !kernel_n.integrable_without_cutoff())
    throw std::domain_error("povzner_split: kernel must be cutoff");

  auto psi = [p](double x) { return std::pow(1.0 + x, p); };
  auto psi2 = [p](double x) {
    return p * (p - 1.0) * std::pow(1.0 + x, p - 2.0);
  };
  const double psi_v = psi(dot(v, v));
  const double psi_w = psi(dot(vstar, vstar));

  auto run = [&](int t_order, int p_order) {
    const ThetaRule rule = make_theta_rule(kernel_n, t_order);
    const auto& [px, pw] = gauss_legendre(p_order);
    PovznerSplit s;
    for (std::size_t q = 0; q < rule.theta.size(); ++q) {
      const YZ yz = yz_decomposition(v, vstar, rule.theta[q]);
      // azimuthal integrals over [0, pi/2]; pairing phi with pi - phi turns
      // the +-Z cos(phi) terms into the full-period flux
      double flux4 = 0.0;  // int_0^pi [Psi(|v'|^2) + Psi(|v*'|^2)] dphi
      double curv4 = 0.0;  // inner integral of the Z^2 remainder
      for (std::size_t m = 0; m < px.size(); ++m) {
        const double phi = 0.25 * M_PI * (px[m] + 1.0);
        const double w = 0.25 * M_PI * pw[m];
        const double zc = yz.Z * std::cos(phi);
        flux4 += w * (psi(yz.Y + zc) + psi(yz.Y - zc) +
                      psi(yz.Y_reflected + zc) + psi(yz.Y_reflected - zc));
        const double kernel_phi =
            (std::sin(phi) - phi * std::cos(phi)) * std::sin(phi);
        curv4 += w * kernel_phi *
                 (psi2(yz.Y + zc) + psi2(yz.Y - zc) +
                  psi2(yz.Y_reflected + zc) + psi2(yz.Y_reflected - zc));
      }
      s.K += 2.0 * rule.weight[q] * (flux4 - M_PI * (psi_v + psi_w));
      s.minus_H += 2.0 * M_PI * rule.weight[q] *
                   (psi(yz.Y) + psi(yz.Y_reflected) - psi_v - psi_w);
      s.G += 2.0 * rule.weight[q] * yz.Z * yz.Z * curv4;
    }
    return s;
  };

  PovznerSplit fine = run(theta_order, phi_order);
  PovznerSplit coarse = run(theta_order / 2, phi_order / 2);
  fine.residual = std::abs(fine.K - coarse.K) +
                  std::abs(fine.minus_H - coarse.minus_H) +
                  std::abs(fine.G - coarse.G);
  return fine;
}

PovznerSplit povzner_split(const Vec3& v, const Vec3& vstar,
                           const AngularKernel& kernel_n, int n, double alpha,
                           int theta_order, int phi_order) {
  if (n < 1) throw std::domain_error("povzner_split: n >= 1");
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("povzner_split: alpha in (0, 2]");
  return povzner_split_psi(v, vstar, kernel_n, n + 0.5 * alpha, theta_order,
                           phi_order);
}

double weight_wdelta(const Vec3& v, double delta, int n, double alpha) {
  if (!(delta > 0.0)) throw std::domain_error("weight_wdelta: delta > 0");
  const double bracket = 1.0 + dot(v, v);
  const double w = std::pow(bracket, n + 0.5 * alpha);
  return w / (1.0 + delta * w);
}

}  // namespace boltzkit
