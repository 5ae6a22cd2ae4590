// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <array>
#include <utility>

#include "boltzkit/kernel.hpp"

namespace boltzkit {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a);

/// Orthonormal collision basis: k along the relative velocity, i along
/// v x v*, h = i x k. Degenerate v x v* = 0 takes a fixed completion
/// (results are then azimuth independent).
struct CollisionFrame {
  Vec3 k, i, h;
  static CollisionFrame make(const Vec3& v, const Vec3& vstar);
  Vec3 sigma(double theta, double phi) const;
};

/// v' = (v+v*)/2 + |v-v*|/2 sigma and the partner. sigma must be a unit
/// vector (1e-9 tolerance).
std::pair<Vec3, Vec3> post_collision(const Vec3& v, const Vec3& vstar,
                                     const Vec3& sigma);

struct YZ {
  double Y;            // |v|^2 cos^2(t/2) + |v*|^2 sin^2(t/2)
  double Y_reflected;  // same at pi - theta
  double Z;            // |v x v*| sin(theta)
};
/// |v'|^2 = Y + Z cos(phi), |v*'|^2 = Y_reflected - Z cos(phi).
YZ yz_decomposition(const Vec3& v, const Vec3& vstar, double theta);

struct PovznerSplit {
  double K = 0.0;        // spherical average of the Psi flux
  double minus_H = 0.0;  // <= 0 part (azimuthal mean against the convexity)
  double G = 0.0;        // Z^2-weighted positive remainder
  double residual = 0.0;
  double reconstruction_error() const { return K - (minus_H + G); }
};

/// K = int_{S^2} b_n {Psi(|v'|^2)+Psi(|v*'|^2)-Psi(|v|^2)-Psi(|v*|^2)} dsigma
/// with Psi(x) = (1+x)^p; K, -H and G evaluated by their own quadratures so
/// K = -H + G is a genuine consistency check.
PovznerSplit povzner_split_psi(const Vec3& v, const Vec3& vstar,
                               const AngularKernel& kernel_n, double p,
                               int theta_order = 64, int phi_order = 32);

/// Psi = Psi_{2n+alpha}, p = n + alpha/2.
PovznerSplit povzner_split(const Vec3& v, const Vec3& vstar,
                           const AngularKernel& kernel_n, int n, double alpha,
                           int theta_order = 64, int phi_order = 32);

/// W_delta(v) = <v>^{2n+alpha} / (1 + delta <v>^{2n+alpha}).
double weight_wdelta(const Vec3& v, double delta, int n, double alpha);

}  // namespace boltzkit
