// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// Test-only oracles, deliberately independent of the library's quadrature
// and interpolation machinery: adaptive Simpson, dense scans, and a tiny
// deterministic generator.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double whole,
                                   double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(f, a, m), right = simpson(f, m, b);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson; independent of the library's Gauss-Legendre path.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int depth = 48) {
  return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, depth);
}

/// sup of f over a dense log-spaced scan of [lo, hi].
inline double dense_log_sup(const std::function<double(double)>& f, double lo,
                            double hi, int n = 20000) {
  double best = 0.0;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) {
    const double r = std::exp(a + (b - a) * i / double(n - 1));
    best = std::max(best, f(r));
  }
  return best;
}

/// splitmix64-based uniform stream for property tests (independent of the
/// library Rng so a bug there cannot mask itself).
struct TestRng {
  std::uint64_t s;
  explicit TestRng(std::uint64_t seed) : s(seed) {}
  double operator()() {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    return (double(z >> 11) + 0.5) * 0x1.0p-53;
  }
};

}  // namespace oracle
