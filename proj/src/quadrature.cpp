// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace boltzkit {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

std::pair<std::vector<double>, std::vector<double>> make_gl(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(n, z);
      double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    auto [p, dp] = legendre(n, z);
    (void)p;
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

struct Interval {
  double a, b, estimate;
  int depth;
};

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(
    int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>>
      cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
  return it->second;
}

std::vector<double> lobatto_nodes(int m) {
  if (m < 2) throw std::invalid_argument("lobatto_nodes: m >= 2 required");
  // interior nodes are the roots of P'_{m-1}
  std::vector<double> nodes{-1.0};
  int n = m - 1;
  for (int i = 1; i < n; ++i) {
    // Chebyshev-like initial guess, then Newton on P'_n
    double z = std::cos(M_PI * i / n);
    for (int it = 0; it < 200; ++it) {
      auto [p, dp] = legendre(n, z);
      (void)p;
      // second derivative from Legendre ODE: (1-x^2)P'' = 2xP' - n(n+1)P
      auto [pn, dpn] = legendre(n, z);
      double ddp = (2.0 * z * dpn - n * (n + 1.0) * pn) / (1.0 - z * z);
      double dz = dp / ddp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    nodes.push_back(-z);
  }
  nodes.push_back(1.0);
  std::sort(nodes.begin(), nodes.end());
  for (double& t : nodes) t = 0.5 * (t + 1.0);
  nodes.front() = 0.0;
  nodes.back() = 1.0;
  return nodes;
}

double integrate_gl(const std::function<double(double)>& f, double a, double b,
                    int order) {
  const auto& [x, w] = gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    acc += w[i] * f(mid + half * x[i]);
  return acc * half;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth) {
  QuadratureResult res;
  if (a == b) return res;
  const double total_len = b - a;
  std::vector<Interval> stack;
  auto gl15 = [&](double lo, double hi) {
    res.evaluations += 15;
    return integrate_gl(f, lo, hi, 15);
  };
  stack.push_back({a, b, gl15(a, b), 0});
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (iv.a + iv.b);
    if (!(mid > iv.a && mid < iv.b)) {  // interval hit rounding resolution
      res.value += iv.estimate;
      continue;
    }
    const double left = gl15(iv.a, mid);
    const double right = gl15(mid, iv.b);
    const double refined = left + right;
    const double diff = std::abs(refined - iv.estimate);
    const double share = abs_tol * ((iv.b - iv.a) / total_len);
    if (diff <= std::max(share, 1e-4 * abs_tol) || iv.depth >= max_depth) {
      res.value += refined;
      res.error += diff / 15.0;  // GL15 pairs converge much faster than this
      if (iv.depth >= max_depth && diff > share) {
        res.error += diff;
        if (diff > abs_tol) res.converged = false;
      }
    } else {
      stack.push_back({iv.a, mid, left, iv.depth + 1});
      stack.push_back({mid, iv.b, right, iv.depth + 1});
    }
  }
  return res;
}

namespace {

// int_R^inf sin(ar) r^-q dr and the cosine analogue, asymptotic expansion
// with a remainder bounded by |int sin(ar) r^-q'| <= R^(1-q')/(q'-1).
TailResult sin_tail(double a, double q, double R, int depth);

TailResult cos_tail(double a, double q, double R, int depth) {
  if (depth == 0) return {0.0, std::pow(R, 1.0 - q) / (q - 1.0)};
  TailResult inner = sin_tail(a, q + 1.0, R, depth - 1);
  TailResult out;
  out.value = -std::sin(a * R) * std::pow(R, -q) / a + (q / a) * inner.value;
  out.bound = (q / a) * inner.bound;
  return out;
}

TailResult sin_tail(double a, double q, double R, int depth) {
  if (depth == 0) return {0.0, std::pow(R, 1.0 - q) / (q - 1.0)};
  TailResult inner = cos_tail(a, q + 1.0, R, depth - 1);
  TailResult out;
  out.value = std::cos(a * R) * std::pow(R, -q) / a - (q / a) * inner.value;
  out.bound = (q / a) * inner.bound;
  return out;
}

}  // namespace

TailResult sinc_power_tail(double a, double p, double R) {
  if (a <= 0.0 || p <= 1.0 || R <= 0.0)
    throw std::invalid_argument("sinc_power_tail: need a>0, p>1, R>0");
  TailResult t = sin_tail(a, p + 1.0, R, 8);
  t.value /= a;
  t.bound /= a;
  return t;
}

}  // namespace boltzkit
