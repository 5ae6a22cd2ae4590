// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace boltzkit {

/// Radial grid: r[0] = 0, a geometric section resolving power-law behaviour
/// near the origin, then a uniform section out to r_max.
class RadialGrid {
 public:
  struct Params {
    double r_max = 20.0;
    double r_min_factor = 1e-6;   // first positive node = r_min_factor * r_max
    double join_factor = 1.0 / 54.0;  // geometric section ends here * r_max
    std::size_t geometric_nodes = 169;
    std::size_t uniform_nodes = 884;
  };

  static RadialGrid make(const Params& p);
  static RadialGrid make() { return make(Params{}); }
  static RadialGrid from_nodes(std::vector<double> nodes);  // nodes[0] must be 0

  std::size_t size() const { return r_.size(); }
  double r_max() const { return r_.back(); }
  double operator[](std::size_t i) const { return r_[i]; }
  std::span<const double> radii() const { return r_; }
  std::size_t geometric_count() const { return geometric_count_; }

  /// Largest j with r[j] <= x (and j+1 < size), for x in [0, r_max].
  std::size_t bracket(double x) const;

  bool operator==(const RadialGrid& o) const { return r_ == o.r_; }

 private:
  std::vector<double> r_;
  std::size_t geometric_count_ = 0;
};

/// Weights of the m-th derivative at point z from the given nodes
/// (Fornberg's algorithm). weights[k][j] is the weight of f(x[j]) in the
/// k-th derivative, k = 0..m.
std::vector<std::vector<double>> fornberg_weights(double z,
                                                  std::span<const double> x,
                                                  int m);

/// First-derivative estimates at every grid node from 5-point stencils
/// (one sided at the ends). Exact for polynomials of degree <= 4.
class SlopeOperator {
 public:
  explicit SlopeOperator(const RadialGrid& grid);
  void apply(std::span<const double> values, std::span<double> slopes) const;
  std::vector<double> apply(const std::vector<double>& values) const;

 private:
  std::size_t n_;
  std::vector<std::int32_t> first_;   // first node of each row's stencil
  std::vector<double> w_;             // 5 weights per row
};

/// Cubic Hermite interpolation on a radial grid with slopes supplied by a
/// SlopeOperator: C1, 4th-order accurate on smooth data, never extrapolates.
class HermiteInterpolant {
 public:
  HermiteInterpolant(const RadialGrid& grid, std::vector<double> values);
  double operator()(double x) const;
  const std::vector<double>& values() const { return v_; }
  const std::vector<double>& slopes() const { return d_; }

 private:
  const RadialGrid& grid_;
  std::vector<double> v_, d_;
};

/// Precomputed evaluation plan: fixed target radii, reusable against
/// changing node values. Evaluation runs through the SIMD hermite_gather
/// kernel.
class HermitePlan {
 public:
  HermitePlan(const RadialGrid& grid, std::span<const double> targets);
  std::size_t size() const { return idx_.size(); }
  /// out[k] = interpolant at target k, given node values and node slopes.
  void eval(std::span<const double> values, std::span<const double> slopes,
            std::span<double> out) const;

 private:
  std::vector<std::int32_t> idx_;
  std::vector<double> coef_;  // 4 per target
};

/// Evaluate the cubic Hermite piece directly (shared by interpolant & plan).
double hermite_piece(double r0, double r1, double v0, double v1, double d0,
                     double d1, double x);

}  // namespace boltzkit
