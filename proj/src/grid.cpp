// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "boltzkit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boltzkit/simd/kernels.hpp"

namespace boltzkit {

RadialGrid RadialGrid::make(const Params& p) {
  if (p.r_max <= 0 || p.geometric_nodes < 8 || p.uniform_nodes < 8)
    throw std::invalid_argument("RadialGrid: bad parameters");
  RadialGrid g;
  const double r_min = p.r_min_factor * p.r_max;
  const double r_join = p.join_factor * p.r_max;
  g.r_.push_back(0.0);
  const double q =
      std::exp(std::log(r_join / r_min) / double(p.geometric_nodes - 1));
  double r = r_min;
  for (std::size_t i = 0; i < p.geometric_nodes; ++i, r *= q)
    g.r_.push_back(r);
  g.r_.back() = r_join;
  g.geometric_count_ = p.geometric_nodes;
  const double h = (p.r_max - r_join) / double(p.uniform_nodes);
  for (std::size_t i = 1; i <= p.uniform_nodes; ++i)
    g.r_.push_back(r_join + h * double(i));
  g.r_.back() = p.r_max;
  return g;
}

RadialGrid RadialGrid::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 6 || nodes.front() != 0.0)
    throw std::invalid_argument("RadialGrid: need r[0] = 0 and >= 6 nodes");
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (nodes[i] <= nodes[i - 1])
      throw std::invalid_argument("RadialGrid: nodes must increase strictly");
  RadialGrid g;
  g.r_ = std::move(nodes);
  g.geometric_count_ = 0;
  return g;
}

std::size_t RadialGrid::bracket(double x) const {
  if (x < 0.0 || x > r_.back() * (1.0 + 1e-12))
    throw std::domain_error("RadialGrid::bracket: x outside [0, r_max]");
  auto it = std::upper_bound(r_.begin(), r_.end(), x);
  std::size_t j = (it == r_.begin()) ? 0 : std::size_t(it - r_.begin()) - 1;
  if (j + 1 >= r_.size()) j = r_.size() - 2;
  return j;
}

std::vector<std::vector<double>> fornberg_weights(double z,
                                                  std::span<const double> x,
                                                  int m) {
  const int n = int(x.size()) - 1;
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i <= n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

SlopeOperator::SlopeOperator(const RadialGrid& grid) : n_(grid.size()) {
  if (n_ < 5) throw std::invalid_argument("SlopeOperator: grid too small");
  first_.resize(n_);
  w_.resize(5 * n_);
  const auto r = grid.radii();
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t lo = (i < 2) ? 0 : std::min(i - 2, n_ - 5);
    first_[i] = std::int32_t(lo);
    auto c = fornberg_weights(r[i], r.subspan(lo, 5), 1);
    for (int k = 0; k < 5; ++k) w_[5 * i + k] = c[1][k];
  }
}

void SlopeOperator::apply(std::span<const double> values,
                          std::span<double> slopes) const {
  for (std::size_t i = 0; i < n_; ++i) {
    const double* w = &w_[5 * i];
    const double* v = values.data() + first_[i];
    slopes[i] = w[0] * v[0] + w[1] * v[1] + w[2] * v[2] + w[3] * v[3] +
                w[4] * v[4];
  }
}

std::vector<double> SlopeOperator::apply(
    const std::vector<double>& values) const {
  std::vector<double> out(n_);
  apply(values, out);
  return out;
}

double hermite_piece(double r0, double r1, double v0, double v1, double d0,
                     double d1, double x) {
  const double h = r1 - r0;
  const double t = (x - r0) / h;
  const double t1 = 1.0 - t;
  const double h00 = (1.0 + 2.0 * t) * t1 * t1;
  const double h10 = t * t1 * t1;
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  return h00 * v0 + h01 * v1 + h * (h10 * d0 + h11 * d1);
}

HermiteInterpolant::HermiteInterpolant(const RadialGrid& grid,
                                       std::vector<double> values)
    : grid_(grid), v_(std::move(values)) {
  if (v_.size() != grid.size())
    throw std::invalid_argument("HermiteInterpolant: size mismatch");
  d_ = SlopeOperator(grid).apply(v_);
}

double HermiteInterpolant::operator()(double x) const {
  const std::size_t j = grid_.bracket(x);
  return hermite_piece(grid_[j], grid_[j + 1], v_[j], v_[j + 1], d_[j],
                       d_[j + 1], x);
}

HermitePlan::HermitePlan(const RadialGrid& grid,
                         std::span<const double> targets) {
  idx_.resize(targets.size());
  coef_.resize(4 * targets.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const std::size_t j = grid.bracket(targets[k]);
    const double h = grid[j + 1] - grid[j];
    const double t = (targets[k] - grid[j]) / h;
    const double t1 = 1.0 - t;
    idx_[k] = std::int32_t(j);
    coef_[4 * k + 0] = (1.0 + 2.0 * t) * t1 * t1;
    coef_[4 * k + 1] = t * t * (3.0 - 2.0 * t);
    coef_[4 * k + 2] = h * t * t1 * t1;
    coef_[4 * k + 3] = h * t * t * (t - 1.0);
  }
}

void HermitePlan::eval(std::span<const double> values,
                       std::span<const double> slopes,
                       std::span<double> out) const {
  simd::hermite_gather(idx_.data(), coef_.data(), values.data(), slopes.data(),
                       out.data(), idx_.size());
}

}  // namespace boltzkit
