// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include <cmath>
#include <cstdlib>

#include "boltzkit/simd/kernels.hpp"

namespace boltzkit::simd {
namespace {

double dot_scalar(const double* w, const double* f, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * f[i];
  return acc;
}

double triple_sum_scalar(const double* w, const double* a, const double* b,
                         std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * (a[i] + b[i] + a[i] * b[i]);
  return acc;
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double sinc_delta_sum_scalar(double r, const double* u, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = r * u[i];
    if (std::abs(x) < 1e-6) {
      const double x2 = x * x;
      acc += -x2 / 6.0 * (1.0 - x2 / 20.0);
    } else {
      acc += std::sin(x) / x - 1.0;
    }
  }
  return acc;
}

void hermite_gather_scalar(const std::int32_t* idx, const double* c,
                           const double* val, const double* slope, double* out,
                           std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const std::int32_t j = idx[k];
    const double* ck = c + 4 * k;
    out[k] = ck[0] * val[j] + ck[1] * val[j + 1] + ck[2] * slope[j] +
             ck[3] * slope[j + 1];
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar",          dot_scalar,
                         triple_sum_scalar, max_abs_diff_scalar,
                         sinc_delta_sum_scalar, hermite_gather_scalar};
  return b;
}

}  // namespace boltzkit::simd
