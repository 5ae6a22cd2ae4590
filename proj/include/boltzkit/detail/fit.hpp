// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <span>

namespace boltzkit::detail {

/// Least-squares slope of log(v) against log(t); entries with t or v <= 0
/// are skipped. Returns 0 when fewer than two usable points remain.
inline double loglog_slope(std::span<const double> t,
                           std::span<const double> v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(v[i] > 0.0) || !(t[i] > 0.0)) continue;
    const double x = std::log(t[i]), y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace boltzkit::detail
