// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace boltzkit::simd {

/// Hot inner-loop kernels. Every entry has a scalar reference implementation
/// plus (where the target supports it) an AVX2 or NEON variant selected at
/// runtime. The variants are equivalence-tested against the scalar reference.
struct Backend {
  const char* name;

  /// sum_i w[i] * f[i]
  double (*dot)(const double* w, const double* f, std::size_t n);

  /// sum_i w[i] * (a[i] + b[i] + a[i]*b[i])
  /// (collision reduction: w*( (1+a)(1+b) - 1 ) without forming the products)
  double (*triple_sum)(const double* w, const double* a, const double* b,
                       std::size_t n);

  /// max_i |a[i] - b[i]|
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);

  /// sum_i ( sin(r*u[i])/(r*u[i]) - 1 ), with the x -> 0 limit handled.
  double (*sinc_delta_sum)(double r, const double* u, std::size_t n);

  /// out[k] = c[4k]*val[j] + c[4k+1]*val[j+1] + c[4k+2]*slope[j] + c[4k+3]*slope[j+1]
  /// with j = idx[k]. Cubic Hermite evaluation with precomputed basis weights.
  void (*hermite_gather)(const std::int32_t* idx, const double* c,
                         const double* val, const double* slope, double* out,
                         std::size_t n);
};

const Backend& scalar_backend();
const Backend* avx2_backend();  // nullptr when not compiled in or not supported
const Backend* neon_backend();

/// The backend picked at startup (honours BOLTZKIT_SIMD=scalar|avx2|neon).
const Backend& active_backend();

/// Force a backend by name ("auto" restores runtime detection).
/// Returns false if the request cannot be satisfied on this machine.
bool set_active_backend(std::string_view name);

/// Names of every backend usable on this machine.
std::vector<std::string> available_backends();

inline double dot(const double* w, const double* f, std::size_t n) {
  return active_backend().dot(w, f, n);
}
inline double triple_sum(const double* w, const double* a, const double* b,
                         std::size_t n) {
  return active_backend().triple_sum(w, a, b, n);
}
inline double max_abs_diff(const double* a, const double* b, std::size_t n) {
  return active_backend().max_abs_diff(a, b, n);
}
inline double sinc_delta_sum(double r, const double* u, std::size_t n) {
  return active_backend().sinc_delta_sum(r, u, n);
}
inline void hermite_gather(const std::int32_t* idx, const double* c,
                           const double* val, const double* slope, double* out,
                           std::size_t n) {
  active_backend().hermite_gather(idx, c, val, slope, out, n);
}

}  // namespace boltzkit::simd
