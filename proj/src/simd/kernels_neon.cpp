// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// NEON (aarch64) variants, 2-wide double lanes. Mirrors kernels_avx2.cpp.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>
#include <cstdint>

#include "boltzkit/simd/kernels.hpp"

namespace boltzkit::simd {
namespace {

double dot_neon(const double* w, const double* f, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(w + i), vld1q_f64(f + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += w[i] * f[i];
  return s;
}

double triple_sum_neon(const double* w, const double* a, const double* b,
                       std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t va = vld1q_f64(a + i);
    float64x2_t vb = vld1q_f64(b + i);
    float64x2_t t = vfmaq_f64(vaddq_f64(va, vb), va, vb);
    acc = vfmaq_f64(acc, vld1q_f64(w + i), t);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += w[i] * (a[i] + b[i] + a[i] * b[i]);
  return s;
}

double max_abs_diff_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    m = vmaxq_f64(m, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  double r = vmaxvq_f64(m);
  for (; i < n; ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

inline float64x2_t sin2(float64x2_t x) {
  const float64x2_t two_over_pi = vdupq_n_f64(0.63661977236758134308);
  const float64x2_t pio2_1 = vdupq_n_f64(1.57079632673412561417e+00);
  const float64x2_t pio2_2 = vdupq_n_f64(6.07710050650619224932e-11);
  const float64x2_t pio2_3 = vdupq_n_f64(2.02226624879595063154e-21);

  float64x2_t k = vrndnq_f64(vmulq_f64(x, two_over_pi));
  float64x2_t r = vfmsq_f64(x, k, pio2_1);
  r = vfmsq_f64(r, k, pio2_2);
  r = vfmsq_f64(r, k, pio2_3);

  int64x2_t kq = vcvtnq_s64_f64(k);
  uint64x2_t use_cos =
      vceqq_s64(vandq_s64(kq, vdupq_n_s64(1)), vdupq_n_s64(1));
  uint64x2_t negate =
      vceqq_s64(vandq_s64(kq, vdupq_n_s64(2)), vdupq_n_s64(2));

  float64x2_t r2 = vmulq_f64(r, r);

  float64x2_t ps = vdupq_n_f64(1.58969099521155010221e-10);
  ps = vfmaq_f64(vdupq_n_f64(-2.50507602534068634195e-08), ps, r2);
  ps = vfmaq_f64(vdupq_n_f64(2.75573137070700676789e-06), ps, r2);
  ps = vfmaq_f64(vdupq_n_f64(-1.98412698298579493134e-04), ps, r2);
  ps = vfmaq_f64(vdupq_n_f64(8.33333333332248946124e-03), ps, r2);
  ps = vfmaq_f64(vdupq_n_f64(-1.66666666666666324348e-01), ps, r2);
  float64x2_t sinr = vfmaq_f64(r, vmulq_f64(r, r2), ps);

  float64x2_t pc = vdupq_n_f64(-1.13596475577881948265e-11);
  pc = vfmaq_f64(vdupq_n_f64(2.08757232129817482790e-09), pc, r2);
  pc = vfmaq_f64(vdupq_n_f64(-2.75573143513906633035e-07), pc, r2);
  pc = vfmaq_f64(vdupq_n_f64(2.48015872894767294178e-05), pc, r2);
  pc = vfmaq_f64(vdupq_n_f64(-1.38888888888741095749e-03), pc, r2);
  pc = vfmaq_f64(vdupq_n_f64(4.16666666666666019037e-02), pc, r2);
  float64x2_t cosr = vfmaq_f64(vfmsq_f64(vdupq_n_f64(1.0), r2, vdupq_n_f64(0.5)),
                               vmulq_f64(r2, r2), pc);

  float64x2_t res = vbslq_f64(use_cos, cosr, sinr);
  return vbslq_f64(negate, vnegq_f64(res), res);
}

double sinc_delta_sum_neon(double r, const double* u, std::size_t n) {
  const float64x2_t vr = vdupq_n_f64(r);
  const float64x2_t small = vdupq_n_f64(1e-6);
  const float64x2_t big = vdupq_n_f64(1e6);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t x = vmulq_f64(vr, vld1q_f64(u + i));
    float64x2_t ax = vabsq_f64(x);
    float64x2_t x2 = vmulq_f64(x, x);
    float64x2_t series = vmulq_f64(
        vmulq_f64(x2, vdupq_n_f64(-1.0 / 6.0)),
        vfmsq_f64(vdupq_n_f64(1.0), x2, vdupq_n_f64(0.05)));
    uint64x2_t is_small = vcltq_f64(ax, small);
    float64x2_t xs = vbslq_f64(is_small, vdupq_n_f64(1.0), x);
    float64x2_t main = vsubq_f64(vdivq_f64(sin2(xs), xs), vdupq_n_f64(1.0));
    float64x2_t v = vbslq_f64(is_small, series, main);
    uint64x2_t too_big = vcgtq_f64(ax, big);
    if (vgetq_lane_u64(too_big, 0) | vgetq_lane_u64(too_big, 1)) {
      double xx[2], vv[2];
      vst1q_f64(xx, x);
      vst1q_f64(vv, v);
      if (vgetq_lane_u64(too_big, 0)) vv[0] = std::sin(xx[0]) / xx[0] - 1.0;
      if (vgetq_lane_u64(too_big, 1)) vv[1] = std::sin(xx[1]) / xx[1] - 1.0;
      v = vld1q_f64(vv);
    }
    acc = vaddq_f64(acc, v);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double x = r * u[i];
    if (std::abs(x) < 1e-6) {
      const double x2 = x * x;
      s += -x2 / 6.0 * (1.0 - x2 / 20.0);
    } else {
      s += std::sin(x) / x - 1.0;
    }
  }
  return s;
}

void hermite_gather_neon(const std::int32_t* idx, const double* c,
                         const double* val, const double* slope, double* out,
                         std::size_t n) {
  // no gather on NEON; the win here is the fused basis combination
  for (std::size_t k = 0; k < n; ++k) {
    const std::int32_t j = idx[k];
    float64x2_t cv = vld1q_f64(c + 4 * k);
    float64x2_t cd = vld1q_f64(c + 4 * k + 2);
    float64x2_t vv = vld1q_f64(val + j);
    float64x2_t dd = vld1q_f64(slope + j);
    out[k] = vaddvq_f64(vfmaq_f64(vmulq_f64(cv, vv), cd, dd));
  }
}

}  // namespace

const Backend* neon_backend() {
  static const Backend b{"neon",          dot_neon,
                         triple_sum_neon, max_abs_diff_neon,
                         sinc_delta_sum_neon, hermite_gather_neon};
  return &b;
}

}  // namespace boltzkit::simd

#endif  // __aarch64__
