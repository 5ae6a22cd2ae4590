// Copyright 2026 the boltzkit developers. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

// AVX2+FMA variants. Compiled only on x86_64; callers go through the runtime
// dispatch in kernels.cpp, which checks cpu support before handing out this
// backend.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "boltzkit/simd/kernels.hpp"

namespace boltzkit::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, sh));
}

double dot_avx2(const double* w, const double* f, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * f[i];
  return s;
}

double triple_sum_avx2(const double* w, const double* a, const double* b,
                       std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d va = _mm256_loadu_pd(a + i);
    __m256d vb = _mm256_loadu_pd(b + i);
    // a + b + a*b
    __m256d t = _mm256_fmadd_pd(va, vb, _mm256_add_pd(va, vb));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), t, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * (a[i] + b[i] + a[i] * b[i]);
  return s;
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    m = _mm256_max_pd(m, _mm256_andnot_pd(signmask, d));
  }
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

// sin on 4 lanes, Cody-Waite reduction + fdlibm minimax kernels.
// Accurate to a few ulp for |x| <= 1e6; larger lanes are handled by the
// caller with a scalar fallback.
inline __m256d sin4(__m256d x) {
  const __m256d two_over_pi = _mm256_set1_pd(0.63661977236758134308);
  const __m256d pio2_1 = _mm256_set1_pd(1.57079632673412561417e+00);
  const __m256d pio2_2 = _mm256_set1_pd(6.07710050650619224932e-11);
  const __m256d pio2_3 = _mm256_set1_pd(2.02226624879595063154e-21);

  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, two_over_pi),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(k, pio2_1, x);
  r = _mm256_fnmadd_pd(k, pio2_2, r);
  r = _mm256_fnmadd_pd(k, pio2_3, r);

  __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i kq = _mm256_cvtepi32_epi64(k32);
  __m256i one = _mm256_set1_epi64x(1);
  __m256i two = _mm256_set1_epi64x(2);
  __m256d use_cos = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(kq, one), one));
  __m256d negate = _mm256_castsi256_pd(
      _mm256_cmpeq_epi64(_mm256_and_si256(kq, two), two));

  __m256d r2 = _mm256_mul_pd(r, r);

  // sin kernel: r + r*r2*(S1 + r2*(S2 + ... ))
  __m256d ps = _mm256_set1_pd(1.58969099521155010221e-10);
  ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-2.50507602534068634195e-08));
  ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(2.75573137070700676789e-06));
  ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-1.98412698298579493134e-04));
  ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(8.33333333332248946124e-03));
  ps = _mm256_fmadd_pd(ps, r2, _mm256_set1_pd(-1.66666666666666324348e-01));
  __m256d sinr = _mm256_fmadd_pd(_mm256_mul_pd(r, r2), ps, r);

  // cos kernel: 1 - r2/2 + r2*r2*(C1 + r2*(C2 + ...))
  __m256d pc = _mm256_set1_pd(-1.13596475577881948265e-11);
  pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(2.08757232129817482790e-09));
  pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-2.75573143513906633035e-07));
  pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(2.48015872894767294178e-05));
  pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(-1.38888888888741095749e-03));
  pc = _mm256_fmadd_pd(pc, r2, _mm256_set1_pd(4.16666666666666019037e-02));
  __m256d cosr = _mm256_fmadd_pd(
      _mm256_mul_pd(r2, r2), pc,
      _mm256_fnmadd_pd(r2, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0)));

  __m256d res = _mm256_blendv_pd(sinr, cosr, use_cos);
  return _mm256_blendv_pd(res, _mm256_sub_pd(_mm256_setzero_pd(), res),
                          negate);
}

double sinc_delta_sum_avx2(double r, const double* u, std::size_t n) {
  const __m256d vr = _mm256_set1_pd(r);
  const __m256d small = _mm256_set1_pd(1e-6);
  const __m256d big = _mm256_set1_pd(1e6);
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  alignas(32) double lanes[4];
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_mul_pd(vr, _mm256_loadu_pd(u + i));
    __m256d ax = _mm256_andnot_pd(signmask, x);
    __m256d x2 = _mm256_mul_pd(x, x);
    // series branch: -x2/6 * (1 - x2/20)
    __m256d series = _mm256_mul_pd(
        _mm256_mul_pd(x2, _mm256_set1_pd(-1.0 / 6.0)),
        _mm256_fnmadd_pd(x2, _mm256_set1_pd(0.05), _mm256_set1_pd(1.0)));
    // main branch: sin(x)/x - 1 (x clamped away from 0 to keep the
    // division benign; the result is blended out for small lanes)
    __m256d xs = _mm256_blendv_pd(x, _mm256_set1_pd(1.0),
                                  _mm256_cmp_pd(ax, small, _CMP_LT_OQ));
    __m256d main = _mm256_sub_pd(_mm256_div_pd(sin4(xs), xs),
                                 _mm256_set1_pd(1.0));
    __m256d v = _mm256_blendv_pd(main, series,
                                 _mm256_cmp_pd(ax, small, _CMP_LT_OQ));
    __m256d too_big = _mm256_cmp_pd(ax, big, _CMP_GT_OQ);
    if (_mm256_movemask_pd(too_big)) {
      _mm256_store_pd(lanes, x);
      alignas(32) double vv[4];
      _mm256_store_pd(vv, v);
      int mask = _mm256_movemask_pd(too_big);
      for (int l = 0; l < 4; ++l)
        if (mask & (1 << l)) vv[l] = std::sin(lanes[l]) / lanes[l] - 1.0;
      v = _mm256_load_pd(vv);
    }
    acc = _mm256_add_pd(acc, v);
  }
  double s = hsum(acc);
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

void hermite_gather_avx2(const std::int32_t* idx, const double* c,
                         const double* val, const double* slope, double* out,
                         std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m128i j = _mm_loadu_si128(reinterpret_cast<const __m128i*>(idx + k));
    __m128i j1 = _mm_add_epi32(j, _mm_set1_epi32(1));
    __m256d v0 = _mm256_i32gather_pd(val, j, 8);
    __m256d v1 = _mm256_i32gather_pd(val, j1, 8);
    __m256d d0 = _mm256_i32gather_pd(slope, j, 8);
    __m256d d1 = _mm256_i32gather_pd(slope, j1, 8);
    // transpose the 4x4 block of basis weights
    __m256d c0 = _mm256_loadu_pd(c + 4 * k);
    __m256d c1 = _mm256_loadu_pd(c + 4 * k + 4);
    __m256d c2 = _mm256_loadu_pd(c + 4 * k + 8);
    __m256d c3 = _mm256_loadu_pd(c + 4 * k + 12);
    __m256d t0 = _mm256_unpacklo_pd(c0, c1);
    __m256d t1 = _mm256_unpackhi_pd(c0, c1);
    __m256d t2 = _mm256_unpacklo_pd(c2, c3);
    __m256d t3 = _mm256_unpackhi_pd(c2, c3);
    __m256d w0 = _mm256_permute2f128_pd(t0, t2, 0x20);
    __m256d w1 = _mm256_permute2f128_pd(t1, t3, 0x20);
    __m256d w2 = _mm256_permute2f128_pd(t0, t2, 0x31);
    __m256d w3 = _mm256_permute2f128_pd(t1, t3, 0x31);
    __m256d r = _mm256_mul_pd(w0, v0);
    r = _mm256_fmadd_pd(w1, v1, r);
    r = _mm256_fmadd_pd(w2, d0, r);
    r = _mm256_fmadd_pd(w3, d1, r);
    _mm256_storeu_pd(out + k, r);
  }
  for (; k < n; ++k) {
    const std::int32_t j = idx[k];
    const double* ck = c + 4 * k;
    out[k] = ck[0] * val[j] + ck[1] * val[j + 1] + ck[2] * slope[j] +
             ck[3] * slope[j + 1];
  }
}

}  // namespace

const Backend* avx2_backend() {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return nullptr;
  static const Backend b{"avx2",          dot_avx2,
                         triple_sum_avx2, max_abs_diff_avx2,
                         sinc_delta_sum_avx2, hermite_gather_avx2};
  return &b;
}

}  // namespace boltzkit::simd
