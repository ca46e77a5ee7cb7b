#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "twistvol/kernels.hpp"

#define TV_AVX2 __attribute__((target("avx2,fma")))

namespace twistvol::kernels::avx2 {

namespace {

TV_AVX2 inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

TV_AVX2 inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

TV_AVX2 inline __m256d vabs(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

TV_AVX2 inline __m256d simpson(__m256d a, __m256d b, __m256d c) {
  return _mm256_div_pd(_mm256_fmadd_pd(_mm256_set1_pd(4.0), b, _mm256_add_pd(a, c)), _mm256_set1_pd(6.0));
}

}  // namespace

TV_AVX2 double hermite_trapezoid(const double* x, const double* y, const double* yp, std::size_t n) {
  if (n < 2) return 0.0;
  const std::size_t m = n - 1;  // intervals
  const __m256d half = _mm256_set1_pd(0.5), twelfth = _mm256_set1_pd(1.0 / 12.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(x + i), x1 = _mm256_loadu_pd(x + i + 1);
    const __m256d y0 = _mm256_loadu_pd(y + i), y1 = _mm256_loadu_pd(y + i + 1);
    const __m256d d0 = _mm256_loadu_pd(yp + i), d1 = _mm256_loadu_pd(yp + i + 1);
    const __m256d h = _mm256_sub_pd(x1, x0);
    const __m256d trap = _mm256_mul_pd(_mm256_mul_pd(half, h), _mm256_add_pd(y0, y1));
    const __m256d corr = _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(h, h), twelfth), _mm256_sub_pd(d0, d1));
    acc = _mm256_add_pd(acc, _mm256_add_pd(trap, corr));
  }
  double s = hsum(acc);
  for (; i < m; ++i) {
    const double h = x[i + 1] - x[i];
    s += 0.5 * h * (y[i] + y[i + 1]) + h * h / 12.0 * (yp[i] - yp[i + 1]);
  }
  return s;
}

TV_AVX2 CurvatureMax curvature_max(const double* k, const double* kp, const double* f, const double* fp,
                                   std::size_t n) {
  const double ninf = -std::numeric_limits<double>::infinity();
  const __m256d lo = _mm256_set1_pd(ninf), zero = _mm256_setzero_pd();
  __m256d m12 = lo, m13 = lo;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vk = _mm256_loadu_pd(k + i), vkp = _mm256_loadu_pd(kp + i);
    const __m256d vf = _mm256_loadu_pd(f + i), vfp = _mm256_loadu_pd(fp + i);
    const __m256d ok = _mm256_cmp_pd(vf, zero, _CMP_GT_OQ);
    const __m256d nk = _mm256_sub_pd(zero, vk);
    const __m256d c13 = _mm256_sub_pd(zero, _mm256_add_pd(vk, _mm256_mul_pd(_mm256_div_pd(vf, vfp), vkp)));
    m12 = _mm256_max_pd(m12, _mm256_blendv_pd(lo, nk, ok));
    m13 = _mm256_max_pd(m13, _mm256_blendv_pd(lo, c13, ok));
  }
  CurvatureMax out{hmax(m12), hmax(m13), 0};
  for (; i < n; ++i) {
    if (!(f[i] > 0)) continue;
    out.k12 = std::max(out.k12, -k[i]);
    out.k13 = std::max(out.k13, -(k[i] + f[i] / fp[i] * kp[i]));
  }
  out.k23 = out.k12;
  return out;
}

TV_AVX2 Residuals ode_residuals(const GridView& g) {
  Residuals r;
  if (g.n < 4) return r;
  const __m256d tol = _mm256_set1_pd(1e-6), one = _mm256_set1_pd(1.0), zero = _mm256_setzero_pd();
  const __m256d minh = _mm256_set1_pd(g.min_step);
  __m256d mf = zero, mfp = zero, mlg = zero, cnt = zero;
  std::size_t i = 2;
  for (; i + 4 < g.n; i += 4) {
    const __m256d rm = _mm256_loadu_pd(g.r + i - 1), r0 = _mm256_loadu_pd(g.r + i), rp = _mm256_loadu_pd(g.r + i + 1);
    const __m256d hl = _mm256_sub_pd(r0, rm), hr = _mm256_sub_pd(rp, r0);
    const __m256d span = _mm256_add_pd(hl, hr);
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(vabs(_mm256_sub_pd(hl, hr)), _mm256_mul_pd(tol, span), _CMP_LE_OQ),
                                     _mm256_cmp_pd(hl, minh, _CMP_GE_OQ));
    const __m256d w = _mm256_div_pd(one, span);
    const __m256d f0 = _mm256_loadu_pd(g.f + i - 1), f1 = _mm256_loadu_pd(g.f + i), f2 = _mm256_loadu_pd(g.f + i + 1);
    const __m256d p0 = _mm256_loadu_pd(g.fp + i - 1), p1 = _mm256_loadu_pd(g.fp + i),
                  p2 = _mm256_loadu_pd(g.fp + i + 1);
    const __m256d kf0 = _mm256_mul_pd(_mm256_loadu_pd(g.k + i - 1), f0);
    const __m256d kf1 = _mm256_mul_pd(_mm256_loadu_pd(g.k + i), f1);
    const __m256d kf2 = _mm256_mul_pd(_mm256_loadu_pd(g.k + i + 1), f2);
    const __m256d df = _mm256_mul_pd(_mm256_sub_pd(f2, f0), w);
    const __m256d dfp = _mm256_mul_pd(_mm256_sub_pd(p2, p0), w);
    const __m256d dlg =
        _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(g.lng + i + 1), _mm256_loadu_pd(g.lng + i - 1)), w);
    const __m256d ef = vabs(_mm256_sub_pd(df, simpson(p0, p1, p2)));
    const __m256d efp = vabs(_mm256_sub_pd(dfp, simpson(kf0, kf1, kf2)));
    const __m256d elg = vabs(
        _mm256_sub_pd(dlg, simpson(_mm256_div_pd(kf0, p0), _mm256_div_pd(kf1, p1), _mm256_div_pd(kf2, p2))));
    mf = _mm256_max_pd(mf, _mm256_and_pd(ok, ef));
    mfp = _mm256_max_pd(mfp, _mm256_and_pd(ok, efp));
    mlg = _mm256_max_pd(mlg, _mm256_and_pd(ok, elg));
    cnt = _mm256_add_pd(cnt, _mm256_and_pd(ok, one));
  }
  r.f = hmax(mf);
  r.fp = hmax(mfp);
  r.lng = hmax(mlg);
  r.checked = static_cast<std::size_t>(hsum(cnt));
  for (; i + 1 < g.n; ++i) {
    const double hl = g.r[i] - g.r[i - 1], hr = g.r[i + 1] - g.r[i];
    if (std::fabs(hl - hr) > 1e-6 * (hl + hr) || hl < g.min_step) continue;
    const double w = 1.0 / (hl + hr);
    const double kf0 = g.k[i - 1] * g.f[i - 1], kf1 = g.k[i] * g.f[i], kf2 = g.k[i + 1] * g.f[i + 1];
    const double sfp = (g.fp[i - 1] + 4 * g.fp[i] + g.fp[i + 1]) / 6;
    const double skf = (kf0 + 4 * kf1 + kf2) / 6;
    const double slg = (kf0 / g.fp[i - 1] + 4 * kf1 / g.fp[i] + kf2 / g.fp[i + 1]) / 6;
    r.f = std::max(r.f, std::fabs((g.f[i + 1] - g.f[i - 1]) * w - sfp));
    r.fp = std::max(r.fp, std::fabs((g.fp[i + 1] - g.fp[i - 1]) * w - skf));
    r.lng = std::max(r.lng, std::fabs((g.lng[i + 1] - g.lng[i - 1]) * w - slg));
    ++r.checked;
  }
  return r;
}

}  // namespace twistvol::kernels::avx2
