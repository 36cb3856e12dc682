#include "spinchain/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace spinchain::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

// One lane per shift; same operation order as the scalar reference so the
// counts are bit-identical.
void sturm_count4(const double* diag, const double* off_sq, std::size_t n, const double* shifts,
                  double pivmin, int* counts) {
  const __m256d x = _mm256_loadu_pd(shifts);
  const __m256d piv = _mm256_set1_pd(pivmin);
  const __m256d neg_piv = _mm256_set1_pd(-pivmin);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d zero = _mm256_setzero_pd();

  __m256d q = _mm256_sub_pd(_mm256_set1_pd(diag[0]), x);
  __m256d small = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, q), piv, _CMP_LT_OQ);
  q = _mm256_blendv_pd(q, neg_piv, small);
  __m256i count = _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ));
  // Lanes of all-ones are -1 as int64; accumulate negated.
  for (std::size_t i = 1; i < n; ++i) {
    q = _mm256_sub_pd(_mm256_sub_pd(_mm256_set1_pd(diag[i]), x),
                      _mm256_div_pd(_mm256_set1_pd(off_sq[i - 1]), q));
    small = _mm256_cmp_pd(_mm256_andnot_pd(sign_mask, q), piv, _CMP_LT_OQ);
    q = _mm256_blendv_pd(q, neg_piv, small);
    count = _mm256_add_epi64(count, _mm256_castpd_si256(_mm256_cmp_pd(q, zero, _CMP_LT_OQ)));
  }
  alignas(32) long long lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
  for (int j = 0; j < 4; ++j) counts[j] = static_cast<int>(-lanes[j]);
}

void rotation_sweep(double* re, double* im, const double* step_re, const double* step_im,
                    std::size_t n, std::size_t steps, double* out_re, double* out_im) {
  const std::size_t vec_end = n - n % 4;
  for (std::size_t j = 0; j < steps; ++j) {
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    for (std::size_t k = 0; k < vec_end; k += 4) {
      const __m256d zr = _mm256_loadu_pd(re + k);
      const __m256d zi = _mm256_loadu_pd(im + k);
      const __m256d sr = _mm256_loadu_pd(step_re + k);
      const __m256d si = _mm256_loadu_pd(step_im + k);
      acc_re = _mm256_add_pd(acc_re, zr);
      acc_im = _mm256_add_pd(acc_im, zi);
      _mm256_storeu_pd(re + k, _mm256_fmsub_pd(zr, sr, _mm256_mul_pd(zi, si)));
      _mm256_storeu_pd(im + k, _mm256_fmadd_pd(zr, si, _mm256_mul_pd(zi, sr)));
    }
    double tail_re = 0.0;
    double tail_im = 0.0;
    for (std::size_t k = vec_end; k < n; ++k) {
      tail_re += re[k];
      tail_im += im[k];
      const double r = re[k] * step_re[k] - im[k] * step_im[k];
      const double i = re[k] * step_im[k] + im[k] * step_re[k];
      re[k] = r;
      im[k] = i;
    }
    out_re[j] = hsum(acc_re) + tail_re;
    out_im[j] = hsum(acc_im) + tail_im;
  }
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void tridiag_matvec(const double* diag, const double* off, const double* x, double* y,
                    std::size_t n) {
  if (n < 6) {
    scalar::tridiag_matvec(diag, off, x, y, n);
    return;
  }
  y[0] = diag[0] * x[0] + off[0] * x[1];
  // Interior rows i in [1, n-2]: off[i-1] x[i-1] + diag[i] x[i] + off[i] x[i+1].
  std::size_t i = 1;
  for (; i + 4 <= n - 1; i += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(diag + i), _mm256_loadu_pd(x + i));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(off + i - 1), _mm256_loadu_pd(x + i - 1), acc);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(off + i), _mm256_loadu_pd(x + i + 1), acc);
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i + 1 < n; ++i) {
    y[i] = off[i - 1] * x[i - 1] + diag[i] * x[i] + off[i] * x[i + 1];
  }
  y[n - 1] = off[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
}

}  // namespace spinchain::kernels::avx2
