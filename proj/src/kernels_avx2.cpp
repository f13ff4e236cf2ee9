// AVX2 implementations of the complex vector kernels. This translation unit
// is the only one compiled with -mavx2/-mfma; callers must check
// avx2_available() before using these entry points.

#include "qed/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace qed::kernels {

namespace {

// Lane layout: a __m256d holds two complex numbers [re0 im0 re1 im1].

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }
inline __m256d dup_even(__m256d v) { return _mm256_movedup_pd(v); }
inline __m256d dup_odd(__m256d v) { return _mm256_permute_pd(v, 0b1111); }

inline __m256d negate_odd(__m256d v) {
  const __m256d mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  return _mm256_xor_pd(v, mask);
}

// [re0+re1, im0+im1] of the two packed complex values.
inline cd reduce_complex(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  double re = _mm_cvtsd_f64(s);
  double im = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  return {re, im};
}

cd avx2_dot(const cd* x, const cd* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc1 = _mm256_fmadd_pd(xv, dup_even(yv), acc1);
    acc2 = _mm256_fmadd_pd(swap_pairs(xv), dup_odd(yv), acc2);
  }
  // conj(a+ib)(c+id) = (ac+bd) + i(ad-bc); acc1 holds [ac, bc], acc2 [bd, ad].
  cd acc = reduce_complex(_mm256_add_pd(negate_odd(acc1), acc2));
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

void avx2_axpy(cd a, const cd* x, cd* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  __m256d ar = _mm256_set1_pd(a.real());
  __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(xv, ar),
                                    _mm256_mul_pd(swap_pairs(xv), ai));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void avx2_scale(cd a, cd* x, std::size_t n) {
  double* xd = reinterpret_cast<double*>(x);
  __m256d ar = _mm256_set1_pd(a.real());
  __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d prod = _mm256_addsub_pd(_mm256_mul_pd(xv, ar),
                                    _mm256_mul_pd(swap_pairs(xv), ai));
    _mm256_storeu_pd(xd + 2 * i, prod);
  }
  for (; i < n; ++i) x[i] *= a;
}

double avx2_norm_squared(const cd* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    acc = _mm256_fmadd_pd(xv, xv, acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  double total = _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
  for (; i < n; ++i) total += std::norm(x[i]);
  return total;
}

void avx2_csr_apply(const std::int64_t* rowptr, const std::int32_t* col,
                    const cd* val, const cd* x, cd* y, std::size_t rows) {
  const double* vd = reinterpret_cast<const double*>(val);
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    __m256d acc = _mm256_setzero_pd();
    std::int64_t i = rowptr[r];
    const std::int64_t end = rowptr[r + 1];
    for (; i + 2 <= end; i += 2) {
      __m256d vv = _mm256_loadu_pd(vd + 2 * i);
      __m128d x0 = _mm_loadu_pd(xd + 2 * col[i]);
      __m128d x1 = _mm_loadu_pd(xd + 2 * col[i + 1]);
      __m256d xv = _mm256_set_m128d(x1, x0);
      acc = _mm256_add_pd(acc, _mm256_addsub_pd(_mm256_mul_pd(vv, dup_even(xv)),
                                                _mm256_mul_pd(swap_pairs(vv), dup_odd(xv))));
    }
    cd sum = reduce_complex(acc);
    for (; i < end; ++i) sum += val[i] * x[col[i]];
    y[r] = sum;
  }
}

const Ops kAvx2{avx2_dot, avx2_axpy, avx2_scale, avx2_norm_squared,
                avx2_csr_apply, "avx2"};

}  // namespace

const Ops& avx2_ops() { return kAvx2; }

}  // namespace qed::kernels

#else  // non-x86 fallback so the translation unit still links

namespace qed::kernels {
const Ops& avx2_ops() { return scalar_ops(); }
}  // namespace qed::kernels

#endif
