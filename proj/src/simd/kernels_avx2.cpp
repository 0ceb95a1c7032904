// Built with -mavx2 -mfma. Nothing here may run unless dispatch.cpp has
// confirmed both features on the host CPU.
#include <immintrin.h>

#include "simplex_spectra/simd.hpp"

namespace simplex_spectra::simd {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), s1);
    s2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), s2);
    s3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), s3);
  }
  for (; i + 4 <= n; i += 4) s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
  double s = hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i + 4, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy2(double a, const double* x, double b, const double* y, double* z, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(z + i));
    _mm256_storeu_pd(z + i, _mm256_fmadd_pd(vb, _mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) z[i] += a * x[i] + b * y[i];
}

double dot_axpy(const double* col, const double* x, double a, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d c0 = _mm256_loadu_pd(col + i), c1 = _mm256_loadu_pd(col + i + 4);
    s0 = _mm256_fmadd_pd(c0, _mm256_loadu_pd(x + i), s0);
    s1 = _mm256_fmadd_pd(c1, _mm256_loadu_pd(x + i + 4), s1);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, c0, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i + 4, _mm256_fmadd_pd(va, c1, _mm256_loadu_pd(y + i + 4)));
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) {
    s += col[i] * x[i];
    y[i] += a * col[i];
  }
  return s;
}

void scal(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

// four rows per sweep so w streams through cache once per block
void multi_dot(const double* q, std::size_t ld, std::size_t m, const double* w, double* c, std::size_t n) {
  std::size_t r = 0;
  for (; r + 4 <= m; r += 4) {
    const double* q0 = q + r * ld;
    const double* q1 = q0 + ld;
    const double* q2 = q1 + ld;
    const double* q3 = q2 + ld;
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d wv = _mm256_loadu_pd(w + i);
      s0 = _mm256_fmadd_pd(_mm256_loadu_pd(q0 + i), wv, s0);
      s1 = _mm256_fmadd_pd(_mm256_loadu_pd(q1 + i), wv, s1);
      s2 = _mm256_fmadd_pd(_mm256_loadu_pd(q2 + i), wv, s2);
      s3 = _mm256_fmadd_pd(_mm256_loadu_pd(q3 + i), wv, s3);
    }
    double t0 = hsum(s0), t1 = hsum(s1), t2 = hsum(s2), t3 = hsum(s3);
    for (; i < n; ++i) {
      t0 += q0[i] * w[i];
      t1 += q1[i] * w[i];
      t2 += q2[i] * w[i];
      t3 += q3[i] * w[i];
    }
    c[r] = t0;
    c[r + 1] = t1;
    c[r + 2] = t2;
    c[r + 3] = t3;
  }
  for (; r < m; ++r) c[r] = dot(q + r * ld, w, n);
}

void multi_axpy(const double* q, std::size_t ld, std::size_t m, const double* c, double* w, std::size_t n) {
  std::size_t r = 0;
  for (; r + 4 <= m; r += 4) {
    const double* q0 = q + r * ld;
    const double* q1 = q0 + ld;
    const double* q2 = q1 + ld;
    const double* q3 = q2 + ld;
    const __m256d c0 = _mm256_set1_pd(-c[r]), c1 = _mm256_set1_pd(-c[r + 1]);
    const __m256d c2 = _mm256_set1_pd(-c[r + 2]), c3 = _mm256_set1_pd(-c[r + 3]);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      __m256d wv = _mm256_loadu_pd(w + i);
      wv = _mm256_fmadd_pd(c0, _mm256_loadu_pd(q0 + i), wv);
      wv = _mm256_fmadd_pd(c1, _mm256_loadu_pd(q1 + i), wv);
      wv = _mm256_fmadd_pd(c2, _mm256_loadu_pd(q2 + i), wv);
      wv = _mm256_fmadd_pd(c3, _mm256_loadu_pd(q3 + i), wv);
      _mm256_storeu_pd(w + i, wv);
    }
    for (; i < n; ++i) w[i] -= c[r] * q0[i] + c[r + 1] * q1[i] + c[r + 2] * q2[i] + c[r + 3] * q3[i];
  }
  for (; r < m; ++r) axpy(-c[r], q + r * ld, w, n);
}

void spmv(std::size_t rows, const std::uint64_t* row_ptr, const std::uint32_t* cols, const double* vals,
          const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    std::uint64_t k = row_ptr[i];
    const std::uint64_t end = row_ptr[i + 1];
    __m256d s = _mm256_setzero_pd();
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      s = _mm256_fmadd_pd(_mm256_loadu_pd(vals + k), xv, s);
    }
    double t = hsum(s);
    for (; k < end; ++k) t += vals[k] * x[cols[k]];
    y[i] = t;
  }
}

const Kernels table{Isa::Avx2, "avx2", dot, axpy, axpy2, dot_axpy, scal, multi_dot, multi_axpy, spmv};

}  // namespace

const Kernels& avx2_kernels() { return table; }

}  // namespace simplex_spectra::simd
