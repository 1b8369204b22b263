// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "pspin/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace pspin::simd {
namespace {

void weighted_sum(const double* const* rows, const double* weights, int nrows,
                  double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (int r = 0; r < nrows; ++r) {
      acc = _mm256_fmadd_pd(_mm256_set1_pd(weights[r]), _mm256_loadu_pd(rows[r] + i), acc);
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (int r = 0; r < nrows; ++r) acc = std::fma(weights[r], rows[r][i], acc);
    out[i] = acc;
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void add_scaled(const double* x, double a, const double* y, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i,
                     _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = std::fma(a, y[i], x[i]);
}

double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  __m256d nan_seen = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i));
    nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(v, v, _CMP_UNORD_Q));
    m = _mm256_max_pd(m, v);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double result = std::fmax(std::fmax(lanes[0], lanes[1]), std::fmax(lanes[2], lanes[3]));
  if (_mm256_movemask_pd(nan_seen) != 0) return std::nan("");
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (std::isnan(v)) return v;
    if (v > result) result = v;
  }
  return result;
}

double sum_squares(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s = std::fma(x[i], x[i], s);
  return s;
}

}  // namespace

const KernelTable* avx2_kernels_impl() {
  static const KernelTable table{Isa::Avx2, weighted_sum, axpy, add_scaled, max_abs,
                                 sum_squares};
  return &table;
}

}  // namespace pspin::simd
