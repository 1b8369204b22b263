#include "pspin/simd/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace pspin::simd {
namespace {

void weighted_sum(const double* const* rows, const double* weights, int nrows,
                  double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (int r = 0; r < nrows; ++r) acc = vfmaq_n_f64(acc, vld1q_f64(rows[r] + i), weights[r]);
    vst1q_f64(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (int r = 0; r < nrows; ++r) acc = std::fma(weights[r], rows[r][i], acc);
    out[i] = acc;
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_n_f64(vld1q_f64(y + i), vld1q_f64(x + i), a));
  for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void add_scaled(const double* x, double a, const double* y, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(out + i, vfmaq_n_f64(vld1q_f64(x + i), vld1q_f64(y + i), a));
  for (; i < n; ++i) out[i] = std::fma(a, y[i], x[i]);
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(x[i]);
    if (std::isnan(v)) return v;
    if (v > m) m = v;
  }
  return m;
}

double sum_squares(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    acc = vfmaq_f64(acc, v, v);
  }
  double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
  for (; i < n; ++i) s = std::fma(x[i], x[i], s);
  return s;
}

}  // namespace

const KernelTable* neon_kernels_impl() {
  static const KernelTable table{Isa::Neon, weighted_sum, axpy, add_scaled, max_abs,
                                 sum_squares};
  return &table;
}

}  // namespace pspin::simd
