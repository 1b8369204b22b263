#include "pspin/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace pspin::simd {
namespace {

void weighted_sum(const double* const* rows, const double* weights, int nrows,
                  double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int r = 0; r < nrows; ++r) acc += weights[r] * rows[r][i];
    out[i] = acc;
  }
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void add_scaled(const double* x, double a, const double* y, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + a * y[i];
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(x[i]);
    // NaN must propagate so halting logic sees it
    if (std::isnan(v)) return v;
    if (v > m) m = v;
  }
  return m;
}

double sum_squares(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::Scalar, weighted_sum, axpy, add_scaled, max_abs,
                                 sum_squares};
  return table;
}

}  // namespace pspin::simd
