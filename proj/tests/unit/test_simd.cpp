#include "pspin/simd/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace pspin::simd;

namespace {

std::vector<const KernelTable*> variants() {
  std::vector<const KernelTable*> v;
  if (const KernelTable* t = avx2_kernels()) v.push_back(t);
  if (const KernelTable* t = neon_kernels()) v.push_back(t);
  return v;
}

std::vector<double> random_vec(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Fused multiply-add may change the last bit relative to the scalar loop.
void check_close(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(a[i] - b[i]) <= 1e-14 * (1.0 + std::abs(a[i])));
}

const std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 13, 31, 64, 1001};

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("active table is one of the compiled variants") {
    const KernelTable& a = active_kernels();
    CHECK(!isa_name(a.isa).empty());
    CHECK(scalar_kernels().isa == Isa::Scalar);
  }

  TEST_CASE("scalar kernels compute the reference values") {
    const double x[] = {1.0, -2.0, 3.0};
    const double y0[] = {0.5, 0.5, 0.5};
    std::vector<double> y(y0, y0 + 3);
    scalar_kernels().axpy(2.0, x, y.data(), 3);
    CHECK(y == std::vector<double>{2.5, -3.5, 6.5});
    CHECK(scalar_kernels().max_abs(x, 3) == 3.0);
    CHECK(scalar_kernels().sum_squares(x, 3) == 14.0);
    CHECK(scalar_kernels().max_abs(x, 0) == 0.0);
  }

  TEST_CASE("vector variants match the scalar reference") {
    std::mt19937 rng(7);
    for (const KernelTable* t : variants()) {
      CAPTURE(isa_name(t->isa));
      for (std::size_t n : kSizes) {
        CAPTURE(n);
        const auto x = random_vec(rng, n), y = random_vec(rng, n);

        auto ys = y, yv = y;
        scalar_kernels().axpy(0.37, x.data(), ys.data(), n);
        t->axpy(0.37, x.data(), yv.data(), n);
        check_close(ys, yv);

        std::vector<double> os(n), ov(n);
        scalar_kernels().add_scaled(x.data(), -1.25, y.data(), os.data(), n);
        t->add_scaled(x.data(), -1.25, y.data(), ov.data(), n);
        check_close(os, ov);

        for (int nrows = 1; nrows <= 5; ++nrows) {
          std::vector<std::vector<double>> rows;
          std::vector<const double*> ptrs;
          std::vector<double> w;
          for (int r = 0; r < nrows; ++r) {
            rows.push_back(random_vec(rng, n));
            w.push_back(0.3 * r - 0.7);
          }
          for (auto& r : rows) ptrs.push_back(r.data());
          scalar_kernels().weighted_sum(ptrs.data(), w.data(), nrows, os.data(), n);
          t->weighted_sum(ptrs.data(), w.data(), nrows, ov.data(), n);
          check_close(os, ov);
        }

        CHECK(t->max_abs(x.data(), n) == scalar_kernels().max_abs(x.data(), n));
        const double ss = scalar_kernels().sum_squares(x.data(), n);
        CHECK(std::abs(t->sum_squares(x.data(), n) - ss) <= 1e-13 * (1.0 + ss));
      }
    }
  }

  TEST_CASE("max_abs propagates NaN in every lane position") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<const KernelTable*> all = variants();
    all.push_back(&scalar_kernels());
    for (const KernelTable* t : all) {
      CAPTURE(isa_name(t->isa));
      for (std::size_t pos = 0; pos < 11; ++pos) {
        std::vector<double> x(11, 1.0);
        x[pos] = nan;
        CHECK(std::isnan(t->max_abs(x.data(), x.size())));
      }
    }
  }
}
