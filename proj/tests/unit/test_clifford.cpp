#include "pspin/clifford.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace pspin;

TEST_SUITE("clifford") {
  TEST_CASE("defining relations hold for n = 2..6") {
    for (int n = 2; n <= 6; ++n) {
      CAPTURE(n);
      const GammaRep rep = build_gamma(n);
      CHECK(rep.dim_spinor == (1 << ((n + 1) / 2)));
      CHECK(static_cast<int>(rep.gammas.size()) == n + 1);
      const GammaDefects d = gamma_defects(rep);
      CHECK(d.anticommutator <= 1e-14);
      CHECK(d.adjointness <= 1e-14);
      CHECK(d.realified_symmetry <= 1e-14);
    }
  }

  TEST_CASE("out-of-range dimensions are rejected") {
    CHECK_THROWS_AS(build_gamma(1), std::invalid_argument);
    CHECK_THROWS_AS(build_gamma(7), std::invalid_argument);
  }

  TEST_CASE("signature: gamma_0^2 = 1, gamma_j^2 = -1") {
    const GammaRep rep = build_gamma(3);
    const int d = rep.dim_spinor;
    CHECK((rep.gammas[0] * rep.gammas[0] - CMat::Identity(d, d)).norm() <= 1e-15);
    for (int j = 1; j <= 3; ++j)
      CHECK((rep.gammas[j] * rep.gammas[j] + CMat::Identity(d, d)).norm() <= 1e-15);
  }

  TEST_CASE("clifford_action on a basis vector and on the zero spinor") {
    const GammaRep rep = build_gamma(3);
    std::mt19937 rng(3);
    const CVec psi = test::random_spinor(rng, rep.dim_spinor);
    const double e2[] = {0.0, 0.0, 1.0, 0.0};
    CHECK((clifford_action(rep, e2, psi) - rep.gammas[2] * psi).norm() <= 1e-15);
    const CVec zero = CVec::Zero(rep.dim_spinor);
    const double v[] = {0.3, -1.0, 2.0, 0.5};
    CHECK(clifford_action(rep, v, zero).norm() == 0.0);
  }

  TEST_CASE("inner product makes gamma_a self-adjoint") {
    const GammaRep rep = build_gamma(4);
    std::mt19937 rng(11);
    const CVec v = test::random_spinor(rng, rep.dim_spinor);
    const CVec w = test::random_spinor(rng, rep.dim_spinor);
    for (int a = 0; a <= 4; ++a) {
      CAPTURE(a);
      const cplx lhs = spinor_inner(rep, rep.gammas[a] * v, w);
      const cplx rhs = spinor_inner(rep, v, rep.gammas[a] * w);
      CHECK(std::abs(lhs - rhs) <= 1e-13);
    }
  }

  TEST_CASE("Dirac current: V^0 = |psi|^2, causal, zero for zero spinor") {
    std::mt19937 rng(5);
    for (int n = 2; n <= 6; ++n) {
      const GammaRep rep = build_gamma(n);
      for (int trial = 0; trial < 20; ++trial) {
        const CVec psi = test::random_spinor(rng, rep.dim_spinor);
        const RVec V = dirac_current_frame(rep, psi);
        CHECK(V[0] == doctest::Approx(psi.squaredNorm()).epsilon(1e-13));
        double norm2 = -V[0] * V[0];
        for (int a = 1; a <= n; ++a) norm2 += V[a] * V[a];
        CHECK(norm2 <= 1e-12 * psi.squaredNorm() * psi.squaredNorm());
      }
      CHECK(dirac_current_frame(rep, CVec::Zero(rep.dim_spinor)).norm() == 0.0);
    }
  }

  TEST_CASE("realify preserves the complex product") {
    const GammaRep rep = build_gamma(3);
    std::mt19937 rng(9);
    const CVec x = test::random_spinor(rng, rep.dim_spinor);
    const int d = rep.dim_spinor;
    const CVec y = rep.g0_ga[2] * x;
    Eigen::VectorXd xr(2 * d);
    xr << x.real(), x.imag();
    const Eigen::VectorXd yr = realify(rep.g0_ga[2]) * xr;
    CHECK((yr.head(d) - y.real()).norm() <= 1e-14);
    CHECK((yr.tail(d) - y.imag()).norm() <= 1e-14);
  }
}
