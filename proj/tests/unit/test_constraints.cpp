#include "pspin/constraints.hpp"
#include "pspin/scenarios.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <cmath>

using namespace pspin;

namespace {

// Flat n-torus slice data with constant W and phi.
InitialSurfaceData flat_data(int n, int N, const Mat& W, const CVec& phi) {
  InitialSurfaceData d;
  d.grid = Grid(n, {Axis{1, N, 0.0, 2.0 * M_PI / N, true}});
  for (std::size_t p = 0; p < d.grid.size(); ++p) {
    d.g_sigma.push_back(Mat::Identity(n, n));
    d.W.push_back(W);
    d.phi.push_back(phi);
    d.lapse.push_back(1.0);
  }
  return d;
}

}  // namespace

TEST_SUITE("constraints") {
  TEST_CASE("slice generators form a Riemannian Clifford algebra") {
    for (int n = 2; n <= 6; ++n) {
      const GammaRep rep = build_gamma(n);
      const auto e = riemannian_generators(rep);
      const int d = rep.dim_spinor;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const CMat ac = e[i] * e[j] + e[j] * e[i];
          const CMat want = (i == j ? -2.0 : 0.0) * CMat::Identity(d, d);
          CHECK((ac - want).norm() <= 1e-14);
        }
    }
  }

  TEST_CASE("Clifford action and current on trivial inputs") {
    const GammaRep rep = build_gamma(3);
    std::mt19937 rng(2);
    const CVec psi = test::random_spinor(rng, rep.dim_spinor);
    const double zero[] = {0.0, 0.0, 0.0};
    CHECK(riemannian_clifford(rep, zero, psi).norm() == 0.0);
    CHECK(riemannian_dirac_current(rep, CVec::Zero(rep.dim_spinor)).norm() == 0.0);
  }

  TEST_CASE("projection reaches the constraint set and preserves the norm") {
    std::mt19937 rng(8);
    for (int n = 2; n <= 5; ++n) {
      const GammaRep rep = build_gamma(n);
      for (int trial = 0; trial < 10; ++trial) {
        const CVec psi = test::random_spinor(rng, rep.dim_spinor);
        const CVec phi = project_to_constraint(rep, psi);
        CHECK(phi.norm() == doctest::Approx(psi.norm()).epsilon(1e-12));
        CHECK(algebraic_residual(rep, phi).norm() <= 1e-10 * psi.squaredNorm() * psi.norm());
        const RVec U = riemannian_dirac_current(rep, phi);
        CHECK(U.norm() == doctest::Approx(phi.squaredNorm()).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("opposite eigenspace: residual 2 u |phi| with the current held fixed") {
    const GammaRep rep = build_gamma(3);
    const CVec ref = eigen_spinor(rep, +1);
    const CVec other = eigen_spinor(rep, -1);
    CHECK(algebraic_residual(rep, ref).norm() <= 1e-14);
    CHECK(algebraic_residual(rep, other).norm() <= 1e-14);
    const RVec U = riemannian_dirac_current(rep, ref);
    CHECK(U[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (double scale : {1.0, 0.5, 2.0}) {
      const double u = 1.0;
      const CVec r = algebraic_residual_with_current(rep, U, u, scale * other);
      CHECK(r.norm() == doctest::Approx(2.0 * u * scale).epsilon(1e-13));
    }
  }

  TEST_CASE("flat slice, W = 0, constant spinor satisfies everything") {
    const GammaRep rep = build_gamma(3);
    const CVec phi = project_to_constraint(rep, eigen_spinor(rep, 1));
    const auto data = flat_data(3, 16, Mat::Zero(3, 3), phi);
    const ConstraintReport r = check_constraints(rep, data, 4);
    CHECK(r.killing_residual_norm <= 1e-14);
    CHECK(r.algebraic_residual_norm <= 1e-14);
    CHECK(r.codazzi_residual_norm <= 1e-14);
    CHECK(r.f_sigma_max <= 1e-14);
    CHECK(r.current_norm_defect <= 1e-14);
  }

  TEST_CASE("W = b Id on a flat slice: f = 3 b^2 / u^2 and the momentum identity fails") {
    const GammaRep rep = build_gamma(3);
    const double b = 0.5;
    for (double amp : {1.0, std::sqrt(2.0)}) {
      const CVec phi = amp * eigen_spinor(rep, 1);
      const double u = amp * amp;
      const auto data = flat_data(3, 16, b * Mat::Identity(3, 3), phi);
      const auto sg = slice_geometry(data, 4);
      CHECK(f_on_slice_at(data, sg[3], 3) == doctest::Approx(3.0 * b * b / (u * u)).epsilon(1e-13));
      CHECK(codazzi_residual_at(data, sg[3], 3).norm() <= 1e-14);
      const double mom = momentum_identity_residual_at(rep, data, sg[3], 3).norm();
      CHECK(mom == doctest::Approx(3.0 * b * b).epsilon(1e-12));
    }
  }

  TEST_CASE("round sphere slice: f = n (n - 1) / (2 r^2 u^2)") {
    const GammaRep rep = build_gamma(2);
    const double r = 1.5;
    const int N = 65;
    InitialSurfaceData d;
    d.grid = Grid(2, {Axis{1, N, 0.5, 1.0 / (N - 1), false}});
    const CVec phi = std::sqrt(2.0) * eigen_spinor(rep, 1);
    double x[3];
    for (std::size_t p = 0; p < d.grid.size(); ++p) {
      d.grid.coordinates(p, 0.0, x);
      Mat g = Mat::Zero(2, 2);
      g(0, 0) = r * r;
      g(1, 1) = r * r * std::sin(x[1]) * std::sin(x[1]);
      d.g_sigma.push_back(g);
      d.W.push_back(Mat::Zero(2, 2));
      d.phi.push_back(phi);
      d.lapse.push_back(1.0);
    }
    const auto f = f_on_slice(d, 4);
    const double want = 2.0 / (2.0 * r * r * 4.0);
    for (std::size_t p = 4; p + 4 < d.grid.size(); ++p) CHECK(f[p] == doctest::Approx(want).epsilon(1e-6));
  }

  TEST_CASE("Killing residual grows linearly under a W perturbation") {
    const GammaRep rep = build_gamma(3);
    const CVec phi = eigen_spinor(rep, 1);
    std::mt19937 rng(6);
    const Mat D = test::random_symmetric(rng, 3, 1.0);
    for (double delta : {1e-3, 1e-2, 1e-1}) {
      const auto data = flat_data(3, 16, delta * D, phi);
      const auto sg = slice_geometry(data, 4);
      const auto res = killing_residual_at(rep, data, sg[5], 5);
      for (int j = 0; j < 3; ++j) {
        const RVec col = D.col(j);
        const double want = 0.5 * delta * riemannian_clifford(rep, std::span<const double>(col.data(), 3), phi).norm();
        CHECK(res[j].norm() == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("nonsymmetric W is reported") {
    const GammaRep rep = build_gamma(2);
    Mat W = Mat::Zero(2, 2);
    W(0, 1) = 0.3;
    const auto data = flat_data(2, 16, W, eigen_spinor(rep, 1));
    CHECK(check_constraints(rep, data, 4).w_symmetry_defect == doctest::Approx(0.3));
  }

  TEST_CASE("warped slice data converge under refinement") {
    ScenarioParams p;
    p.name = "warped_product";
    double kill[2], alg[2], gauss[2];
    int i = 0;
    for (int N : {33, 65}) {
      p.resolution = N;
      const Scenario s = make_scenario(p);
      const ConstraintReport r = check_constraints(s.rep, s.data, 4);
      kill[i] = r.killing_residual_norm;
      alg[i] = r.algebraic_residual_norm;
      gauss[i] = r.momentum_identity_residual;
      CHECK(r.w_symmetry_defect <= 1e-15);
      CHECK(r.u_min > 0.0);
      ++i;
    }
    CHECK(alg[0] <= 1e-12);
    CHECK(alg[1] <= 1e-12);
    CHECK(kill[0] / kill[1] > 6.0);
    CHECK(gauss[0] / gauss[1] > 6.0);
    CHECK(kill[1] < 1e-3);
  }

  TEST_CASE("warped slice: W is a Codazzi tensor up to discretization error") {
    ScenarioParams p;
    p.name = "warped_product";
    p.resolution = 65;
    const Scenario s = make_scenario(p);
    const ConstraintReport r = check_constraints(s.rep, s.data, 4, 4);
    CHECK(r.codazzi_symmetry_defect < 1e-4);
    CHECK(r.codazzi_residual_norm < 1e-4);
  }
}
