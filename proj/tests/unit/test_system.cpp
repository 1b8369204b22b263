#include "pspin/evolution.hpp"
#include "pspin/scenarios.hpp"
#include "pspin/system.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace pspin;

namespace {

PointState flat_point(const GammaRep& rep, double lapse) {
  const int d = rep.dim();
  PointState ps;
  ps.g = Mat::Identity(d, d);
  ps.g(0, 0) = -lapse * lapse;
  for (int r = 0; r < d; ++r) ps.dg[r] = Mat::Zero(d, d);
  ps.phi = eigen_spinor(rep, 1);
  return ps;
}

Scenario pp(int N, double la = 0.0) {
  ScenarioParams p;
  p.name = "pp_wave";
  p.resolution = N;
  p.lapse_amplitude = la;
  return make_scenario(p);
}

}  // namespace

TEST_SUITE("system") {
  TEST_CASE("blocks are symmetric with positive definite A0 on random states") {
    std::mt19937 rng(12);
    for (int n = 2; n <= 4; ++n) {
      const GammaRep rep = build_gamma(n);
      const BackgroundPoint bg = background_point(minkowski_background(n), std::array<double, 7>{}.data());
      for (int trial = 0; trial < 25; ++trial) {
        const PointState ps = test::perturbed(flat_point(rep, 1.0), rng, 0.1);
        const HyperbolicityReport h = check_symmetric_hyperbolic(assemble_blocks(rep, ps, bg));
        CHECK(h.symmetry_defect <= 1e-15);
        CHECK(h.min_eig_A0 > 0.0);
      }
    }
  }

  TEST_CASE("A0 eigenvalue floor on a flat slice") {
    const GammaRep rep = build_gamma(3);
    const BackgroundPoint bg = background_point(minkowski_background(3), std::array<double, 4>{}.data());
    const PointState p1 = flat_point(rep, 1.0);
    CHECK(min_eig_A0_blockwise(rep, point_geometry(rep, p1)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(check_symmetric_hyperbolic(assemble_blocks(rep, p1, bg)).min_eig_A0 ==
          doctest::Approx(1.0).epsilon(1e-14));
    const PointState p2 = flat_point(rep, 2.0);
    const double m2 = min_eig_A0_blockwise(rep, point_geometry(rep, p2));
    CHECK(m2 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(check_symmetric_hyperbolic(assemble_blocks(rep, p2, bg)).min_eig_A0 ==
          doctest::Approx(m2).epsilon(1e-12));
  }

  TEST_CASE("A0 degenerates as the spinor vanishes") {
    const GammaRep rep = build_gamma(3);
    PointState ps = flat_point(rep, 1.0);
    ps.phi *= 1e-3;
    CHECK(min_eig_A0_blockwise(rep, point_geometry(rep, ps)) == doctest::Approx(1e-6).epsilon(1e-10));
  }

  TEST_CASE("point rhs agrees with the full block system") {
    std::mt19937 rng(30);
    const GammaRep rep = build_gamma(2);
    BackgroundMetric bg = minkowski_background(2);
    bg.lapse = [](const HyperDual* x) { return HyperDual(1.0) + HyperDual(0.1) * sin(x[1] + x[2]); };
    const double x[] = {0.3, 0.5, 0.2};
    const BackgroundPoint bp = background_point(bg, x);
    const StateLayout l(2, rep.dim_spinor, 1);
    for (int trial = 0; trial < 10; ++trial) {
      PointState ps = test::perturbed(flat_point(rep, 1.0), rng, 0.1);
      ps.phi = project_to_constraint(rep, ps.phi);
      const SystemBlocks B = assemble_blocks(rep, ps, bp);
      std::vector<Eigen::VectorXd> du(2);
      PointDerivs d;
      d.active = 2;
      d.coord[0] = 1;
      d.coord[1] = 2;
      std::normal_distribution<double> nd(0.0, 0.3);
      for (int a = 0; a < 2; ++a) {
        du[a] = Eigen::VectorXd::Zero(l.vars());
        for (int v = 0; v < l.vars(); ++v) du[a][v] = nd(rng);
        d.dk[a] = load_sym(l, du[a].data(), l.k(0), 0);
        d.dgd[a][0] = Mat::Zero(3, 3);
        for (int j = 1; j <= 2; ++j) d.dgd[a][j] = load_sym(l, du[a].data(), l.gd(j, 0), 0);
        d.df[a] = du[a][l.f()];
        d.dphi[a] = CVec(rep.dim_spinor);
        for (int c = 0; c < rep.dim_spinor; ++c) d.dphi[a][c] = cplx(du[a][l.re(c)], du[a][l.im(c)]);
      }
      const Eigen::VectorXd ref = point_rhs_reference(B, du);
      const PointRhs r = point_rhs(rep, point_geometry(rep, ps), bp, ps.f, ps.phi, d);
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
          const int c = sym_index(a, b, 3);
          CHECK(ref[l.k(c)] == doctest::Approx(r.dk(a, b)).epsilon(1e-11));
          CHECK(ref[l.g(c)] == doctest::Approx(ps.dg[0](a, b)).epsilon(1e-12));
          for (int j = 1; j <= 2; ++j)
            CHECK(ref[l.gd(j, c)] == doctest::Approx(du[j - 1][l.k(c)]).epsilon(1e-11));
        }
      CHECK(ref[l.f()] == doctest::Approx(r.df).epsilon(1e-11));
      for (int c = 0; c < rep.dim_spinor; ++c) {
        CHECK(ref[l.re(c)] == doctest::Approx(r.dphi[c].real()).epsilon(1e-11));
        CHECK(ref[l.im(c)] == doctest::Approx(r.dphi[c].imag()).epsilon(1e-11));
      }
    }
  }

  TEST_CASE("Minkowski data are a fixed point of the rhs") {
    ScenarioParams p;
    p.resolution = 16;
    p.axes = 2;
    const Scenario s = make_scenario(p);
    const System sys(s.rep, s.data.grid, s.background, 4);
    const StateVector u = test::initial_state(sys, s);
    StateVector dudt(u.layout);
    sys.rhs(u, dudt);
    CHECK(test::scalar_max_abs(dudt) <= 1e-14);
  }

  TEST_CASE("metric rate equals k") {
    std::mt19937 rng(2);
    const Scenario s = pp(16);
    const System sys(s.rep, s.data.grid, s.background, 4);
    StateVector u = test::initial_state(sys, s);
    const StateLayout l = u.layout;
    std::uniform_real_distribution<double> un(-0.01, 0.01);
    for (int c = 0; c < l.sym(); ++c)
      for (std::size_t p = 0; p < l.points(); ++p) u.at(l.k(c), p) += un(rng);
    StateVector dudt(l);
    sys.rhs(u, dudt);
    for (int c = 0; c < l.sym(); ++c)
      for (std::size_t p = 0; p < l.points(); ++p) CHECK(dudt.at(l.g(c), p) == u.at(l.k(c), p));
  }

  TEST_CASE("manufactured plane wave: rhs matches the exact second time derivative") {
    double err[2];
    int i = 0;
    for (int N : {32, 64}) {
      const Scenario s = pp(N);
      const System sys(s.rep, s.data.grid, s.background, 4);
      const StateVector u = test::initial_state(sys, s);
      StateVector dudt(u.layout);
      sys.rhs(u, dudt);
      const StateLayout l = u.layout;
      double e = 0.0, x[4];
      for (std::size_t p = 0; p < l.points(); ++p) {
        s.data.grid.coordinates(p, 0.0, x);
        const double h = 1e-3;
        double xp[4] = {h, x[1], 0, 0}, xm[4] = {-h, x[1], 0, 0}, x0[4] = {0, x[1], 0, 0};
        const Mat ddt = (s.exact->metric(xp) - 2.0 * s.exact->metric(x0) + s.exact->metric(xm)) / (h * h);
        for (int a = 0; a < 4; ++a)
          for (int b = a; b < 4; ++b) e = std::max(e, std::abs(dudt.at(l.k(sym_index(a, b, 4)), p) - ddt(a, b)));
      }
      err[i++] = e;
    }
    CHECK(err[1] < 1e-4);
    CHECK(err[0] / err[1] > 10.0);
  }

  TEST_CASE("characteristic speeds of the flat system") {
    ScenarioParams p;
    p.resolution = 16;
    const Scenario s = make_scenario(p);
    const System sys(s.rep, s.data.grid, s.background, 4);
    const StateVector u = test::initial_state(sys, s);
    const double dx = s.data.grid.axis(0).spacing;
    CHECK(sys.max_speed_over_dx(u) * dx == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sys.min_eig_A0(u) == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("dimension mismatch and bad order are rejected") {
    const Scenario s = pp(8);
    CHECK_THROWS(System(build_gamma(2), s.data.grid, s.background, 4));
    CHECK_THROWS(System(s.rep, s.data.grid, s.background, 3));
  }
}
