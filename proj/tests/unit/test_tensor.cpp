#include "pspin/background.hpp"
#include "pspin/scenarios.hpp"
#include "pspin/tensor.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <cmath>

using namespace pspin;

namespace {

// 2-sphere of radius r in coordinates (theta, phi).
MetricJet sphere_jet(double r, double th) {
  MetricJet j = MetricJet::zero(2);
  const double s = std::sin(th), c = std::cos(th);
  j.g(0, 0) = r * r;
  j.g(1, 1) = r * r * s * s;
  j.dg[0](1, 1) = 2.0 * r * r * s * c;
  j.ddg[0][0](1, 1) = 2.0 * r * r * (c * c - s * s);
  return j;
}

// g = 2 du dv + H du^2 + dx^2 + dy^2, H = 0.2 cos x cos u.
MetricJet brinkmann_jet(double u, double x) {
  MetricJet j = MetricJet::zero(4);
  j.g(0, 1) = j.g(1, 0) = 1.0;
  j.g(2, 2) = j.g(3, 3) = 1.0;
  const double H = 0.2 * std::cos(x) * std::cos(u);
  j.g(0, 0) = H;
  j.dg[0](0, 0) = -0.2 * std::cos(x) * std::sin(u);
  j.dg[2](0, 0) = -0.2 * std::sin(x) * std::cos(u);
  j.ddg[0][0](0, 0) = -H;
  j.ddg[2][2](0, 0) = -H;
  j.ddg[0][2](0, 0) = j.ddg[2][0](0, 0) = 0.2 * std::sin(x) * std::sin(u);
  return j;
}

MetricJet random_jet(std::mt19937& rng, int dim) {
  MetricJet j = MetricJet::zero(dim);
  j.g = Mat::Identity(dim, dim) + test::random_symmetric(rng, dim, 0.1);
  j.g(0, 0) -= 2.0;
  for (int r = 0; r < dim; ++r) j.dg[r] = test::random_symmetric(rng, dim, 0.3);
  for (int r = 0; r < dim; ++r)
    for (int s = r; s < dim; ++s) j.ddg[r][s] = j.ddg[s][r] = test::random_symmetric(rng, dim, 0.3);
  return j;
}

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("flat metric has vanishing connection and curvature") {
    const BackgroundPoint bp = background_point(minkowski_background(3), std::array<double, 4>{0.2, 0.1, 0.4, 0.9}.data());
    for (int m = 0; m < 4; ++m)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(bp.gamma(m, a, b) == 0.0);
    CHECK(ricci_local(bp.jet).norm() == 0.0);
  }

  TEST_CASE("round sphere: Ric = g / r^2, scalar = 2 / r^2") {
    const MetricJet j = sphere_jet(1.5, 0.7);
    CHECK((ricci_local(j) - j.g / 2.25).norm() <= 1e-14);
    CHECK(scalar_curvature(j) == doctest::Approx(2.0 / 2.25).epsilon(1e-14));
  }

  TEST_CASE("Brinkmann wave: only Ric_uu = -1/2 d_x^2 H survives") {
    const Mat R = ricci_local(brinkmann_jet(0.5, 0.7));
    CHECK(R(0, 0) == doctest::Approx(0.067121216615895760).epsilon(1e-14));
    Mat rest = R;
    rest(0, 0) = 0.0;
    CHECK(rest.norm() <= 1e-15);
  }

  TEST_CASE("Rosen plane wave Ricci from the analytic jet") {
    ScenarioParams p;
    p.name = "pp_wave";
    p.resolution = 8;
    const Scenario s = make_scenario(p);
    const double x[] = {0.3, 1.1, 0.0, 0.0};
    const Mat R = ricci_local(background_jet(s.background, x));
    const double v = 0.15469540360057313;
    CHECK(R(0, 0) == doctest::Approx(v).epsilon(1e-12));
    CHECK(R(1, 1) == doctest::Approx(v).epsilon(1e-12));
    CHECK(R(0, 1) == doctest::Approx(-v).epsilon(1e-12));
    Mat rest = R;
    rest(0, 0) = rest(1, 1) = rest(0, 1) = rest(1, 0) = 0.0;
    CHECK(rest.norm() <= 1e-14);
  }

  TEST_CASE("Christoffel symbols of analytic backgrounds") {
    SUBCASE("warped slice") {
      ScenarioParams p;
      p.name = "warped_product";
      p.n_spatial = 2;
      p.resolution = 8;
      const Scenario s = make_scenario(p);
      const double x[] = {0.0, 0.4, 0.0};
      const BackgroundPoint bp = background_point(s.background, x);
      CHECK(bp.gamma(2, 1, 2) == doctest::Approx(-0.54635254915624211).epsilon(1e-14));
    }
    SUBCASE("FLRW a = 1 + t / 10") {
      BackgroundMetric bg;
      bg.n_spatial = 2;
      bg.lapse = [](const HyperDual*) { return HyperDual(1.0); };
      bg.slice_metric = [](const HyperDual* x, HyperDual* h) {
        const HyperDual a = HyperDual(1.0) + HyperDual(0.1) * x[0];
        h[0] = h[3] = a * a;
        h[1] = h[2] = HyperDual(0.0);
      };
      const double x[] = {0.0, 0.3, 0.2};
      const BackgroundPoint bp = background_point(bg, x);
      CHECK(bp.gamma(1, 0, 1) == doctest::Approx(0.1).epsilon(1e-14));
      CHECK(bp.gamma(0, 1, 1) == doctest::Approx(0.1).epsilon(1e-14));
    }
    SUBCASE("lapse sqrt(1 + t^2)") {
      BackgroundMetric bg = minkowski_background(2);
      bg.lapse = [](const HyperDual* x) { return sqrt(HyperDual(1.0) + x[0] * x[0]); };
      const double x[] = {0.5, 0.0, 0.0};
      const BackgroundPoint bp = background_point(bg, x);
      CHECK(bp.gamma(0, 0, 0) == doctest::Approx(0.4).epsilon(1e-14));
      // flat metric measured against this background
      const MetricJet flat = background_jet(minkowski_background(2), x);
      const Tensor3 A = difference_tensor(christoffel(flat), bp.gamma);
      CHECK(A(0, 0, 0) == doctest::Approx(-0.4).epsilon(1e-14));
    }
  }

  TEST_CASE("E and dE vanish when g equals the background") {
    ScenarioParams p;
    p.name = "pp_wave";
    p.lapse_amplitude = 0.2;
    p.resolution = 8;
    const Scenario s = make_scenario(p);
    const double x[] = {0.7, 2.1, 0.0, 0.0};
    const BackgroundPoint bp = background_point(s.background, x);
    const Mat gi = inverse_metric(bp.jet.g);
    CHECK(compute_E(bp.jet.g, gi, christoffel(bp.jet), bp.gamma).norm() <= 1e-14);
    CHECK(compute_dE(bp.jet, bp.gamma, bp.dgamma).norm() <= 1e-13);
    CHECK((reduced_ricci(bp.jet, bp.gamma, bp.dgamma) - ricci_local(bp.jet)).norm() <= 1e-13);
  }

  TEST_CASE("reduced Ricci = Ricci + Sym(nabla E) on random jets") {
    std::mt19937 rng(21);
    ScenarioParams p;
    p.name = "pp_wave";
    p.resolution = 8;
    const Scenario s = make_scenario(p);
    const double x[] = {0.3, 0.8, 0.0, 0.0};
    const BackgroundPoint bp = background_point(s.background, x);
    for (int trial = 0; trial < 10; ++trial) {
      const MetricJet j = random_jet(rng, 4);
      const Mat gi = inverse_metric(j.g);
      const Tensor3 G = christoffel(j);
      const Vec E = compute_E(j.g, gi, G, bp.gamma);
      const Mat dE = compute_dE(j, bp.gamma, bp.dgamma);
      const Mat lhs = reduced_ricci(j, bp.gamma, bp.dgamma);
      const Mat rhs = ricci_local(j) + sym_nabla(dE, E, G);
      CHECK((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
      CHECK((lhs - lhs.transpose()).norm() <= 1e-13);
    }
  }

  TEST_CASE("dE agrees with a finite difference of E along a jet") {
    std::mt19937 rng(4);
    const MetricJet j = random_jet(rng, 3);
    const BackgroundPoint bp = background_point(minkowski_background(2), std::array<double, 3>{}.data());
    const Mat dE = compute_dE(j, bp.gamma, bp.dgamma);
    // Shift the jet along coordinate r by +-h to second order.
    for (int r = 0; r < 3; ++r) {
      auto E_at = [&](double h) {
        MetricJet k = MetricJet::zero(3);
        k.g = j.g + h * j.dg[r];
        for (int q = 0; q < 3; ++q) k.dg[q] = j.dg[q] + h * j.ddg[r][q];
        return Vec(compute_E(k.g, inverse_metric(k.g), christoffel(k), bp.gamma));
      };
      const double h = 1e-5;
      const Vec fd = (E_at(h) - E_at(-h)) / (2.0 * h);
      for (int v = 0; v < 3; ++v) CHECK(dE(r, v) == doctest::Approx(fd[v]).epsilon(1e-6));
    }
  }

  TEST_CASE("singular metrics are reported") {
    Mat g = Mat::Zero(3, 3);
    CHECK_THROWS_AS(inverse_metric(g), SingularMetric);
  }
}
