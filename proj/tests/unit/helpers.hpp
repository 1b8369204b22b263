#pragma once
// Shared builders for unit tests.

#include "pspin/background.hpp"
#include "pspin/evolution.hpp"
#include "pspin/scenarios.hpp"
#include "pspin/state.hpp"
#include "pspin/system.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace pspin::test {

// Point state whose metric jet is the exact background jet at x (k = d_t g).
inline PointState exact_point(const BackgroundMetric& bg, const double* x, const CVec& phi,
                              double f = 0.0) {
  const MetricJet j = background_jet(bg, x);
  PointState ps;
  ps.g = j.g;
  for (int r = 0; r < j.dim; ++r) ps.dg[r] = j.dg[r];
  ps.f = f;
  ps.phi = phi;
  return ps;
}

inline Mat random_symmetric(std::mt19937& rng, int d, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Mat m(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) m(a, b) = m(b, a) = u(rng);
  return m;
}

inline CVec random_spinor(std::mt19937& rng, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  CVec v(d);
  for (int c = 0; c < d; ++c) v[c] = cplx(n(rng), n(rng));
  return v;
}

// Perturbation of ps with random entries of size `scale`.
inline PointState perturbed(const PointState& ps, std::mt19937& rng, double scale) {
  PointState q = ps;
  const int d = static_cast<int>(ps.g.rows());
  q.g += random_symmetric(rng, d, scale);
  for (int r = 0; r < d; ++r) q.dg[r] += random_symmetric(rng, d, scale);
  std::uniform_real_distribution<double> u(-scale, scale);
  q.f += u(rng);
  q.phi += scale * random_spinor(rng, static_cast<int>(ps.phi.size()));
  return q;
}

// Initial state checked against the scenario's declared tolerances.
inline StateVector initial_state(const System& sys, const Scenario& s, InitialStateOptions o = {}) {
  o.killing_threshold = s.killing_tolerance;
  o.algebraic_threshold = s.algebraic_tolerance;
  return build_initial_state(sys, s.data, o);
}

inline double scalar_max_abs(const StateVector& u) {
  double m = 0.0;
  for (double v : u.data) m = std::max(m, std::abs(v));
  return m;
}

inline double max_difference(const StateVector& a, const StateVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace pspin::test
