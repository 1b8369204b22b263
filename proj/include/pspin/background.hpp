#pragma once
// Background metric h = -lambda^2 dt^2 + h_t used for the hyperbolic reduction.
// Both pieces are supplied as analytic functions of spacetime coordinates over
// HyperDual numbers so that exact first and second derivatives are available.

#include "pspin/dual.hpp"
#include "pspin/tensor.hpp"

#include <functional>

namespace pspin {

struct BackgroundMetric {
  int n_spatial = 0;
  // x has n+1 entries (t, x_1, ..., x_n)
  std::function<HyperDual(const HyperDual* x)> lapse;
  // writes the n x n slice metric row-major into h
  std::function<void(const HyperDual* x, HyperDual* h)> slice_metric;
};

// Christoffel data of h at one spacetime point.
struct BackgroundPoint {
  MetricJet jet;
  Tensor3 gamma;                        // Gt^m_ab
  std::array<Tensor3, kMaxDim> dgamma;  // d_r Gt^m_ab
};

// Full 2-jet of h at x (n+1 coordinates).
MetricJet background_jet(const BackgroundMetric& bg, const double* x);

BackgroundPoint background_point(const BackgroundMetric& bg, const double* x);

// Minkowski background for n spatial dimensions.
BackgroundMetric minkowski_background(int n_spatial);

}  // namespace pspin
