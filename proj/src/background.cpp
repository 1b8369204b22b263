#include "pspin/background.hpp"

#include <stdexcept>

namespace pspin {

MetricJet background_jet(const BackgroundMetric& bg, const double* x) {
  const int n = bg.n_spatial;
  const int d = n + 1;
  MetricJet j = MetricJet::zero(d);
  HyperDual xs[kMaxDim];
  HyperDual hs[kMaxDim * kMaxDim];
  for (int r = 0; r < d; ++r) {
    for (int s = r; s < d; ++s) {
      for (int m = 0; m < d; ++m) xs[m] = HyperDual(x[m]);
      xs[r].e1 = 1.0;
      xs[s].e2 = 1.0;
      const HyperDual lam = bg.lapse(xs);
      if (!(lam.v > 0.0)) throw std::domain_error("background lapse must be positive");
      const HyperDual g00 = -(lam * lam);
      bg.slice_metric(xs, hs);
      auto put = [&](int a, int b, const HyperDual& v) {
        if (r == 0 && s == 0) j.g(a, b) = v.v;
        j.dg[r](a, b) = v.e1;
        j.dg[s](a, b) = v.e2;
        j.ddg[r][s](a, b) = v.e12;
        j.ddg[s][r](a, b) = v.e12;
      };
      put(0, 0, g00);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) put(a + 1, b + 1, hs[a * n + b]);
    }
  }
  return j;
}

BackgroundPoint background_point(const BackgroundMetric& bg, const double* x) {
  BackgroundPoint p;
  p.jet = background_jet(bg, x);
  const Mat gi = inverse_metric(p.jet.g);
  const Tensor3 gl = christoffel_first(p.jet);
  p.gamma = christoffel_second(gi, gl);
  p.dgamma = christoffel_derivative(p.jet, gi, gl);
  return p;
}

BackgroundMetric minkowski_background(int n_spatial) {
  BackgroundMetric bg;
  bg.n_spatial = n_spatial;
  bg.lapse = [](const HyperDual*) { return HyperDual(1.0); };
  bg.slice_metric = [n_spatial](const HyperDual*, HyperDual* h) {
    for (int a = 0; a < n_spatial; ++a)
      for (int b = 0; b < n_spatial; ++b) h[a * n_spatial + b] = HyperDual(a == b ? 1.0 : 0.0);
  };
  return bg;
}

}  // namespace pspin
