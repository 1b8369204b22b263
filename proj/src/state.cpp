#include "pspin/state.hpp"

#include <stdexcept>

namespace pspin {

int sym_count(int dim) { return dim * (dim + 1) / 2; }

int sym_index(int mu, int nu, int dim) {
  if (mu > nu) std::swap(mu, nu);
  // rows 0..mu-1 hold dim + (dim-1) + ... entries
  return mu * dim - mu * (mu - 1) / 2 + (nu - mu);
}

StateLayout::StateLayout(int n_spatial, int dim_spinor, std::size_t points)
    : n_(n_spatial), sym_(sym_count(n_spatial + 1)), spinor_(dim_spinor), points_(points) {
  if (n_spatial < 1 || dim_spinor < 1 || points == 0) {
    throw std::invalid_argument("StateLayout: invalid dimensions");
  }
}

Mat load_sym(const StateLayout& l, const double* data, int base, std::size_t p) {
  const int d = l.dim();
  Mat m(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      const double v = data[l.offset(base + sym_index(a, b, d)) + p];
      m(a, b) = v;
      m(b, a) = v;
    }
  return m;
}

PointState load_point(const StateVector& s, std::size_t p) {
  const StateLayout& l = s.layout;
  const int n = l.n_spatial();
  PointState ps;
  ps.g = load_sym(l, s.data.data(), l.g(0), p);
  ps.dg[0] = load_sym(l, s.data.data(), l.k(0), p);
  for (int i = 1; i <= n; ++i) ps.dg[i] = load_sym(l, s.data.data(), l.gd(i, 0), p);
  ps.f = s.at(l.f(), p);
  ps.phi.resize(l.dim_spinor());
  for (int c = 0; c < l.dim_spinor(); ++c) ps.phi[c] = cplx(s.at(l.re(c), p), s.at(l.im(c), p));
  return ps;
}

void store_point(StateVector& s, std::size_t p, const PointState& ps) {
  const StateLayout& l = s.layout;
  const int d = l.dim();
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      const int c = sym_index(a, b, d);
      s.at(l.g(c), p) = ps.g(a, b);
      s.at(l.k(c), p) = ps.dg[0](a, b);
      for (int i = 1; i < d; ++i) s.at(l.gd(i, c), p) = ps.dg[i](a, b);
    }
  s.at(l.f(), p) = ps.f;
  for (int c = 0; c < l.dim_spinor(); ++c) {
    s.at(l.re(c), p) = ps.phi[c].real();
    s.at(l.im(c), p) = ps.phi[c].imag();
  }
}

}  // namespace pspin
