#include "pspin/frame.hpp"

namespace pspin {

Mat gram_schmidt_frame(const Mat& g, bool lorentzian) {
  const int d = static_cast<int>(g.rows());
  double gm[kMaxDim * kMaxDim] = {};
  double z[kMaxDim * kMaxDim];
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) gm[i * d + k] = g(i, k);
  gram_schmidt<double>(d, gm, lorentzian, z);
  Mat zeta(d, d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) zeta(i, k) = z[i * d + k];
  return zeta;
}

FrameJet frame_jet(const MetricJet& j, bool lorentzian) {
  const int d = j.dim;
  FrameJet f;
  f.dim = d;
  f.zeta = gram_schmidt_frame(j.g, lorentzian);
  Dual gm[kMaxDim * kMaxDim];
  Dual z[kMaxDim * kMaxDim];
  for (int r = 0; r < d; ++r) {
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) gm[i * d + k] = Dual(j.g(i, k), j.dg[r](i, k));
    gram_schmidt<Dual>(d, gm, lorentzian, z);
    f.dzeta[r].resize(d, d);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) f.dzeta[r](i, k) = z[i * d + k].d;
  }
  return f;
}

Tensor3 connection_coefficients(const FrameJet& f, const Mat& g, const Tensor3& gamma) {
  const int d = f.dim;
  // lowered frame: low(mu, c) = g_mu,sigma zeta^sigma_c
  const Mat low = g * f.zeta;
  Tensor3 conn;
  conn.dim = d;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      // w^mu = zeta^nu_a (d_nu zeta^mu_b + zeta^rho_b Gamma^mu_nu,rho)
      Vec w = Vec::Zero(d);
      for (int nu = 0; nu < d; ++nu) {
        const double za = f.zeta(nu, a);
        if (za == 0.0) continue;
        for (int mu = 0; mu < d; ++mu) {
          double v = f.dzeta[nu](mu, b);
          for (int rho = 0; rho < d; ++rho) v += f.zeta(rho, b) * gamma(mu, nu, rho);
          w[mu] += za * v;
        }
      }
      for (int c = 0; c < d; ++c) conn(a, b, c) = w.dot(low.col(c));
    }
  }
  return conn;
}

std::array<CMat, kMaxDim> spin_connection(const Tensor3& conn, const std::vector<double>& eps,
                                          const std::vector<CMat>& gens) {
  const int d = conn.dim;
  const int s = static_cast<int>(gens.front().rows());
  std::array<CMat, kMaxDim> omega;
  for (int a = 0; a < d; ++a) {
    omega[a] = CMat::Zero(s, s);
    for (int b = 0; b < d; ++b)
      for (int c = b + 1; c < d; ++c) {
        // antisymmetry of conn in (b, c) pairs the two orderings
        const double coef = 0.25 * eps[b] * eps[c] * (conn(a, b, c) - conn(a, c, b));
        if (coef == 0.0) continue;
        omega[a] += coef * (gens[b] * gens[c]);
      }
  }
  return omega;
}

}  // namespace pspin
