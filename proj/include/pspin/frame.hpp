#pragma once
// Gram-Schmidt frames s_a = zeta^mu_a d_mu and the induced spin connection.

#include "pspin/clifford.hpp"
#include "pspin/dual.hpp"
#include "pspin/tensor.hpp"

#include <stdexcept>
#include <string>

namespace pspin {

class FrameFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Orthonormalizes the coordinate basis (d_0, ..., d_{dim-1}) in order. With
// `lorentzian` the first vector must be timelike and gets eps = -1, otherwise
// all eps = +1. g and zeta are dim x dim row-major; zeta[mu * dim + a] = zeta^mu_a.
template <class S>
void gram_schmidt(int dim, const S* g, bool lorentzian, S* zeta) {
  S s[kMaxDim][kMaxDim];  // s[a][mu]
  double eps[kMaxDim];
  for (int a = 0; a < dim; ++a) {
    eps[a] = (lorentzian && a == 0) ? -1.0 : 1.0;
    S v[kMaxDim];
    for (int mu = 0; mu < dim; ++mu) v[mu] = S(mu == a ? 1.0 : 0.0);
    for (int b = 0; b < a; ++b) {
      // coefficient eps_b g(d_a, s_b)
      S gab = S(0.0);
      for (int mu = 0; mu < dim; ++mu) gab += g[a * dim + mu] * s[b][mu];
      const S c = gab * S(eps[b]);
      for (int mu = 0; mu < dim; ++mu) v[mu] -= c * s[b][mu];
    }
    S norm2 = S(0.0);
    for (int mu = 0; mu < dim; ++mu)
      for (int nu = 0; nu < dim; ++nu) norm2 += g[mu * dim + nu] * v[mu] * v[nu];
    const double sign = eps[a];
    const double n2 = value_of(norm2) * sign;
    if (!(n2 > 1e-14)) {
      throw FrameFailure("Gram-Schmidt breakdown at basis vector " + std::to_string(a) +
                         (sign < 0 ? " (d_0 not timelike)" : " (degenerate spatial block)"));
    }
    using std::sqrt;
    const S inv = S(1.0) / sqrt(norm2 * S(sign));
    for (int mu = 0; mu < dim; ++mu) s[a][mu] = v[mu] * inv;
  }
  for (int mu = 0; mu < dim; ++mu)
    for (int a = 0; a < dim; ++a) zeta[mu * dim + a] = s[a][mu];
}

// Frame and its coordinate derivatives: dzeta[r](mu, a) = d_r zeta^mu_a.
struct FrameJet {
  int dim = 0;
  Mat zeta;
  std::array<Mat, kMaxDim> dzeta;
};

Mat gram_schmidt_frame(const Mat& g, bool lorentzian = true);
FrameJet frame_jet(const MetricJet& j, bool lorentzian = true);

// conn(a, b, c) = g(nabla_{s_a} s_b, s_c) from the frame jet and Gamma^m_ab.
Tensor3 connection_coefficients(const FrameJet& f, const Mat& g, const Tensor3& gamma);

// omega(s_a) = 1/4 sum_{b,c} eps_b eps_c conn(a, b, c) e_b e_c for the given
// Clifford generators e_b (gammas for Lorentzian frames, slice generators for
// Riemannian ones).
std::array<CMat, kMaxDim> spin_connection(const Tensor3& conn, const std::vector<double>& eps,
                                          const std::vector<CMat>& gens);

}  // namespace pspin
