#pragma once
// Point-local tensor algebra on metric jets: Christoffel symbols, Ricci, and
// the hyperbolic-reduction quantities E, F, H.

#include "pspin/clifford.hpp"

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>

namespace pspin {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

class SingularMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rank-3 array with runtime extent <= kMaxDim.
struct Tensor3 {
  int dim = 0;
  double c[kMaxDim][kMaxDim][kMaxDim] = {};

  double& operator()(int i, int j, int k) { return c[i][j][k]; }
  double operator()(int i, int j, int k) const { return c[i][j][k]; }
};

// Value, first and (optionally) second partial derivatives of a metric at a
// point: dg[r] = d_r g, ddg[r][s] = d_r d_s g.
struct MetricJet {
  int dim = 0;
  Mat g;
  std::array<Mat, kMaxDim> dg;
  std::array<std::array<Mat, kMaxDim>, kMaxDim> ddg;

  static MetricJet zero(int dim);
};

Mat inverse_metric(const Mat& g);

// Gl(l, a, b) = 1/2 (d_a g_lb + d_b g_la - d_l g_ab)
Tensor3 christoffel_first(const MetricJet& j);
// Gamma^m_ab
Tensor3 christoffel_second(const Mat& gi, const Tensor3& gl);
Tensor3 christoffel(const MetricJet& j);

// d_r Gamma^m_ab, returned as dG[r](m, a, b); needs second derivatives.
std::array<Tensor3, kMaxDim> christoffel_derivative(const MetricJet& j, const Mat& gi,
                                                    const Tensor3& gl);

// Ric_mn = d_l G^l_mn - d_n G^l_ml + G^l_ls G^s_mn - G^l_ns G^s_ml
Mat ricci_local(const MetricJet& j);

double scalar_curvature(const MetricJet& j);

// Gamma_v = g^ab Gl(v, a, b)
Vec contracted_christoffel(const Mat& gi, const Tensor3& gl);

// Quadratic first-derivative terms of the reduced Ricci operator.
Mat reduced_H(const Mat& gi, const Tensor3& gl);

// F_v = g_mv g^ab Gt^m_ab for background Christoffels Gt.
Vec compute_F(const Mat& g, const Mat& gi, const Tensor3& bg_gamma);

// d_r F_v for all r, given the background Christoffels and their derivatives.
Mat compute_dF(const MetricJet& j, const Mat& gi, const Tensor3& bg_gamma,
               const std::array<Tensor3, kMaxDim>& bg_dgamma);

// A^m_ab = Gamma^m_ab - Gt^m_ab
Tensor3 difference_tensor(const Tensor3& gamma, const Tensor3& bg_gamma);

// E_v = -g_mv g^ab A^m_ab
Vec compute_E(const Mat& g, const Mat& gi, const Tensor3& gamma, const Tensor3& bg_gamma);

// Sym(nabla w)_mn = 1/2 (d_m w_n + d_n w_m) - Gamma^r_mn w_r with dw(r, v) = d_r w_v
Mat sym_nabla(const Mat& dw, const Vec& w, const Tensor3& gamma);

// -1/2 g^ab d_a d_b g + Sym(nabla F) + H
Mat reduced_ricci(const MetricJet& j, const Tensor3& bg_gamma,
                  const std::array<Tensor3, kMaxDim>& bg_dgamma);

// d_r E_v from the jet and background data.
Mat compute_dE(const MetricJet& j, const Tensor3& bg_gamma,
               const std::array<Tensor3, kMaxDim>& bg_dgamma);

}  // namespace pspin
