#include "pspin/tensor.hpp"

#include <cmath>

namespace pspin {

MetricJet MetricJet::zero(int dim) {
  MetricJet j;
  j.dim = dim;
  j.g = Mat::Zero(dim, dim);
  for (int r = 0; r < dim; ++r) {
    j.dg[r] = Mat::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) j.ddg[r][s] = Mat::Zero(dim, dim);
  }
  return j;
}

Mat inverse_metric(const Mat& g) {
  Eigen::FullPivLU<Mat> lu(g);
  const double scale = g.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale) ||
      std::abs(lu.determinant()) <= 1e-13 * std::pow(scale, g.rows())) {
    throw SingularMetric("metric is singular or not finite");
  }
  Mat gi = lu.inverse();
  return 0.5 * (gi + gi.transpose());
}

Tensor3 christoffel_first(const MetricJet& j) {
  Tensor3 gl;
  gl.dim = j.dim;
  for (int l = 0; l < j.dim; ++l)
    for (int a = 0; a < j.dim; ++a)
      for (int b = a; b < j.dim; ++b) {
        const double v = 0.5 * (j.dg[a](l, b) + j.dg[b](l, a) - j.dg[l](a, b));
        gl(l, a, b) = v;
        gl(l, b, a) = v;
      }
  return gl;
}

Tensor3 christoffel_second(const Mat& gi, const Tensor3& gl) {
  Tensor3 g2;
  const int d = gl.dim;
  g2.dim = d;
  for (int m = 0; m < d; ++m)
    for (int a = 0; a < d; ++a)
      for (int b = a; b < d; ++b) {
        double v = 0.0;
        for (int l = 0; l < d; ++l) v += gi(m, l) * gl(l, a, b);
        g2(m, a, b) = v;
        g2(m, b, a) = v;
      }
  return g2;
}

Tensor3 christoffel(const MetricJet& j) {
  return christoffel_second(inverse_metric(j.g), christoffel_first(j));
}

std::array<Tensor3, kMaxDim> christoffel_derivative(const MetricJet& j, const Mat& gi,
                                                    const Tensor3& gl) {
  const int d = j.dim;
  std::array<Tensor3, kMaxDim> out;
  for (int r = 0; r < d; ++r) {
    const Mat dgi = -gi * j.dg[r] * gi;
    Tensor3 dgl;
    dgl.dim = d;
    for (int l = 0; l < d; ++l)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          dgl(l, a, b) = 0.5 * (j.ddg[r][a](l, b) + j.ddg[r][b](l, a) - j.ddg[r][l](a, b));
    Tensor3& o = out[r];
    o.dim = d;
    for (int m = 0; m < d; ++m)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          double v = 0.0;
          for (int l = 0; l < d; ++l) v += dgi(m, l) * gl(l, a, b) + gi(m, l) * dgl(l, a, b);
          o(m, a, b) = v;
        }
  }
  return out;
}

Mat ricci_local(const MetricJet& j) {
  const int d = j.dim;
  const Mat gi = inverse_metric(j.g);
  const Tensor3 gl = christoffel_first(j);
  const Tensor3 G = christoffel_second(gi, gl);
  const auto dG = christoffel_derivative(j, gi, gl);
  Mat ric = Mat::Zero(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = m; n < d; ++n) {
      double v = 0.0;
      for (int l = 0; l < d; ++l) {
        v += dG[l](l, m, n) - dG[n](l, m, l);
        for (int s = 0; s < d; ++s) v += G(l, l, s) * G(s, m, n) - G(l, n, s) * G(s, m, l);
      }
      ric(m, n) = v;
      ric(n, m) = v;
    }
  return ric;
}

double scalar_curvature(const MetricJet& j) {
  const Mat gi = inverse_metric(j.g);
  return (gi.cwiseProduct(ricci_local(j))).sum();
}

Vec contracted_christoffel(const Mat& gi, const Tensor3& gl) {
  const int d = gl.dim;
  Vec out = Vec::Zero(d);
  for (int v = 0; v < d; ++v)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) out[v] += gi(a, b) * gl(v, a, b);
  return out;
}

Mat reduced_H(const Mat& gi, const Tensor3& gl) {
  const int d = gl.dim;
  Tensor3 up;  // up(b, c, m) = g^ab Gl(c, a, m)
  up.dim = d;
  for (int b = 0; b < d; ++b)
    for (int c = 0; c < d; ++c)
      for (int m = 0; m < d; ++m) {
        double v = 0.0;
        for (int a = 0; a < d; ++a) v += gi(a, b) * gl(c, a, m);
        up(b, c, m) = v;
      }
  Mat h = Mat::Zero(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      double v = 0.0;
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            const double gce = gi(c, e);
            if (gce == 0.0) continue;
            v += gce * (up(b, c, m) * (gl(e, b, n) + gl(n, b, e)) + up(b, c, n) * gl(m, b, e));
          }
      h(m, n) = v;
    }
  return 0.5 * (h + h.transpose());
}

Vec compute_F(const Mat& g, const Mat& gi, const Tensor3& bg_gamma) {
  const int d = bg_gamma.dim;
  Vec up = Vec::Zero(d);  // g^ab Gt^m_ab
  for (int m = 0; m < d; ++m)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) up[m] += gi(a, b) * bg_gamma(m, a, b);
  return g * up;
}

Mat compute_dF(const MetricJet& j, const Mat& gi, const Tensor3& bg_gamma,
               const std::array<Tensor3, kMaxDim>& bg_dgamma) {
  const int d = j.dim;
  Vec up = Vec::Zero(d);
  for (int m = 0; m < d; ++m)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) up[m] += gi(a, b) * bg_gamma(m, a, b);
  Mat out(d, d);
  for (int r = 0; r < d; ++r) {
    const Mat dgi = -gi * j.dg[r] * gi;
    Vec dup = Vec::Zero(d);
    for (int m = 0; m < d; ++m)
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          dup[m] += dgi(a, b) * bg_gamma(m, a, b) + gi(a, b) * bg_dgamma[r](m, a, b);
    const Vec row = j.dg[r] * up + j.g * dup;
    out.row(r) = row.transpose();
  }
  return out;
}

Tensor3 difference_tensor(const Tensor3& gamma, const Tensor3& bg_gamma) {
  Tensor3 a;
  a.dim = gamma.dim;
  for (int m = 0; m < a.dim; ++m)
    for (int i = 0; i < a.dim; ++i)
      for (int k = 0; k < a.dim; ++k) a(m, i, k) = gamma(m, i, k) - bg_gamma(m, i, k);
  return a;
}

Vec compute_E(const Mat& g, const Mat& gi, const Tensor3& gamma, const Tensor3& bg_gamma) {
  const Tensor3 A = difference_tensor(gamma, bg_gamma);
  return -compute_F(g, gi, A);
}

Mat sym_nabla(const Mat& dw, const Vec& w, const Tensor3& gamma) {
  const int d = gamma.dim;
  Mat out(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) {
      double v = 0.5 * (dw(m, n) + dw(n, m));
      for (int r = 0; r < d; ++r) v -= gamma(r, m, n) * w[r];
      out(m, n) = v;
    }
  return out;
}

Mat reduced_ricci(const MetricJet& j, const Tensor3& bg_gamma,
                  const std::array<Tensor3, kMaxDim>& bg_dgamma) {
  const int d = j.dim;
  const Mat gi = inverse_metric(j.g);
  const Tensor3 gl = christoffel_first(j);
  const Tensor3 G = christoffel_second(gi, gl);
  Mat box = Mat::Zero(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) box += gi(a, b) * j.ddg[a][b];
  const Vec F = compute_F(j.g, gi, bg_gamma);
  const Mat dF = compute_dF(j, gi, bg_gamma, bg_dgamma);
  return -0.5 * box + sym_nabla(dF, F, G) + reduced_H(gi, gl);
}

Mat compute_dE(const MetricJet& j, const Tensor3& bg_gamma,
               const std::array<Tensor3, kMaxDim>& bg_dgamma) {
  const int d = j.dim;
  const Mat gi = inverse_metric(j.g);
  const Tensor3 gl = christoffel_first(j);
  const Mat dF = compute_dF(j, gi, bg_gamma, bg_dgamma);
  Mat out(d, d);
  for (int r = 0; r < d; ++r) {
    const Mat dgi = -gi * j.dg[r] * gi;
    for (int v = 0; v < d; ++v) {
      double dgam = 0.0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const double dgl = 0.5 * (j.ddg[r][a](v, b) + j.ddg[r][b](v, a) - j.ddg[r][v](a, b));
          dgam += dgi(a, b) * gl(v, a, b) + gi(a, b) * dgl;
        }
      out(r, v) = dF(r, v) - dgam;
    }
  }
  return out;
}

}  // namespace pspin
