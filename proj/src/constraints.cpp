#include "pspin/constraints.hpp"

#include <cmath>
#include <stdexcept>

namespace pspin {

std::vector<CMat> riemannian_generators(const GammaRep& rep) {
  const cplx i(0.0, 1.0);
  std::vector<CMat> out;
  for (int j = 1; j <= rep.n_spatial; ++j) out.push_back(i * rep.g0_ga[j]);
  return out;
}

CVec riemannian_clifford(const GammaRep& rep, std::span<const double> X, const CVec& psi) {
  if (static_cast<int>(X.size()) != rep.n_spatial || psi.size() != rep.dim_spinor) {
    throw std::invalid_argument("riemannian_clifford: dimension mismatch");
  }
  const cplx i(0.0, 1.0);
  CVec out = CVec::Zero(rep.dim_spinor);
  for (int j = 0; j < rep.n_spatial; ++j) out += (i * X[j]) * (rep.g0_ga[j + 1] * psi);
  return out;
}

RVec riemannian_dirac_current(const GammaRep& rep, const CVec& psi) {
  RVec U(rep.n_spatial);
  for (int j = 0; j < rep.n_spatial; ++j) U[j] = psi.dot(rep.g0_ga[j + 1] * psi).real();
  return U;
}

CVec algebraic_residual_with_current(const GammaRep& rep, const RVec& U, double u,
                                     const CVec& phi) {
  const cplx i(0.0, 1.0);
  return riemannian_clifford(rep, std::span<const double>(U.data(), U.size()), phi) - (i * u) * phi;
}

CVec algebraic_residual(const GammaRep& rep, const CVec& phi) {
  return algebraic_residual_with_current(rep, riemannian_dirac_current(rep, phi),
                                         phi.squaredNorm(), phi);
}

CVec project_to_constraint(const GammaRep& rep, const CVec& psi, double tol, int max_iter) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("project_to_constraint: zero spinor");
  CVec v = psi;
  const int d = rep.dim_spinor;
  for (int it = 0; it < max_iter; ++it) {
    const RVec U = riemannian_dirac_current(rep, v);
    const double un = U.norm();
    if (un > 0.0) {
      CMat m = CMat::Zero(d, d);
      for (int j = 0; j < rep.n_spatial; ++j) m += (U[j] / un) * rep.g0_ga[j + 1];
      const CVec next = 0.5 * (v + m * v);
      if (next.norm() > 1e-12 * norm) v = next * (norm / next.norm());
    } else {
      // zero current: any direction works as a seed
      const CVec next = 0.5 * (v + rep.g0_ga[1] * v);
      v = next.norm() > 1e-12 * norm ? CVec(next * (norm / next.norm()))
                                     : CVec(0.5 * (v - rep.g0_ga[1] * v));
    }
    if (algebraic_residual(rep, v).norm() <= tol * norm * norm * norm) return v;
  }
  throw std::runtime_error("project_to_constraint: eigenprojection did not converge");
}

namespace {

std::vector<double> component(const std::vector<Mat>& f, int i, int j) {
  std::vector<double> out(f.size());
  for (std::size_t p = 0; p < f.size(); ++p) out[p] = f[p](i, j);
  return out;
}

}  // namespace

std::vector<SlicePoint> slice_geometry(const InitialSurfaceData& data, int order) {
  const Grid& grid = data.grid;
  const int n = grid.n_spatial();
  const std::size_t np = grid.size();
  std::vector<SlicePoint> pts(np);
  for (std::size_t p = 0; p < np; ++p) {
    pts[p].jet = MetricJet::zero(n);
    pts[p].jet.g = data.g_sigma[p];
    for (int k = 0; k < n; ++k) {
      pts[p].dW[k] = Mat::Zero(n, n);
      pts[p].dphi[k] = CVec::Zero(data.phi[p].size());
    }
  }
  // metric first and second derivatives, W and phi derivatives
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto gij = component(data.g_sigma, i, j);
      for (int k = 0; k < n; ++k) {
        const auto d1 = spatial_derivative(grid, gij, k + 1, order);
        for (int l = 0; l < n; ++l) {
          const auto d2 = spatial_derivative(grid, d1, l + 1, order);
          for (std::size_t p = 0; p < np; ++p) {
            pts[p].jet.ddg[l][k](i, j) += 0.5 * d2[p];
            pts[p].jet.ddg[k][l](i, j) += 0.5 * d2[p];
          }
        }
        for (std::size_t p = 0; p < np; ++p) pts[p].jet.dg[k](i, j) = d1[p];
      }
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    auto& jt = pts[p].jet;
    for (int k = 0; k < n; ++k) {
      jt.dg[k] = jt.dg[k].selfadjointView<Eigen::Upper>();
      for (int l = 0; l < n; ++l) jt.ddg[k][l] = jt.ddg[k][l].selfadjointView<Eigen::Upper>();
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto wij = component(data.W, i, j);
      for (int k = 0; k < n; ++k) {
        const auto d = spatial_derivative(grid, wij, k + 1, order);
        for (std::size_t p = 0; p < np; ++p) pts[p].dW[k](i, j) = d[p];
      }
    }
  const int s = static_cast<int>(data.phi.front().size());
  std::vector<double> re(np), im(np);
  for (int c = 0; c < s; ++c) {
    for (std::size_t p = 0; p < np; ++p) {
      re[p] = data.phi[p][c].real();
      im[p] = data.phi[p][c].imag();
    }
    for (int k = 0; k < n; ++k) {
      const auto dr = spatial_derivative(grid, re, k + 1, order);
      const auto di = spatial_derivative(grid, im, k + 1, order);
      for (std::size_t p = 0; p < np; ++p) pts[p].dphi[k][c] = cplx(dr[p], di[p]);
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    auto& sp = pts[p];
    sp.gi = inverse_metric(sp.jet.g);
    sp.gamma = christoffel_second(sp.gi, christoffel_first(sp.jet));
    sp.frame = frame_jet(sp.jet, false);
  }
  return pts;
}

std::vector<CVec> killing_residual_at(const GammaRep& rep, const InitialSurfaceData& data,
                                      const SlicePoint& sp, std::size_t p) {
  const int n = data.n_spatial();
  const auto gens = riemannian_generators(rep);
  const std::vector<double> eps(n, 1.0);
  const Tensor3 conn = connection_coefficients(sp.frame, sp.jet.g, sp.gamma);
  const auto omega = spin_connection(conn, eps, gens);
  // frame components of W: W(e_j) = sum_k Wf(k, j) e_k
  const Mat Wf = sp.frame.zeta.inverse() * data.W[p] * sp.frame.zeta;
  const cplx i(0.0, 1.0);
  const CVec& phi = data.phi[p];
  std::vector<CVec> out;
  for (int j = 0; j < n; ++j) {
    CVec r = omega[j] * phi;
    for (int mu = 0; mu < n; ++mu) r += sp.frame.zeta(mu, j) * sp.dphi[mu];
    for (int k = 0; k < n; ++k) r -= (0.5 * i * Wf(k, j)) * (gens[k] * phi);
    out.push_back(r);
  }
  return out;
}

double f_on_slice_at(const InitialSurfaceData& data, const SlicePoint& sp, std::size_t p) {
  const Mat& W = data.W[p];
  const double u = data.phi[p].squaredNorm();
  if (!(u > 0.0)) throw std::domain_error("f_on_slice: spinor vanishes (u_phi = 0)");
  const double scal = (sp.gi.cwiseProduct(ricci_local(sp.jet))).sum();
  const double tr = W.trace();
  const double tr2 = (W * W).trace();
  return (scal - tr2 + tr * tr) / (2.0 * u * u);
}

namespace {

// (nabla_k W)^i_j
double nabla_W(const SlicePoint& sp, const Mat& W, int k, int i, int j) {
  const int n = sp.jet.dim;
  double v = sp.dW[k](i, j);
  for (int m = 0; m < n; ++m) v += sp.gamma(i, k, m) * W(m, j) - sp.gamma(m, k, j) * W(i, m);
  return v;
}

}  // namespace

Vec codazzi_residual_at(const InitialSurfaceData& data, const SlicePoint& sp, std::size_t p) {
  const int n = data.n_spatial();
  const Mat& W = data.W[p];
  Vec r(n);
  for (int j = 0; j < n; ++j) {
    double dtr = 0.0, div = 0.0;
    for (int i = 0; i < n; ++i) {
      dtr += sp.dW[j](i, i);
      div += nabla_W(sp, W, i, i, j);
    }
    r[j] = dtr - div;
  }
  return r;
}

Vec momentum_identity_residual_at(const GammaRep& rep, const InitialSurfaceData& data,
                                  const SlicePoint& sp, std::size_t p) {
  const RVec Uf = riemannian_dirac_current(rep, data.phi[p]);
  const Vec Ucoord = sp.frame.zeta * Vec(Uf);
  const Vec Uflat = sp.jet.g * Ucoord;
  const double u = data.phi[p].squaredNorm();
  const double f = f_on_slice_at(data, sp, p);
  return codazzi_residual_at(data, sp, p) - f * u * Uflat;
}

double codazzi_symmetry_defect_at(const InitialSurfaceData& data, const SlicePoint& sp,
                                  std::size_t p) {
  const int n = data.n_spatial();
  const Mat& W = data.W[p];
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double a = 0.0, b = 0.0;
        for (int l = 0; l < n; ++l) {
          a += sp.jet.g(j, l) * nabla_W(sp, W, i, l, k);
          b += sp.jet.g(i, l) * nabla_W(sp, W, j, l, k);
        }
        worst = std::max(worst, std::abs(a - b));
      }
  return worst;
}

ConstraintReport check_constraints(const GammaRep& rep, const InitialSurfaceData& data, int order,
                                   int margin) {
  if (rep.n_spatial != data.n_spatial()) throw std::invalid_argument("check_constraints: n mismatch");
  const auto pts = slice_geometry(data, order);
  ConstraintReport r;
  r.u_min = std::numeric_limits<double>::infinity();
  r.f_sigma.resize(data.grid.size());
  for (std::size_t p = 0; p < data.grid.size(); ++p) {
    const SlicePoint& sp = pts[p];
    const double u = data.phi[p].squaredNorm();
    r.f_sigma[p] = f_on_slice_at(data, sp, p);
    if (data.grid.cells_from_boundary(p) < margin) continue;
    r.u_min = std::min(r.u_min, u);
    double k2 = 0.0;
    for (const auto& v : killing_residual_at(rep, data, sp, p)) k2 += v.squaredNorm();
    r.killing_residual_norm = std::max(r.killing_residual_norm, std::sqrt(k2));
    r.algebraic_residual_norm =
        std::max(r.algebraic_residual_norm, algebraic_residual(rep, data.phi[p]).norm());
    r.codazzi_residual_norm =
        std::max(r.codazzi_residual_norm, codazzi_residual_at(data, sp, p).cwiseAbs().maxCoeff());
    r.momentum_identity_residual =
        std::max(r.momentum_identity_residual,
                 momentum_identity_residual_at(rep, data, sp, p).cwiseAbs().maxCoeff());
    r.f_sigma_max = std::max(r.f_sigma_max, std::abs(r.f_sigma[p]));
    const Mat Wl = sp.jet.g * data.W[p];
    r.w_symmetry_defect = std::max(r.w_symmetry_defect, (Wl - Wl.transpose()).cwiseAbs().maxCoeff());
    r.codazzi_symmetry_defect =
        std::max(r.codazzi_symmetry_defect, codazzi_symmetry_defect_at(data, sp, p));
    const RVec U = riemannian_dirac_current(rep, data.phi[p]);
    const Vec Uc = sp.frame.zeta * Vec(U);
    const double unorm = std::sqrt(std::max(0.0, Uc.dot(sp.jet.g * Uc)));
    r.current_norm_defect = std::max(r.current_norm_defect, std::abs(unorm - u));
  }
  return r;
}

std::vector<double> f_on_slice(const InitialSurfaceData& data, int order) {
  const auto pts = slice_geometry(data, order);
  std::vector<double> f(data.grid.size());
  for (std::size_t p = 0; p < f.size(); ++p) f[p] = f_on_slice_at(data, pts[p], p);
  return f;
}

}  // namespace pspin
