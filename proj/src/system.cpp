#include "pspin/system.hpp"

#include "pspin/simd/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace pspin {

PointGeometry point_geometry(const GammaRep& rep, const PointState& ps) {
  PointGeometry pg;
  const int d = static_cast<int>(ps.g.rows());
  pg.dim = d;
  pg.jet.dim = d;
  pg.jet.g = ps.g;
  for (int r = 0; r < d; ++r) pg.jet.dg[r] = ps.dg[r];
  pg.gi = inverse_metric(ps.g);
  pg.gl = christoffel_first(pg.jet);
  pg.gamma = christoffel_second(pg.gi, pg.gl);
  pg.frame = frame_jet(pg.jet, true);
  pg.conn = connection_coefficients(pg.frame, ps.g, pg.gamma);
  pg.omega = spin_connection(pg.conn, rep.eps, rep.gammas);
  pg.v_frame = dirac_current_frame(rep, ps.phi);
  pg.v_up = pg.frame.zeta * Vec(pg.v_frame);
  pg.v_down = ps.g * pg.v_up;
  return pg;
}

CMat spinor_A0(const GammaRep& rep, const Mat& zeta) {
  CMat m = CMat::Zero(rep.dim_spinor, rep.dim_spinor);
  for (int a = 0; a < rep.dim(); ++a) m -= (rep.eps[a] * zeta(0, a)) * rep.g0_ga[a];
  return m;
}

CMat spinor_Ai(const GammaRep& rep, const Mat& zeta, int i) {
  CMat m = CMat::Zero(rep.dim_spinor, rep.dim_spinor);
  for (int a = 0; a < rep.dim(); ++a) m += (rep.eps[a] * zeta(i, a)) * rep.g0_ga[a];
  return m;
}

CVec spinor_b(const GammaRep& rep, const std::array<CMat, kMaxDim>& omega, const CVec& phi) {
  CVec out = CVec::Zero(rep.dim_spinor);
  for (int a = 0; a < rep.dim(); ++a) out += rep.eps[a] * (rep.g0_ga[a] * (omega[a] * phi));
  return out;
}

Mat metric_source(const PointGeometry& pg, const BackgroundPoint& bg, double f) {
  const Mat H = reduced_H(pg.gi, pg.gl);
  const Vec F = compute_F(pg.jet.g, pg.gi, bg.gamma);
  const Mat dF = compute_dF(pg.jet, pg.gi, bg.gamma, bg.dgamma);
  return -2.0 * H - 2.0 * sym_nabla(dF, F, pg.gamma) + 2.0 * f * (pg.v_down * pg.v_down.transpose());
}

SystemBlocks assemble_blocks(const GammaRep& rep, const PointState& ps, const BackgroundPoint& bg) {
  const PointGeometry pg = point_geometry(rep, ps);
  const int d = pg.dim;
  const int n = d - 1;
  const StateLayout l(n, rep.dim_spinor, 1);
  const int nv = l.vars();
  const int S = l.sym();
  const int s = rep.dim_spinor;
  SystemBlocks B;
  B.A0 = Eigen::MatrixXd::Zero(nv, nv);
  B.A.assign(n, Eigen::MatrixXd::Zero(nv, nv));
  B.b = Eigen::VectorXd::Zero(nv);

  const Mat src = metric_source(pg, bg, ps.f);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      const int c = sym_index(a, b, d);
      B.A0(l.g(c), l.g(c)) = 1.0;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) B.A0(l.gd(i, c), l.gd(j, c)) = pg.gi(i, j);
      B.A0(l.k(c), l.k(c)) = -pg.gi(0, 0);
      for (int i = 1; i <= n; ++i) {
        auto& Ai = B.A[i - 1];
        for (int j = 1; j <= n; ++j) {
          Ai(l.gd(j, c), l.k(c)) = pg.gi(i, j);
          Ai(l.k(c), l.gd(j, c)) = pg.gi(i, j);
        }
        Ai(l.k(c), l.k(c)) = 2.0 * pg.gi(0, i);
      }
      B.b(l.g(c)) = ps.dg[0](a, b);
      B.b(l.k(c)) = src(a, b);
    }
  (void)S;

  B.A0(l.f(), l.f()) = pg.v_up[0];
  for (int i = 1; i <= n; ++i) B.A[i - 1](l.f(), l.f()) = -pg.v_up[i];

  const int r0 = l.re(0);
  B.A0.block(r0, r0, 2 * s, 2 * s) = realify(spinor_A0(rep, pg.frame.zeta));
  for (int i = 1; i <= n; ++i) {
    B.A[i - 1].block(r0, r0, 2 * s, 2 * s) = realify(spinor_Ai(rep, pg.frame.zeta, i));
  }
  const CVec bs = spinor_b(rep, pg.omega, ps.phi);
  for (int c = 0; c < s; ++c) {
    B.b(l.re(c)) = bs[c].real();
    B.b(l.im(c)) = bs[c].imag();
  }
  return B;
}

HyperbolicityReport check_symmetric_hyperbolic(const SystemBlocks& blocks) {
  HyperbolicityReport r;
  r.symmetry_defect = (blocks.A0 - blocks.A0.transpose()).cwiseAbs().maxCoeff();
  for (const auto& a : blocks.A) {
    r.symmetry_defect = std::max(r.symmetry_defect, (a - a.transpose()).cwiseAbs().maxCoeff());
  }
  r.symmetric = r.symmetry_defect == 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blocks.A0, Eigen::EigenvaluesOnly);
  r.min_eig_A0 = es.eigenvalues().minCoeff();
  return r;
}

double min_eig_A0_blockwise(const GammaRep& rep, const PointGeometry& pg) {
  const int n = pg.dim - 1;
  double m = std::min(1.0, -pg.gi(0, 0));
  Eigen::SelfAdjointEigenSolver<Mat> es(pg.gi.bottomRightCorner(n, n), Eigen::EigenvaluesOnly);
  m = std::min(m, es.eigenvalues().minCoeff());
  m = std::min(m, pg.v_up[0]);
  Eigen::SelfAdjointEigenSolver<CMat> ss(spinor_A0(rep, pg.frame.zeta), Eigen::EigenvaluesOnly);
  return std::min(m, ss.eigenvalues().minCoeff());
}

PointRhs point_rhs(const GammaRep& rep, const PointGeometry& pg, const BackgroundPoint& bg,
                   double f, const CVec& phi, const PointDerivs& d) {
  const int n = pg.dim - 1;
  PointRhs r;
  Mat num = metric_source(pg, bg, f);
  for (int a = 0; a < d.active; ++a) {
    const int i = d.coord[a];
    num += 2.0 * pg.gi(0, i) * d.dk[a];
    for (int j = 1; j <= n; ++j) num += pg.gi(i, j) * d.dgd[a][j];
  }
  r.dk = num / (-pg.gi(0, 0));

  r.df = 0.0;
  for (int a = 0; a < d.active; ++a) r.df -= pg.v_up[d.coord[a]] * d.df[a];
  r.df /= pg.v_up[0];

  CVec sp = spinor_b(rep, pg.omega, phi);
  for (int a = 0; a < d.active; ++a) sp += spinor_Ai(rep, pg.frame.zeta, d.coord[a]) * d.dphi[a];
  Eigen::LLT<CMat> llt(spinor_A0(rep, pg.frame.zeta));
  if (llt.info() != Eigen::Success) throw std::runtime_error("spinor block of A0 is not positive definite");
  r.dphi = llt.solve(sp);
  return r;
}

Eigen::VectorXd point_rhs_reference(const SystemBlocks& blocks,
                                    const std::vector<Eigen::VectorXd>& du) {
  Eigen::VectorXd acc = blocks.b;
  for (std::size_t i = 0; i < blocks.A.size(); ++i) acc += blocks.A[i] * du[i];
  return blocks.A0.ldlt().solve(acc);
}

namespace {

// point_geometry with the failing grid point attached to the error.
PointGeometry geometry_at(const GammaRep& rep, const PointState& ps, std::size_t p, double t) {
  try {
    return point_geometry(rep, ps);
  } catch (const FrameFailure& e) {
    throw FrameFailure(std::string(e.what()) + " at point " + std::to_string(p) + ", t = " + std::to_string(t));
  } catch (const SingularMetric& e) {
    throw SingularMetric(std::string(e.what()) + " at point " + std::to_string(p) + ", t = " + std::to_string(t));
  }
}

}  // namespace

System::System(const GammaRep& rep, Grid grid, BackgroundMetric bg, int order, BoundaryMode boundary)
    : rep_(rep), grid_(std::move(grid)), bg_(std::move(bg)), order_(order), boundary_(boundary) {
  stencil_half_width(order_);
  if (grid_.n_spatial() != rep_.n_spatial || bg_.n_spatial != rep_.n_spatial) {
    throw std::invalid_argument("System: spatial dimension mismatch");
  }
}

StateLayout System::layout() const {
  return StateLayout(rep_.n_spatial, rep_.dim_spinor, grid_.size());
}

int System::frozen_width() const {
  return boundary_ == BoundaryMode::Frozen ? boundary_width() : 0;
}

int System::boundary_width() const {
  for (const auto& ax : grid_.axes())
    if (!ax.periodic) return stencil_half_width(order_);
  return 0;
}

std::vector<std::vector<double>> System::derivatives(const StateVector& u) const {
  std::vector<std::vector<double>> d(grid_.active_count());
  for (int a = 0; a < grid_.active_count(); ++a) {
    d[a].resize(u.data.size());
    derivative_along_axis(grid_, u.data.data(), u.layout.vars(), a, order_, d[a].data());
  }
  return d;
}

PointDerivs System::point_derivs(const StateLayout& l, const std::vector<std::vector<double>>& d,
                                 std::size_t p) const {
  PointDerivs pd;
  pd.active = grid_.active_count();
  const int n = l.n_spatial();
  for (int a = 0; a < pd.active; ++a) {
    pd.coord[a] = grid_.axis(a).coord;
    const double* base = d[a].data();
    pd.dk[a] = load_sym(l, base, l.k(0), p);
    for (int j = 1; j <= n; ++j) pd.dgd[a][j] = load_sym(l, base, l.gd(j, 0), p);
    pd.df[a] = base[l.offset(l.f()) + p];
    pd.dphi[a].resize(l.dim_spinor());
    for (int c = 0; c < l.dim_spinor(); ++c) {
      pd.dphi[a][c] = cplx(base[l.offset(l.re(c)) + p], base[l.offset(l.im(c)) + p]);
    }
  }
  return pd;
}

void System::rhs(const StateVector& u, StateVector& dudt) const {
  const StateLayout& l = u.layout;
  if (dudt.data.size() != u.data.size()) dudt = StateVector(l);
  dudt.t = u.t;
  const auto d = derivatives(u);
  const int dim = l.dim();
  const int n = l.n_spatial();
  const int frozen = frozen_width();
  double x[kMaxDim];
  for (std::size_t p = 0; p < l.points(); ++p) {
    if (frozen > 0 && grid_.cells_from_boundary(p) < frozen) {
      for (int v = 0; v < l.vars(); ++v) dudt.at(v, p) = 0.0;
      continue;
    }
    const PointState ps = load_point(u, p);
    const PointGeometry pg = geometry_at(rep_, ps, p, u.t);
    grid_.coordinates(p, u.t, x);
    const BackgroundPoint bgp = background_point(bg_, x);
    const PointDerivs pd = point_derivs(l, d, p);
    const PointRhs r = point_rhs(rep_, pg, bgp, ps.f, ps.phi, pd);
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        const int c = sym_index(a, b, dim);
        dudt.at(l.g(c), p) = ps.dg[0](a, b);
        dudt.at(l.k(c), p) = r.dk(a, b);
        for (int j = 1; j <= n; ++j) {
          const int ax = grid_.axis_of_coord(j);
          dudt.at(l.gd(j, c), p) = ax < 0 ? 0.0 : pd.dk[ax](a, b);
        }
      }
    dudt.at(l.f(), p) = r.df;
    for (int c = 0; c < l.dim_spinor(); ++c) {
      dudt.at(l.re(c), p) = r.dphi[c].real();
      dudt.at(l.im(c), p) = r.dphi[c].imag();
    }
  }
}

double System::max_speed_over_dx(const StateVector& u) const {
  const StateLayout& l = u.layout;
  const int n = l.n_spatial();
  double worst = 0.0;
  for (std::size_t p = 0; p < l.points(); ++p) {
    const PointGeometry pg = geometry_at(rep_, load_point(u, p), p, u.t);
    Eigen::MatrixXd a0 = Eigen::MatrixXd::Zero(n + 2, n + 2);
    a0(0, 0) = 1.0;
    a0.block(1, 1, n, n) = pg.gi.bottomRightCorner(n, n);
    a0(n + 1, n + 1) = -pg.gi(0, 0);
    const RMat s0 = realify(spinor_A0(rep_, pg.frame.zeta));
    for (int a = 0; a < grid_.active_count(); ++a) {
      const int i = grid_.axis(a).coord;
      Eigen::MatrixXd ai = Eigen::MatrixXd::Zero(n + 2, n + 2);
      for (int j = 1; j <= n; ++j) {
        ai(j, n + 1) = pg.gi(i, j);
        ai(n + 1, j) = pg.gi(i, j);
      }
      ai(n + 1, n + 1) = 2.0 * pg.gi(0, i);
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> gm(ai, a0, Eigen::EigenvaluesOnly);
      double c = gm.eigenvalues().cwiseAbs().maxCoeff();
      c = std::max(c, std::abs(pg.v_up[i] / pg.v_up[0]));
      const Eigen::MatrixXd si = realify(spinor_Ai(rep_, pg.frame.zeta, i));
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> gs(si, Eigen::MatrixXd(s0),
                                                                 Eigen::EigenvaluesOnly);
      c = std::max(c, gs.eigenvalues().cwiseAbs().maxCoeff());
      worst = std::max(worst, c / grid_.axis(a).spacing);
    }
  }
  return worst;
}

double System::min_eig_A0(const StateVector& u) const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < u.layout.points(); ++p) {
    m = std::min(m, min_eig_A0_blockwise(rep_, geometry_at(rep_, load_point(u, p), p, u.t)));
  }
  return m;
}

}  // namespace pspin
