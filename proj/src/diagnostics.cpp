#include "pspin/diagnostics.hpp"

#include "pspin/simd/kernels.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace pspin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Fourth-order first-derivative weights at position p of a five-point window.
constexpr double kTimeWeights[5][5] = {
    {-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25},
    {-0.25, -5.0 / 6.0, 1.5, -0.5, 1.0 / 12.0},
    {1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0},
    {-1.0 / 12.0, 0.5, -1.5, 5.0 / 6.0, 0.25},
    {0.25, -4.0 / 3.0, 3.0, -4.0, 25.0 / 12.0},
};

// Frame components T(s_a, s_b) of a covariant 2-tensor.
Mat frame_components(const Mat& zeta, const Mat& t) { return zeta.transpose() * t * zeta; }

double vec_norm(const std::vector<CVec>& v, int from, int to) {
  double s = 0.0;
  for (int d = from; d < to; ++d) s += v[d].squaredNorm();
  return std::sqrt(s);
}

NormPair norms(const std::vector<double>& v) {
  const auto& k = simd::active_kernels();
  NormPair out;
  if (v.empty()) return out;
  out.sup = k.max_abs(v.data(), v.size());
  out.l2 = std::sqrt(k.sum_squares(v.data(), v.size()) / static_cast<double>(v.size()));
  return out;
}

PointTimeDerivs extract_time_derivs(const StateVector& dudt, std::size_t p) {
  const StateLayout& l = dudt.layout;
  PointTimeDerivs td;
  td.dk = load_sym(l, dudt.data.data(), l.k(0), p);
  td.df = dudt.at(l.f(), p);
  td.dphi.resize(l.dim_spinor());
  for (int c = 0; c < l.dim_spinor(); ++c) td.dphi[c] = cplx(dudt.at(l.re(c), p), dudt.at(l.im(c), p));
  return td;
}

// Full 2-jet from the state, its spatial derivatives and d_t k.
MetricJet full_jet(const PointGeometry& pg, const PointDerivs& d, const Mat& dt_k) {
  MetricJet j = pg.jet;
  const int dim = pg.dim;
  for (int r = 0; r < dim; ++r)
    for (int s = 0; s < dim; ++s) j.ddg[r][s] = Mat::Zero(dim, dim);
  j.ddg[0][0] = dt_k;
  for (int a = 0; a < d.active; ++a) {
    const int i = d.coord[a];
    j.ddg[0][i] = d.dk[a];
    j.ddg[i][0] = d.dk[a];
    for (int b = 0; b < d.active; ++b) {
      const int jj = d.coord[b];
      j.ddg[i][jj] = 0.5 * (d.dgd[a][jj] + d.dgd[b][i]);
    }
  }
  return j;
}

}  // namespace

std::vector<CVec> covariant_spinor_derivative(const GammaRep& rep, const PointGeometry& pg,
                                              const CVec& phi, const CVec& dt_phi,
                                              const PointDerivs& d) {
  std::vector<CVec> alpha(rep.dim());
  for (int a = 0; a < rep.dim(); ++a) {
    CVec v = pg.frame.zeta(0, a) * dt_phi + pg.omega[a] * phi;
    for (int b = 0; b < d.active; ++b) v += pg.frame.zeta(d.coord[b], a) * d.dphi[b];
    alpha[a] = v;
  }
  return alpha;
}

PointDiagnostics point_diagnostics(const System& sys, const PointState& ps,
                                   const PointGeometry& pg, const BackgroundPoint& bg,
                                   const PointDerivs& d, const PointTimeDerivs& td) {
  const GammaRep& rep = sys.rep();
  const int dim = pg.dim;
  const Mat& zeta = pg.frame.zeta;
  PointDiagnostics out;

  const std::vector<CVec> alpha = covariant_spinor_derivative(rep, pg, ps.phi, td.dphi, d);
  out.alpha = vec_norm(alpha, 0, dim);
  out.alpha_time = vec_norm(alpha, 0, 1);
  out.alpha_spatial = vec_norm(alpha, 1, dim);

  CVec dirac = CVec::Zero(rep.dim_spinor);
  for (int a = 0; a < dim; ++a) dirac += rep.eps[a] * (rep.gammas[a] * alpha[a]);
  out.dirac = dirac.norm();

  const MetricJet jet = full_jet(pg, d, td.dk);
  const Vec E = compute_E(pg.jet.g, pg.gi, pg.gamma, bg.gamma);
  const Mat dE = compute_dE(jet, bg.gamma, bg.dgamma);
  Mat nablaE = dE;
  for (int m = 0; m < dim; ++m)
    for (int v = 0; v < dim; ++v)
      for (int r = 0; r < dim; ++r) nablaE(m, v) -= pg.gamma(r, m, v) * E[r];
  out.eta = (zeta.transpose() * E).norm();
  out.beta = frame_components(zeta, nablaE).norm();

  out.chi = clifford_action(rep, std::span<const double>(pg.v_frame.data(), pg.v_frame.size()),
                            ps.phi)
                .norm();
  double vv = 0.0;
  for (int a = 0; a < dim; ++a) vv += rep.eps[a] * pg.v_frame[a] * pg.v_frame[a];
  out.kappa = std::abs(vv);

  out.ricci = ricci_local(jet);
  const double scal = pg.gi.cwiseProduct(out.ricci).sum();
  out.einstein = out.ricci - 0.5 * scal * pg.jet.g;
  const Mat resid = out.ricci - ps.f * (pg.v_down * pg.v_down.transpose()) +
                    sym_nabla(dE, E, pg.gamma);
  out.ricci_residual = frame_components(zeta, resid).norm();
  out.ricci_plain = frame_components(zeta, out.ricci).norm();

  double ft = pg.v_up[0] * td.df;
  for (int a = 0; a < d.active; ++a) ft += pg.v_up[d.coord[a]] * d.df[a];
  out.f_transport = std::abs(ft);
  return out;
}

std::vector<std::size_t> included_points(const System& sys, double t, const NormRegion& region) {
  const Grid& grid = sys.grid();
  std::vector<std::size_t> pts;
  bool bounded = false;
  for (const auto& ax : grid.axes()) bounded = bounded || !ax.periodic;
  if (!bounded) {
    pts.resize(grid.size());
    for (std::size_t p = 0; p < grid.size(); ++p) pts[p] = p;
    return pts;
  }
  double dx = std::numeric_limits<double>::infinity();
  for (const auto& ax : grid.axes())
    if (!ax.periodic) dx = std::min(dx, ax.spacing);
  const int grow = static_cast<int>(std::ceil(region.speed * t / dx - 1e-9));
  const int need = sys.boundary_width() + region.base_margin + std::max(grow, 0);
  for (std::size_t p = 0; p < grid.size(); ++p)
    if (grid.cells_from_boundary(p) >= need) pts.push_back(p);
  return pts;
}

std::vector<PointTimeDerivs> rhs_time_derivs(const System& sys, const StateVector& u) {
  StateVector dudt(u.layout);
  sys.rhs(u, dudt);
  std::vector<PointTimeDerivs> td(u.layout.points());
  for (std::size_t p = 0; p < td.size(); ++p) td[p] = extract_time_derivs(dudt, p);
  return td;
}

std::vector<PointTimeDerivs> history_time_derivs(const std::vector<const StateVector*>& window,
                                                 int pos, double dt) {
  if (window.size() != 5 || pos < 0 || pos > 4 || !(dt > 0.0)) {
    throw std::invalid_argument("history_time_derivs needs five slices, pos in 0..4, dt > 0");
  }
  const StateLayout& l = window[0]->layout;
  StateVector dudt(l);
  const double* rows[5];
  double w[5];
  for (int s = 0; s < 5; ++s) {
    rows[s] = window[s]->data.data();
    w[s] = kTimeWeights[pos][s] / dt;
  }
  simd::active_kernels().weighted_sum(rows, w, 5, dudt.data.data(), dudt.data.size());
  std::vector<PointTimeDerivs> td(l.points());
  for (std::size_t p = 0; p < td.size(); ++p) td[p] = extract_time_derivs(dudt, p);
  return td;
}

MonitorReport monitor_with_time_derivs(const System& sys, const StateVector& u,
                                       const std::vector<PointTimeDerivs>& td,
                                       const NormRegion& region) {
  const std::vector<std::size_t> pts = included_points(sys, u.t, region);
  const auto d = sys.derivatives(u);
  const std::size_t m = pts.size();
  std::vector<double> alpha(m), alpha_s(m), alpha_t(m), beta(m), chi(m), eta(m), kappa(m);
  std::vector<double> rres(m), rplain(m), dirac(m), ftr(m);
  double x[kMaxDim];
  for (std::size_t q = 0; q < m; ++q) {
    const std::size_t p = pts[q];
    const PointState ps = load_point(u, p);
    const PointGeometry pg = point_geometry(sys.rep(), ps);
    sys.grid().coordinates(p, u.t, x);
    const BackgroundPoint bg = background_point(sys.background(), x);
    const PointDerivs pd = sys.point_derivs(u.layout, d, p);
    const PointDiagnostics pdg = point_diagnostics(sys, ps, pg, bg, pd, td[p]);
    alpha[q] = pdg.alpha;
    alpha_s[q] = pdg.alpha_spatial;
    alpha_t[q] = pdg.alpha_time;
    beta[q] = pdg.beta;
    chi[q] = pdg.chi;
    eta[q] = pdg.eta;
    kappa[q] = pdg.kappa;
    rres[q] = pdg.ricci_residual;
    rplain[q] = pdg.ricci_plain;
    dirac[q] = pdg.dirac;
    ftr[q] = pdg.f_transport;
  }
  MonitorReport r;
  r.t = u.t;
  r.alpha = norms(alpha);
  r.alpha_spatial = norms(alpha_s);
  r.alpha_time = norms(alpha_t);
  r.beta = norms(beta);
  r.chi = norms(chi);
  r.eta = norms(eta);
  r.kappa = norms(kappa);
  r.ricci_residual = norms(rres);
  r.ricci_plain = norms(rplain);
  r.dirac = norms(dirac);
  r.f_transport = norms(ftr);
  return r;
}

MonitorReport monitor_section(const System& sys, const StateVector& u, const NormRegion& region) {
  return monitor_with_time_derivs(sys, u, rhs_time_derivs(sys, u), region);
}

GaussCodazziReport gauss_codazzi_check(const System& sys, const StateVector& u0,
                                       const std::vector<PointTimeDerivs>& td,
                                       const InitialSurfaceData& data, const NormRegion& region) {
  const std::vector<SlicePoint> sps = slice_geometry(data, sys.order());
  const std::vector<std::size_t> pts = included_points(sys, u0.t, region);
  const auto d = sys.derivatives(u0);
  const int n = sys.rep().n_spatial;
  std::vector<double> ham(pts.size()), mom(pts.size());
  double x[kMaxDim];
  for (std::size_t q = 0; q < pts.size(); ++q) {
    const std::size_t p = pts[q];
    const PointState ps = load_point(u0, p);
    const PointGeometry pg = point_geometry(sys.rep(), ps);
    sys.grid().coordinates(p, u0.t, x);
    const BackgroundPoint bg = background_point(sys.background(), x);
    const PointDerivs pd = sys.point_derivs(u0.layout, d, p);
    const PointDiagnostics pdg = point_diagnostics(sys, ps, pg, bg, pd, td[p]);
    const SlicePoint& sp = sps[p];
    const double lam = data.lapse[p];
    const Mat& W = data.W[p];
    const double scal = sp.gi.cwiseProduct(ricci_local(sp.jet)).sum();
    const double tr = W.trace();
    const double expected = 0.5 * (scal - (W * W).trace() + tr * tr);
    ham[q] = pdg.einstein(0, 0) / (lam * lam) - expected;
    const Vec c = codazzi_residual_at(data, sp, p);
    double worst = 0.0;
    for (int i = 1; i <= n; ++i) worst = std::max(worst, std::abs(pdg.einstein(0, i) / lam - c[i - 1]));
    mom[q] = std::isfinite(worst) ? worst : kNaN;
  }
  GaussCodazziReport r;
  r.hamiltonian = norms(ham).sup;
  r.momentum = norms(mom).sup;
  return r;
}

double derivative_consistency(const System& sys, const StateVector& u, const NormRegion& region) {
  const StateLayout& l = u.layout;
  const Grid& grid = sys.grid();
  const std::vector<std::size_t> pts = included_points(sys, u.t, region);
  double worst = 0.0;
  for (int a = 0; a < grid.active_count(); ++a) {
    const int i = grid.axis(a).coord;
    for (int c = 0; c < l.sym(); ++c) {
      const auto dg = spatial_derivative(grid, std::span<const double>(u.var(l.g(c)), l.points()),
                                         i, sys.order());
      for (std::size_t p : pts) {
        const double e = std::abs(dg[p] - u.at(l.gd(i, c), p));
        if (!std::isnan(worst) && !(e <= worst)) worst = e;  // NaN is sticky
      }
    }
  }
  return worst;
}

OracleErrors oracle_errors(const System& sys, const StateVector& u, const ExactSolution& exact,
                           const NormRegion& region) {
  OracleErrors out;
  const std::vector<std::size_t> pts = included_points(sys, u.t, region);
  double x[kMaxDim];
  if (exact.metric) out.metric = 0.0;
  if (exact.f) out.f = 0.0;
  if (exact.phi) out.phi = 0.0;
  auto bump = [](double& acc, double e) {
    if (!std::isnan(acc) && !(e <= acc)) acc = e;  // NaN is sticky
  };
  for (std::size_t p : pts) {
    sys.grid().coordinates(p, u.t, x);
    const PointState ps = load_point(u, p);
    if (exact.metric) bump(out.metric, (ps.g - exact.metric(x)).cwiseAbs().maxCoeff());
    if (exact.f) bump(out.f, std::abs(ps.f - exact.f(x)));
    if (exact.phi) bump(out.phi, (ps.phi - exact.phi(x)).cwiseAbs().maxCoeff());
  }
  return out;
}

const std::vector<std::string>& diagnostics_columns() {
  static const std::vector<std::string> cols = {
      "step",          "t",
      "alpha_sup",     "alpha_rms",
      "alpha_spatial_sup", "alpha_time_sup",
      "beta_sup",      "beta_rms",
      "chi_sup",       "chi_rms",
      "eta_sup",       "eta_rms",
      "kappa_sup",     "kappa_rms",
      "ricci_residual", "ricci",
      "dirac",         "f_transport",
      "gc_hamiltonian", "gc_momentum",
      "derivative_consistency", "min_A0",
      "error_metric",  "error_f",
      "error_phi",
  };
  return cols;
}

std::vector<double> row_values(const DiagnosticsRow& r) {
  const MonitorReport& m = r.monitor;
  return {static_cast<double>(r.step), r.t,
          m.alpha.sup, m.alpha.l2,
          m.alpha_spatial.sup, m.alpha_time.sup,
          m.beta.sup, m.beta.l2,
          m.chi.sup, m.chi.l2,
          m.eta.sup, m.eta.l2,
          m.kappa.sup, m.kappa.l2,
          r.ricci_residual, r.ricci_plain,
          r.dirac, r.f_transport,
          r.gc_hamiltonian, r.gc_momentum,
          r.consistency, r.min_A0,
          r.oracle.metric, r.oracle.f,
          r.oracle.phi};
}

DiagnosticsRecorder::DiagnosticsRecorder(const System& sys, RecorderOptions opts,
                                         const InitialSurfaceData* data,
                                         const ExactSolution* exact)
    : sys_(sys), opts_(std::move(opts)), data_(data), exact_(exact) {
  if (opts_.cadence < 1) throw std::invalid_argument("diagnostics cadence must be at least 1");
  if (!opts_.csv_path.empty()) {
    csv_ = std::make_unique<std::ofstream>(opts_.csv_path);
    if (!*csv_) throw std::runtime_error("cannot open " + opts_.csv_path);
    const auto& cols = diagnostics_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) *csv_ << (c ? "," : "") << cols[c];
    *csv_ << "\n";
  }
}

void DiagnosticsRecorder::operator()(int step, const StateVector& u, bool last) {
  if (ring_.size() == 5) ring_.erase(ring_.begin());
  ring_.push_back(u);
  ring_end_ = step;

  if (step % opts_.cadence == 0 || last) {
    DiagnosticsRow row;
    row.step = step;
    row.t = u.t;
    const auto td = rhs_time_derivs(sys_, u);
    row.monitor = monitor_with_time_derivs(sys_, u, td, opts_.region);
    row.consistency = derivative_consistency(sys_, u, opts_.region);
    row.min_A0 = sys_.min_eig_A0(u);
    if (exact_) row.oracle = oracle_errors(sys_, u, *exact_, opts_.region);
    if (step == 0 && data_) {
      const GaussCodazziReport gc = gauss_codazzi_check(sys_, u, td, *data_, opts_.region);
      row.gc_hamiltonian = gc.hamiltonian;
      row.gc_momentum = gc.momentum;
    }
    pending_.push_back(row);

    const std::pair<const char*, double> watched[] = {
        {"alpha", row.monitor.alpha.sup}, {"beta", row.monitor.beta.sup},
        {"chi", row.monitor.chi.sup},     {"eta", row.monitor.eta.sup},
        {"kappa", row.monitor.kappa.sup},
    };
    for (const auto& [name, v] : watched) {
      if (!(v <= opts_.blowup)) {
        finish();
        std::ostringstream loc;
        loc << name << " sup norm " << v << " exceeds " << opts_.blowup;
        throw HaltError("constraint blow-up", loc.str(), u.t);
      }
    }
  }

  // Sample s is finalized once the window [j-4, j] with j = max(s+2, 4) is
  // available, or at the last step.
  while (!pending_.empty()) {
    DiagnosticsRow& row = pending_.front();
    const bool full = ring_.size() == 5;
    const bool due = full && (ring_end_ == std::max(row.step + 2, 4) || last);
    if (!due) {
      if (last) {
        emit(row);
        pending_.erase(pending_.begin());
        continue;
      }
      break;
    }
    finalize(row);
    emit(row);
    pending_.erase(pending_.begin());
  }
}

void DiagnosticsRecorder::finalize(DiagnosticsRow& row) {
  const int pos = row.step - (ring_end_ - 4);
  if (pos < 0 || pos > 4) return;
  std::vector<const StateVector*> window;
  for (const auto& s : ring_) window.push_back(&s);
  const double dt = ring_[1].t - ring_[0].t;
  const auto td = history_time_derivs(window, pos, dt);
  const MonitorReport m = monitor_with_time_derivs(sys_, *window[pos], td, opts_.region);
  row.ricci_residual = m.ricci_residual.sup;
  row.ricci_plain = m.ricci_plain.sup;
  row.dirac = m.dirac.sup;
  row.f_transport = m.f_transport.sup;
}

void DiagnosticsRecorder::finish() {
  for (const auto& row : pending_) emit(row);
  pending_.clear();
}

void DiagnosticsRecorder::emit(const DiagnosticsRow& row) {
  rows_.push_back(row);
  if (!csv_) return;
  const auto v = row_values(row);
  *csv_ << row.step;
  *csv_ << std::setprecision(12);
  for (std::size_t c = 1; c < v.size(); ++c) *csv_ << "," << v[c];
  *csv_ << "\n";
  csv_->flush();
}

}  // namespace pspin
