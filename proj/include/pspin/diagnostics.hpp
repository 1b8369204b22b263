#pragma once
// Monitors for quantities that vanish on exact solutions: the constraint
// propagation section (alpha, beta, chi, eta, kappa), the Ricci, Dirac and
// f-transport residuals, and the hypersurface identities on the initial slice.

#include "pspin/constraints.hpp"
#include "pspin/evolution.hpp"
#include "pspin/system.hpp"

#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace pspin {

struct ExactSolution {
  std::function<Mat(const double* x)> metric;
  std::function<double(const double* x)> f;
  std::function<CVec(const double* x)> phi;
};

// Time derivatives of (k, f, phi) at a point, either from the rhs or from a
// finite difference over stored slices.
struct PointTimeDerivs {
  Mat dk;
  double df = 0.0;
  CVec dphi;
};

// Pointwise values (Euclidean norms of frame components).
struct PointDiagnostics {
  double alpha = 0.0;          // all d
  double alpha_spatial = 0.0;  // d > 0
  double alpha_time = 0.0;     // d = 0
  double beta = 0.0;
  double chi = 0.0;
  double eta = 0.0;
  double kappa = 0.0;
  double ricci_residual = 0.0;  // Ric - f V V + Sym(nabla E)
  double ricci_plain = 0.0;     // Ric
  double dirac = 0.0;
  double f_transport = 0.0;
  Mat ricci;                     // coordinate components
  Mat einstein;
};

// covariant_spinor_derivative: alpha_d = zeta^mu_d d_mu phi + omega(s_d) phi.
std::vector<CVec> covariant_spinor_derivative(const GammaRep& rep, const PointGeometry& pg,
                                              const CVec& phi, const CVec& dt_phi,
                                              const PointDerivs& d);

PointDiagnostics point_diagnostics(const System& sys, const PointState& ps,
                                   const PointGeometry& pg, const BackgroundPoint& bg,
                                   const PointDerivs& d, const PointTimeDerivs& td);

struct NormPair {
  double sup = 0.0;
  double l2 = 0.0;  // root mean square over included points
};

struct MonitorReport {
  double t = 0.0;
  NormPair alpha, alpha_spatial, alpha_time, beta, chi, eta, kappa;
  NormPair ricci_residual, ricci_plain, dirac, f_transport;
};

// Which points enter norms: on bounded axes, points closer than
// boundary stencil width + base_margin + ceil(speed t / dx) cells to an edge
// are skipped.
struct NormRegion {
  int base_margin = 0;
  double speed = 1.0;
};
std::vector<std::size_t> included_points(const System& sys, double t, const NormRegion& region);

// Monitored section using rhs time derivatives. The residual entries are
// computed too but are trivially at round-off with rhs derivatives.
MonitorReport monitor_section(const System& sys, const StateVector& u, const NormRegion& region = {});

// Same with time derivatives supplied per point.
MonitorReport monitor_with_time_derivs(const System& sys, const StateVector& u,
                                       const std::vector<PointTimeDerivs>& td,
                                       const NormRegion& region);

std::vector<PointTimeDerivs> rhs_time_derivs(const System& sys, const StateVector& u);

// Fourth-order finite difference in time over five equally spaced slices at
// position pos (0..4) within the window.
std::vector<PointTimeDerivs> history_time_derivs(const std::vector<const StateVector*>& window,
                                                 int pos, double dt);

struct GaussCodazziReport {
  double hamiltonian = 0.0;  // max |G(T,T) - 1/2 (scal - tr W^2 + (tr W)^2)|
  double momentum = 0.0;     // max |G(T, d_i) - (delta W + d tr W)_i|
};

GaussCodazziReport gauss_codazzi_check(const System& sys, const StateVector& u0,
                                       const std::vector<PointTimeDerivs>& td,
                                       const InitialSurfaceData& data, const NormRegion& region);

// Derivative-slot consistency max |g_,i - D_i g|.
double derivative_consistency(const System& sys, const StateVector& u, const NormRegion& region);

struct OracleErrors {
  double metric = std::numeric_limits<double>::quiet_NaN();
  double f = std::numeric_limits<double>::quiet_NaN();
  double phi = std::numeric_limits<double>::quiet_NaN();
};
OracleErrors oracle_errors(const System& sys, const StateVector& u, const ExactSolution& exact,
                           const NormRegion& region);

struct DiagnosticsRow {
  int step = 0;
  double t = 0.0;
  MonitorReport monitor;
  // history-based residual norms (sup); NaN until enough slices exist
  double ricci_residual = std::numeric_limits<double>::quiet_NaN();
  double ricci_plain = std::numeric_limits<double>::quiet_NaN();
  double dirac = std::numeric_limits<double>::quiet_NaN();
  double f_transport = std::numeric_limits<double>::quiet_NaN();
  double gc_hamiltonian = std::numeric_limits<double>::quiet_NaN();
  double gc_momentum = std::numeric_limits<double>::quiet_NaN();
  double consistency = 0.0;
  double min_A0 = 0.0;
  OracleErrors oracle;
};

// Column names of the diagnostics CSV in output order.
const std::vector<std::string>& diagnostics_columns();
std::vector<double> row_values(const DiagnosticsRow& r);

struct RecorderOptions {
  int cadence = 1;
  NormRegion region;
  double blowup = 1e3;  // halt when a monitored sup norm exceeds this
  std::string csv_path;  // empty: no file
};

// Step observer that samples diagnostics and fills in history-based residuals
// once the surrounding slices are available.
class DiagnosticsRecorder {
 public:
  DiagnosticsRecorder(const System& sys, RecorderOptions opts,
                      const InitialSurfaceData* data = nullptr,
                      const ExactSolution* exact = nullptr);

  // Throws HaltError when a monitored norm exceeds the blow-up threshold.
  void operator()(int step, const StateVector& u, bool last);
  // Emits rows still waiting for history (residual columns stay NaN).
  void finish();

  const std::vector<DiagnosticsRow>& rows() const { return rows_; }

 private:
  void finalize(DiagnosticsRow& row);
  void emit(const DiagnosticsRow& row);

  const System& sys_;
  RecorderOptions opts_;
  const InitialSurfaceData* data_;
  const ExactSolution* exact_;
  std::vector<StateVector> ring_;  // last five states, oldest first
  int ring_end_ = -1;              // step of the newest state
  std::vector<DiagnosticsRow> pending_;
  std::vector<DiagnosticsRow> rows_;
  std::unique_ptr<std::ofstream> csv_;
};

}  // namespace pspin
