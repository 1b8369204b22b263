#pragma once
// The first-order symmetric hyperbolic system A0 d_t u = sum_i A_i d_i u + b.
// Blocks follow the state layout; the spinor rows act on (Re phi, Im phi).

#include "pspin/background.hpp"
#include "pspin/clifford.hpp"
#include "pspin/frame.hpp"
#include "pspin/grid.hpp"
#include "pspin/state.hpp"

#include <Eigen/Dense>

#include <vector>

namespace pspin {

// Everything the system needs at one point that depends on (g, dg, phi) only.
struct PointGeometry {
  int dim = 0;
  MetricJet jet;  // second derivatives unset
  Mat gi;
  Tensor3 gl;     // first kind
  Tensor3 gamma;  // second kind
  FrameJet frame;
  Tensor3 conn;   // g(nabla_{s_a} s_b, s_c)
  std::array<CMat, kMaxDim> omega;
  RVec v_frame;   // Dirac current V^a
  Vec v_up;       // V^mu
  Vec v_down;     // V_mu
};

// Throws FrameFailure or SingularMetric.
PointGeometry point_geometry(const GammaRep& rep, const PointState& ps);

// -sum_a eps_a zeta^0_a gamma_0 gamma_a
CMat spinor_A0(const GammaRep& rep, const Mat& zeta);
// sum_a eps_a zeta^i_a gamma_0 gamma_a
CMat spinor_Ai(const GammaRep& rep, const Mat& zeta, int i);
// sum_a eps_a gamma_0 gamma_a omega(s_a) phi
CVec spinor_b(const GammaRep& rep, const std::array<CMat, kMaxDim>& omega, const CVec& phi);

// -2 H - 2 Sym(nabla F) + 2 f V V
Mat metric_source(const PointGeometry& pg, const BackgroundPoint& bg, double f);

struct SystemBlocks {
  Eigen::MatrixXd A0;
  std::vector<Eigen::MatrixXd> A;  // A[i-1] for spatial direction i
  Eigen::VectorXd b;
};

SystemBlocks assemble_blocks(const GammaRep& rep, const PointState& ps, const BackgroundPoint& bg);

struct HyperbolicityReport {
  bool symmetric = false;
  double symmetry_defect = 0.0;
  double min_eig_A0 = 0.0;
};
HyperbolicityReport check_symmetric_hyperbolic(const SystemBlocks& blocks);

// Smallest eigenvalue of A0 from its diagonal blocks (metric, f, spinor).
double min_eig_A0_blockwise(const GammaRep& rep, const PointGeometry& pg);

// Spatial derivatives of the state at one point along the active axes.
struct PointDerivs {
  int active = 0;
  int coord[2] = {0, 0};
  Mat dk[2];
  std::array<Mat, kMaxDim> dgd[2];  // dgd[a][j] = d_a g_,j, j = 1..n
  double df[2] = {0.0, 0.0};
  CVec dphi[2];
};

struct PointRhs {
  Mat dk;
  double df = 0.0;
  CVec dphi;
};

PointRhs point_rhs(const GammaRep& rep, const PointGeometry& pg, const BackgroundPoint& bg,
                   double f, const CVec& phi, const PointDerivs& d);

// Block-matrix reference: A0^{-1} (sum_i A_i d_i u + b) with full matrices.
Eigen::VectorXd point_rhs_reference(const SystemBlocks& blocks,
                                    const std::vector<Eigen::VectorXd>& du);

// Treatment of cells next to a non-periodic edge: held at their initial
// values, or evolved with the one-sided stencils.
enum class BoundaryMode { Frozen, OneSided };

class System {
 public:
  System(const GammaRep& rep, Grid grid, BackgroundMetric bg, int order,
         BoundaryMode boundary = BoundaryMode::OneSided);

  const GammaRep& rep() const { return rep_; }
  const Grid& grid() const { return grid_; }
  const BackgroundMetric& background() const { return bg_; }
  int order() const { return order_; }
  StateLayout layout() const;

  // Derivatives of every state variable along each active axis.
  std::vector<std::vector<double>> derivatives(const StateVector& u) const;

  PointDerivs point_derivs(const StateLayout& l, const std::vector<std::vector<double>>& d,
                           std::size_t p) const;

  // dudt = A0^{-1}(sum A_i d_i u + b); points in a frozen layer get zero. Throws FrameFailure/SingularMetric with the point index.
  void rhs(const StateVector& u, StateVector& dudt) const;

  BoundaryMode boundary() const { return boundary_; }

  // Frozen layer width in cells on bounded axes (0 unless Frozen).
  int frozen_width() const;
  // Cells per bounded edge whose values use one-sided stencils.
  int boundary_width() const;

  // Largest c_a / dx_a over points and active axes, where c_a is the spectral
  // radius of A0^{-1} A_a.
  double max_speed_over_dx(const StateVector& u) const;

  double min_eig_A0(const StateVector& u) const;

 private:
  GammaRep rep_;
  Grid grid_;
  BackgroundMetric bg_;
  int order_;
  BoundaryMode boundary_;
};

}  // namespace pspin
