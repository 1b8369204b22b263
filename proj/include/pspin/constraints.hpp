#pragma once
// Initial data on the Riemannian slice and the residuals of its constraint
// equations. Slice spinors use the generators i gamma_0 gamma_j, so a slice
// spinor and the spacetime spinor restricted to the slice share components.

#include "pspin/clifford.hpp"
#include "pspin/frame.hpp"
#include "pspin/grid.hpp"
#include "pspin/tensor.hpp"

#include <vector>

namespace pspin {

struct InitialSurfaceData {
  Grid grid;
  std::vector<Mat> g_sigma;  // n x n per point
  std::vector<Mat> W;        // (1,1)-tensor W^i_j per point
  std::vector<CVec> phi;
  std::vector<double> lapse;

  int n_spatial() const { return grid.n_spatial(); }
};

// Slice Clifford generators i gamma_0 gamma_j, j = 1..n (index j-1).
std::vector<CMat> riemannian_generators(const GammaRep& rep);

// sum_j X^j (i gamma_0 gamma_j) psi for X in an orthonormal slice frame.
CVec riemannian_clifford(const GammaRep& rep, std::span<const double> X, const CVec& psi);

// U^j = -i (X_j . psi, psi) = (gamma_0 gamma_j psi, psi), orthonormal components.
RVec riemannian_dirac_current(const GammaRep& rep, const CVec& psi);

// U . phi - i u phi for a given current U (orthonormal components) and u.
CVec algebraic_residual_with_current(const GammaRep& rep, const RVec& U, double u,
                                     const CVec& phi);
// Same with U and u = |phi|^2 recomputed from phi.
CVec algebraic_residual(const GammaRep& rep, const CVec& phi);

// Projects psi onto the constraint set by the eigenprojection fixed point.
// Norm is preserved. Throws std::runtime_error if it fails to converge.
CVec project_to_constraint(const GammaRep& rep, const CVec& psi, double tol = 1e-10,
                           int max_iter = 100);

// Stencil-derived slice geometry at every grid point.
struct SlicePoint {
  MetricJet jet;  // dimension n, index k <-> coordinate x_{k+1}
  Mat gi;
  Tensor3 gamma;
  FrameJet frame;
  std::array<Mat, kMaxDim> dW;   // d_k W^i_j
  std::array<CVec, kMaxDim> dphi;
};
std::vector<SlicePoint> slice_geometry(const InitialSurfaceData& data, int order);

// Killing residual in the orthonormal slice frame: entry j holds
// nabla_{e_j} phi - (i/2) W(e_j) . phi.
std::vector<CVec> killing_residual_at(const GammaRep& rep, const InitialSurfaceData& data,
                                      const SlicePoint& sp, std::size_t p);

double f_on_slice_at(const InitialSurfaceData& data, const SlicePoint& sp, std::size_t p);

// d tr W + delta W in coordinate components, delta W(X) = -sum_i (nabla_{e_i} W)(e_i, X).
Vec codazzi_residual_at(const InitialSurfaceData& data, const SlicePoint& sp, std::size_t p);

// codazzi - f u U_flat
Vec momentum_identity_residual_at(const GammaRep& rep, const InitialSurfaceData& data,
                                  const SlicePoint& sp, std::size_t p);

// max |(nabla_i W)_jk - (nabla_j W)_ik|
double codazzi_symmetry_defect_at(const InitialSurfaceData& data, const SlicePoint& sp,
                                  std::size_t p);

struct ConstraintReport {
  double killing_residual_norm = 0.0;
  double algebraic_residual_norm = 0.0;
  double codazzi_residual_norm = 0.0;
  double momentum_identity_residual = 0.0;
  double f_sigma_max = 0.0;
  std::vector<double> f_sigma;
  double w_symmetry_defect = 0.0;
  double codazzi_symmetry_defect = 0.0;
  double current_norm_defect = 0.0;  // max | |U| - u |
  double u_min = 0.0;
};

// Sup norms over all points at least `margin` cells from a bounded edge.
ConstraintReport check_constraints(const GammaRep& rep, const InitialSurfaceData& data, int order,
                                   int margin = 0);

std::vector<double> f_on_slice(const InitialSurfaceData& data, int order);

}  // namespace pspin
