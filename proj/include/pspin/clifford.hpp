#pragma once
// Complex Clifford representation of signature (1,n) with the "mostly plus"
// convention: gamma_a gamma_b + gamma_b gamma_a = -2 eps_a delta_ab, eps_0 = -1.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace pspin {

inline constexpr int kMaxDim = 7;      // spacetime dimension n + 1
inline constexpr int kMaxSpinor = 8;   // 2^floor((n+1)/2) for n <= 6

using cplx = std::complex<double>;
using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxSpinor, kMaxSpinor>;
using CVec = Eigen::Matrix<cplx, Eigen::Dynamic, 1, 0, kMaxSpinor, 1>;
using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2 * kMaxSpinor,
                           2 * kMaxSpinor>;
using RVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

struct GammaRep {
  int n_spatial = 0;
  int dim_spinor = 0;
  std::vector<CMat> gammas;     // gamma_0 .. gamma_n
  std::vector<double> eps;      // eps_0 = -1, eps_{a>0} = +1
  std::vector<CMat> g0_ga;      // gamma_0 gamma_a, Hermitian

  int dim() const { return n_spatial + 1; }
};

// Hermitian, pairwise anticommuting matrices squaring to the identity, built by
// the recursive Pauli tensor-product construction. Returns `count` of them in
// dimension 2^floor(count/2).
std::vector<CMat> euclidean_generators(int count);

// Throws std::invalid_argument unless 2 <= n_spatial <= 6.
GammaRep build_gamma(int n_spatial);

// Sum_a v^a gamma_a psi
CVec clifford_action(const GammaRep& rep, std::span<const double> frame_coeffs, const CVec& psi);

// <v, w> = (gamma_0 v, w) with (x, y) = sum_i x_i conj(y_i)
cplx spinor_inner(const GammaRep& rep, const CVec& v, const CVec& w);

// V^a = -eps_a Re <gamma_a psi, psi>
RVec dirac_current_frame(const GammaRep& rep, const CVec& psi);

// Real 2d x 2d form [[Re M, -Im M], [Im M, Re M]] acting on (Re x, Im x).
RMat realify(const CMat& m);

// Maximum deviation of the representation from its defining relations.
struct GammaDefects {
  double anticommutator = 0.0;
  double adjointness = 0.0;
  double realified_symmetry = 0.0;
};
GammaDefects gamma_defects(const GammaRep& rep);

}  // namespace pspin
