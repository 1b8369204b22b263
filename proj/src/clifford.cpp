#include "pspin/clifford.hpp"

#include <stdexcept>
#include <string>

namespace pspin {
namespace {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat pauli(int which) {
  const cplx i(0.0, 1.0);
  CMat m(2, 2);
  switch (which) {
    case 0: m << 1.0, 0.0, 0.0, -1.0; break;  // z
    case 1: m << 0.0, -i, i, 0.0; break;      // y
    default: m << 0.0, 1.0, 1.0, 0.0; break;  // x
  }
  return m;
}

}  // namespace

std::vector<CMat> euclidean_generators(int count) {
  if (count < 1) throw std::invalid_argument("euclidean_generators: count must be positive");
  std::vector<CMat> gens = {pauli(0), pauli(1), pauli(2)};
  while (static_cast<int>(gens.size()) < count) {
    const int d = static_cast<int>(gens.front().rows());
    const CMat id = CMat::Identity(d, d);
    std::vector<CMat> next;
    next.reserve(gens.size() + 2);
    for (const auto& e : gens) next.push_back(kron(pauli(2), e));
    next.push_back(kron(pauli(1), id));
    next.push_back(kron(pauli(0), id));
    gens = std::move(next);
  }
  gens.resize(count);
  return gens;
}

GammaRep build_gamma(int n_spatial) {
  if (n_spatial < 2 || n_spatial > 6) {
    throw std::invalid_argument("build_gamma: n_spatial must be in [2, 6], got " +
                                std::to_string(n_spatial));
  }
  const int dim = n_spatial + 1;
  // 2^floor(dim/2) generators come out of a 2p+1 family with p = floor(dim/2)
  const int p = dim / 2;
  auto e = euclidean_generators(2 * p + 1);
  GammaRep rep;
  rep.n_spatial = n_spatial;
  rep.dim_spinor = static_cast<int>(e.front().rows());
  const cplx i(0.0, 1.0);
  rep.gammas.push_back(e[0]);
  rep.eps.push_back(-1.0);
  for (int a = 1; a < dim; ++a) {
    rep.gammas.push_back(i * e[a]);
    rep.eps.push_back(1.0);
  }
  for (int a = 0; a < dim; ++a) rep.g0_ga.push_back(rep.gammas[0] * rep.gammas[a]);
  return rep;
}

CVec clifford_action(const GammaRep& rep, std::span<const double> frame_coeffs,
                     const CVec& psi) {
  if (static_cast<int>(frame_coeffs.size()) != rep.dim() || psi.size() != rep.dim_spinor) {
    throw std::invalid_argument("clifford_action: dimension mismatch");
  }
  CVec out = CVec::Zero(rep.dim_spinor);
  for (int a = 0; a < rep.dim(); ++a) out += frame_coeffs[a] * (rep.gammas[a] * psi);
  return out;
}

cplx spinor_inner(const GammaRep& rep, const CVec& v, const CVec& w) {
  if (v.size() != rep.dim_spinor || w.size() != rep.dim_spinor) {
    throw std::invalid_argument("spinor_inner: dimension mismatch");
  }
  return w.dot(rep.gammas[0] * v);  // Eigen's dot conjugates its left operand
}

RVec dirac_current_frame(const GammaRep& rep, const CVec& psi) {
  RVec v(rep.dim());
  for (int a = 0; a < rep.dim(); ++a) {
    v[a] = -rep.eps[a] * psi.dot(rep.g0_ga[a] * psi).real();
  }
  return v;
}

RMat realify(const CMat& m) {
  const auto d = m.rows();
  RMat r(2 * d, 2 * d);
  r.topLeftCorner(d, d) = m.real();
  r.topRightCorner(d, d) = -m.imag();
  r.bottomLeftCorner(d, d) = m.imag();
  r.bottomRightCorner(d, d) = m.real();
  return r;
}

GammaDefects gamma_defects(const GammaRep& rep) {
  GammaDefects out;
  const int d = rep.dim_spinor;
  const CMat id = CMat::Identity(d, d);
  for (int a = 0; a < rep.dim(); ++a) {
    for (int b = 0; b < rep.dim(); ++b) {
      CMat ac = rep.gammas[a] * rep.gammas[b] + rep.gammas[b] * rep.gammas[a];
      if (a == b) ac += 2.0 * rep.eps[a] * id;
      out.anticommutator = std::max(out.anticommutator, ac.cwiseAbs().maxCoeff());
    }
    const CMat adj = rep.gammas[a].adjoint();
    const CMat diff = a == 0 ? CMat(adj - rep.gammas[a]) : CMat(adj + rep.gammas[a]);
    out.adjointness = std::max(out.adjointness, diff.cwiseAbs().maxCoeff());
    const RMat r = realify(rep.g0_ga[a]);
    out.realified_symmetry =
        std::max(out.realified_symmetry, (r - r.transpose()).cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace pspin
