#pragma once
// Structure-of-arrays storage of the first-order unknown
// u = (g_mn, g_mn,1 .. g_mn,n, k_mn, f, Re phi, Im phi), each variable a
// contiguous row over the grid. Symmetric tensors store their upper triangle.

#include "pspin/clifford.hpp"
#include "pspin/grid.hpp"
#include "pspin/tensor.hpp"

#include <vector>

namespace pspin {

// Packed index of (mu, nu) in the upper triangle of a dim x dim symmetric matrix.
int sym_index(int mu, int nu, int dim);
int sym_count(int dim);

class StateLayout {
 public:
  StateLayout() = default;
  StateLayout(int n_spatial, int dim_spinor, std::size_t points);

  int n_spatial() const { return n_; }
  int dim() const { return n_ + 1; }
  int sym() const { return sym_; }
  int dim_spinor() const { return spinor_; }
  std::size_t points() const { return points_; }
  int vars() const { return sym_ * (n_ + 2) + 1 + 2 * spinor_; }
  std::size_t total() const { return static_cast<std::size_t>(vars()) * points_; }

  int g(int comp) const { return comp; }
  int gd(int i, int comp) const { return i * sym_ + comp; }  // i = 1..n
  int k(int comp) const { return (n_ + 1) * sym_ + comp; }
  int f() const { return (n_ + 2) * sym_; }
  int re(int c) const { return f() + 1 + c; }
  int im(int c) const { return f() + 1 + spinor_ + c; }

  std::size_t offset(int var) const { return static_cast<std::size_t>(var) * points_; }

 private:
  int n_ = 0;
  int sym_ = 0;
  int spinor_ = 0;
  std::size_t points_ = 0;
};

struct StateVector {
  StateLayout layout;
  double t = 0.0;
  std::vector<double> data;

  StateVector() = default;
  explicit StateVector(const StateLayout& l) : layout(l), data(l.total(), 0.0) {}

  double* var(int v) { return data.data() + layout.offset(v); }
  const double* var(int v) const { return data.data() + layout.offset(v); }
  double& at(int v, std::size_t p) { return data[layout.offset(v) + p]; }
  double at(int v, std::size_t p) const { return data[layout.offset(v) + p]; }
};

// Per-point view of a state: the metric jet (dg[0] = k, dg[i] = g_,i), f, phi.
struct PointState {
  Mat g;
  std::array<Mat, kMaxDim> dg;
  double f = 0.0;
  CVec phi;
};

PointState load_point(const StateVector& s, std::size_t p);
void store_point(StateVector& s, std::size_t p, const PointState& ps);

// Symmetric matrix from packed variables base + comp at point p of a flat array.
Mat load_sym(const StateLayout& l, const double* data, int base, std::size_t p);

}  // namespace pspin
