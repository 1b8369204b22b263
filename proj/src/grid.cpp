#include "pspin/grid.hpp"

#include "pspin/simd/kernels.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace pspin {

Grid::Grid(int n_spatial, std::vector<Axis> axes) : n_(n_spatial), axes_(std::move(axes)) {
  if (n_ < 1) throw std::invalid_argument("Grid: n_spatial must be positive");
  if (axes_.empty() || axes_.size() > 2) {
    throw std::invalid_argument("Grid: 1 or 2 active axes are supported");
  }
  for (const auto& ax : axes_) {
    if (ax.coord < 1 || ax.coord > n_) throw std::invalid_argument("Grid: axis coordinate out of range");
    if (ax.points < 5) throw std::invalid_argument("Grid: an active axis needs at least 5 points");
    if (!(ax.spacing > 0.0)) throw std::invalid_argument("Grid: spacing must be positive");
  }
  if (axes_.size() == 2 && axes_[0].coord == axes_[1].coord) {
    throw std::invalid_argument("Grid: active axes must be distinct coordinates");
  }
  // row-major: the last active axis is contiguous
  if (axes_.size() == 2) {
    strides_ = {static_cast<std::size_t>(axes_[1].points), 1};
  } else {
    strides_ = {1, 1};
  }
  size_ = 1;
  for (const auto& ax : axes_) size_ *= static_cast<std::size_t>(ax.points);
}

int Grid::axis_of_coord(int coord) const {
  for (int a = 0; a < active_count(); ++a)
    if (axes_[a].coord == coord) return a;
  return -1;
}

void Grid::coordinates(std::size_t p, double t, double* x) const {
  x[0] = t;
  for (int i = 1; i <= n_; ++i) x[i] = 0.0;
  for (int a = 0; a < active_count(); ++a) {
    x[axes_[a].coord] = axes_[a].origin + axes_[a].spacing * index_along(p, a);
  }
}

int Grid::cells_from_boundary(std::size_t p) const {
  int best = std::numeric_limits<int>::max();
  for (int a = 0; a < active_count(); ++a) {
    if (axes_[a].periodic) continue;
    const int i = index_along(p, a);
    best = std::min({best, i, axes_[a].points - 1 - i});
  }
  return best;
}

int stencil_half_width(int order) {
  if (order == 2) return 1;
  if (order == 4) return 2;
  throw std::invalid_argument("stencil order must be 2 or 4, got " + std::to_string(order));
}

Stencil centered_stencil(int order) {
  if (order == 2) return {-1, 3, {-0.5, 0.0, 0.5, 0.0, 0.0}};
  if (order == 4) return {-2, 5, {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12}};
  throw std::invalid_argument("stencil order must be 2 or 4, got " + std::to_string(order));
}

Stencil line_stencil(int order, int i, int points) {
  const int hw = stencil_half_width(order);
  if (i >= hw && i < points - hw) return centered_stencil(order);
  Stencil s;
  // forward one-sided weights for the first hw points
  auto forward = [&](int pos) -> Stencil {
    if (order == 2) return {-pos, 3, {-1.5, 2.0, -0.5, 0.0, 0.0}};
    if (pos == 0) return {0, 5, {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -0.25}};
    return {-1, 5, {-0.25, -5.0 / 6, 1.5, -0.5, 1.0 / 12}};
  };
  if (i < hw) return forward(i);
  // mirror at the upper end: reverse and negate
  const Stencil f = forward(points - 1 - i);
  s.count = f.count;
  s.first = -(f.first + f.count - 1);
  for (int r = 0; r < f.count; ++r) s.w[r] = -f.w[f.count - 1 - r];
  return s;
}

void derivative_along_axis(const Grid& grid, const double* fields, std::size_t nfields, int a,
                           int order, double* out) {
  if (a < 0 || a >= grid.active_count()) throw std::invalid_argument("derivative: bad axis");
  const Axis& ax = grid.axis(a);
  const int hw = stencil_half_width(order);
  const Stencil c = centered_stencil(order);
  const double inv_h = 1.0 / ax.spacing;
  const std::size_t inner = grid.stride(a);
  const std::size_t npts = grid.size();
  const std::size_t outer = npts / (inner * ax.points);
  const auto& k = simd::active_kernels();

  double weights[5];
  for (int r = 0; r < c.count; ++r) weights[r] = c.w[r] * inv_h;

  for (std::size_t fidx = 0; fidx < nfields; ++fidx) {
    const double* f = fields + fidx * npts;
    double* d = out + fidx * npts;
    for (std::size_t o = 0; o < outer; ++o) {
      const std::size_t line0 = o * ax.points * inner;
      // interior: one contiguous run per outer index
      const std::size_t begin = line0 + hw * inner;
      const std::size_t len = (ax.points - 2 * hw) * inner;
      const double* rows[5];
      for (int r = 0; r < c.count; ++r) {
        rows[r] = f + begin + static_cast<std::ptrdiff_t>(c.first + r) * static_cast<std::ptrdiff_t>(inner);
      }
      k.weighted_sum(rows, weights, c.count, d + begin, len);
      // boundary layers
      for (int i = 0; i < ax.points; ++i) {
        if (i >= hw && i < ax.points - hw) continue;
        for (std::size_t cc = 0; cc < inner; ++cc) {
          const std::size_t p = line0 + i * inner + cc;
          double acc = 0.0;
          if (ax.periodic) {
            for (int r = 0; r < c.count; ++r) {
              const int j = ((i + c.first + r) % ax.points + ax.points) % ax.points;
              acc += c.w[r] * f[line0 + j * inner + cc];
            }
          } else {
            const Stencil s = line_stencil(order, i, ax.points);
            for (int r = 0; r < s.count; ++r) acc += s.w[r] * f[line0 + (i + s.first + r) * inner + cc];
          }
          d[p] = acc * inv_h;
        }
      }
    }
  }
}

std::vector<double> spatial_derivative(const Grid& grid, std::span<const double> field, int coord,
                                       int order) {
  if (field.size() != grid.size()) throw std::invalid_argument("spatial_derivative: size mismatch");
  std::vector<double> out(grid.size(), 0.0);
  stencil_half_width(order);  // validates order
  const int a = grid.axis_of_coord(coord);
  if (a < 0) {
    if (coord < 1 || coord > grid.n_spatial()) {
      throw std::invalid_argument("spatial_derivative: coordinate out of range");
    }
    return out;
  }
  derivative_along_axis(grid, field.data(), 1, a, order, out.data());
  return out;
}

}  // namespace pspin
