#pragma once
// Structured grid over 1 or 2 active spatial axes. Inactive coordinates are
// symmetry directions held at 0; fields never vary along them.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pspin {

struct Axis {
  int coord = 1;          // spatial coordinate index, 1..n
  int points = 1;
  double origin = 0.0;
  double spacing = 1.0;
  bool periodic = true;
};

class Grid {
 public:
  Grid() = default;
  Grid(int n_spatial, std::vector<Axis> axes);

  int n_spatial() const { return n_; }
  int active_count() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_[a]; }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t size() const { return size_; }

  // Index of the active axis carrying spatial coordinate `coord`, or -1.
  int axis_of_coord(int coord) const;

  std::size_t stride(int a) const { return strides_[a]; }
  int index_along(std::size_t p, int a) const {
    return static_cast<int>((p / strides_[a]) % axes_[a].points);
  }

  // Spacetime coordinates (t, x_1, ..., x_n) of point p.
  void coordinates(std::size_t p, double t, double* x) const;

  // Distance in grid cells from p to the nearest non-periodic boundary;
  // a large value when all axes are periodic.
  int cells_from_boundary(std::size_t p) const;

 private:
  int n_ = 0;
  std::vector<Axis> axes_;
  std::array<std::size_t, 2> strides_{1, 1};
  std::size_t size_ = 0;
};

struct Stencil {
  int first = 0;                  // offset of the first weight relative to the point
  int count = 0;
  std::array<double, 5> w{};
};

// Centered first-derivative stencil of order 2 or 4 (unit spacing).
Stencil centered_stencil(int order);

// Stencil for point i on a non-periodic line of `points` points: centered in
// the interior, one-sided of the same order near the ends.
Stencil line_stencil(int order, int i, int points);

int stencil_half_width(int order);

// First derivative of each of `nfields` fields (contiguous, each grid.size()
// long) along active axis a. Throws on invalid order or axis.
void derivative_along_axis(const Grid& grid, const double* fields, std::size_t nfields,
                           int a, int order, double* out);

// Derivative along spatial coordinate `coord`; zero for inactive coordinates,
// along which fields are constant by construction.
std::vector<double> spatial_derivative(const Grid& grid, std::span<const double> field,
                                       int coord, int order);

}  // namespace pspin
