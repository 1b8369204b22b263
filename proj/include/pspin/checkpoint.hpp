#pragma once
// Checkpoint files: a text header describing the layout followed by the raw
// state as little-endian doubles, one variable row after another.

#include "pspin/grid.hpp"
#include "pspin/state.hpp"

#include <string>
#include <vector>

namespace pspin {

struct Checkpoint {
  std::string scenario;
  int order = 4;
  int step = 0;
  Grid grid;
  int dim_spinor = 0;
  StateVector state;
};

// Variable names in storage order, e.g. g_00, g_00,1, k_00, f, re_phi0.
std::vector<std::string> variable_names(const StateLayout& l);

void write_checkpoint(const std::string& path, const Checkpoint& c);
// Throws std::runtime_error on malformed or truncated files.
Checkpoint read_checkpoint(const std::string& path);

}  // namespace pspin
