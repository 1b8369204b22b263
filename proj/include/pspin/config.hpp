#pragma once
// Run configuration read from INI files with sections [scenario], [grid],
// [evolution] and [output]. Every key has a default; see README for ranges.

#include "pspin/scenarios.hpp"

#include <string>
#include <vector>

namespace pspin {

struct RunConfig {
  ScenarioParams scenario;
  std::string data_file;           // optional initial data file; relative to the config file

  int order = 4;
  double cfl = 0.25;
  double t_end = 1.0;              // negative: one light-crossing time
  int cadence = 1;                 // diagnostics sampling interval in steps
  double max_abs = 1e6;            // halt thresholds
  double blowup = 1e3;
  double min_A0 = 1e-8;
  double killing_threshold = -1.0; // negative: scenario's declared tolerance
  double algebraic_threshold = -1.0;
  bool warn_only = false;
  int norm_margin = 0;             // extra excluded cells near bounded edges

  std::string out_dir = "out";
  int checkpoint_every = 0;        // 0: only initial and final checkpoints
  std::vector<int> resolutions{32, 64, 128};
};

// Throws std::invalid_argument for unknown keys or out-of-range values.
RunConfig load_config(const std::string& path);
void validate(const RunConfig& c);

}  // namespace pspin
