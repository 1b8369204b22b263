#pragma once
// Single runs: build a scenario from a config, construct the initial state,
// evolve with diagnostics and optionally write artifacts.

#include "pspin/config.hpp"
#include "pspin/diagnostics.hpp"
#include "pspin/evolution.hpp"
#include "pspin/scenarios.hpp"

#include <memory>
#include <string>
#include <vector>

namespace pspin {

struct PreparedRun {
  Scenario scenario;
  std::unique_ptr<System> system;
  StateVector initial;
  ConstraintReport constraints;
  NormRegion region;
};

// Throws ConstraintFailure when the data fail the thresholds (unless warn_only).
PreparedRun prepare_run(const RunConfig& cfg, const InitialDataScaling& scaling = {});

struct RunOutcome {
  EvolutionResult evolution;
  std::vector<DiagnosticsRow> rows;
  ConstraintReport constraints;
  StateVector final_state;
  double dx = 0.0;
  double t_end = 0.0;
};

// Artifacts (when write_artifacts): <out>/diagnostics.csv, <out>/checkpoint_<step>.chk,
// <out>/summary.txt. Nothing is written if preparation fails.
RunOutcome run_config(const RunConfig& cfg, bool write_artifacts);

double resolved_t_end(const RunConfig& cfg, const Scenario& s);

}  // namespace pspin
