#pragma once
// Refinement studies: the same configuration at several resolutions, with
// observed convergence orders of monitored norms and oracle errors.

#include "pspin/config.hpp"
#include "pspin/runner.hpp"

#include <string>
#include <vector>

namespace pspin {

struct ConvergenceQuantity {
  std::string name;
  std::vector<double> values;  // one per resolution
  std::vector<double> orders;  // between consecutive resolutions
  // PASS: last order >= declared - 0.5; ROUNDOFF: finest values at the
  // round-off floor, so no order is measurable; FAIL otherwise.
  std::string status;
};

struct ConvergenceTable {
  std::string scenario;
  int declared_order = 4;
  std::vector<int> resolutions;
  std::vector<double> spacings;
  std::vector<ConvergenceQuantity> quantities;
  std::vector<std::string> run_notes;  // halts and other per-run remarks
  bool all_pass() const;
};

// Quantities measured per run: max over time of the sup norms of the monitored
// section (alpha, beta, chi, eta, kappa) and, when an oracle exists, of the
// metric, f and spinor errors.
struct ConvergenceOptions {
  double roundoff_floor = 1e-11;
  bool parallel = true;          // one thread per resolution
  bool write_artifacts = false;  // per-resolution subdirectories of out_dir
};

ConvergenceTable run_convergence(const RunConfig& cfg, const ConvergenceOptions& opts = {});

// Pure helpers.
double observed_order(double e_coarse, double e_fine, double dx_coarse, double dx_fine);
ConvergenceQuantity classify(std::string name, std::vector<double> values,
                             const std::vector<double>& spacings, int declared, double floor);

std::string format_table(const ConvergenceTable& t);
void write_table_csv(const std::string& path, const ConvergenceTable& t);

}  // namespace pspin
