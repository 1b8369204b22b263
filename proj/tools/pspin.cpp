// Command-line entry point: check, evolve and converge.
// Exit codes: 0 success, 1 usage or config error, 2 constraint failure,
// 3 evolution halted, 4 convergence below the declared order, 5 I/O error.

#include "pspin/config.hpp"
#include "pspin/convergence.hpp"
#include "pspin/runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace pspin;

enum Exit { kOk = 0, kUsage = 1, kConstraint = 2, kHalted = 3, kConvergence = 4, kIo = 5 };

int fail(Exit code, const std::string& kind, const std::string& message) {
  nlohmann::json rec = {{"error", kind}, {"exit_code", static_cast<int>(code)}, {"message", message}};
  std::cerr << rec.dump() << "\n";
  return code;
}

struct Overrides {
  std::string config;
  int resolution = 0;
  int order = 0;
  double cfl = 0.0;
  double t_end = std::nan("");
  std::string out;
};

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
  if (o.resolution > 0) c.scenario.resolution = o.resolution;
  if (o.order > 0) c.order = o.order;
  if (o.cfl > 0.0) c.cfl = o.cfl;
  if (!std::isnan(o.t_end)) c.t_end = o.t_end;
  if (!o.out.empty()) c.out_dir = o.out;
  validate(c);
  return c;
}

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
  app->add_option("--resolution", o.resolution, "points per active axis")->check(CLI::Range(8, 4096));
  app->add_option("--order", o.order, "stencil order")->check(CLI::IsMember({2, 4}));
  app->add_option("--cfl", o.cfl, "CFL factor in (0, 1]")->check(CLI::Range(1e-6, 1.0));
  app->add_option("--t-end", o.t_end, "final time; negative for one light-crossing time");
  app->add_option("--out", o.out, "output directory");
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

int cmd_check(const Overrides& o) {
  const RunConfig cfg = resolve(o);
  Scenario s = make_scenario(cfg.scenario);
  if (!cfg.data_file.empty()) s.data = read_initial_data(cfg.data_file);
  const ConstraintReport r = check_constraints(s.rep, s.data, cfg.order);
  const double kt = cfg.killing_threshold >= 0.0 ? cfg.killing_threshold : s.killing_tolerance;
  const double at = cfg.algebraic_threshold >= 0.0 ? cfg.algebraic_threshold : s.algebraic_tolerance;
  const bool k_ok = r.killing_residual_norm <= kt;
  const bool a_ok = r.algebraic_residual_norm <= at;
  const bool c_ok = r.codazzi_residual_norm <= s.codazzi_tolerance;
  std::cout << std::scientific << std::setprecision(3);
  std::cout << "scenario              " << s.name << " (n = " << s.rep.n_spatial
            << ", points = " << s.data.grid.size() << ", order = " << cfg.order << ")\n";
  std::cout << "killing residual      " << r.killing_residual_norm << "  threshold " << kt << "  "
            << verdict(k_ok) << "\n";
  std::cout << "algebraic residual    " << r.algebraic_residual_norm << "  threshold " << at << "  "
            << verdict(a_ok) << "\n";
  std::cout << "codazzi residual      " << r.codazzi_residual_norm << "\n";
  std::cout << "momentum identity     " << r.momentum_identity_residual << "\n";
  std::cout << "max |f| on slice      " << r.f_sigma_max << "\n";
  std::cout << "W symmetry defect     " << r.w_symmetry_defect << "\n";
  std::cout << "W Codazzi defect      " << r.codazzi_symmetry_defect << "\n";
  std::cout << "|U| - u defect        " << r.current_norm_defect << "\n";
  std::cout << "min u                 " << r.u_min << "\n";
  std::cout << "Codazzi: " << verdict(c_ok)
            << (c_ok ? " (Ricci-flat development expected)" : " (development not Ricci-flat)") << "\n";
  if (!(k_ok && a_ok)) return fail(kConstraint, "constraint_failure", "initial data exceed the constraint thresholds");
  return kOk;
}

int cmd_evolve(const Overrides& o) {
  const RunConfig cfg = resolve(o);
  RunOutcome out;
  try {
    out = run_config(cfg, true);
  } catch (const ConstraintFailure& e) {
    return fail(kConstraint, "constraint_failure", e.what());
  }
  const auto& e = out.evolution;
  std::cout << "steps " << e.steps << ", dt " << e.dt << ", t_final " << e.t_final << ", min A0 "
            << e.min_A0 << "\n";
  if (!out.rows.empty()) {
    const auto& cols = diagnostics_columns();
    const auto v = row_values(out.rows.back());
    std::cout << std::scientific << std::setprecision(3);
    for (std::size_t c = 2; c < cols.size(); ++c) std::cout << "  " << cols[c] << " = " << v[c] << "\n";
  }
  std::cout << "artifacts in " << cfg.out_dir << "\n";
  if (e.halted) {
    return fail(kHalted, "evolution_halted", e.halt_invariant + ": " + e.halt_location);
  }
  return kOk;
}

int cmd_converge(const Overrides& o) {
  const RunConfig cfg = resolve(o);
  ConvergenceOptions opts;
  opts.write_artifacts = true;
  ConvergenceTable t;
  try {
    t = run_convergence(cfg, opts);
  } catch (const ConstraintFailure& e) {
    return fail(kConstraint, "constraint_failure", e.what());
  }
  const std::string text = format_table(t);
  std::cout << text;
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream(std::filesystem::path(cfg.out_dir) / "convergence.txt") << text;
  write_table_csv((std::filesystem::path(cfg.out_dir) / "convergence.csv").string(), t);
  if (!t.all_pass()) return fail(kConvergence, "convergence_failure", "observed order below declared order - 0.5");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolution engine for Lorentzian metrics with parallel spinors"};
  app.require_subcommand(1);
  Overrides o;
  auto* check = app.add_subcommand("check", "verify the constraints of the initial data");
  auto* evolve = app.add_subcommand("evolve", "evolve and write diagnostics and checkpoints");
  auto* converge = app.add_subcommand("converge", "refinement study over the configured resolutions");
  for (auto* sc : {check, evolve, converge}) add_common(sc, o);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, "usage_error", e.what());
  }
  try {
    if (*check) return cmd_check(o);
    if (*evolve) return cmd_evolve(o);
    return cmd_converge(o);
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, "invalid_configuration", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kIo, "io_error", e.what());
  } catch (const std::exception& e) {
    return fail(kIo, "runtime_error", e.what());
  }
}
