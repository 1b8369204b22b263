#include "pspin/runner.hpp"

#include "pspin/checkpoint.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>

namespace pspin {

PreparedRun prepare_run(const RunConfig& cfg, const InitialDataScaling& scaling) {
  validate(cfg);
  PreparedRun r;
  r.scenario = make_scenario(cfg.scenario);
  if (!cfg.data_file.empty()) {
    r.scenario.data = read_initial_data(cfg.data_file);
    r.scenario.exact.reset();
    if (r.scenario.data.n_spatial() != r.scenario.rep.n_spatial) {
      throw std::invalid_argument("data file dimension differs from the scenario's");
    }
  }
  r.system = std::make_unique<System>(r.scenario.rep, r.scenario.data.grid, r.scenario.background, cfg.order);
  InitialStateOptions opts;
  opts.killing_threshold = cfg.killing_threshold >= 0.0 ? cfg.killing_threshold : r.scenario.killing_tolerance;
  opts.algebraic_threshold =
      cfg.algebraic_threshold >= 0.0 ? cfg.algebraic_threshold : r.scenario.algebraic_tolerance;
  opts.warn_only = cfg.warn_only;
  opts.scaling = scaling;
  r.initial = build_initial_state(*r.system, r.scenario.data, opts, &r.constraints);
  r.region.base_margin = cfg.norm_margin;
  // domain-of-dependence speed in coordinate units, with a safety factor
  double dx = std::numeric_limits<double>::infinity();
  for (const auto& ax : r.system->grid().axes()) dx = std::min(dx, ax.spacing);
  r.region.speed = 1.5 * r.system->max_speed_over_dx(r.initial) * dx;
  return r;
}

double resolved_t_end(const RunConfig& cfg, const Scenario& s) {
  return cfg.t_end < 0.0 ? s.crossing_time : cfg.t_end;
}

RunOutcome run_config(const RunConfig& cfg, bool write_artifacts) {
  PreparedRun pr = prepare_run(cfg);
  RunOutcome out;
  out.constraints = pr.constraints;
  out.dx = pr.system->grid().axis(0).spacing;
  out.t_end = resolved_t_end(cfg, pr.scenario);

  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  if (write_artifacts) fs::create_directories(dir);

  RecorderOptions ro;
  ro.cadence = cfg.cadence;
  ro.region = pr.region;
  ro.blowup = cfg.blowup;
  if (write_artifacts) ro.csv_path = (dir / "diagnostics.csv").string();
  DiagnosticsRecorder rec(*pr.system, ro, &pr.scenario.data,
                          pr.scenario.exact ? &*pr.scenario.exact : nullptr);

  auto save = [&](int step, const StateVector& u) {
    Checkpoint c;
    c.scenario = pr.scenario.name;
    c.order = cfg.order;
    c.step = step;
    c.grid = pr.system->grid();
    c.dim_spinor = pr.scenario.rep.dim_spinor;
    c.state = u;
    char name[64];
    std::snprintf(name, sizeof name, "checkpoint_%06d.chk", step);
    write_checkpoint((dir / name).string(), c);
  };

  EvolutionConfig ec;
  ec.cfl = cfg.cfl;
  ec.t_end = out.t_end;
  ec.cadence = cfg.cadence;
  ec.min_A0 = cfg.min_A0;
  ec.max_abs = cfg.max_abs;
  StateVector u = pr.initial;
  out.evolution = evolve(*pr.system, u, ec, [&](int step, const StateVector& s, bool last) {
    rec(step, s, last);
    if (!write_artifacts) return;
    const bool periodic = cfg.checkpoint_every > 0 && step % cfg.checkpoint_every == 0;
    if (step == 0 || last || periodic) save(step, s);
  });
  rec.finish();
  if (write_artifacts && out.evolution.halted) save(out.evolution.steps, u);
  out.rows = rec.rows();
  out.final_state = std::move(u);

  if (write_artifacts) {
    std::ofstream s(dir / "summary.txt");
    s << std::setprecision(10);
    s << "scenario " << pr.scenario.name << "\n";
    s << "resolution " << cfg.scenario.resolution << "\n";
    s << "order " << cfg.order << "\n";
    s << "dt " << out.evolution.dt << "\n";
    s << "steps " << out.evolution.steps << "\n";
    s << "t_final " << out.evolution.t_final << "\n";
    s << "min_A0 " << out.evolution.min_A0 << "\n";
    s << "halted " << (out.evolution.halted ? "yes" : "no") << "\n";
    if (out.evolution.halted) {
      s << "halt_invariant " << out.evolution.halt_invariant << "\n";
      s << "halt_location " << out.evolution.halt_location << "\n";
    }
  }
  return out;
}

}  // namespace pspin
