#include "pspin/convergence.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

namespace pspin {

namespace {

double max_over_time(const std::vector<DiagnosticsRow>& rows, double (*get)(const DiagnosticsRow&)) {
  double m = 0.0;
  bool any = false;
  for (const auto& r : rows) {
    const double v = get(r);
    if (std::isnan(v)) continue;
    any = true;
    if (v > m) m = v;
  }
  return any ? m : std::numeric_limits<double>::quiet_NaN();
}

struct Measured {
  std::vector<double> values;
  std::string note;
  double dx = 0.0;
};

struct Getter {
  const char* name;
  double (*get)(const DiagnosticsRow&);
  bool oracle;
};

const Getter kGetters[] = {
    {"alpha_sup", [](const DiagnosticsRow& r) { return r.monitor.alpha.sup; }, false},
    {"beta_sup", [](const DiagnosticsRow& r) { return r.monitor.beta.sup; }, false},
    {"chi_sup", [](const DiagnosticsRow& r) { return r.monitor.chi.sup; }, false},
    {"eta_sup", [](const DiagnosticsRow& r) { return r.monitor.eta.sup; }, false},
    {"kappa_sup", [](const DiagnosticsRow& r) { return r.monitor.kappa.sup; }, false},
    {"error_metric", [](const DiagnosticsRow& r) { return r.oracle.metric; }, true},
    {"error_f", [](const DiagnosticsRow& r) { return r.oracle.f; }, true},
    {"error_phi", [](const DiagnosticsRow& r) { return r.oracle.phi; }, true},
};

}  // namespace

bool ConvergenceTable::all_pass() const {
  for (const auto& q : quantities)
    if (q.status == "FAIL") return false;
  return !quantities.empty();
}

double observed_order(double e_coarse, double e_fine, double dx_coarse, double dx_fine) {
  return std::log(e_coarse / e_fine) / std::log(dx_coarse / dx_fine);
}

ConvergenceQuantity classify(std::string name, std::vector<double> values,
                             const std::vector<double>& spacings, int declared, double floor) {
  ConvergenceQuantity q;
  q.name = std::move(name);
  q.values = std::move(values);
  for (std::size_t i = 1; i < q.values.size(); ++i) {
    q.orders.push_back(observed_order(q.values[i - 1], q.values[i], spacings[i - 1], spacings[i]));
  }
  const std::size_t m = q.values.size();
  bool finite = true;
  for (double v : q.values) finite = finite && std::isfinite(v);
  if (!finite || m < 2) {
    q.status = "FAIL";
  } else if (q.values[m - 1] <= floor && q.values[m - 2] <= floor) {
    q.status = "ROUNDOFF";
  } else {
    q.status = q.orders.back() >= declared - 0.5 ? "PASS" : "FAIL";
  }
  return q;
}

ConvergenceTable run_convergence(const RunConfig& cfg, const ConvergenceOptions& opts) {
  ConvergenceTable t;
  t.scenario = cfg.scenario.name;
  t.declared_order = cfg.order;
  t.resolutions = cfg.resolutions;

  auto one = [&](int res) {
    RunConfig c = cfg;
    c.scenario.resolution = res;
    c.out_dir = (std::filesystem::path(cfg.out_dir) / ("res_" + std::to_string(res))).string();
    const RunOutcome o = run_config(c, opts.write_artifacts);
    Measured m;
    m.dx = o.dx;
    for (const auto& g : kGetters) m.values.push_back(max_over_time(o.rows, g.get));
    if (o.evolution.halted) {
      m.note = "resolution " + std::to_string(res) + " halted: " + o.evolution.halt_invariant + " at " +
               o.evolution.halt_location;
    }
    return m;
  };

  std::vector<Measured> runs;
  if (opts.parallel) {
    std::vector<std::future<Measured>> fut;
    for (int r : cfg.resolutions) fut.push_back(std::async(std::launch::async, one, r));
    for (auto& f : fut) runs.push_back(f.get());
  } else {
    for (int r : cfg.resolutions) runs.push_back(one(r));
  }
  for (const auto& m : runs) {
    t.spacings.push_back(m.dx);
    if (!m.note.empty()) t.run_notes.push_back(m.note);
  }
  for (std::size_t g = 0; g < std::size(kGetters); ++g) {
    std::vector<double> v;
    bool available = true;
    for (const auto& m : runs) {
      v.push_back(m.values[g]);
      if (std::isnan(m.values[g])) available = false;
    }
    if (kGetters[g].oracle && !available) continue;
    t.quantities.push_back(classify(kGetters[g].name, v, t.spacings, cfg.order, opts.roundoff_floor));
  }
  return t;
}

std::string format_table(const ConvergenceTable& t) {
  std::ostringstream s;
  s << "scenario " << t.scenario << ", declared order " << t.declared_order << ", pass threshold "
    << t.declared_order - 0.5 << "\n";
  s << std::left << std::setw(14) << "quantity";
  for (int r : t.resolutions) s << std::setw(14) << ("N=" + std::to_string(r));
  for (std::size_t i = 1; i < t.resolutions.size(); ++i)
    s << std::setw(10) << ("p" + std::to_string(i));
  s << "status\n";
  for (const auto& q : t.quantities) {
    s << std::setw(14) << q.name;
    for (double v : q.values) {
      std::ostringstream c;
      c << std::scientific << std::setprecision(4) << v;
      s << std::setw(14) << c.str();
    }
    for (double o : q.orders) {
      std::ostringstream c;
      if (std::isfinite(o)) {
        c << std::fixed << std::setprecision(2) << o;
      } else {
        c << "-";
      }
      s << std::setw(10) << c.str();
    }
    s << q.status << "\n";
  }
  for (const auto& n : t.run_notes) s << "note: " << n << "\n";
  return s.str();
}

void write_table_csv(const std::string& path, const ConvergenceTable& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << std::setprecision(12) << "quantity,resolution,spacing,value,order,status\n";
  for (const auto& q : t.quantities) {
    for (std::size_t i = 0; i < q.values.size(); ++i) {
      out << q.name << "," << t.resolutions[i] << "," << t.spacings[i] << "," << q.values[i] << ",";
      if (i > 0 && std::isfinite(q.orders[i - 1])) out << q.orders[i - 1];
      out << "," << q.status << "\n";
    }
  }
}

}  // namespace pspin
