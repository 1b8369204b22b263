#include "pspin/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pspin {

namespace {

using boost::property_tree::ptree;

template <class T>
void take(const ptree& sec, const std::string& key, T& out, std::set<std::string>& used) {
  used.insert(key);
  if (auto v = sec.get_optional<std::string>(key)) {
    std::istringstream ss(*v);
    T tmp{};
    ss >> std::boolalpha >> tmp;
    if (ss.fail() || !(ss >> std::ws).eof()) throw std::invalid_argument("bad value for " + key + ": '" + *v + "'");
    out = tmp;
  }
}

void take_string(const ptree& sec, const std::string& key, std::string& out, std::set<std::string>& used) {
  used.insert(key);
  if (auto v = sec.get_optional<std::string>(key)) out = *v;
}

void reject_unknown(const std::string& name, const ptree& sec, const std::set<std::string>& used) {
  for (const auto& kv : sec) {
    if (!used.count(kv.first)) throw std::invalid_argument("unknown key [" + name + "] " + kv.first);
  }
}

}  // namespace

RunConfig load_config(const std::string& path) {
  ptree pt;
  try {
    boost::property_tree::read_ini(path, pt);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw std::invalid_argument(std::string("cannot parse config: ") + e.what());
  }
  RunConfig c;
  static const std::set<std::string> sections = {"scenario", "grid", "evolution", "output"};
  for (const auto& kv : pt) {
    if (!sections.count(kv.first)) throw std::invalid_argument("unknown config section [" + kv.first + "]");
  }
  const ptree empty;
  {
    const ptree& s = pt.get_child("scenario", empty);
    std::set<std::string> used;
    auto& p = c.scenario;
    take_string(s, "name", p.name, used);
    take_string(s, "data_file", c.data_file, used);
    take(s, "n_spatial", p.n_spatial, used);
    take(s, "amplitude", p.amplitude, used);
    take(s, "wavenumber", p.wavenumber, used);
    take(s, "lapse_amplitude", p.lapse_amplitude, used);
    take_string(s, "warp", p.warp, used);
    take(s, "warp_rate", p.warp_rate, used);
    take(s, "warp_ripple", p.warp_ripple, used);
    take(s, "warp_frequency", p.warp_frequency, used);
    take(s, "warp_power", p.warp_power, used);
    take(s, "s_min", p.s_min, used);
    take(s, "s_max", p.s_max, used);
    take(s, "exponent", p.exponent, used);
    take(s, "negative_control", p.negative_control, used);
    reject_unknown("scenario", s, used);
  }
  {
    const ptree& s = pt.get_child("grid", empty);
    std::set<std::string> used;
    take(s, "resolution", c.scenario.resolution, used);
    take(s, "axes", c.scenario.axes, used);
    take(s, "order", c.order, used);
    std::string res;
    take_string(s, "resolutions", res, used);
    if (!res.empty()) {
      c.resolutions.clear();
      std::istringstream ss(res);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        std::istringstream ts(tok);
        int v = 0;
        if (!(ts >> v)) throw std::invalid_argument("bad resolutions list '" + res + "'");
        c.resolutions.push_back(v);
      }
    }
    reject_unknown("grid", s, used);
  }
  {
    const ptree& s = pt.get_child("evolution", empty);
    std::set<std::string> used;
    take(s, "cfl", c.cfl, used);
    take(s, "t_end", c.t_end, used);
    take(s, "cadence", c.cadence, used);
    take(s, "max_abs", c.max_abs, used);
    take(s, "blowup", c.blowup, used);
    take(s, "min_A0", c.min_A0, used);
    take(s, "killing_threshold", c.killing_threshold, used);
    take(s, "algebraic_threshold", c.algebraic_threshold, used);
    take(s, "warn_only", c.warn_only, used);
    take(s, "norm_margin", c.norm_margin, used);
    reject_unknown("evolution", s, used);
  }
  {
    const ptree& s = pt.get_child("output", empty);
    std::set<std::string> used;
    take_string(s, "dir", c.out_dir, used);
    take(s, "checkpoint_every", c.checkpoint_every, used);
    reject_unknown("output", s, used);
  }
  // relative data files are resolved against the config file's directory
  if (!c.data_file.empty() && std::filesystem::path(c.data_file).is_relative()) {
    c.data_file = (std::filesystem::path(path).parent_path() / c.data_file).string();
  }
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
  };
  need(c.scenario.n_spatial >= 2 && c.scenario.n_spatial <= 6, "n_spatial must lie in [2, 6]");
  need(c.scenario.resolution >= 8 && c.scenario.resolution <= 4096, "resolution must lie in [8, 4096]");
  need(c.scenario.axes == 1 || c.scenario.axes == 2, "axes must be 1 or 2");
  need(c.order == 2 || c.order == 4, "order must be 2 or 4");
  need(c.cfl > 0.0 && c.cfl <= 1.0, "cfl must lie in (0, 1]");
  need(c.cadence >= 1, "cadence must be at least 1");
  need(c.max_abs > 0.0 && c.blowup > 0.0, "halt thresholds must be positive");
  need(c.min_A0 >= 0.0, "min_A0 must be non-negative");
  need(c.norm_margin >= 0, "norm_margin must be non-negative");
  need(c.checkpoint_every >= 0, "checkpoint_every must be non-negative");
  need(c.resolutions.size() >= 3, "converge needs at least three resolutions");
  for (int r : c.resolutions) need(r >= 8 && r <= 4096, "resolutions must lie in [8, 4096]");
}

}  // namespace pspin
