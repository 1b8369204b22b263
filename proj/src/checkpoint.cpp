#include "pspin/checkpoint.hpp"

#include <bit>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace pspin {

namespace {

constexpr const char* kMagic = "pspin-checkpoint 1";

std::string sym_name(const std::string& base, int c, int dim) {
  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b)
      if (sym_index(a, b, dim) == c) return base + "_" + std::to_string(a) + std::to_string(b);
  return base;
}

}  // namespace

std::vector<std::string> variable_names(const StateLayout& l) {
  std::vector<std::string> names(l.vars());
  const int dim = l.dim();
  for (int c = 0; c < l.sym(); ++c) {
    names[l.g(c)] = sym_name("g", c, dim);
    for (int i = 1; i <= l.n_spatial(); ++i) names[l.gd(i, c)] = sym_name("g", c, dim) + "," + std::to_string(i);
    names[l.k(c)] = sym_name("k", c, dim);
  }
  names[l.f()] = "f";
  for (int c = 0; c < l.dim_spinor(); ++c) {
    names[l.re(c)] = "re_phi" + std::to_string(c);
    names[l.im(c)] = "im_phi" + std::to_string(c);
  }
  return names;
}

void write_checkpoint(const std::string& path, const Checkpoint& c) {
  static_assert(std::endian::native == std::endian::little, "checkpoints assume little-endian hosts");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path);
  const StateLayout& l = c.state.layout;
  out << kMagic << "\n";
  out << std::setprecision(17);
  out << "scenario " << (c.scenario.empty() ? "-" : c.scenario) << "\n";
  out << "n_spatial " << c.grid.n_spatial() << "\n";
  out << "dim_spinor " << l.dim_spinor() << "\n";
  out << "order " << c.order << "\n";
  out << "step " << c.step << "\n";
  out << "t " << c.state.t << "\n";
  out << "axes " << c.grid.active_count() << "\n";
  for (const auto& ax : c.grid.axes()) {
    out << "axis " << ax.coord << " " << ax.points << " " << ax.origin << " " << ax.spacing << " "
        << (ax.periodic ? "periodic" : "bounded") << "\n";
  }
  out << "variables " << l.vars();
  for (const auto& n : variable_names(l)) out << " " << n;
  out << "\n";
  out << "data " << c.state.data.size() << "\n";
  out.write(reinterpret_cast<const char*>(c.state.data.data()),
            static_cast<std::streamsize>(c.state.data.size() * sizeof(double)));
  if (!out) throw std::runtime_error("failed writing checkpoint " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read checkpoint " + path);
  auto line = [&](const std::string& key) {
    std::string l;
    if (!std::getline(in, l)) throw std::runtime_error("checkpoint truncated before " + key);
    std::istringstream ss(l);
    std::string k;
    ss >> k;
    if (k != key) throw std::runtime_error("checkpoint: expected '" + key + "', got '" + k + "'");
    std::string rest;
    std::getline(ss, rest);
    return std::istringstream(rest);
  };
  std::string magic;
  std::getline(in, magic);
  if (magic != kMagic) throw std::runtime_error("not a checkpoint file: " + path);
  Checkpoint c;
  int n = 0, spinor = 0, naxes = 0;
  double t = 0.0;
  line("scenario") >> c.scenario;
  line("n_spatial") >> n;
  line("dim_spinor") >> spinor;
  line("order") >> c.order;
  line("step") >> c.step;
  line("t") >> t;
  line("axes") >> naxes;
  if (naxes < 1 || naxes > 2) throw std::runtime_error("checkpoint: bad axis count");
  std::vector<Axis> axes(naxes);
  for (auto& ax : axes) {
    std::string kind;
    auto ss = line("axis");
    ss >> ax.coord >> ax.points >> ax.origin >> ax.spacing >> kind;
    if (!ss) throw std::runtime_error("checkpoint: malformed axis line");
    ax.periodic = kind == "periodic";
  }
  c.grid = Grid(n, axes);
  const StateLayout l(n, spinor, c.grid.size());
  int vars = 0;
  line("variables") >> vars;
  if (vars != l.vars()) throw std::runtime_error("checkpoint: variable count mismatch");
  std::size_t count = 0;
  line("data") >> count;
  if (count != l.total()) throw std::runtime_error("checkpoint: data size mismatch");
  c.dim_spinor = spinor;
  c.state = StateVector(l);
  c.state.t = t;
  in.read(reinterpret_cast<char*>(c.state.data.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(count * sizeof(double))) {
    throw std::runtime_error("checkpoint: data truncated");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw std::runtime_error("checkpoint: trailing bytes after data");
  return c;
}

}  // namespace pspin
