#include "pspin/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pspin {

namespace {

constexpr double kPi = std::numbers::pi;

Grid periodic_grid(int n, int resolution, int axes) {
  if (resolution < 5) throw std::invalid_argument("resolution must be at least 5");
  if (axes < 1 || axes > 2 || axes > n) throw std::invalid_argument("axes must be 1 or 2");
  std::vector<Axis> ax;
  for (int a = 0; a < axes; ++a) ax.push_back({a + 1, resolution, 0.0, 2.0 * kPi / resolution, true});
  return Grid(n, ax);
}

void allocate(InitialSurfaceData& d) {
  const std::size_t np = d.grid.size();
  d.g_sigma.resize(np);
  d.W.resize(np);
  d.phi.resize(np);
  d.lapse.resize(np);
}

// pp-wave profile a_k(w) for transverse coordinate k = 2..n.
template <class S>
S rosen_profile(const ScenarioParams& p, int k, S w) {
  using std::sin;
  return S(1.0) + S(p.amplitude) * sin(S(p.wavenumber) * w + S((k - 2) * kPi / 3.0));
}

struct Profile {
  double a, da, dda;
};

Profile rosen_profile_derivs(const ScenarioParams& p, int k, double w) {
  const double ph = p.wavenumber * w + (k - 2) * kPi / 3.0;
  const double m = p.wavenumber;
  return {1.0 + p.amplitude * std::sin(ph), p.amplitude * m * std::cos(ph),
          -p.amplitude * m * m * std::sin(ph)};
}

double rosen_f(const ScenarioParams& p, int n, double w) {
  double q = 0.0;
  for (int k = 2; k <= n; ++k) {
    const Profile pr = rosen_profile_derivs(p, k, w);
    q += pr.dda / pr.a;
  }
  return -q;
}

// Warp data along s: b, b', ln h.
struct Warp {
  double b, db, lnh;
};

Warp warp_at(const ScenarioParams& p, double s) {
  if (p.warp == "oscillating") {
    const double c = p.warp_rate, e = p.warp_ripple, k = p.warp_frequency;
    return {c * (1.0 + e * std::cos(k * s)), -c * e * k * std::sin(k * s),
            -c * s - c * e * std::sin(k * s) / k};
  }
  if (p.warp == "power") {
    // h = s^p gives b = -p / s
    return {-p.warp_power / s, p.warp_power / (s * s), p.warp_power * std::log(s)};
  }
  throw std::invalid_argument("unknown warp '" + p.warp + "'");
}

}  // namespace

double warped_radial_eigenvalue(double b, double db, double q) { return b - 2.0 * q * db / b; }

CVec eigen_spinor(const GammaRep& rep, int sign) {
  const int d = rep.dim_spinor;
  CVec v(d);
  for (int c = 0; c < d; ++c) v[c] = cplx(1.0 / (c + 1.0), 0.1 * c - 0.05);
  const CMat proj = 0.5 * (CMat::Identity(d, d) + static_cast<double>(sign) * rep.g0_ga[1]);
  CVec w = proj * v;
  return w / w.norm();
}

Scenario scenario_minkowski(const ScenarioParams& p) {
  Scenario s;
  s.name = "minkowski";
  s.rep = build_gamma(p.n_spatial);
  const int n = p.n_spatial;
  s.data.grid = periodic_grid(n, p.resolution, p.axes);
  allocate(s.data);
  const int d = s.rep.dim_spinor;
  CVec ref(d);
  for (int c = 0; c < d; ++c) ref[c] = cplx(1.0 + 0.5 * c, 0.25 * (c % 3) - 0.1);
  const CVec phi = project_to_constraint(s.rep, ref / ref.norm());
  for (std::size_t q = 0; q < s.data.grid.size(); ++q) {
    s.data.g_sigma[q] = Mat::Identity(n, n);
    s.data.W[q] = Mat::Zero(n, n);
    s.data.phi[q] = phi;
    s.data.lapse[q] = 1.0;
  }
  s.background = minkowski_background(n);
  ExactSolution ex;
  ex.metric = [n](const double*) {
    Mat g = Mat::Identity(n + 1, n + 1);
    g(0, 0) = -1.0;
    return g;
  };
  ex.f = [](const double*) { return 0.0; };
  ex.phi = [phi](const double*) { return phi; };
  s.exact = ex;
  s.killing_tolerance = 1e-12;
  s.codazzi_tolerance = 1e-12;
  s.crossing_time = 2.0 * kPi;
  s.ricci_flat_expected = true;
  return s;
}

Scenario scenario_pp_wave(const ScenarioParams& p) {
  if (p.n_spatial < 2) throw std::invalid_argument("pp_wave needs n >= 2");
  Scenario s;
  s.name = "pp_wave";
  s.rep = build_gamma(p.n_spatial);
  const int n = p.n_spatial;
  s.data.grid = periodic_grid(n, p.resolution, 1);
  allocate(s.data);
  const CVec phi = eigen_spinor(s.rep, -1);
  const double la = p.lapse_amplitude;
  if (!(std::abs(la) < 1.0)) throw std::invalid_argument("lapse_amplitude must lie in (-1, 1)");
  double x[kMaxDim];
  for (std::size_t q = 0; q < s.data.grid.size(); ++q) {
    s.data.grid.coordinates(q, 0.0, x);
    const double z = x[1];
    Mat g = Mat::Identity(n, n);
    Mat W = Mat::Zero(n, n);
    for (int k = 2; k <= n; ++k) {
      const Profile pr = rosen_profile_derivs(p, k, z);
      g(k - 1, k - 1) = pr.a * pr.a;
      W(k - 1, k - 1) = pr.da / pr.a;
    }
    s.data.g_sigma[q] = g;
    s.data.W[q] = W;
    s.data.phi[q] = phi;
    s.data.lapse[q] = 1.0 + la * std::cos(p.wavenumber * z);
  }
  const ScenarioParams pc = p;
  s.background.n_spatial = n;
  // the background keeps unit lapse, so a lapse variant differs from it at t = 0
  s.background.lapse = [](const HyperDual*) { return HyperDual(1.0); };
  s.background.slice_metric = [pc, n](const HyperDual* x, HyperDual* h) {
    for (int a = 0; a < n * n; ++a) h[a] = HyperDual(0.0);
    h[0] = HyperDual(1.0);
    const HyperDual w = x[1] - x[0];
    for (int k = 2; k <= n; ++k) {
      const HyperDual a = rosen_profile(pc, k, w);
      h[(k - 1) * n + (k - 1)] = a * a;
    }
  };
  if (la == 0.0) {
    ExactSolution ex;
    ex.metric = [pc, n](const double* x) {
      Mat g = Mat::Identity(n + 1, n + 1);
      g(0, 0) = -1.0;
      for (int k = 2; k <= n; ++k) {
        const double a = rosen_profile(pc, k, x[1] - x[0]);
        g(k, k) = a * a;
      }
      return g;
    };
    ex.f = [pc, n](const double* x) { return rosen_f(pc, n, x[1] - x[0]); };
    ex.phi = [phi](const double*) { return phi; };
    s.exact = ex;
  }
  s.killing_tolerance = 1e-3;
  s.codazzi_tolerance = 1e-3;
  s.crossing_time = 2.0 * kPi;
  s.ricci_flat_expected = p.amplitude == 0.0;
  return s;
}

Scenario scenario_warped_product(const ScenarioParams& p) {
  if (p.n_spatial < 2) throw std::invalid_argument("warped_product needs n >= 2");
  if (p.resolution < 5) throw std::invalid_argument("resolution must be at least 5");
  if (!(p.s_max > p.s_min)) throw std::invalid_argument("s_max must exceed s_min");
  Scenario s;
  s.name = "warped_product";
  s.rep = build_gamma(p.n_spatial);
  const int n = p.n_spatial;
  const double ds = (p.s_max - p.s_min) / (p.resolution - 1);
  s.data.grid = Grid(n, {Axis{1, p.resolution, p.s_min, ds, false}});
  allocate(s.data);
  const CVec phi0 = eigen_spinor(s.rep, +1);
  const double la = p.lapse_amplitude;
  if (!(std::abs(la) < 1.0)) throw std::invalid_argument("lapse_amplitude must lie in (-1, 1)");
  double x[kMaxDim];
  for (std::size_t q = 0; q < s.data.grid.size(); ++q) {
    s.data.grid.coordinates(q, 0.0, x);
    const Warp w = warp_at(p, x[1]);
    if (!(w.b > 0.0) || !std::isfinite(w.b)) {
      std::ostringstream msg;
      msg << "warp violates b = -(ln h)' > 0 at s = " << x[1] << " (b = " << w.b << ")";
      throw std::invalid_argument(msg.str());
    }
    const double h = std::exp(w.lnh);
    Mat g = Mat::Identity(n, n);
    for (int k = 1; k < n; ++k) g(k, k) = h * h;
    Mat W = w.b * Mat::Identity(n, n);
    double F = 1.0;
    if (!p.negative_control) {
      W(0, 0) = warped_radial_eigenvalue(w.b, w.db, p.exponent);
      F = std::pow(w.b, p.exponent);
    }
    s.data.g_sigma[q] = g;
    s.data.W[q] = W;
    s.data.phi[q] = (F * std::sqrt(h)) * phi0;
    s.data.lapse[q] = 1.0 + la * std::cos(p.warp_frequency * x[1]);
  }
  const ScenarioParams pc = p;
  s.background.n_spatial = n;
  s.background.lapse = [pc, la](const HyperDual* x) {
    return HyperDual(1.0) + HyperDual(la) * cos(HyperDual(pc.warp_frequency) * x[1]);
  };
  // (1 - c t)^2 g_sigma, the Milne development when the warp is exponential
  s.background.slice_metric = [pc, n](const HyperDual* x, HyperDual* h) {
    for (int a = 0; a < n * n; ++a) h[a] = HyperDual(0.0);
    const HyperDual sc = HyperDual(1.0) - HyperDual(pc.warp_rate) * x[0];
    const HyperDual s2 = sc * sc;
    HyperDual lnh;
    if (pc.warp == "power") {
      lnh = HyperDual(pc.warp_power) * log(x[1]);
    } else {
      const double c = pc.warp_rate, e = pc.warp_ripple, k = pc.warp_frequency;
      lnh = HyperDual(-c) * x[1] - HyperDual(c * e / k) * sin(HyperDual(k) * x[1]);
    }
    const HyperDual hh = exp(HyperDual(2.0) * lnh);
    h[0] = s2;
    for (int k = 1; k < n; ++k) h[k * n + k] = s2 * hh;
  };
  if (p.warp == "oscillating" && p.warp_ripple == 0.0 && la == 0.0) {
    ExactSolution ex;
    ex.metric = [pc, n](const double* x) {
      const double sc = 1.0 - pc.warp_rate * x[0];
      const double h = std::exp(-pc.warp_rate * x[1]);
      Mat g = Mat::Zero(n + 1, n + 1);
      g(0, 0) = -1.0;
      g(1, 1) = sc * sc;
      for (int k = 2; k <= n; ++k) g(k, k) = sc * sc * h * h;
      return g;
    };
    ex.f = [](const double*) { return 0.0; };
    s.exact = ex;
  }
  s.killing_tolerance = 1e-3;
  s.codazzi_tolerance = 1e-3;
  s.crossing_time = p.s_max - p.s_min;
  s.ricci_flat_expected = !p.negative_control && p.exponent == 0.5;
  return s;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"minkowski", "pp_wave", "warped_product"};
  return names;
}

Scenario make_scenario(const ScenarioParams& p) {
  if (p.name == "minkowski") return scenario_minkowski(p);
  if (p.name == "pp_wave") return scenario_pp_wave(p);
  if (p.name == "warped_product") return scenario_warped_product(p);
  throw std::invalid_argument("unknown scenario '" + p.name + "'");
}

void write_initial_data(const std::string& path, const InitialSurfaceData& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  const Grid& g = data.grid;
  const int n = g.n_spatial();
  out << "pspin-initial-data 1\n" << std::setprecision(17);
  out << "n_spatial " << n << "\n";
  out << "dim_spinor " << (data.phi.empty() ? 0 : data.phi[0].size()) << "\n";
  out << "axes " << g.active_count() << "\n";
  for (const auto& ax : g.axes()) {
    out << "axis " << ax.coord << " " << ax.points << " " << ax.origin << " " << ax.spacing << " "
        << (ax.periodic ? "periodic" : "bounded") << "\n";
  }
  out << "points " << g.size() << "\n";
  for (std::size_t p = 0; p < g.size(); ++p) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) out << data.g_sigma[p](i, j) << " ";
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out << data.W[p](i, j) << " ";
    out << data.lapse[p];
    for (int c = 0; c < data.phi[p].size(); ++c) out << " " << data.phi[p][c].real() << " " << data.phi[p][c].imag();
    out << "\n";
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

InitialSurfaceData read_initial_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read initial data file " + path);
  int lineno = 0;
  auto next = [&](const std::string& key) {
    std::string l;
    if (!std::getline(in, l)) throw std::runtime_error(path + ": truncated before '" + key + "'");
    ++lineno;
    std::istringstream ss(l);
    std::string k;
    ss >> k;
    if (k != key) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected '" + key + "'");
    }
    std::string rest;
    std::getline(ss, rest);
    return std::istringstream(rest);
  };
  std::string magic;
  std::getline(in, magic);
  ++lineno;
  if (magic != "pspin-initial-data 1") throw std::runtime_error(path + ": not an initial data file");
  int n = 0, spinor = 0, naxes = 0;
  std::size_t npts = 0;
  next("n_spatial") >> n;
  next("dim_spinor") >> spinor;
  next("axes") >> naxes;
  const GammaRep rep = build_gamma(n);
  if (spinor != rep.dim_spinor) throw std::runtime_error(path + ": spinor dimension mismatch");
  if (naxes < 1 || naxes > 2) throw std::runtime_error(path + ": bad axis count");
  std::vector<Axis> axes(naxes);
  for (auto& ax : axes) {
    std::string kind;
    auto ss = next("axis");
    ss >> ax.coord >> ax.points >> ax.origin >> ax.spacing >> kind;
    if (!ss || (kind != "periodic" && kind != "bounded")) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed axis");
    }
    ax.periodic = kind == "periodic";
  }
  InitialSurfaceData d;
  d.grid = Grid(n, axes);
  next("points") >> npts;
  if (npts != d.grid.size()) throw std::runtime_error(path + ": point count mismatch");
  allocate(d);
  const int per = n * (n + 1) / 2 + n * n + 1 + 2 * spinor;
  for (std::size_t p = 0; p < npts; ++p) {
    std::string l;
    if (!std::getline(in, l)) throw std::runtime_error(path + ": truncated point data");
    ++lineno;
    std::istringstream ss(l);
    std::vector<double> v;
    double x;
    while (ss >> x) v.push_back(x);
    if (!ss.eof() || static_cast<int>(v.size()) != per) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(per) + " numbers");
    }
    for (double e : v)
      if (!std::isfinite(e)) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": non-finite value");
    std::size_t c = 0;
    d.g_sigma[p] = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) d.g_sigma[p](i, j) = d.g_sigma[p](j, i) = v[c++];
    d.W[p] = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d.W[p](i, j) = v[c++];
    d.lapse[p] = v[c++];
    d.phi[p].resize(spinor);
    for (int k = 0; k < spinor; ++k, c += 2) d.phi[p][k] = cplx(v[c], v[c + 1]);
  }
  return d;
}

}  // namespace pspin
