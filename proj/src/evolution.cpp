#include "pspin/evolution.hpp"

#include "pspin/simd/kernels.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace pspin {

StateVector build_initial_state(const System& sys, const InitialSurfaceData& data,
                                const InitialStateOptions& opts, ConstraintReport* report) {
  const GammaRep& rep = sys.rep();
  const Grid& grid = sys.grid();
  const int n = rep.n_spatial;
  const int dim = n + 1;
  const ConstraintReport cr = check_constraints(rep, data, sys.order(), opts.margin);
  if (report) *report = cr;
  if (cr.killing_residual_norm > opts.killing_threshold ||
      cr.algebraic_residual_norm > opts.algebraic_threshold) {
    std::ostringstream msg;
    msg << "initial data violate constraints: killing residual " << cr.killing_residual_norm
        << " (threshold " << opts.killing_threshold << "), algebraic residual "
        << cr.algebraic_residual_norm << " (threshold " << opts.algebraic_threshold << ")";
    if (!opts.warn_only) throw ConstraintFailure(msg.str());
    std::cerr << "warning: " << msg.str() << "\n";
  }

  StateVector s(sys.layout());
  s.t = 0.0;
  const StateLayout& l = s.layout;
  const std::size_t np = grid.size();
  for (std::size_t p = 0; p < np; ++p) {
    const double lam = data.lapse[p];
    s.at(l.g(sym_index(0, 0, dim)), p) = -lam * lam;
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) s.at(l.g(sym_index(i, j, dim)), p) = data.g_sigma[p](i - 1, j - 1);
  }
  // g_,i is the stencil derivative of g
  for (int i = 1; i <= n; ++i) {
    for (int c = 0; c < l.sym(); ++c) {
      const std::span<const double> row(s.var(l.g(c)), np);
      const auto d = spatial_derivative(grid, row, i, sys.order());
      std::copy(d.begin(), d.end(), s.var(l.gd(i, c)));
    }
  }
  const std::vector<double> fs = f_on_slice(data, sys.order());
  double x[kMaxDim];
  for (std::size_t p = 0; p < np; ++p) {
    const double lam = data.lapse[p];
    PointState ps = load_point(s, p);
    const Mat gi = inverse_metric(ps.g);
    grid.coordinates(p, 0.0, x);
    const BackgroundPoint bgp = background_point(sys.background(), x);
    const Vec F = compute_F(ps.g, gi, bgp.gamma);
    const Mat& gs = data.g_sigma[p];
    const Mat Wl = gs * data.W[p];
    const double trW = data.W[p].trace();
    Mat k = Mat::Zero(dim, dim);
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        k(i, j) = opts.scaling.kij * (-lam * (Wl(i - 1, j - 1) + Wl(j - 1, i - 1)));
    k(0, 0) = opts.scaling.k00 * (-2.0 * lam * lam * F[0] + 2.0 * lam * lam * lam * trW);
    const Mat gsi = gi.bottomRightCorner(n, n);
    for (int i = 1; i <= n; ++i) {
      double term = 0.0;
      for (int j = 1; j <= n; ++j)
        for (int kk = 1; kk <= n; ++kk)
          term += 0.5 * gsi(j - 1, kk - 1) * (2.0 * ps.dg[j](kk, i) - ps.dg[i](j, kk));
      const double dlnlam = ps.dg[i](0, 0) / (2.0 * ps.g(0, 0));
      k(0, i) = k(i, 0) = opts.scaling.k0i * lam * lam * (-F[i] + term - dlnlam);
    }
    ps.dg[0] = k;
    ps.f = opts.scaling.f * fs[p];
    ps.phi = data.phi[p];
    store_point(s, p, ps);
  }
  return s;
}

void validate(const EvolutionConfig& cfg) {
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (cfg.dt < 0.0) throw std::invalid_argument("dt must be positive when given");
  if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  if (cfg.cadence < 1) throw std::invalid_argument("cadence must be at least 1");
}

void step_rk4(const System& sys, StateVector& u, double dt) {
  const auto& kern = simd::active_kernels();
  const std::size_t n = u.data.size();
  const double t0 = u.t;
  StateVector k(u.layout), tmp(u.layout), acc(u.layout);
  acc.data = u.data;

  sys.rhs(u, k);
  kern.axpy(dt / 6.0, k.data.data(), acc.data.data(), n);
  kern.add_scaled(u.data.data(), 0.5 * dt, k.data.data(), tmp.data.data(), n);
  tmp.t = t0 + 0.5 * dt;

  sys.rhs(tmp, k);
  kern.axpy(dt / 3.0, k.data.data(), acc.data.data(), n);
  kern.add_scaled(u.data.data(), 0.5 * dt, k.data.data(), tmp.data.data(), n);
  tmp.t = t0 + 0.5 * dt;

  sys.rhs(tmp, k);
  kern.axpy(dt / 3.0, k.data.data(), acc.data.data(), n);
  kern.add_scaled(u.data.data(), dt, k.data.data(), tmp.data.data(), n);
  tmp.t = t0 + dt;

  sys.rhs(tmp, k);
  kern.axpy(dt / 6.0, k.data.data(), acc.data.data(), n);

  u.data.swap(acc.data);
  u.t = t0 + dt;
}

double choose_dt(const System& sys, const StateVector& u0, const EvolutionConfig& cfg) {
  if (cfg.dt > 0.0) return cfg.dt;
  const double s = sys.max_speed_over_dx(u0);
  if (!(s > 0.0)) throw std::runtime_error("cannot estimate characteristic speeds");
  return cfg.cfl / s;
}

namespace {

std::string locate_bad_value(const StateVector& u) {
  const StateLayout& l = u.layout;
  for (int v = 0; v < l.vars(); ++v)
    for (std::size_t p = 0; p < l.points(); ++p) {
      if (!std::isfinite(u.at(v, p))) {
        return "variable " + std::to_string(v) + ", point " + std::to_string(p);
      }
    }
  return "unknown";
}

}  // namespace

EvolutionResult evolve(const System& sys, StateVector& u, const EvolutionConfig& cfg,
                       const StepObserver& observer) {
  validate(cfg);
  EvolutionResult res;
  res.t_final = u.t;
  const auto& kern = simd::active_kernels();
  const double t0 = u.t;
  try {
    res.dt = choose_dt(sys, u, cfg);
    const int total = static_cast<int>(std::ceil(cfg.t_end / res.dt - 1e-9));
    if (total > 0) res.dt = cfg.t_end / total;
    res.min_A0 = sys.min_eig_A0(u);
    if (!(res.min_A0 > cfg.min_A0)) {
      throw HaltError("A0 positivity", "min eigenvalue " + std::to_string(res.min_A0), u.t);
    }
    if (observer) observer(0, u, total == 0);
    for (int step = 1; step <= total; ++step) {
      step_rk4(sys, u, res.dt);
      u.t = t0 + step * res.dt;
      const double m = kern.max_abs(u.data.data(), u.data.size());
      if (!std::isfinite(m)) throw HaltError("non-finite state", locate_bad_value(u), u.t);
      if (m > cfg.max_abs) throw HaltError("state blow-up", "max |u| = " + std::to_string(m), u.t);
      const bool last = step == total;
      if (step % cfg.cadence == 0 || last) {
        const double a0 = sys.min_eig_A0(u);
        res.min_A0 = std::min(res.min_A0, a0);
        if (!(a0 > cfg.min_A0)) {
          throw HaltError("A0 positivity", "min eigenvalue " + std::to_string(a0), u.t);
        }
      }
      res.steps = step;
      res.t_final = u.t;
      if (observer) observer(step, u, last);
    }
  } catch (const HaltError& e) {
    res.halted = true;
    res.halt_invariant = e.invariant();
    res.halt_location = e.location() + " (t = " + std::to_string(e.time()) + ")";
  } catch (const FrameFailure& e) {
    res.halted = true;
    res.halt_invariant = "frame failure";
    res.halt_location = e.what();
  } catch (const SingularMetric& e) {
    res.halted = true;
    res.halt_invariant = "singular metric";
    res.halt_location = e.what();
  }
  return res;
}

}  // namespace pspin
