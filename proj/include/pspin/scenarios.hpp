#pragma once
// Bundled scenarios: initial surface data, background metric and, where
// known, the exact development used as an error oracle.

#include "pspin/background.hpp"
#include "pspin/clifford.hpp"
#include "pspin/constraints.hpp"
#include "pspin/diagnostics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pspin {

struct ScenarioParams {
  std::string name = "minkowski";  // minkowski | pp_wave | warped_product
  int n_spatial = 3;
  int resolution = 32;  // points per active axis
  int axes = 1;         // active axes (minkowski only: 1 or 2)

  // pp_wave: g = -dt^2 + dz^2 + sum_k a_k(z - t)^2 dx_k^2,
  // a_k(w) = 1 + amplitude sin(wavenumber w + (k - 2) pi / 3), z periodic on [0, 2 pi).
  double amplitude = 0.1;
  double wavenumber = 1.0;
  // nonzero: initial lapse 1 + lapse_amplitude cos(wavenumber z) on the same slice
  // data; the background keeps unit lapse
  double lapse_amplitude = 0.0;

  // warped_product: ds^2 + h(s)^2 sum dx^2 on s in [s_min, s_max]
  std::string warp = "oscillating";  // oscillating | power
  double warp_rate = 0.5;            // c in b = c (1 + eps cos(kappa s))
  double warp_ripple = 0.3;          // eps
  double warp_frequency = 3.14159265358979323846;  // kappa
  double warp_power = 1.0;           // p in h = s^p
  double s_min = 0.0;
  double s_max = 2.0;
  double exponent = 0.5;             // q in F = b^q
  bool negative_control = false;     // W = b Id with the unmodified spinor
};

struct Scenario {
  std::string name;
  GammaRep rep;
  InitialSurfaceData data;
  BackgroundMetric background;
  std::optional<ExactSolution> exact;
  double killing_tolerance = 1e-6;    // declared check thresholds
  double algebraic_tolerance = 1e-10;
  double codazzi_tolerance = 1e-6;
  double crossing_time = 1.0;         // light-crossing time of the domain
  bool ricci_flat_expected = false;   // Codazzi criterion expected to hold
};

Scenario scenario_minkowski(const ScenarioParams& p);
Scenario scenario_pp_wave(const ScenarioParams& p);
Scenario scenario_warped_product(const ScenarioParams& p);
// Dispatch on p.name; throws std::invalid_argument for unknown names.
Scenario make_scenario(const ScenarioParams& p);

const std::vector<std::string>& scenario_names();

// Eigenvalue of W_f on d_s: b - 2 q b' / b.
double warped_radial_eigenvalue(double b, double db, double q);

// Unit spinor with gamma_0 gamma_1 phi = sign phi, obtained by projecting a
// fixed reference vector.
CVec eigen_spinor(const GammaRep& rep, int sign);

// Plain-text initial data files: header lines then one line per grid point
// with g_sigma (upper triangle), W (row-major), lapse, then Re/Im of phi.
void write_initial_data(const std::string& path, const InitialSurfaceData& data);
// Throws std::runtime_error on malformed files or non-finite values.
InitialSurfaceData read_initial_data(const std::string& path);

}  // namespace pspin
