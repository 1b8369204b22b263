#pragma once
// Initial state construction and explicit time integration.

#include "pspin/constraints.hpp"
#include "pspin/system.hpp"

#include <functional>
#include <stdexcept>
#include <string>

namespace pspin {

class ConstraintFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an evolution invariant fails; carries the invariant and where.
class HaltError : public std::runtime_error {
 public:
  HaltError(std::string invariant, std::string location, double t)
      : std::runtime_error(invariant + " at " + location), invariant_(std::move(invariant)),
        location_(std::move(location)), t_(t) {}
  const std::string& invariant() const { return invariant_; }
  const std::string& location() const { return location_; }
  double time() const { return t_; }

 private:
  std::string invariant_;
  std::string location_;
  double t_;
};

// Multiplicative corruption of individual initial-data formulas; all 1 for
// faithful data.
struct InitialDataScaling {
  double k00 = 1.0;
  double k0i = 1.0;
  double kij = 1.0;
  double f = 1.0;
};

struct InitialStateOptions {
  double killing_threshold = 1e-6;
  double algebraic_threshold = 1e-10;
  bool warn_only = false;
  int margin = 0;  // cells excluded from the constraint check near bounded edges
  InitialDataScaling scaling;
};

// Builds the t = 0 state. Throws ConstraintFailure when the data violate the
// thresholds and warn_only is false.
StateVector build_initial_state(const System& sys, const InitialSurfaceData& data,
                                const InitialStateOptions& opts = {},
                                ConstraintReport* report = nullptr);

struct EvolutionConfig {
  double cfl = 0.25;
  double dt = 0.0;           // > 0 overrides the CFL choice
  double t_end = 1.0;
  int cadence = 1;           // A0 positivity check every `cadence` steps (and at the end)
  double min_A0 = 1e-8;      // positivity threshold
  double max_abs = 1e6;      // blow-up threshold on any state component
};

void validate(const EvolutionConfig& cfg);

// One classical Runge-Kutta step.
void step_rk4(const System& sys, StateVector& u, double dt);

struct EvolutionResult {
  int steps = 0;
  double dt = 0.0;
  double t_final = 0.0;
  double min_A0 = 0.0;  // smallest A0 eigenvalue seen at observed steps
  bool halted = false;
  std::string halt_invariant;
  std::string halt_location;
};

// observer(step, state, is_last), called after every step and once at step 0
using StepObserver = std::function<void(int, const StateVector&, bool)>;

double choose_dt(const System& sys, const StateVector& u0, const EvolutionConfig& cfg);

// Integrates to t_end with a fixed step. Invariant failures end the run with
// halted = true and the failing invariant recorded.
EvolutionResult evolve(const System& sys, StateVector& u, const EvolutionConfig& cfg,
                       const StepObserver& observer = {});

}  // namespace pspin
