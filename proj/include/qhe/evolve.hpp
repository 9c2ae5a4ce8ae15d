#pragma once

#include <vector>

#include "qhe/density_state.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/ode.hpp"

namespace qhe {

// Physicality diagnostics accumulated over a trajectory.
struct ConservationReport {
  double max_trace_drift = 0.0;        // max |trace(t) - trace(t0)|
  double max_hermiticity_error = 0.0;  // worst pairing violation
  double min_positivity_floor = 0.0;   // most negative population (0 if none)
  bool positivity_warning = false;     // floor below the -1e-7 diagnostic line
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityState> states;
  ConservationReport conservation;
  OdeStats stats;
};

// Adaptive integration of the master equation on the given output grid.
// Pre: t_grid strictly increasing, starting at 0; initial is a valid state.
// Post: trace drift stays below 10·abs_tol at every output time (checked;
// NumericalFailure otherwise). Positivity is monitored, never enforced:
// excursions below -1e-7 only set positivity_warning.
Trajectory evolve(const Generator& M, const DensityState& initial,
                  const std::vector<double>& t_grid, double rel_tol = 1e-9,
                  double abs_tol = 1e-12, OdeMethod method = OdeMethod::kAuto);

}  // namespace qhe
