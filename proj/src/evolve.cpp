#include "qhe/evolve.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {

Trajectory evolve(const Generator& M, const DensityState& initial,
                  const std::vector<double>& t_grid, double rel_tol, double abs_tol,
                  OdeMethod method) {
  if (t_grid.empty() || t_grid.front() != 0.0) {
    throw InvalidParams("evolve: time grid must start at 0");
  }
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) {
      throw InvalidParams("evolve: time grid must be strictly increasing");
    }
  }
  initial.validate();

  IntegratorOptions opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = abs_tol;
  opts.method = method;

  Trajectory traj;
  traj.times = t_grid;
  const auto raw = integrate_linear(M, initial.v, t_grid, opts, &traj.stats);

  const Complex trace0 = initial.trace();
  traj.states.reserve(raw.size());
  for (const auto& v : raw) {
    DensityState s;
    s.v = v;
    if (!s.is_finite()) {
      throw NumericalFailure("evolve: non-finite state in trajectory");
    }
    traj.conservation.max_trace_drift =
        std::fmax(traj.conservation.max_trace_drift, std::abs(s.trace() - trace0));
    traj.conservation.max_hermiticity_error =
        std::fmax(traj.conservation.max_hermiticity_error, s.hermiticity_error());
    traj.conservation.min_positivity_floor =
        std::fmin(traj.conservation.min_positivity_floor, s.positivity_floor());
    traj.states.push_back(std::move(s));
  }
  traj.conservation.positivity_warning = traj.conservation.min_positivity_floor < -1e-7;

  if (traj.conservation.max_trace_drift > 10.0 * abs_tol) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "evolve: trace drift %.3e exceeds 10*abs_tol = %.3e",
                  traj.conservation.max_trace_drift, 10.0 * abs_tol);
    throw NumericalFailure(msg);
  }
  return traj;
}

}  // namespace qhe
