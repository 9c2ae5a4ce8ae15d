#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "qhe/density_state.hpp"

namespace qhe {

enum class OdeMethod {
  kAuto,            // Radau when the problem is stiff over the span, else DP54
  kDormandPrince54, // explicit embedded 5(4) pair
  kRadau5,          // L-stable implicit Radau IIA, order 5, step doubling
};

struct IntegratorOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  OdeMethod method = OdeMethod::kAuto;
  std::size_t max_steps = 20'000'000;
  double initial_step = 0.0;  // 0 = choose automatically
};

struct OdeStats {
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
  OdeMethod method_used = OdeMethod::kAuto;
};

// Integrates the constant-coefficient linear system dy/dt = M·y from
// t_grid.front() (where y0 lives) through t_grid.back(), returning the state
// at every grid time. The grid must be non-decreasing; the first returned
// state is y0 itself. Steps are clipped to land exactly on grid times, so no
// dense-output interpolation error enters the recorded states.
//
// The implicit path keeps the running state and stage algebra in extended
// precision: at the step sizes a stiff window forces (h·‖M‖ ~ 1e9), double
// rounding inside the stage solves would eat the trace-conservation budget.
//
// Throws StiffnessFailure when the step size underflows or max_steps runs out.
std::vector<Eigen::VectorXcd> integrate_linear(const Eigen::MatrixXcd& M,
                                               const Eigen::VectorXcd& y0,
                                               const std::vector<double>& t_grid,
                                               const IntegratorOptions& opts = {},
                                               OdeStats* stats = nullptr);

// Stiffness heuristic used by kAuto: implicit when ‖M‖_inf · span > 1e4.
bool is_stiff(const Eigen::MatrixXcd& M, double span);

}  // namespace qhe
