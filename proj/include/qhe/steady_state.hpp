#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qhe/density_state.hpp"
#include "qhe/liouvillian.hpp"

namespace qhe {

struct SteadyStateOptions {
  // Singular values below rank_tol * sigma_max count as kernel directions.
  // The default separates float noise (~1e-15 relative) from genuinely slow
  // physical modes (>= 1e-11 relative at the stiffest supported parameters).
  double rank_tol = 1e-12;
  // Acceptance threshold on ||M x||_inf / (||M||_inf ||x||_inf). Residuals are
  // scale-invariant: raw ||M x|| is meaningless when rates reach 1e13/ps.
  double residual_tol = 1e-10;
};

struct SteadyStateSolution {
  Eigen::VectorXcd state;  // kernel vector, populations summing to 1
  double scaled_residual;  // ||M x||_inf / (||M||_inf ||x||_inf)
  double kernel_gap;       // second-smallest singular value / sigma_max
};

// Null-space steady state of an arbitrary generator: SVD kernel extraction,
// normalized so the populations (at population_indices) sum to 1.
// Throws DegenerateSteadyState when the kernel is not one-dimensional or the
// kernel vector is traceless; NumericalFailure when the residual is out of
// tolerance.
SteadyStateSolution steady_state_kernel(const Eigen::MatrixXcd& M,
                                        const std::vector<int>& population_indices,
                                        const SteadyStateOptions& opts = {});

// Full-model convenience wrapper on the eight-component layout.
DensityState steady_state(const Generator& M, const SteadyStateOptions& opts = {});

}  // namespace qhe
