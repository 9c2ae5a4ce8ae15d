#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qhe/density_state.hpp"
#include "qhe/model.hpp"

namespace qhe {

using Generator = Eigen::Matrix<Complex, 8, 8>;

// Constant-coefficient generator M of the master equation, d(state)/dt = M·state,
// over the eight-component DensityState layout. Entries are angular rates (1/ps);
// energies are converted exactly once on entry.
//
// Conventions baked in (and asserted by tests):
//   - cold-contact population rates carry a factor 2 (2Γ_c(n_c+1), 2Γ_c n_c),
//     the 2-1 contact does not (Γ₂(n₂+1), Γ₂ n₂);
//   - mixed dephasing of the pump coherence: Γ₂(n₂+1)/2 + Γ_c n_c;
//     of the probe coherence: Γ₂ n₂/2 + Γ_c(n_c+1);
//   - detunings appear only on the coherence rows.
//
// detuning_pump = omega_2g − omega_p, detuning_probe = omega_10 − omega_k, both eV.
Generator build_generator(const ModelParams& params, double detuning_pump_ev,
                          double detuning_probe_ev);

// Resonant-probe convenience: pump detuning from params, probe on resonance.
inline Generator build_generator(const ModelParams& params) {
  return build_generator(params, params.omega_2g - params.omega_p, 0.0);
}

// Time derivative of the trace under M: zero for any physical generator.
Complex trace_derivative(const Generator& M, const StateVector& state);

// Square submatrix of M on the given component indices. Valid when those
// components evolve autonomously (the complementary coupling entries vanish),
// e.g. the pumped g-1-2 block when Gamma_c = 0 and lambda = 0.
Eigen::MatrixXcd extract_subsystem(const Eigen::MatrixXcd& M, const std::vector<int>& indices);

}  // namespace qhe
