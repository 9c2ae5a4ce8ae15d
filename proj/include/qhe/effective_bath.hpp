#pragma once

#include <array>

#include "qhe/density_state.hpp"
#include "qhe/model.hpp"

namespace qhe {

// Branch of the slow pump-relaxation rate.
enum class GammaTildeMode {
  kExact,            // root of the overdamped characteristic polynomial
  kHighTemperature,  // leading form 4*Omega_p^2 / (Gamma_2 (n_2+1))
};

// Slow relaxation rate (1/ps) of the pump-driven g-1 pair.
//   exact:  Gamma_2(n_2+1)/4 - sqrt(Gamma_2^2 (n_2+1)^2/16 - 2 Omega_p^2),
//           evaluated in a cancellation-free form;
//   high_T: 4 Omega_p^2 / (Gamma_2 (n_2+1)).
// Omega_p enters as a rate. Throws OscillatoryRegime when the pump is too
// strong for the overdamped branch (4*sqrt(2)*Omega_p > Gamma_2 (n_2+1)); the
// condition bounds the regime itself, so both branches refuse it.
double gamma_tilde(const ModelParams& params, GammaTildeMode mode);

// Effective hot-bath parameters replacing the coherent pump.
struct EffectiveBath {
  double n_h = 0.0;                // occupation (time-dependent map: value at t)
  double Gamma_h = 0.0;            // contact rate, 1/ps
  double t_star = 0.0;             // fixed matching time (ps); 0 for the time-dependent map
  double validity_horizon = 0.0;   // largest t with n_h(t) > 0 (ps); +inf for fixed matching
  bool low_temperature_warning = false;  // n_2 < 100: the n_2 >> 1 reduction is strained
};

// Two-level reduced populations (pair sums to 1 exactly).
struct ReducedPopulations {
  double rho_gg = 1.0;
  double rho_11 = 0.0;
  double t = 0.0;
};

// Populations of the coherently pumped pair, normalized so the pair carries
// unit probability. Uses the high-temperature rate branch: the bath-matching
// identity below is exact only on that branch.
ReducedPopulations coherent_populations(double t, const ModelParams& params);

// Two-level system against a thermal contact (n_h, Gamma_h):
// rho_11 = n_h (1 - exp(-Gamma_h (1+2 n_h) t)) / (1+2 n_h).
ReducedPopulations thermal_populations(double t, double n_h, double Gamma_h);

// Time-dependent matching: the (n_h(t), Gamma_h(t)) thermal contact whose
// populations coincide with coherent_populations at every t before the
// horizon. Requires 0 < t < ln(n_2)/gamma_tilde; throws BeyondHorizon once
// n_2 exp(-gamma_tilde t) <= 1 (the effective occupation would go negative).
EffectiveBath match_bath_timedep(double t, const ModelParams& params);

// Fixed matching at t* = ln(n_2/2)/gamma_tilde: n_h = n_2,
// Gamma_h = 2 Omega_p^2/(Gamma_2 n_2^2). Requires n_2 > 10
// (LowTemperatureRegime otherwise); warns below 100.
EffectiveBath match_bath_fixed(const ModelParams& params);

// Closed-form transient of the pumped three-level block (g, 1, 2) from the
// ground state: raw populations (sum exactly 1) and the pump coherence.
struct PumpedClosedForm {
  Complex rho_g2{0.0, 0.0};
  double rho_gg = 1.0;
  double rho_11 = 0.0;
  double rho_22 = 0.0;
  double t = 0.0;
};
PumpedClosedForm pumped_closed_forms(double t, const ModelParams& params,
                                     GammaTildeMode mode = GammaTildeMode::kExact);

// Long-time limit of the pumped block: (gg, 11, 22) = (n_2, n_2+1, n_2)/(3 n_2 + 1).
std::array<double, 3> pumped_steady_triple(const ModelParams& params);

}  // namespace qhe
