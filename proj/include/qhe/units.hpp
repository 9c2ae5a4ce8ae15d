#pragma once

#include <cmath>

namespace qhe {

// Unit convention used throughout: energies and temperatures in eV, times in
// ps, rates in 1/ps. hbar converts an energy to a rate exactly once, at the
// point where the energy enters an equation of motion.
inline constexpr double kHbarEvPs = 0.6582119569;  // eV*ps

// Energy (eV) -> angular rate (1/ps).
inline double rate_from_energy(double energy_ev) { return energy_ev / kHbarEvPs; }

// Angular rate (1/ps) -> energy (eV).
inline double energy_from_rate(double rate_inv_ps) { return rate_inv_ps * kHbarEvPs; }

// Bose-Einstein occupation of a mode at energy omega (eV) and temperature
// T (eV, k_B = 1). Uses expm1 so small omega/T does not cancel.
inline double bose_occupation(double omega_ev, double temperature_ev) {
  return 1.0 / std::expm1(omega_ev / temperature_ev);
}

// Inverse of bose_occupation: mode energy that has occupation n at
// temperature T. log1p keeps large n accurate.
inline double energy_for_occupation(double n, double temperature_ev) {
  return temperature_ev * std::log1p(1.0 / n);
}

}  // namespace qhe
