#pragma once

#include <cmath>
#include <string>

#include "qhe/errors.hpp"
#include "qhe/units.hpp"

namespace qhe {

// Physical parameter set for the driven four-level model.
//
// Level scheme: |g> ground, |0> cold-split lower, |1> cold-split upper,
// |2> pumped top level. Energies are gaps in eV:
//   omega_2g : |g> -> |2> gap (pump transition)
//   omega_10 : |0> -> |1> gap (probe / work transition)
//   omega_21 : |1> -> |2> gap (hot relaxation step)
//   omega_c  : |g> -> |0> gap (cold extraction step)
// Closure: omega_2g = omega_10 + omega_21 + omega_c.
//
// Drives and baths:
//   omega_p : pump carrier energy (eV), resonant when equal to omega_2g
//   Omega_p : pump Rabi coupling (eV)
//   lambda  : probe coupling (eV)
//   Gamma_2 : half-rate of the 2<->1 bath contact (1/ps)
//   Gamma_c : half-rate of the 0<->g bath contact (1/ps)
//   T_c     : bath temperature (eV, k_B = 1); both contacts sit in the same
//             bath, the effective hot occupation comes from the pump.
//
// Thermal occupations are always *derived* from (gap, T_c), never stored.
struct ModelParams {
  double omega_p = 0.0;
  double omega_2g = 0.0;
  double omega_21 = 0.0;
  double omega_c = 0.0;
  double omega_10 = 0.0;
  double Gamma_2 = 0.0;
  double Gamma_c = 0.0;
  double Omega_p = 0.0;
  double lambda = 0.0;
  double T_c = 0.0;

  // Occupation of the pump-side relaxation mode (gap omega_21).
  double n_2() const { return bose_occupation(omega_21, T_c); }

  // Occupation of the cold extraction mode (gap omega_c).
  double n_c() const { return bose_occupation(omega_c, T_c); }

  // Couplings and detunings as angular rates (1/ps).
  double Omega_p_rate() const { return rate_from_energy(Omega_p); }
  double lambda_rate() const { return rate_from_energy(lambda); }
  double pump_detuning_rate() const { return rate_from_energy(omega_2g - omega_p); }

  double closure_residual() const { return omega_2g - (omega_10 + omega_21 + omega_c); }

  // Throws InvalidParams unless every field is finite, all gaps and T_c are
  // strictly positive, all rates/couplings are >= 0, and the gaps close.
  // Zero rates and couplings are legal: decoupled baths and switched-off
  // drives are meaningful reduced models.
  void validate() const {
    auto bad = [](double v) { return !std::isfinite(v); };
    if (bad(omega_p) || bad(omega_2g) || bad(omega_21) || bad(omega_c) ||
        bad(omega_10) || bad(Gamma_2) || bad(Gamma_c) || bad(Omega_p) ||
        bad(lambda) || bad(T_c)) {
      throw InvalidParams("ModelParams: non-finite field");
    }
    if (omega_p <= 0 || omega_2g <= 0 || omega_21 <= 0 || omega_c <= 0 || omega_10 <= 0) {
      throw InvalidParams("ModelParams: all transition energies must be > 0");
    }
    if (T_c <= 0) throw InvalidParams("ModelParams: T_c must be > 0");
    if (Gamma_2 < 0 || Gamma_c < 0) throw InvalidParams("ModelParams: rates must be >= 0");
    if (Omega_p < 0 || lambda < 0) throw InvalidParams("ModelParams: couplings must be >= 0");
    const double scale = std::fmax(1.0, std::fabs(omega_2g));
    if (std::fabs(closure_residual()) > 1e-12 * scale) {
      throw InvalidParams("ModelParams: level closure violated, omega_2g != omega_10 + omega_21 + omega_c (residual " +
                          std::to_string(closure_residual()) + " eV)");
    }
  }

  // Reference operating point used by the pump-stage datasets: room
  // temperature bath, pump occupation 1000, resonant weak pump, probe off.
  static ModelParams reference() {
    ModelParams p;
    p.T_c = 0.0259;
    p.omega_c = 0.2;
    p.omega_p = 2.0;
    p.omega_2g = 2.0;
    p.omega_21 = energy_for_occupation(1000.0, p.T_c);
    p.omega_10 = p.omega_2g - p.omega_21 - p.omega_c;
    p.Gamma_2 = 0.025;
    p.Gamma_c = 0.025;
    p.Omega_p = 1e-4;
    p.lambda = 0.0;
    return p;
  }
};

}  // namespace qhe
