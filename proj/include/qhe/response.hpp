#pragma once

#include <limits>

#include "qhe/density_state.hpp"
#include "qhe/engine.hpp"
#include "qhe/model.hpp"

namespace qhe {

// Propagators entering the third-order probe signal. Energies eV, rates 1/ps.
// The composite dephasing rates here belong to the perturbative response
// treatment, which counts the population-relaxation contributions at half
// weight; they intentionally differ from the full-model coherence decay rates.
struct GreensFunctions {
  double Gamma_10 = 0.0;  // [Gamma_c(n_c+1) + Gamma_2 n_2]/2
  double Gamma_2g = 0.0;  // [Gamma_c n_c + Gamma_2(n_2+1)]/2
  double omega_10 = 0.0;  // eV
  double omega_2g = 0.0;  // eV
  double Gamma_2 = 0.0;
  double Gamma_c = 0.0;
  double n_2 = 0.0;
  double n_c = 0.0;

  // Frequency-domain coherence propagators 1/(Gamma - i(omega-omega_0)/hbar).
  Complex coherence_10(double omega_ev) const;
  Complex coherence_2g(double omega_ev) const;

  // Time-domain population transport amplitudes (dimensionless).
  double population_00_gg(double t) const;
  double population_11_22(double t) const;
};

GreensFunctions greens_functions(const ModelParams& params);

struct PopulationGreens {
  double G_00_gg = 0.0;
  double G_11_22 = 0.0;
};

// Closed-form population Green's functions:
//   G_00,gg(t) = n_c (1 - e^{-Gamma_c(1+2n_c)t})/(1+2n_c)
//   G_11,22(t) = (1+n_2)(1 - e^{-Gamma_2(1+2n_2)t})/(1+2n_2)
PopulationGreens population_greens(double t, double Gamma_2, double Gamma_c,
                                   double n_2, double n_c);

// The same two amplitudes computed independently by exponentiating the 2x2
// population transport matrices (spectral route).
PopulationGreens population_greens_spectral(double t, double Gamma_2, double Gamma_c,
                                            double n_2, double n_c);

// The transport matrices themselves, acting on (rho_00, rho_gg) and
// (rho_11, rho_22) respectively.
Eigen::Matrix2d transport_matrix_cold(double Gamma_c, double n_c);
Eigen::Matrix2d transport_matrix_hot(double Gamma_2, double n_2);

struct SpectroInputs {
  ModelParams params;
  double sigma_p = 0.0;  // pump bandwidth, eV; required > 0, never defaulted
  double E_pu = 1.0;     // pump field amplitude (dimensionless)
  double E_pr = 1.0;     // probe field amplitude (dimensionless)
  double mu_10 = 1.0;    // transition dipole, eV per unit field
  double mu_2g = 1.0;
  // Probe carrier; NaN means resonant (omega_10).
  double omega_probe = std::numeric_limits<double>::quiet_NaN();

  void validate() const;
};

struct ResponseTriple {
  double R_a = 0.0;
  double R_b = 0.0;
  double R_c = 0.0;
  double total() const { return R_a + R_b + R_c; }
};

// Narrowband resonant third-order response magnitudes:
//   R_a = R_b = 4 mu_10^2 mu_2g^2 (1+n_2)/[(n_c Gamma_c + n_2 Gamma_2)^2 (1+2n_2) sigma_p]
//   R_c: (n_c, 1+2n_c) in place of (1+n_2, 1+2n_2).
// Dipoles enter as rates (mu/hbar) and sigma_p as a rate, so R carries ps^3.
// Throws ResonanceRequired when pump or probe is detuned by more than 1e-9 eV.
ResponseTriple response_functions(const SpectroInputs& inputs);

enum class SpectroMode {
  kGeneral,          // omega_10 * E_pu^2 E_pr^2 * 2(R_a+R_b+R_c)
  kHighTemperature,  // 12 (omega_h-omega_c) lambda^2 Omega_p^2 / [(n_c Gamma_c + n_2 Gamma_2)^2 sigma_p]
};

// Probe power in eV/ps. The general mode doubles the three diagram magnitudes
// to count each pathway together with its complex conjugate; the two modes
// then agree to O(1/n) in the high-temperature regime.
double spectro_power(const SpectroInputs& inputs, SpectroMode mode = SpectroMode::kGeneral);

// Reduced spectroscopic power in units of P_0^s = 6 Gamma_c^2 T_c^2/(sigma_p omega_c):
//   S(c_21) = lambda'^2 gamma_c c_21^2 (c_p' - c_21) / [tau^4 (c_21 + gamma_c)^2],
// maximized over c_21 in (0, c_p').
double dimensionless_spectro_power(double c_21, const DimensionlessPoint& pt);

// Closed-form maximum of S over c_21 (units P_0^s), evaluated in a
// cancellation-free product form equivalent to the printed expression with
// f = sqrt(gamma_c) - sqrt(8 c_p' + 9 gamma_c).
double pmax_s(const DimensionlessPoint& pt);

// Its maximizer c_21* = sqrt(gamma_c)(sqrt(8 c_p' + 9 gamma_c) - 3 sqrt(gamma_c))/2.
double spectro_optimal_gap_ratio(const DimensionlessPoint& pt);

// Weak-coupling comparison of the two engine branches (laser vs spectroscopic),
// everything in the dimensionless units P_0^Q = P_0^s = 1.
struct EngineComparison {
  double p_q_star = 0.0;             // 2 lambda'^2 c_p'/(3 tau^2)
  double p_s_star = 0.0;             // lambda'^2 c_p'^2/(16 tau^4)
  double ratio_q_over_s = 0.0;
  double gamma_c_equivalent = 0.0;   // 2 c_p^2/(9 tau^2): branch powers merge
  double gamma_c_optimal = 0.0;      // c_p'/2: spectroscopic optimum
  double c_p_prime_crossing = 0.0;   // 32 tau^2/3: p_q_star = p_s_star
  double c_p_prime_max_gap = 0.0;    // 16 tau^2/3: largest q/s gap (ratio 2)
  double Omega_p_star = 0.0;         // eV; NaN without a physical anchor
  double Omega_p_double_star = 0.0;  // Omega_p_star/sqrt(2)
  bool weak_coupling_violated = false;  // lambda' > 1
};

EngineComparison compare_engines(const DimensionlessPoint& pt,
                                 const ModelParams* anchor = nullptr);

namespace detail {

// One resonant double-sided diagram chain: two coherence legs around a
// zero-frequency population leg regularized by the pump bandwidth.
// mu2_product in eV^2*eV^2, rates 1/ps. Test-support only.
double resonant_chain(double mu2_product_ev4, double gamma_leg_a, double gamma_leg_b,
                      double stationary_weight, double sigma_rate);

// Dephasing rate of the merged-leg reduction, (n_c Gamma_c + n_2 Gamma_2)/2.
double merged_dephasing(const ModelParams& params);

}  // namespace detail

}  // namespace qhe
