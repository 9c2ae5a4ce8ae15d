#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>

#include "qhe/density_state.hpp"
#include "qhe/model.hpp"

namespace qhe {

// Engine operating point in reduced variables. tau = T_c/T_h, c_p = omega_p/omega_c,
// c_21 = omega_21/omega_c, lambda_prime = lambda*omega_c/(Gamma_c*T_h),
// gamma = Gamma_h/Gamma_c, gamma_c = Gamma_2/Gamma_c.
struct DimensionlessPoint {
  double tau = 0.5;
  double c_p = 4.0;
  double c_21 = 0.5;
  double lambda_prime = 1.0;
  double gamma = 1.0;
  double gamma_c = 1.0;

  double eta_C() const { return 1.0 - tau; }
  double c_p_prime() const { return c_p - 1.0; }
  // The reduced power formulas assume the pump quantum dominates the 2-1 gap.
  bool narrow_gap_warning() const { return c_21 > 0.1 * c_p; }
  void validate() const;
};

// Steady state of the three-level engine (ground g, cold-side 0, hot-side 1).
struct EngineSteadyState {
  double rho_00 = 0.0;
  double rho_11 = 0.0;
  double rho_gg = 1.0;
  Complex rho_01{0.0, 0.0};
};

// Stationary solution of the coupled three-level equations with a cold bath on
// g-0, a hot bath on g-1, coherent coupling lambda (rate, 1/ps) between 0 and 1,
// and detuning Delta (rate). Solved in closed form; every term in the reduced
// 2x2 population system is positive, so no cancellation occurs.
EngineSteadyState three_level_steady_state(double lambda, double Gamma_h,
                                           double Gamma_c, double n_h, double n_c,
                                           double Delta = 0.0);

// The same dynamics as a 5x5 matrix on (rho_gg, rho_00, rho_11, rho_01, rho_10),
// for cross-checking against the generic kernel solver.
Eigen::MatrixXcd three_level_generator(double lambda, double Gamma_h, double Gamma_c,
                                       double n_h, double n_c, double Delta = 0.0);

struct PerformanceRecord {
  double power = 0.0;          // output power / (Gamma_c*omega_c); positive = engine
  double heat_flux_hot = 0.0;  // hot-bath heat intake, same normalization
  double efficiency = 0.0;     // 1 - omega_c/omega_h
  std::string region = "unclassified";
};

// Output power and hot heat flux of the three-level engine steady state, in
// units of P_0 = Gamma_c*omega_c. Energies in eV, rates in 1/ps. The region
// label stays "unclassified" here: classification needs the (eta_C, c_p) map
// coordinates, which the reduced engine inputs do not determine.
PerformanceRecord engine_performance(double omega_c_ev, double omega_h_ev,
                                     double lambda, double Gamma_h, double Gamma_c,
                                     double n_h, double n_c, double Delta = 0.0);

// High-temperature closed form of the output power (eV/ps):
// (2/3) lambda^2 Gamma_h Gamma_c (n_c-n_h)(omega_c-omega_h)
//   / [(Gamma_h n_h + Gamma_c n_c)(lambda^2 + Gamma_h Gamma_c n_c n_h)].
double power_closed_form(double lambda, double Gamma_h, double Gamma_c, double n_h,
                         double n_c, double omega_c_ev, double omega_h_ev);

// Reduced output power in units of P_0 as printed:
// 2 lambda'^2 c21 (c_p-1)(1-c21) / [3 (lambda'^2+c21)(tau^2+c21)].
double dimensionless_power(double c_21, const DimensionlessPoint& pt);

// Companion small-gap truncation 2 lambda'^2 c21 (c_p' - c_p*c21)
// / [3 (lambda'^2+c21)(tau^2+c21)], c_p' = c_p-1. This is the member of the
// family whose maximum and maximizer are reproduced exactly by pmax_q and
// optimal_gap_ratio below.
double dimensionless_power_small_gap(double c_21, const DimensionlessPoint& pt);

// Closed-form maximum of the reduced power over c_21 at fixed c_p (units P_0),
// evaluated in a cancellation-free form. Throws SingularCoupling when
// |lambda' - tau| < 1e-9 (the printed expression has a removable singularity
// there).
double pmax_q(const DimensionlessPoint& pt);

// Closed-form maximizing gap ratio c_21*.
double optimal_gap_ratio(const DimensionlessPoint& pt);

// Efficiency at maximum power, 1 - 1/(c_p - c_21*).
double eta_star(const DimensionlessPoint& pt);

// Printed strong-coupling efficiency 1 - [c_p + tau(tau - sqrt(1+tau^2))]^{-1}.
double eta_star_sc(const DimensionlessPoint& pt);

// Actual lambda' -> infinity limit of eta_star:
// c_21*(inf) = tau*sqrt(tau^2 + c_p'/c_p) - tau^2.
double eta_star_strong_coupling_limit(const DimensionlessPoint& pt);

// Efficiency at maximum power as a function of the map coordinate alone,
// eta* = 1 - 2/c_p (the curve generating all Table-row boundary efficiencies).
double boundary_efficiency_map(double c_p);

struct RegionInfo {
  std::string label;                    // I..IV, boundary row, sub-threshold, beyond-Carnot
  bool on_boundary = false;
  std::array<double, 5> boundaries{};   // c_p of the five bound curves at this eta_C
  std::array<double, 5> boundary_eta{}; // efficiency on each curve
};

// Classifies a (eta_C, c_p) map point against the five bound curves
// c_p = {2, 4/(2-eta), 2/sqrt(1-eta), (2-eta)/(1-eta), 2/(1-eta)}.
RegionInfo classify_region(double eta_C, double c_p);

enum class BoundKind {
  kCurzonAhlborn,  // pump amplitude realizing c_p = 2/sqrt(tau)
  kGammaLimits,    // threshold separating gamma -> 0 from gamma -> infinity
};

struct RabiBound {
  double Omega_p = 0.0;  // eV
  std::string condition;
};

// Pump Rabi energies attached to the efficiency-bound regimes.
RabiBound rabi_for_bound(BoundKind kind, const ModelParams& params);

// Effective hot temperature generated by the pump, in eV:
// T_h = Omega_p * omega_c * sqrt(2/(Gamma_2*Gamma_c)) with Omega_p as a rate.
double effective_hot_temperature(const ModelParams& params);

// Maps physical model parameters to the reduced engine coordinates, taking
// Gamma_h from the fixed bath matching. Not validated here: physical parameter
// sets outside the engine regime (tau >= 1) map to points the engine
// operations will reject.
DimensionlessPoint dimensionless_point(const ModelParams& params);

}  // namespace qhe
