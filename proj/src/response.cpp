#include "qhe/response.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "qhe/errors.hpp"
#include "qhe/units.hpp"

namespace qhe {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidParams(std::string(what) + " must be finite");
  }
}

void require_nonnegative(double v, const char* what) {
  require_finite(v, what);
  if (v < 0.0) {
    throw InvalidParams(std::string(what) + " must be >= 0");
  }
}

void validate_spectro_point(const DimensionlessPoint& pt) {
  require_finite(pt.tau, "tau");
  require_finite(pt.c_p, "c_p");
  require_finite(pt.lambda_prime, "lambda_prime");
  require_finite(pt.gamma_c, "gamma_c");
  if (pt.tau <= 0.0 || pt.tau >= 1.0) {
    throw InvalidParams("tau must lie in (0,1)");
  }
  if (pt.c_p < 1.0) throw InvalidParams("c_p must be >= 1");
  if (pt.lambda_prime < 0.0) throw InvalidParams("lambda_prime must be >= 0");
  if (pt.gamma_c <= 0.0) throw InvalidParams("gamma_c must be > 0");
}

double bath_drain_rate(double Gamma_2, double Gamma_c, double n_2, double n_c) {
  const double drain = n_c * Gamma_c + n_2 * Gamma_2;
  if (drain <= 0.0) {
    throw InvalidParams("response: n_c*Gamma_c + n_2*Gamma_2 must be > 0");
  }
  return drain;
}

}  // namespace

Complex GreensFunctions::coherence_10(double omega_ev) const {
  const double detune = rate_from_energy(omega_ev - omega_10);
  return 1.0 / Complex(Gamma_10, -detune);
}

Complex GreensFunctions::coherence_2g(double omega_ev) const {
  const double detune = rate_from_energy(omega_ev - omega_2g);
  return 1.0 / Complex(Gamma_2g, -detune);
}

double GreensFunctions::population_00_gg(double t) const {
  return population_greens(t, Gamma_2, Gamma_c, n_2, n_c).G_00_gg;
}

double GreensFunctions::population_11_22(double t) const {
  return population_greens(t, Gamma_2, Gamma_c, n_2, n_c).G_11_22;
}

GreensFunctions greens_functions(const ModelParams& params) {
  params.validate();
  GreensFunctions g;
  g.n_2 = params.n_2();
  g.n_c = params.n_c();
  g.Gamma_2 = params.Gamma_2;
  g.Gamma_c = params.Gamma_c;
  g.Gamma_10 = (params.Gamma_c * (g.n_c + 1.0) + params.Gamma_2 * g.n_2) / 2.0;
  g.Gamma_2g = (params.Gamma_c * g.n_c + params.Gamma_2 * (g.n_2 + 1.0)) / 2.0;
  g.omega_10 = params.omega_10;
  g.omega_2g = params.omega_2g;
  return g;
}

PopulationGreens population_greens(double t, double Gamma_2, double Gamma_c,
                                   double n_2, double n_c) {
  require_nonnegative(t, "t");
  require_nonnegative(Gamma_2, "Gamma_2");
  require_nonnegative(Gamma_c, "Gamma_c");
  require_nonnegative(n_2, "n_2");
  require_nonnegative(n_c, "n_c");
  PopulationGreens g;
  g.G_00_gg = n_c * (1.0 - std::exp(-Gamma_c * (1.0 + 2.0 * n_c) * t)) / (1.0 + 2.0 * n_c);
  g.G_11_22 =
      (1.0 + n_2) * (1.0 - std::exp(-Gamma_2 * (1.0 + 2.0 * n_2) * t)) / (1.0 + 2.0 * n_2);
  return g;
}

Eigen::Matrix2d transport_matrix_cold(double Gamma_c, double n_c) {
  // acts on (rho_00, rho_gg)
  Eigen::Matrix2d m;
  m << -Gamma_c * (n_c + 1.0), Gamma_c * n_c,
       Gamma_c * (n_c + 1.0), -Gamma_c * n_c;
  return m;
}

Eigen::Matrix2d transport_matrix_hot(double Gamma_2, double n_2) {
  // acts on (rho_11, rho_22)
  Eigen::Matrix2d m;
  m << -Gamma_2 * n_2, Gamma_2 * (n_2 + 1.0),
       Gamma_2 * n_2, -Gamma_2 * (n_2 + 1.0);
  return m;
}

PopulationGreens population_greens_spectral(double t, double Gamma_2, double Gamma_c,
                                            double n_2, double n_c) {
  require_nonnegative(t, "t");
  const Eigen::Matrix2d cold = (transport_matrix_cold(Gamma_c, n_c) * t).exp();
  const Eigen::Matrix2d hot = (transport_matrix_hot(Gamma_2, n_2) * t).exp();
  PopulationGreens g;
  g.G_00_gg = cold(0, 1);
  g.G_11_22 = hot(0, 1);
  return g;
}

void SpectroInputs::validate() const {
  params.validate();
  if (!std::isfinite(sigma_p) || sigma_p <= 0.0) {
    throw InvalidParams("SpectroInputs: sigma_p (pump bandwidth, eV) is required "
                        "and must be > 0");
  }
  require_finite(E_pu, "E_pu");
  require_finite(E_pr, "E_pr");
  require_finite(mu_10, "mu_10");
  require_finite(mu_2g, "mu_2g");
  if (!std::isnan(omega_probe)) require_finite(omega_probe, "omega_probe");
}

ResponseTriple response_functions(const SpectroInputs& inputs) {
  inputs.validate();
  const ModelParams& p = inputs.params;
  const double pump_detune = std::abs(p.omega_p - p.omega_2g);
  const double probe = std::isnan(inputs.omega_probe) ? p.omega_10 : inputs.omega_probe;
  const double probe_detune = std::abs(probe - p.omega_10);
  if (pump_detune > 1e-9 || probe_detune > 1e-9) {
    throw ResonanceRequired(
        "response_functions: narrowband reduction needs omega_p = omega_2g and "
        "omega_probe = omega_10 (detunings " + std::to_string(pump_detune) + ", " +
        std::to_string(probe_detune) + " eV)");
  }
  const double n2 = p.n_2();
  const double nc = p.n_c();
  const double drain = bath_drain_rate(p.Gamma_2, p.Gamma_c, n2, nc);
  const double mu10r = rate_from_energy(inputs.mu_10);
  const double mu2gr = rate_from_energy(inputs.mu_2g);
  const double sigma = rate_from_energy(inputs.sigma_p);

  const double base = 4.0 * mu10r * mu10r * mu2gr * mu2gr / (drain * drain * sigma);
  ResponseTriple r;
  r.R_a = base * (1.0 + n2) / (1.0 + 2.0 * n2);
  r.R_b = r.R_a;
  r.R_c = base * nc / (1.0 + 2.0 * nc);
  return r;
}

double spectro_power(const SpectroInputs& inputs, SpectroMode mode) {
  if (mode == SpectroMode::kGeneral) {
    const ResponseTriple r = response_functions(inputs);
    // factor 2: each diagram contributes together with its complex conjugate
    return inputs.params.omega_10 * inputs.E_pu * inputs.E_pu * inputs.E_pr *
           inputs.E_pr * 2.0 * r.total();
  }
  inputs.validate();
  const ModelParams& p = inputs.params;
  const double n2 = p.n_2();
  const double nc = p.n_c();
  const double drain = bath_drain_rate(p.Gamma_2, p.Gamma_c, n2, nc);
  const double lambda = rate_from_energy(inputs.mu_10 * inputs.E_pr);
  const double omega = rate_from_energy(inputs.mu_2g * inputs.E_pu);
  const double sigma = rate_from_energy(inputs.sigma_p);
  return 12.0 * p.omega_10 * lambda * lambda * omega * omega / (drain * drain * sigma);
}

double dimensionless_spectro_power(double c_21, const DimensionlessPoint& pt) {
  validate_spectro_point(pt);
  require_finite(c_21, "c_21");
  const double cpp = pt.c_p_prime();
  if (c_21 < 0.0 || c_21 > cpp) {
    throw InvalidParams("dimensionless_spectro_power: c_21 must lie in [0, c_p-1]");
  }
  const double lp2 = pt.lambda_prime * pt.lambda_prime;
  const double t2 = pt.tau * pt.tau;
  const double leg = c_21 + pt.gamma_c;
  return lp2 * pt.gamma_c * c_21 * c_21 * (cpp - c_21) / (t2 * t2 * leg * leg);
}

double pmax_s(const DimensionlessPoint& pt) {
  validate_spectro_point(pt);
  const double cpp = pt.c_p_prime();
  const double lp2 = pt.lambda_prime * pt.lambda_prime;
  const double s = std::sqrt(pt.gamma_c);
  const double w = std::sqrt(8.0 * cpp + 9.0 * pt.gamma_c);
  const double t2 = pt.tau * pt.tau;
  // Printed form with f = s - w, rationalized: every cancelling difference
  // (f + 2s, the brace, f^2) is replaced by its positive-product equivalent.
  const double three_s_w = 3.0 * s + w;
  return 8.0 * lp2 * pt.gamma_c * cpp * cpp * cpp * s * (w + s) /
         (three_s_w * three_s_w * (3.0 * pt.gamma_c + w * s) * (cpp + pt.gamma_c) *
          t2 * t2);
}

double spectro_optimal_gap_ratio(const DimensionlessPoint& pt) {
  validate_spectro_point(pt);
  const double cpp = pt.c_p_prime();
  const double s = std::sqrt(pt.gamma_c);
  const double w = std::sqrt(8.0 * cpp + 9.0 * pt.gamma_c);
  // s(w - 3s)/2 with the difference rationalized
  return 4.0 * s * cpp / (w + 3.0 * s);
}

EngineComparison compare_engines(const DimensionlessPoint& pt,
                                 const ModelParams* anchor) {
  require_finite(pt.tau, "tau");
  require_finite(pt.c_p, "c_p");
  require_finite(pt.lambda_prime, "lambda_prime");
  if (pt.tau <= 0.0 || pt.tau >= 1.0) throw InvalidParams("tau must lie in (0,1)");
  if (pt.c_p < 1.0) throw InvalidParams("c_p must be >= 1");
  if (pt.lambda_prime < 0.0) throw InvalidParams("lambda_prime must be >= 0");

  const double cpp = pt.c_p_prime();
  const double lp2 = pt.lambda_prime * pt.lambda_prime;
  const double t2 = pt.tau * pt.tau;

  EngineComparison cmp;
  cmp.p_q_star = 2.0 * lp2 * cpp / (3.0 * t2);
  cmp.p_s_star = lp2 * cpp * cpp / (16.0 * t2 * t2);
  cmp.ratio_q_over_s = (cmp.p_s_star != 0.0)
                           ? cmp.p_q_star / cmp.p_s_star
                           : std::numeric_limits<double>::quiet_NaN();
  cmp.gamma_c_equivalent = 2.0 * pt.c_p * pt.c_p / (9.0 * t2);
  cmp.gamma_c_optimal = cpp / 2.0;
  cmp.c_p_prime_crossing = 32.0 * t2 / 3.0;
  cmp.c_p_prime_max_gap = 16.0 * t2 / 3.0;
  cmp.weak_coupling_violated = pt.lambda_prime > 1.0;

  if (anchor != nullptr) {
    anchor->validate();
    const double rate = 4.0 * anchor->T_c *
                        std::sqrt(anchor->Gamma_2 * anchor->Gamma_c /
                                  (3.0 * anchor->omega_c * anchor->omega_p));
    cmp.Omega_p_star = energy_from_rate(rate);
    cmp.Omega_p_double_star = cmp.Omega_p_star / std::sqrt(2.0);
  } else {
    cmp.Omega_p_star = std::numeric_limits<double>::quiet_NaN();
    cmp.Omega_p_double_star = std::numeric_limits<double>::quiet_NaN();
  }
  return cmp;
}

namespace detail {

double resonant_chain(double mu2_product_ev4, double gamma_leg_a, double gamma_leg_b,
                      double stationary_weight, double sigma_rate) {
  if (gamma_leg_a <= 0.0 || gamma_leg_b <= 0.0 || sigma_rate <= 0.0) {
    throw InvalidParams("resonant_chain: legs and bandwidth must be > 0");
  }
  const double h4 = kHbarEvPs * kHbarEvPs * kHbarEvPs * kHbarEvPs;
  return (mu2_product_ev4 / h4) * stationary_weight /
         (gamma_leg_a * gamma_leg_b * sigma_rate);
}

double merged_dephasing(const ModelParams& params) {
  params.validate();
  return (params.n_c() * params.Gamma_c + params.n_2() * params.Gamma_2) / 2.0;
}

}  // namespace detail

}  // namespace qhe
