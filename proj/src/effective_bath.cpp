#include "qhe/effective_bath.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qhe/errors.hpp"

namespace qhe {

namespace {

void require_time(double t, const char* op) {
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidParams(std::string(op) + ": time must be finite and >= 0, got " +
                        std::to_string(t));
  }
}

}  // namespace

double gamma_tilde(const ModelParams& params, GammaTildeMode mode) {
  params.validate();
  const double n2 = params.n_2();
  const double omega = params.Omega_p_rate();
  const double a = params.Gamma_2 * (n2 + 1.0) / 4.0;
  const double radicand = a * a - 2.0 * omega * omega;
  if (radicand < 0.0) {
    throw OscillatoryRegime(
        "gamma_tilde: pump too strong for the overdamped branch "
        "(4*sqrt(2)*Omega_p > Gamma_2*(n_2+1))");
  }
  if (mode == GammaTildeMode::kHighTemperature) {
    return 4.0 * omega * omega / (params.Gamma_2 * (n2 + 1.0));
  }
  // a - sqrt(a^2 - 2 w^2) rewritten to avoid cancellation when w << a.
  if (omega == 0.0) return 0.0;
  return 2.0 * omega * omega / (a + std::sqrt(radicand));
}

ReducedPopulations coherent_populations(double t, const ModelParams& params) {
  require_time(t, "coherent_populations");
  const double n2 = params.n_2();
  const double gt = gamma_tilde(params, GammaTildeMode::kHighTemperature);
  const double u = std::exp(-gt * t);
  const double norm = 1.0 + 2.0 * n2 + n2 * u;
  ReducedPopulations out;
  out.t = t;
  out.rho_11 = (n2 + 1.0) * (1.0 - u) / norm;
  out.rho_gg = 1.0 - out.rho_11;
  return out;
}

ReducedPopulations thermal_populations(double t, double n_h, double Gamma_h) {
  require_time(t, "thermal_populations");
  if (!std::isfinite(n_h) || n_h <= 0.0) {
    throw InvalidParams("thermal_populations: n_h must be finite and > 0");
  }
  if (!std::isfinite(Gamma_h) || Gamma_h <= 0.0) {
    throw InvalidParams("thermal_populations: Gamma_h must be finite and > 0");
  }
  ReducedPopulations out;
  out.t = t;
  out.rho_11 = n_h * (1.0 - std::exp(-Gamma_h * (1.0 + 2.0 * n_h) * t)) / (1.0 + 2.0 * n_h);
  out.rho_gg = 1.0 - out.rho_11;
  return out;
}

EffectiveBath match_bath_timedep(double t, const ModelParams& params) {
  if (!std::isfinite(t) || t <= 0.0) {
    throw InvalidParams("match_bath_timedep: time must be finite and > 0");
  }
  const double n2 = params.n_2();
  const double gt = gamma_tilde(params, GammaTildeMode::kHighTemperature);
  const double x = n2 * std::exp(-gt * t);
  if (x <= 1.0) {
    throw BeyondHorizon(
        "match_bath_timedep: n_2*exp(-gamma_tilde*t) <= 1, the effective "
        "occupation is no longer positive at t = " + std::to_string(t) + " ps");
  }
  EffectiveBath bath;
  bath.n_h = (n2 + 1.0) / (x - 1.0);
  bath.Gamma_h = gt / (2.0 * bath.n_h + 1.0);
  bath.t_star = 0.0;
  bath.validity_horizon = (gt > 0.0 && n2 > 1.0)
                              ? std::log(n2) / gt
                              : std::numeric_limits<double>::infinity();
  bath.low_temperature_warning = n2 < 100.0;
  return bath;
}

EffectiveBath match_bath_fixed(const ModelParams& params) {
  const double n2 = params.n_2();
  if (n2 <= 10.0) {
    throw LowTemperatureRegime(
        "match_bath_fixed: requires n_2 > 10, got n_2 = " + std::to_string(n2));
  }
  const double gt = gamma_tilde(params, GammaTildeMode::kHighTemperature);
  if (gt <= 0.0) {
    throw InvalidParams("match_bath_fixed: requires a nonzero pump");
  }
  const double omega = params.Omega_p_rate();
  EffectiveBath bath;
  bath.n_h = n2;
  bath.Gamma_h = 2.0 * omega * omega / (params.Gamma_2 * n2 * n2);
  bath.t_star = std::log(n2 / 2.0) / gt;
  bath.validity_horizon = std::numeric_limits<double>::infinity();
  bath.low_temperature_warning = n2 < 100.0;
  return bath;
}

PumpedClosedForm pumped_closed_forms(double t, const ModelParams& params,
                                     GammaTildeMode mode) {
  require_time(t, "pumped_closed_forms");
  const double n2 = params.n_2();
  const double omega = params.Omega_p_rate();
  const double g2n = params.Gamma_2 * (n2 + 1.0);
  const double z2 = g2n * g2n - 32.0 * omega * omega;
  if (z2 < 0.0) {
    throw OscillatoryRegime("pumped_closed_forms: oscillatory regime, coherence "
                            "decay rate is complex");
  }
  const double z = std::sqrt(z2);
  const double gamma_slow = gamma_tilde(params, GammaTildeMode::kExact);
  const double gamma_fast = (g2n + z) / 4.0;
  const double denom = 3.0 * n2 + 1.0;

  PumpedClosedForm out;
  out.t = t;
  // Coherence: the sinh form rewritten as a difference of decaying
  // exponentials, so large t never overflows.
  const double prefactor = 2.0 * (2.0 * n2 + 1.0) * omega / denom;
  if (z > 0.0) {
    const double osc = (std::exp(-gamma_slow * t) - std::exp(-gamma_fast * t)) / z;
    out.rho_g2 = Complex(0.0, prefactor * osc);
  } else {
    // critically damped limit of the same expression
    out.rho_g2 = Complex(0.0, prefactor * t * std::exp(-g2n * t / 4.0) / 2.0);
  }

  const double gt = gamma_tilde(params, mode);
  const double u = std::exp(-gt * t);
  out.rho_gg = (n2 + (2.0 * n2 + 1.0) * u) / denom;
  out.rho_11 = (n2 + 1.0) * (1.0 - u) / denom;
  out.rho_22 = n2 * (1.0 - u) / denom;
  return out;
}

std::array<double, 3> pumped_steady_triple(const ModelParams& params) {
  params.validate();
  const double n2 = params.n_2();
  const double denom = 3.0 * n2 + 1.0;
  return {n2 / denom, (n2 + 1.0) / denom, n2 / denom};
}

}  // namespace qhe
