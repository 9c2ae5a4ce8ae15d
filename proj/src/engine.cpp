#include "qhe/engine.hpp"

#include <cmath>
#include <string>

#include "qhe/effective_bath.hpp"
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
    throw InvalidParams(std::string(what) + " must be >= 0, got " + std::to_string(v));
  }
}

// Checks the fields an operation actually reads; c_21 is validated separately
// by the operations that take it as an argument.
void validate_reduced(const DimensionlessPoint& pt, bool need_cp_above_one = true) {
  require_finite(pt.tau, "tau");
  require_finite(pt.c_p, "c_p");
  require_finite(pt.lambda_prime, "lambda_prime");
  if (pt.tau <= 0.0 || pt.tau >= 1.0) {
    throw InvalidParams("tau must lie in (0,1), got " + std::to_string(pt.tau));
  }
  const double cp_min = need_cp_above_one ? 1.0 : 0.0;
  if (pt.c_p < cp_min) {
    throw InvalidParams("c_p must be >= " + std::to_string(cp_min) + ", got " +
                        std::to_string(pt.c_p));
  }
  if (pt.lambda_prime < 0.0) {
    throw InvalidParams("lambda_prime must be >= 0");
  }
}

struct CramerCore {
  double K = 0.0;        // coherence-mediated population exchange rate
  double Gamma_x = 0.0;  // coherence decay rate
  double D = 0.0;        // positive determinant of the reduced population system
  double rho_00 = 0.0;
  double rho_11 = 0.0;
  double diff = 0.0;     // rho_11 - rho_00 without cancellation
};

CramerCore solve_core(double lambda, double Gamma_h, double Gamma_c, double n_h,
                      double n_c, double Delta) {
  require_nonnegative(lambda, "lambda");
  require_nonnegative(Gamma_h, "Gamma_h");
  require_nonnegative(Gamma_c, "Gamma_c");
  require_nonnegative(n_h, "n_h");
  require_nonnegative(n_c, "n_c");
  require_finite(Delta, "Delta");

  CramerCore core;
  core.Gamma_x = Gamma_c * (1.0 + n_c) + Gamma_h * (1.0 + n_h);
  core.K = (core.Gamma_x > 0.0)
               ? 2.0 * lambda * lambda * core.Gamma_x /
                     (core.Gamma_x * core.Gamma_x + Delta * Delta)
               : 0.0;
  const double kc = 2.0 * Gamma_c;
  const double kh = 2.0 * Gamma_h;
  // Every term below is nonnegative, so D and the numerators never cancel.
  core.D = core.K * (kc * (1.0 + 3.0 * n_c) + kh * (1.0 + 3.0 * n_h)) +
           kc * kh * (1.0 + 2.0 * n_c + 2.0 * n_h + 3.0 * n_c * n_h);
  if (!(core.D > 0.0) || !std::isfinite(core.D)) {
    throw DegenerateSteadyState(
        "three-level engine: reduced population system is singular (no "
        "dissipation selects a unique steady state)");
  }
  const double pump = core.K * (kc * n_c + kh * n_h);
  core.rho_00 = (pump + kc * kh * n_c * (1.0 + n_h)) / core.D;
  core.rho_11 = (pump + kc * kh * n_h * (1.0 + n_c)) / core.D;
  core.diff = kc * kh * (n_h - n_c) / core.D;
  return core;
}

}  // namespace

void DimensionlessPoint::validate() const {
  validate_reduced(*this);
  require_finite(c_21, "c_21");
  require_finite(gamma, "gamma");
  require_finite(gamma_c, "gamma_c");
  if (c_21 <= 0.0) throw InvalidParams("c_21 must be > 0");
  if (lambda_prime <= 0.0) throw InvalidParams("lambda_prime must be > 0");
  if (c_p <= 1.0) throw InvalidParams("c_p must be > 1");
  if (gamma <= 0.0) throw InvalidParams("gamma must be > 0");
  if (gamma_c <= 0.0) throw InvalidParams("gamma_c must be > 0");
}

EngineSteadyState three_level_steady_state(double lambda, double Gamma_h,
                                           double Gamma_c, double n_h, double n_c,
                                           double Delta) {
  const CramerCore core = solve_core(lambda, Gamma_h, Gamma_c, n_h, n_c, Delta);

  EngineSteadyState ss;
  ss.rho_00 = core.rho_00;
  ss.rho_11 = core.rho_11;
  ss.rho_gg = 1.0 - core.rho_00 - core.rho_11;
  ss.rho_01 = (lambda > 0.0)
                  ? Complex(0.0, -lambda) * core.diff / Complex(core.Gamma_x, Delta)
                  : Complex(0.0, 0.0);

  // Residual of the two stationary population equations, relative to the
  // coefficient scale.
  const double kc = 2.0 * Gamma_c;
  const double kh = 2.0 * Gamma_h;
  const double a = core.K + kc * (1.0 + 2.0 * n_c);
  const double b = core.K - kc * n_c;
  const double g = core.K - kh * n_h;
  const double d = core.K + kh * (1.0 + 2.0 * n_h);
  const double r1 = a * ss.rho_00 - b * ss.rho_11 - kc * n_c;
  const double r2 = -g * ss.rho_00 + d * ss.rho_11 - kh * n_h;
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(g), std::abs(d), 1.0});
  if (std::max(std::abs(r1), std::abs(r2)) > 1e-12 * scale) {
    throw NumericalFailure("three_level_steady_state: stationarity residual too large");
  }
  return ss;
}

Eigen::MatrixXcd three_level_generator(double lambda, double Gamma_h, double Gamma_c,
                                       double n_h, double n_c, double Delta) {
  require_nonnegative(lambda, "lambda");
  require_nonnegative(Gamma_h, "Gamma_h");
  require_nonnegative(Gamma_c, "Gamma_c");
  require_nonnegative(n_h, "n_h");
  require_nonnegative(n_c, "n_c");
  require_finite(Delta, "Delta");

  const double kc = 2.0 * Gamma_c;
  const double kh = 2.0 * Gamma_h;
  const double gx = Gamma_c * (1.0 + n_c) + Gamma_h * (1.0 + n_h);
  const Complex il(0.0, lambda);

  // ordering: (gg, 00, 11, 01, 10)
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(5, 5);
  m(0, 0) = -(kc * n_c + kh * n_h);
  m(0, 1) = kc * (1.0 + n_c);
  m(0, 2) = kh * (1.0 + n_h);

  m(1, 0) = kc * n_c;
  m(1, 1) = -kc * (1.0 + n_c);
  m(1, 3) = il;
  m(1, 4) = -il;

  m(2, 0) = kh * n_h;
  m(2, 2) = -kh * (1.0 + n_h);
  m(2, 3) = -il;
  m(2, 4) = il;

  m(3, 1) = il;
  m(3, 2) = -il;
  m(3, 3) = Complex(-gx, -Delta);

  m(4, 1) = -il;
  m(4, 2) = il;
  m(4, 4) = Complex(-gx, Delta);
  return m;
}

PerformanceRecord engine_performance(double omega_c_ev, double omega_h_ev,
                                     double lambda, double Gamma_h, double Gamma_c,
                                     double n_h, double n_c, double Delta) {
  require_finite(omega_c_ev, "omega_c");
  require_finite(omega_h_ev, "omega_h");
  if (omega_c_ev <= 0.0 || omega_h_ev <= 0.0) {
    throw InvalidParams("engine_performance: transition energies must be > 0");
  }
  if (Gamma_c <= 0.0) {
    throw InvalidParams("engine_performance: Gamma_c must be > 0 (power unit)");
  }
  const CramerCore core = solve_core(lambda, Gamma_h, Gamma_c, n_h, n_c, Delta);
  const double flux = core.K * core.diff;  // quanta moved 1->0 per ps
  const double p0 = Gamma_c * omega_c_ev;

  PerformanceRecord rec;
  rec.power = (omega_h_ev - omega_c_ev) * flux / p0;
  rec.heat_flux_hot = omega_h_ev * flux / p0;
  rec.efficiency = 1.0 - omega_c_ev / omega_h_ev;
  return rec;
}

double power_closed_form(double lambda, double Gamma_h, double Gamma_c, double n_h,
                         double n_c, double omega_c_ev, double omega_h_ev) {
  require_nonnegative(lambda, "lambda");
  require_nonnegative(Gamma_h, "Gamma_h");
  require_nonnegative(Gamma_c, "Gamma_c");
  require_nonnegative(n_h, "n_h");
  require_nonnegative(n_c, "n_c");
  require_finite(omega_c_ev, "omega_c");
  require_finite(omega_h_ev, "omega_h");
  const double drain = Gamma_h * n_h + Gamma_c * n_c;
  const double mix = lambda * lambda + Gamma_h * Gamma_c * n_c * n_h;
  if (drain <= 0.0 || mix <= 0.0) {
    throw InvalidParams("power_closed_form: vanishing denominator");
  }
  return (2.0 / 3.0) * lambda * lambda * Gamma_h * Gamma_c * (n_c - n_h) *
         (omega_c_ev - omega_h_ev) / (drain * mix);
}

double dimensionless_power(double c_21, const DimensionlessPoint& pt) {
  validate_reduced(pt);
  require_finite(c_21, "c_21");
  if (c_21 < 0.0 || c_21 > 1.0) {
    throw InvalidParams("dimensionless_power: c_21 must lie in [0,1]");
  }
  const double lp2 = pt.lambda_prime * pt.lambda_prime;
  if (lp2 == 0.0) return 0.0;
  return 2.0 * lp2 * c_21 * (pt.c_p - 1.0) * (1.0 - c_21) /
         (3.0 * (lp2 + c_21) * (pt.tau * pt.tau + c_21));
}

double dimensionless_power_small_gap(double c_21, const DimensionlessPoint& pt) {
  validate_reduced(pt);
  require_finite(c_21, "c_21");
  if (c_21 < 0.0 || c_21 > 1.0) {
    throw InvalidParams("dimensionless_power_small_gap: c_21 must lie in [0,1]");
  }
  const double lp2 = pt.lambda_prime * pt.lambda_prime;
  if (lp2 == 0.0) return 0.0;
  return 2.0 * lp2 * c_21 * (pt.c_p_prime() - pt.c_p * c_21) /
         (3.0 * (lp2 + c_21) * (pt.tau * pt.tau + c_21));
}

double pmax_q(const DimensionlessPoint& pt) {
  validate_reduced(pt);
  if (std::abs(pt.lambda_prime - pt.tau) < 1e-9) {
    throw SingularCoupling("pmax_q: lambda' = tau is excluded");
  }
  const double lp2 = pt.lambda_prime * pt.lambda_prime;
  const double t2 = pt.tau * pt.tau;
  const double cpp = pt.c_p_prime();
  // Equivalent to the printed {..}^2/(lambda'^2-tau^2)^2 form, with the
  // removable cancellation eliminated:
  //   sqrt(a) - sqrt(b) factors out of the brace, leaving 1/(sqrt a + sqrt b)^2.
  const double a = t2 * (lp2 * pt.c_p + cpp);
  const double b = lp2 * (pt.c_p * t2 + cpp);
  const double root_sum = std::sqrt(a) + std::sqrt(b);
  return 2.0 * lp2 * cpp * cpp / (3.0 * root_sum * root_sum);
}

double optimal_gap_ratio(const DimensionlessPoint& pt) {
  validate_reduced(pt);
  const double lp = pt.lambda_prime;
  const double lp2 = lp * lp;
  const double t2 = pt.tau * pt.tau;
  const double cpp = pt.c_p_prime();
  const double script_c = std::sqrt((lp2 * pt.c_p + cpp) * (pt.c_p * t2 + cpp));
  const double denom = pt.c_p * (lp2 + t2 + 1.0) - 1.0;
  // script_c - lp*tau*c_p rationalized: the difference equals
  // cpp*(lp^2 c_p + t^2 c_p + cpp)/(script_c + lp tau c_p), always positive.
  const double diff = cpp * (lp2 * pt.c_p + t2 * pt.c_p + cpp) /
                      (script_c + lp * pt.tau * pt.c_p);
  return lp * pt.tau * diff / denom;
}

double eta_star(const DimensionlessPoint& pt) {
  return 1.0 - 1.0 / (pt.c_p - optimal_gap_ratio(pt));
}

double eta_star_sc(const DimensionlessPoint& pt) {
  validate_reduced(pt);
  // tau(tau - sqrt(1+tau^2)) = -tau/(tau + sqrt(1+tau^2))
  const double shift = pt.tau / (pt.tau + std::sqrt(1.0 + pt.tau * pt.tau));
  return 1.0 - 1.0 / (pt.c_p - shift);
}

double eta_star_strong_coupling_limit(const DimensionlessPoint& pt) {
  validate_reduced(pt);
  const double t = pt.tau;
  const double r = pt.c_p_prime() / pt.c_p;
  // tau*sqrt(tau^2+r) - tau^2 without cancellation at small r
  const double c_inf = t * r / (std::sqrt(t * t + r) + t);
  return 1.0 - 1.0 / (pt.c_p - c_inf);
}

double boundary_efficiency_map(double c_p) {
  require_finite(c_p, "c_p");
  if (c_p <= 0.0) throw InvalidParams("boundary_efficiency_map: c_p must be > 0");
  return 1.0 - 2.0 / c_p;
}

RegionInfo classify_region(double eta_C, double c_p) {
  require_finite(eta_C, "eta_C");
  require_finite(c_p, "c_p");
  if (eta_C <= 0.0 || eta_C >= 1.0) {
    throw InvalidParams("classify_region: eta_C must lie in (0,1)");
  }
  if (c_p <= 0.0) {
    throw InvalidParams("classify_region: c_p must be > 0");
  }
  const double e = eta_C;
  const double sq = std::sqrt(1.0 - e);

  RegionInfo info;
  info.boundaries = {2.0, 4.0 / (2.0 - e), 2.0 / sq, (2.0 - e) / (1.0 - e),
                     2.0 / (1.0 - e)};
  info.boundary_eta = {0.0, e / 2.0, e / (1.0 + sq), e / (2.0 - e), e};

  static const char* kBoundaryLabels[5] = {"I", "I/II", "II/III", "III/IV", "IV"};
  for (int i = 0; i < 5; ++i) {
    if (std::abs(c_p - info.boundaries[i]) < 1e-9) {
      info.label = kBoundaryLabels[i];
      info.on_boundary = true;
      return info;
    }
  }
  if (c_p < info.boundaries[0]) {
    info.label = "sub-threshold";
  } else if (c_p < info.boundaries[1]) {
    info.label = "I";
  } else if (c_p < info.boundaries[2]) {
    info.label = "II";
  } else if (c_p < info.boundaries[3]) {
    info.label = "III";
  } else if (c_p < info.boundaries[4]) {
    info.label = "IV";
  } else {
    info.label = "beyond-Carnot";
  }
  return info;
}

RabiBound rabi_for_bound(BoundKind kind, const ModelParams& params) {
  params.validate();
  RabiBound bound;
  if (kind == BoundKind::kCurzonAhlborn) {
    const double rate = params.T_c * params.omega_p * params.omega_p *
                        std::sqrt(params.Gamma_2 * params.Gamma_c / 2.0) /
                        (4.0 * params.omega_c * params.omega_c * params.omega_c);
    bound.Omega_p = energy_from_rate(rate);
    bound.condition =
        "realizes c_p = 2/sqrt(tau): T_h(Omega_p) = T_c*omega_p^2/(2*omega_c)^2, "
        "the Curzon-Ahlborn corner of the bound map";
  } else {
    const double rate = std::sqrt(params.Gamma_c * params.Gamma_2) * params.n_2();
    bound.Omega_p = energy_from_rate(rate);
    bound.condition =
        "gamma = Gamma_h/Gamma_c threshold: Omega_p well below this value gives "
        "gamma -> 0 (Curzon-Ahlborn side); well above gives gamma -> infinity "
        "(eta_C/(2-eta_C) side); near it, gamma = O(1) and neither limit applies";
  }
  return bound;
}

double effective_hot_temperature(const ModelParams& params) {
  params.validate();
  if (params.Gamma_2 <= 0.0 || params.Gamma_c <= 0.0) {
    throw InvalidParams("effective_hot_temperature: needs Gamma_2, Gamma_c > 0");
  }
  return params.Omega_p_rate() * params.omega_c *
         std::sqrt(2.0 / (params.Gamma_2 * params.Gamma_c));
}

DimensionlessPoint dimensionless_point(const ModelParams& params) {
  const double th = effective_hot_temperature(params);
  if (th <= 0.0) {
    throw InvalidParams("dimensionless_point: effective hot temperature is zero "
                        "(no pump)");
  }
  const double n2 = params.n_2();
  const double omega = params.Omega_p_rate();

  DimensionlessPoint pt;
  pt.tau = params.T_c / th;
  pt.c_p = params.omega_p / params.omega_c;
  pt.c_21 = params.omega_21 / params.omega_c;
  pt.lambda_prime = params.lambda_rate() * params.omega_c / (params.Gamma_c * th);
  pt.gamma = 2.0 * omega * omega / (params.Gamma_2 * n2 * n2 * params.Gamma_c);
  pt.gamma_c = params.Gamma_2 / params.Gamma_c;
  return pt;
}

}  // namespace qhe
