#include "qhe/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "qhe/effective_bath.hpp"
#include "qhe/engine.hpp"
#include "qhe/errors.hpp"
#include "qhe/evolve.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/optimize.hpp"
#include "qhe/response.hpp"
#include "qhe/steady_state.hpp"
#include "qhe/units.hpp"

namespace qhe {
namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return u(rng);
}

double rel_err(double got, double want) {
  const double scale = std::fmax(std::fabs(want), 1e-300);
  return std::fabs(got - want) / scale;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

// Collects trajectory physicality worst cases across the suite's integrations.
struct ConservationTally {
  double trace_drift = 0.0;
  double hermiticity = 0.0;
  double positivity_floor = 0.0;

  void absorb(const ConservationReport& r) {
    trace_drift = std::fmax(trace_drift, r.max_trace_drift);
    hermiticity = std::fmax(hermiticity, r.max_hermiticity_error);
    positivity_floor = std::fmin(positivity_floor, r.min_positivity_floor);
  }
};

struct Suite {
  const RunConfig& config;
  std::uint64_t seed;
  std::vector<ValidationCheck> checks;
  ConservationTally conservation;

  std::mt19937_64 rng_for(std::uint64_t salt) const { return std::mt19937_64(seed ^ salt); }

  void add(const std::string& name, double max_error, double tolerance,
           std::string note = "") {
    ValidationCheck c;
    c.name = name;
    c.max_error = max_error;
    c.tolerance = tolerance;
    c.passed = std::isfinite(max_error) && max_error <= tolerance;
    c.note = std::move(note);
    checks.push_back(std::move(c));
  }

  void add_bracket(const std::string& name, double value, double lo, double hi) {
    ValidationCheck c;
    c.name = name;
    c.max_error = value;
    c.tolerance = hi;
    c.passed = std::isfinite(value) && value >= lo && value <= hi;
    c.note = "measured value must lie in [" + fmt(lo) + ", " + fmt(hi) + "]";
    checks.push_back(std::move(c));
  }
};

// --- pump stage ------------------------------------------------------------

void check_exact_match_identity(Suite& s) {
  const ModelParams m = s.config.model;
  const double gt = gamma_tilde(m, GammaTildeMode::kHighTemperature);
  const double horizon = std::log(m.n_2()) / gt;
  GridAxis axis;
  axis.min = horizon * 1e-6;
  axis.max = horizon * (1.0 - 1e-9);
  axis.points = 400;
  axis.log_spacing = true;
  double worst = 0.0;
  for (const double t : axis.values()) {
    const ReducedPopulations coh = coherent_populations(t, m);
    const EffectiveBath b = match_bath_timedep(t, m);
    const ReducedPopulations th = thermal_populations(t, b.n_h, b.Gamma_h);
    worst = std::fmax(worst, std::fabs(coh.rho_11 - th.rho_11));
    worst = std::fmax(worst, std::fabs(coh.rho_gg - th.rho_gg));
  }
  s.add("exact-match-identity", worst, 1e-12,
        "time-dependent bath reproduces the coherent pair on 400 log-spaced times");
}

void check_fixed_match_error(Suite& s) {
  const ModelParams m = s.config.model;
  const double gt = gamma_tilde(m, GammaTildeMode::kHighTemperature);
  const EffectiveBath fixed = match_bath_fixed(m);
  GridAxis axis;
  axis.min = 0.0;
  axis.max = 8.0 / gt;
  axis.points = 400;
  double worst = 0.0;
  for (const double t : axis.values()) {
    const ReducedPopulations coh = coherent_populations(t, m);
    const ReducedPopulations th = thermal_populations(t, fixed.n_h, fixed.Gamma_h);
    worst = std::fmax(worst, std::fabs(coh.rho_11 - th.rho_11));
  }
  s.add_bracket("fixed-match-error", worst, 0.05, 0.11);
}

void check_gamma_tilde_branches(Suite& s) {
  const ModelParams m = s.config.model;
  const double exact = gamma_tilde(m, GammaTildeMode::kExact);
  const double high = gamma_tilde(m, GammaTildeMode::kHighTemperature);
  s.add("gamma-tilde-branches", rel_err(exact, high), 1e-6,
        "overdamped root vs leading high-occupation form at the reference point");
}

void check_closed_form_normalization(Suite& s) {
  auto rng = s.rng_for(0x11);
  const ModelParams base = s.config.model;
  const double gt = gamma_tilde(base, GammaTildeMode::kExact);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = log_uniform(rng, 1e-3 / gt, 20.0 / gt);
    const PumpedClosedForm cf = pumped_closed_forms(t, base);
    worst = std::fmax(worst, std::fabs(cf.rho_gg + cf.rho_11 + cf.rho_22 - 1.0));
  }
  const PumpedClosedForm late = pumped_closed_forms(50.0 / gt, base);
  const std::array<double, 3> steady = pumped_steady_triple(base);
  worst = std::fmax(worst, std::fabs(late.rho_gg - steady[0]));
  worst = std::fmax(worst, std::fabs(late.rho_11 - steady[1]));
  worst = std::fmax(worst, std::fabs(late.rho_22 - steady[2]));
  s.add("closed-form-normalization", worst, 1e-10,
        "population sum and the long-time triple");
}

// The closed-form transients hold the upper pump level at its stationary
// population while the ground state evolves. The full model redistributes
// that population dynamically, so its slow relaxation rate carries an extra
// factor (3 n_2 + 1)/(2 n_2 + 1) and the transients disagree by ~0.1 at
// intermediate times even though both endpoints coincide. That gap is the
// correct, documented behavior; these checks pin its measured size so a
// regression in either side moves a frozen number instead of passing silently.
void check_closed_form_approximation_scale(Suite& s) {
  const ModelParams m = s.config.model;
  const double gt = gamma_tilde(m, GammaTildeMode::kHighTemperature);
  GridAxis axis;
  axis.min = 0.0;
  axis.max = 8.0 / gt;
  axis.points = 400;
  const Trajectory traj = evolve(build_generator(m), DensityState::ground(),
                                 axis.values(), s.config.ode_rel, s.config.ode_abs);
  s.conservation.absorb(traj.conservation);
  double worst = 0.0;        // raw populations vs the pumped-block transients
  double worst_pair = 0.0;   // g/1 pair share vs the two-level reduced forms
  double endpoint = 0.0;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const PumpedClosedForm cf = pumped_closed_forms(traj.times[i], m);
    const DensityState& st = traj.states[i];
    const double d = std::fmax(
        std::fabs(st[kGG].real() - cf.rho_gg),
        std::fmax(std::fabs(st[k11].real() - cf.rho_11),
                  std::fabs(st[k22].real() - cf.rho_22)));
    worst = std::fmax(worst, d);
    if (i + 1 == traj.times.size()) endpoint = d;
    const double pair = st[kGG].real() + st[k11].real();
    if (pair > 0.0) {
      const ReducedPopulations coh = coherent_populations(traj.times[i], m);
      worst_pair = std::fmax(worst_pair,
                             std::fabs(st[kGG].real() / pair - coh.rho_gg));
    }
  }
  s.add_bracket("closed-form-approximation-scale", worst, 0.08, 0.12);
  s.add_bracket("reduced-model-deviation-scale", worst_pair, 0.05, 0.11);
  s.add("closed-form-endpoint-agreement", endpoint, 1e-3,
        "transient forms and full model share both the initial state and the "
        "stationary triple");
}

// Independent propagator built from the eigendecomposition of the generator
// (well conditioned here: cond(V) ~ 2.4). Short horizons isolate integrator
// error; on long horizons both methods inherit an eps-level uncertainty in
// the slow eigenvalue of the double-precision generator, which grows like
// t * |lambda_slow| * eps_rel, so that tier gets a wider budget.
void check_ode_vs_spectral(Suite& s) {
  const ModelParams m = s.config.model;
  const Generator M = build_generator(m);
  const Eigen::MatrixXcd Md = M;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es{Md};
  if (es.info() != Eigen::Success) {
    s.add("ode-vs-spectral-propagator", 1.0, 1e-9, "eigensolver failed");
    return;
  }
  const Eigen::MatrixXcd V = es.eigenvectors();
  const Eigen::VectorXcd lam = es.eigenvalues();
  const DensityState rho0 = DensityState::ground();
  const Eigen::VectorXcd coeff = V.partialPivLu().solve(Eigen::VectorXcd(rho0.v));
  const double gt = gamma_tilde(m, GammaTildeMode::kHighTemperature);
  GridAxis axis;
  axis.min = 1e-3;
  axis.max = 8.0 / gt;
  axis.points = 40;
  axis.log_spacing = true;
  std::vector<double> grid = axis.values();
  grid.insert(grid.begin(), 0.0);
  const Trajectory traj = evolve(M, rho0, grid, s.config.ode_rel, s.config.ode_abs);
  s.conservation.absorb(traj.conservation);
  double worst_short = 0.0;
  double worst_long = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Eigen::VectorXcd want = Eigen::VectorXcd::Zero(8);
    for (int k = 0; k < 8; ++k) {
      want += coeff[k] * std::exp(lam[k] * grid[i]) * V.col(k);
    }
    double err = 0.0;
    for (int k = 0; k < 8; ++k) err = std::fmax(err, std::abs(want[k] - traj.states[i][k]));
    if (grid[i] <= 1e6) {
      worst_short = std::fmax(worst_short, err);
    } else {
      worst_long = std::fmax(worst_long, err);
    }
  }
  s.add("ode-vs-spectral-short", worst_short, 1e-9,
        "eigendecomposition propagator, horizons up to 1e6 ps");
  s.add("ode-vs-spectral-long", worst_long, 5e-6,
        "slow-eigenvalue representation uncertainty dominates past 1e6 ps");
}

void check_evolve_vs_kernel(Suite& s) {
  const ModelParams m = s.config.model;
  const double gt = gamma_tilde(m, GammaTildeMode::kHighTemperature);
  const Generator M = build_generator(m);
  const std::vector<double> grid = {0.0, 50.0 / gt};
  const Trajectory traj = evolve(M, DensityState::ground(), grid, s.config.ode_rel,
                                 s.config.ode_abs);
  s.conservation.absorb(traj.conservation);
  const DensityState ss = steady_state(M);
  double worst = 0.0;
  for (int i = kGG; i <= k22; ++i) {
    worst = std::fmax(worst, std::abs(traj.states.back()[i] - ss[i]));
  }
  s.add("evolve-vs-kernel", worst, 1e-6,
        "long integration lands on the null-space steady state");
}

void check_steady_triple_kernel(Suite& s) {
  ModelParams m = s.config.model;
  m.Gamma_c = 0.0;
  m.lambda = 0.0;
  const Generator M8 = build_generator(m);
  const std::vector<int> block = {kGG, k11, k22, kG2, k2G};
  const Eigen::MatrixXcd M5 =
      extract_subsystem(Eigen::MatrixXcd(M8), block);
  const SteadyStateSolution sol = steady_state_kernel(M5, {0, 1, 2});
  const std::array<double, 3> want = pumped_steady_triple(m);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    worst = std::fmax(worst, std::abs(sol.state[i] - Complex(want[static_cast<std::size_t>(i)], 0.0)));
  }
  s.add("steady-triple-kernel", worst, 1e-12,
        "pumped-block null space equals the closed-form triple");
}

// --- engine stage ----------------------------------------------------------

void check_engine_closed_vs_kernel(Suite& s) {
  auto rng = s.rng_for(0x21);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double lambda = log_uniform(rng, 0.05, 20.0);
    const double Gamma_h = log_uniform(rng, 0.05, 20.0);
    const double Gamma_c = log_uniform(rng, 0.05, 20.0);
    const double n_h = log_uniform(rng, 0.05, 50.0);
    const double n_c = log_uniform(rng, 0.05, 50.0);
    const double Delta = (i % 3 == 0) ? 0.0 : uniform(rng, -5.0, 5.0);
    const EngineSteadyState closed =
        three_level_steady_state(lambda, Gamma_h, Gamma_c, n_h, n_c, Delta);
    const Eigen::MatrixXcd M =
        three_level_generator(lambda, Gamma_h, Gamma_c, n_h, n_c, Delta);
    const SteadyStateSolution sol = steady_state_kernel(M, {0, 1, 2});
    worst = std::fmax(worst, std::abs(sol.state[0] - Complex(closed.rho_gg, 0.0)));
    worst = std::fmax(worst, std::abs(sol.state[1] - Complex(closed.rho_00, 0.0)));
    worst = std::fmax(worst, std::abs(sol.state[2] - Complex(closed.rho_11, 0.0)));
    worst = std::fmax(worst, std::abs(sol.state[3] - closed.rho_01));
  }
  s.add("engine-closed-vs-kernel", worst, 1e-9,
        "three-level stationary solution vs generic null-space solver, 50 draws");
}

void check_engine_flux_vs_closed_form(Suite& s) {
  auto rng = s.rng_for(0x22);
  const double corrupt = s.config.corrupt_rate_factor;
  const double omega_c = 0.2;
  const double omega_h = 0.8;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double lambda = log_uniform(rng, 1e-2, 10.0);
    const double Gamma_h = log_uniform(rng, 1e-2, 10.0);
    const double Gamma_c = log_uniform(rng, 1e-2, 10.0);
    const double n_h = log_uniform(rng, 1e12, 1e14);
    const double n_c = log_uniform(rng, 1e12, 1e14);
    const PerformanceRecord perf =
        engine_performance(omega_c, omega_h, lambda, Gamma_h, Gamma_c, n_h, n_c);
    const double numeric = perf.power * Gamma_c * omega_c;  // back to eV/ps
    const double closed = power_closed_form(lambda, Gamma_h * corrupt, Gamma_c, n_h,
                                            n_c, omega_c, omega_h);
    worst = std::fmax(worst, rel_err(numeric, closed));
  }
  std::string note = "high-occupation closed form vs steady-state flux, 200 draws";
  if (corrupt != 1.0) note += " [corrupt_rate_factor=" + fmt(corrupt) + " injected]";
  s.add("engine-flux-vs-closed-form", worst, 1e-10, note);
}

void check_engine_efficiency_identity(Suite& s) {
  auto rng = s.rng_for(0x23);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double omega_c = uniform(rng, 0.05, 0.5);
    const double omega_h = omega_c + uniform(rng, 0.05, 2.0);
    const double lambda = log_uniform(rng, 0.05, 10.0);
    const double Gamma_h = log_uniform(rng, 0.05, 10.0);
    const double Gamma_c = log_uniform(rng, 0.05, 10.0);
    const double n_h = log_uniform(rng, 0.5, 1e4);
    const double n_c = log_uniform(rng, 0.5, 1e4);
    const PerformanceRecord perf =
        engine_performance(omega_c, omega_h, lambda, Gamma_h, Gamma_c, n_h, n_c);
    if (perf.heat_flux_hot == 0.0) continue;
    const double eta_flux = perf.power / perf.heat_flux_hot;
    worst = std::fmax(worst, std::fabs(eta_flux - perf.efficiency));
  }
  s.add("engine-efficiency-identity", worst, 1e-12,
        "power over hot heat flux equals 1 - omega_c/omega_h");
}

void check_engine_max_vs_grid(Suite& s) {
  double worst = 0.0;
  for (int it = 0; it < 20; ++it) {
    const double tau = 0.1 + 0.8 * it / 19.0;
    for (int ic = 0; ic < 20; ++ic) {
      const double c_p = 1.5 + 8.5 * ic / 19.0;
      for (int il = 0; il < 5; ++il) {
        const double lp = 0.1 * std::pow(100.0, il / 4.0);
        if (std::fabs(lp - tau) < 0.05) continue;
        DimensionlessPoint pt;
        pt.tau = tau;
        pt.c_p = c_p;
        pt.lambda_prime = lp;
        const double hi = pt.c_p_prime() / pt.c_p;
        const MaximizeResult m = maximize_on_interval(
            [&](double c) { return dimensionless_power_small_gap(c, pt); }, 1e-12, hi);
        worst = std::fmax(worst, rel_err(pmax_q(pt), m.value));
        worst = std::fmax(worst, rel_err(optimal_gap_ratio(pt), m.x));
        const double eta_grid = 1.0 - 1.0 / (pt.c_p - m.x);
        worst = std::fmax(worst, rel_err(eta_star(pt), eta_grid));
      }
    }
  }
  s.add("engine-max-vs-grid", worst, s.config.oracle_rel,
        "closed-form maximum power and maximizer vs grid+refine, 20x20x5 grid");
}

void check_table_boundaries(Suite& s) {
  const RegionInfo info = classify_region(0.5, 3.5);
  const double r2 = std::sqrt(2.0);
  const std::array<double, 5> want_cp = {2.0, 8.0 / 3.0, 2.0 * r2, 3.0, 4.0};
  const std::array<double, 5> want_eta = {0.0, 0.25, 1.0 - std::sqrt(0.5), 1.0 / 3.0, 0.5};
  double worst = 0.0;
  for (std::size_t k = 0; k < 5; ++k) {
    worst = std::fmax(worst, std::fabs(info.boundaries[k] - want_cp[k]));
    worst = std::fmax(worst, std::fabs(info.boundary_eta[k] - want_eta[k]));
  }
  s.add("table-boundaries", worst, 1e-12,
        "bound curves and their efficiencies at eta_C = 1/2");
}

void check_region_map_invariant(Suite& s) {
  double worst = -1.0;  // max of eta_map - eta_C over region IV; must stay <= 0
  bool labels_ok = true;
  for (int ie = 0; ie < 19; ++ie) {
    const double eta_C = 0.05 + 0.9 * ie / 18.0;
    const RegionInfo info = classify_region(eta_C, 2.0);
    const double lo = info.boundaries[3];
    const double hi = info.boundaries[4];
    for (int k = 1; k <= 20; ++k) {
      const double c_p = lo + (hi - lo) * k / 21.0;
      const RegionInfo cell = classify_region(eta_C, c_p);
      if (cell.label != "IV") labels_ok = false;
      worst = std::fmax(worst, boundary_efficiency_map(c_p) - eta_C);
    }
  }
  s.add("region-map-invariant", labels_ok ? worst : 1.0, 1e-12,
        "inside region IV the map efficiency stays below eta_C");
}

void check_rabi_bound_roundtrip(Suite& s) {
  ModelParams m = s.config.model;
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    const RabiBound bound = rabi_for_bound(BoundKind::kCurzonAhlborn, m);
    ModelParams at = m;
    at.Omega_p = bound.Omega_p;
    const double T_h = effective_hot_temperature(at);
    const double tau = at.T_c / T_h;
    const double c_p = at.omega_p / at.omega_c;
    worst = std::fmax(worst, rel_err(c_p, 2.0 / std::sqrt(tau)));
    m.omega_p *= 2.0;  // second pass checks the quadratic carrier scaling
  }
  const RabiBound b1 = rabi_for_bound(BoundKind::kCurzonAhlborn, s.config.model);
  ModelParams doubled = s.config.model;
  doubled.omega_p *= 2.0;
  const RabiBound b2 = rabi_for_bound(BoundKind::kCurzonAhlborn, doubled);
  worst = std::fmax(worst, rel_err(b2.Omega_p, 4.0 * b1.Omega_p));
  s.add("rabi-bound-roundtrip", worst, 1e-12,
        "pump amplitude for the endoreversible bound maps back to c_p = 2/sqrt(tau)");
}

void check_strong_coupling_limit(Suite& s) {
  double worst = 0.0;
  double distinct = 0.0;
  for (int it = 0; it < 5; ++it) {
    const double tau = 0.2 + 0.15 * it;
    for (int ic = 0; ic < 5; ++ic) {
      DimensionlessPoint pt;
      pt.tau = tau;
      pt.c_p = 2.0 + 2.0 * ic;
      pt.lambda_prime = 1e3;
      const double limit = eta_star_strong_coupling_limit(pt);
      worst = std::fmax(worst, rel_err(eta_star(pt), limit));
      distinct = std::fmax(distinct, std::fabs(eta_star_sc(pt) - limit));
    }
  }
  // The printed compact formula is an approximation near the limit, not the
  // limit itself; it must stay close to but measurably distinct from it.
  const bool separated = distinct > 1e-4 && distinct < 1e-1;
  s.add("strong-coupling-limit", worst, 1e-5,
        "eta* at lambda' = 1e3 approaches the derived limit; compact formula "
        "offset " + fmt(distinct) + (separated ? "" : " [unexpected]"));
}

// --- response stage ---------------------------------------------------------

void check_greens_vs_expm(Suite& s) {
  auto rng = s.rng_for(0x31);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double Gamma_2 = log_uniform(rng, 1e-3, 10.0);
    const double Gamma_c = log_uniform(rng, 1e-3, 10.0);
    const double n_2 = log_uniform(rng, 1e-3, 1e3);
    const double n_c = log_uniform(rng, 1e-3, 1e3);
    const double rate = std::fmax(Gamma_2 * (1.0 + 2.0 * n_2), Gamma_c * (1.0 + 2.0 * n_c));
    const double t = log_uniform(rng, 1e-3, 1.0) * 20.0 / rate;
    const PopulationGreens closed = population_greens(t, Gamma_2, Gamma_c, n_2, n_c);
    const PopulationGreens spectral =
        population_greens_spectral(t, Gamma_2, Gamma_c, n_2, n_c);
    worst = std::fmax(worst, std::fabs(closed.G_00_gg - spectral.G_00_gg));
    worst = std::fmax(worst, std::fabs(closed.G_11_22 - spectral.G_11_22));
  }
  s.add("greens-vs-expm", worst, 1e-10,
        "population propagators vs transport-matrix exponentials, 50 draws");
}

void check_response_symmetry(Suite& s) {
  auto rng = s.rng_for(0x32);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    SpectroInputs in;
    in.params = s.config.model;
    in.params.omega_p = in.params.omega_2g;  // the reduction needs resonance
    in.sigma_p = log_uniform(rng, 1e-7, 1e-3);
    in.mu_10 = log_uniform(rng, 1e-5, 1e-2);
    in.mu_2g = log_uniform(rng, 1e-5, 1e-2);
    const ResponseTriple r = response_functions(in);
    worst = std::fmax(worst, rel_err(r.R_a, r.R_b));

    // quadratic structure in each squared field amplitude
    in.E_pu = 1.0;
    in.E_pr = 1.0;
    const double base = spectro_power(in) / (in.E_pu * in.E_pu * in.E_pr * in.E_pr);
    for (const double scale : {0.1, 10.0}) {
      SpectroInputs up = in;
      up.E_pu = scale;
      worst = std::fmax(worst, rel_err(
          spectro_power(up) / (up.E_pu * up.E_pu * up.E_pr * up.E_pr), base));
      SpectroInputs pr = in;
      pr.E_pr = scale;
      worst = std::fmax(worst, rel_err(
          spectro_power(pr) / (pr.E_pu * pr.E_pu * pr.E_pr * pr.E_pr), base));
    }
  }
  s.add("response-symmetry", worst, 1e-12,
        "stimulated diagrams coincide; power is quadratic in each squared field");
}

void check_response_assembly(Suite& s) {
  ModelParams m = s.config.model;
  m.omega_p = m.omega_2g;
  SpectroInputs in;
  in.params = m;
  in.sigma_p = 1e-5;
  in.mu_10 = 1e-4;
  in.mu_2g = 2e-4;
  const ResponseTriple r = response_functions(in);
  const double mu4 = in.mu_10 * in.mu_10 * in.mu_2g * in.mu_2g;
  const double gbar = detail::merged_dephasing(m);
  const double sigma = rate_from_energy(in.sigma_p);
  const double n2 = m.n_2();
  const double weight_b = (1.0 + n2) / (1.0 + 2.0 * n2);
  const double merged = detail::resonant_chain(mu4, gbar, gbar, weight_b, sigma);
  const double worst_exact = rel_err(merged, r.R_b);

  const GreensFunctions g = greens_functions(m);
  const double split = detail::resonant_chain(mu4, g.Gamma_10, g.Gamma_2g, weight_b, sigma);
  const double proximity = rel_err(split, r.R_b);
  double worst = worst_exact;
  if (proximity > 1e-2) worst = std::fmax(worst, proximity);
  s.add("response-assembly", worst, 1e-12,
        "merged-leg chain reproduces the printed magnitude exactly; split-leg "
        "chain deviates by " + fmt(proximity) + " (expected O(contact/drain))");
}

void check_spectro_modes(Suite& s) {
  ModelParams m = s.config.model;
  m.omega_p = m.omega_2g;
  m.omega_c = energy_for_occupation(1000.0, m.T_c);
  m.omega_21 = energy_for_occupation(1000.0, m.T_c);
  m.omega_10 = m.omega_2g - m.omega_21 - m.omega_c;
  SpectroInputs in;
  in.params = m;
  in.sigma_p = 1e-5;
  in.mu_10 = 1e-4;
  in.mu_2g = 1e-4;
  const double general = spectro_power(in, SpectroMode::kGeneral);
  const double hot = spectro_power(in, SpectroMode::kHighTemperature);
  s.add("spectro-modes", rel_err(general, hot), 1e-3,
        "general diagram sum vs high-occupation reduction at n = 1000");
}

void check_spectro_max_vs_grid(Suite& s) {
  double worst = 0.0;
  for (int it = 0; it < 10; ++it) {
    const double tau = 0.1 + 0.8 * it / 9.0;
    for (int ic = 0; ic < 10; ++ic) {
      const double c_p = 1.5 + 8.5 * ic / 9.0;
      for (int ig = 0; ig < 5; ++ig) {
        DimensionlessPoint pt;
        pt.tau = tau;
        pt.c_p = c_p;
        pt.gamma_c = 0.1 * std::pow(100.0, ig / 4.0);
        const MaximizeResult m = maximize_on_interval(
            [&](double c) { return dimensionless_spectro_power(c, pt); }, 0.0,
            pt.c_p_prime());
        worst = std::fmax(worst, rel_err(pmax_s(pt), m.value));
        worst = std::fmax(worst, rel_err(spectro_optimal_gap_ratio(pt), m.x));
      }
    }
  }
  s.add("spectro-max-vs-grid", worst, s.config.oracle_rel,
        "closed-form spectroscopic maximum vs grid+refine, 10x10x5 grid");
}

void check_spectro_optimum_identity(Suite& s) {
  double worst = 0.0;
  for (int il = 0; il < 5; ++il) {
    for (int it = 0; it < 5; ++it) {
      for (int ic = 0; ic < 5; ++ic) {
        DimensionlessPoint pt;
        pt.lambda_prime = 0.25 * (il + 1);
        pt.tau = 0.15 + 0.15 * it;
        pt.c_p = 1.5 + 1.5 * ic;
        pt.gamma_c = pt.c_p_prime() / 2.0;
        const double cpp = pt.c_p_prime();
        const double lp2 = pt.lambda_prime * pt.lambda_prime;
        const double t2 = pt.tau * pt.tau;
        const double want = lp2 * cpp * cpp / (16.0 * t2 * t2);
        worst = std::fmax(worst, rel_err(pmax_s(pt), want));
      }
    }
  }
  s.add("spectro-optimum-identity", worst, 1e-12,
        "at gamma_c = c_p'/2 the maximum collapses to the compact form");
}

void check_power_comparison_anchors(Suite& s) {
  double worst = 0.0;
  for (int it = 0; it < 9; ++it) {
    const double tau = 0.1 + 0.8 * it / 8.0;
    DimensionlessPoint gap;
    gap.tau = tau;
    gap.lambda_prime = 1.0;
    gap.c_p = 1.0 + 16.0 * tau * tau / 3.0;
    const EngineComparison at_gap = compare_engines(gap);
    worst = std::fmax(worst, std::fabs(at_gap.p_q_star - 32.0 / 9.0));
    worst = std::fmax(worst, std::fabs(at_gap.ratio_q_over_s - 2.0));

    DimensionlessPoint cross = gap;
    cross.c_p = 1.0 + 32.0 * tau * tau / 3.0;
    const EngineComparison at_cross = compare_engines(cross);
    worst = std::fmax(worst, std::fabs(at_cross.p_q_star - at_cross.p_s_star));
  }
  DimensionlessPoint anchor;
  anchor.tau = 0.5;
  anchor.lambda_prime = 1.0;
  anchor.c_p = 4.0;
  const EngineComparison cmp = compare_engines(anchor);
  worst = std::fmax(worst, std::fabs(cmp.p_q_star - 8.0));
  worst = std::fmax(worst, std::fabs(cmp.p_s_star - 9.0));
  s.add("power-comparison-anchors", worst, 1e-12,
        "headline values 32/9, ratio 2, crossing equality, and the (8, 9) pair");
}

void check_power_equivalence_asymptote(Suite& s) {
  double worst = 0.0;
  for (const double c_p : {100.0, 300.0, 1000.0}) {
    for (const double tau : {0.3, 0.5, 0.7}) {
      DimensionlessPoint pt;
      pt.tau = tau;
      pt.c_p = c_p;
      pt.lambda_prime = 1.0;
      pt.gamma_c = 2.0 * c_p * c_p / (9.0 * tau * tau);
      const EngineComparison cmp = compare_engines(pt);
      const double ratio = pmax_s(pt) / cmp.p_q_star;
      worst = std::fmax(worst, std::fabs(ratio - 1.0) * c_p / 5.0);
    }
  }
  s.add("power-equivalence-asymptote", worst, 1.0,
        "spectroscopic maximum at the equivalence gamma_c merges with the "
        "weak-coupling laser power as 1/c_p (scaled deviation must stay < 1)");
}

void check_conservation_suite(Suite& s) {
  // Tally accumulated by every trajectory the suite integrated above.
  const double drift = s.conservation.trace_drift;
  const double herm = s.conservation.hermiticity;
  const double floor = s.conservation.positivity_floor;
  double worst = drift / 1e-8;
  worst = std::fmax(worst, herm / 1e-10);
  worst = std::fmax(worst, -floor / 1e-7);
  s.add("conservation-suite", worst, 1.0,
        "trace drift " + fmt(drift) + " (<1e-8), hermiticity " + fmt(herm) +
        " (<1e-10), positivity floor " + fmt(floor) + " (>-1e-7), as fractions "
        "of their budgets");
}

}  // namespace

bool ValidationReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

std::string ValidationReport::render() const {
  std::string out = "== validation report ==\n";
  out += "seed: " + std::to_string(seed) + "\n";
  std::size_t passed = 0;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %-32s max_err=%.6e tol=%.6e\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.max_error,
                  c.tolerance);
    out += line;
    if (!c.note.empty()) out += "       " + c.note + "\n";
    if (c.passed) ++passed;
  }
  out += "== " + std::to_string(passed) + "/" + std::to_string(checks.size()) +
         " checks passed ==\n";
  return out;
}

ValidationReport run_validate(const RunConfig& config, std::uint64_t seed) {
  ModelParams m = config.model;
  m.validate();

  Suite s{config, seed, {}, {}};

  check_exact_match_identity(s);
  check_fixed_match_error(s);
  check_gamma_tilde_branches(s);
  check_closed_form_normalization(s);
  check_closed_form_approximation_scale(s);
  check_ode_vs_spectral(s);
  check_evolve_vs_kernel(s);
  check_steady_triple_kernel(s);

  check_engine_closed_vs_kernel(s);
  check_engine_flux_vs_closed_form(s);
  check_engine_efficiency_identity(s);
  check_engine_max_vs_grid(s);
  check_table_boundaries(s);
  check_region_map_invariant(s);
  check_rabi_bound_roundtrip(s);
  check_strong_coupling_limit(s);

  check_greens_vs_expm(s);
  check_response_symmetry(s);
  check_response_assembly(s);
  check_spectro_modes(s);
  check_spectro_max_vs_grid(s);
  check_spectro_optimum_identity(s);
  check_power_comparison_anchors(s);
  check_power_equivalence_asymptote(s);
  check_conservation_suite(s);

  ValidationReport report;
  report.seed = seed;
  report.checks = std::move(s.checks);
  return report;
}

}  // namespace qhe
