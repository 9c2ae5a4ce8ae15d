// Acceptance runner: executes the nine contract-level checks, one line each,
// and exits 0 only when every one passes inside its wall-clock budget.
// Tolerances are pinned here on purpose; do not loosen them to make a red
// line green, the line is the record.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qhe/density_state.hpp"
#include "qhe/effective_bath.hpp"
#include "qhe/engine.hpp"
#include "qhe/errors.hpp"
#include "qhe/evolve.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/model.hpp"
#include "qhe/optimize.hpp"
#include "qhe/response.hpp"

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

double rel_err(double a, double b) {
  const double scale = std::fmax(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// Conservation stats of every trajectory integrated by this runner; the
// final check aggregates them.
qhe::ConservationReport g_conservation;
int g_trajectories = 0;

// 1. The time-dependent bath replacement reproduces the coherently pumped
//    populations exactly, at every probed time inside the validity horizon.
Outcome check_timedep_match() {
  const auto p = qhe::ModelParams::reference();
  const double gt = qhe::gamma_tilde(p, qhe::GammaTildeMode::kHighTemperature);
  const double horizon = std::log(p.n_2()) / gt;
  const double lo = horizon * 1e-6;
  const double hi = horizon * 0.999;
  double worst = 0.0;
  for (int i = 0; i < 400; ++i) {
    const double t = lo * std::pow(hi / lo, i / 399.0);
    const auto coh = qhe::coherent_populations(t, p);
    const auto bath = qhe::match_bath_timedep(t, p);
    const auto th = qhe::thermal_populations(t, bath.n_h, bath.Gamma_h);
    worst = std::fmax(worst, std::fabs(coh.rho_11 - th.rho_11));
  }
  Outcome o;
  o.pass = worst < 1e-12;
  o.detail = "max |rho_11 mismatch| = " + num(worst) + ", limit 1e-12";
  return o;
}

// 2. The fixed (time-independent) bath replacement carries a real error whose
//    worst case over the observation window sits in the documented bracket.
Outcome check_fixed_match_error() {
  const auto p = qhe::ModelParams::reference();
  const double gt = qhe::gamma_tilde(p, qhe::GammaTildeMode::kHighTemperature);
  const auto bath = qhe::match_bath_fixed(p);
  const double window = 8.0 / gt;
  double worst = 0.0;
  const int n = 4000;
  for (int i = 0; i <= n; ++i) {
    const double t = window * i / n;
    const auto coh = qhe::coherent_populations(t, p);
    const auto th = qhe::thermal_populations(t, bath.n_h, bath.Gamma_h);
    const double e = std::fmax(std::fabs(coh.rho_gg - th.rho_gg),
                               std::fabs(coh.rho_11 - th.rho_11));
    worst = std::fmax(worst, e);
  }
  Outcome o;
  o.pass = worst >= 0.05 && worst <= 0.11;
  o.detail = "max population mismatch = " + num(worst) + ", required in [0.05, 0.11]";
  return o;
}

// 3. Adaptive integration of the full eight-component system against the
//    closed-form transients of the pumped block, per population.
Outcome check_full_model_oracle() {
  const auto p = qhe::ModelParams::reference();
  const double gt = qhe::gamma_tilde(p, qhe::GammaTildeMode::kExact);
  const double window = 8.0 / gt;
  std::vector<double> grid(400);
  for (int i = 0; i < 400; ++i) grid[i] = window * i / 399.0;

  const auto M = qhe::build_generator(p);
  const auto traj = qhe::evolve(M, qhe::DensityState::ground(), grid);
  g_conservation.max_trace_drift =
      std::fmax(g_conservation.max_trace_drift, traj.conservation.max_trace_drift);
  g_conservation.max_hermiticity_error = std::fmax(
      g_conservation.max_hermiticity_error, traj.conservation.max_hermiticity_error);
  g_conservation.min_positivity_floor = std::fmin(
      g_conservation.min_positivity_floor, traj.conservation.min_positivity_floor);
  ++g_trajectories;

  double worst_gg = 0.0, worst_11 = 0.0, worst_22 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto closed = qhe::pumped_closed_forms(grid[i], p);
    const auto& s = traj.states[i];
    worst_gg = std::fmax(worst_gg, std::fabs(s[qhe::kGG].real() - closed.rho_gg));
    worst_11 = std::fmax(worst_11, std::fabs(s[qhe::k11].real() - closed.rho_11));
    worst_22 = std::fmax(worst_22, std::fabs(s[qhe::k22].real() - closed.rho_22));
  }
  Outcome o;
  o.pass = worst_gg < 1e-3 && worst_11 < 1e-3 && worst_22 < 1e-3;
  o.detail = "max gap gg/11/22 = " + num(worst_gg) + "/" + num(worst_11) + "/" +
             num(worst_22) + ", limit 1e-3 each";
  if (!o.pass) {
    o.notes.push_back(
        "the closed transients hold the top pump population stationary on the slow "
        "timescale, while the full model");
    o.notes.push_back(
        "relaxes it (3n_2+1)/(2n_2+1) ~ 1.5x faster; the few-percent gap is that "
        "approximation, not an integrator defect");
  }
  return o;
}

// 4. Engine closed forms: power formula vs steady-state flux on random draws,
//    and the printed maximum/maximizer vs grid+refine optimization.
Outcome check_engine_closed_forms() {
  std::mt19937_64 rng(424242);
  double worst_flux = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double lam = log_uniform(rng, 1e-2, 10.0);
    const double Gh = log_uniform(rng, 1e-2, 10.0);
    const double Gc = log_uniform(rng, 1e-2, 10.0);
    const double nh = log_uniform(rng, 1e12, 1e14);
    const double nc = log_uniform(rng, 1e12, 1e14);
    const double wc = 0.2, wh = 0.8;
    const auto rec = qhe::engine_performance(wc, wh, lam, Gh, Gc, nh, nc);
    const double closed = qhe::power_closed_form(lam, Gh, Gc, nh, nc, wc, wh);
    worst_flux = std::fmax(worst_flux, rel_err(rec.power * Gc * wc, closed));
  }

  double worst_val = 0.0, worst_arg = 0.0;
  int points = 0;
  for (int it = 0; it < 20; ++it) {
    const double tau = 0.1 + 0.8 * it / 19.0;
    for (int ic = 0; ic < 20; ++ic) {
      const double cp = 1.5 + 8.5 * ic / 19.0;
      for (int il = 0; il < 5; ++il) {
        const double lp = 0.1 * std::pow(100.0, il / 4.0);
        if (std::fabs(lp - tau) < 0.05) continue;
        qhe::DimensionlessPoint pt;
        pt.tau = tau;
        pt.c_p = cp;
        pt.lambda_prime = lp;
        const auto f = [&pt](double c) {
          return qhe::dimensionless_power_small_gap(c, pt);
        };
        const auto mr =
            qhe::maximize_on_interval(f, 1e-12, pt.c_p_prime() / pt.c_p);
        worst_val = std::fmax(worst_val, rel_err(mr.value, qhe::pmax_q(pt)));
        worst_arg = std::fmax(worst_arg, rel_err(mr.x, qhe::optimal_gap_ratio(pt)));
        ++points;
      }
    }
  }
  Outcome o;
  o.pass = worst_flux <= 1e-10 && worst_val <= 1e-6 && worst_arg <= 1e-6;
  o.detail = "flux rel err " + num(worst_flux) + " (limit 1e-10); max/argmax rel err " +
             num(worst_val) + "/" + num(worst_arg) + " on " + std::to_string(points) +
             " grid points (limit 1e-6)";
  return o;
}

// 5. The five bound curves and the interferometric-bound efficiency at the
//    midpoint of the Carnot axis.
Outcome check_bound_map() {
  const auto info = qhe::classify_region(0.5, 3.0);
  const double expected[5] = {2.0, 8.0 / 3.0, 2.0 * std::sqrt(2.0), 3.0, 4.0};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    worst = std::fmax(worst, std::fabs(info.boundaries[i] - expected[i]));
  }
  const double eta_gap = std::fabs(info.boundary_eta[2] - (1.0 - std::sqrt(0.5)));
  Outcome o;
  o.pass = worst < 1e-12 && eta_gap < 1e-12;
  o.detail = "boundary c_p gap " + num(worst) + ", endoreversible-eta gap " +
             num(eta_gap) + ", limit 1e-12";
  return o;
}

// 6. Closed-form population propagators vs the matrix-exponential route.
Outcome check_propagator_oracle() {
  std::mt19937_64 rng(777);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double G2 = log_uniform(rng, 1e-2, 5.0);
    const double Gc = log_uniform(rng, 1e-2, 5.0);
    const double n2 = log_uniform(rng, 1e-3, 1e3);
    const double nc = log_uniform(rng, 1e-3, 1e3);
    const double t = log_uniform(rng, 1e-2, 1e2);
    const auto a = qhe::population_greens(t, G2, Gc, n2, nc);
    const auto b = qhe::population_greens_spectral(t, G2, Gc, n2, nc);
    worst = std::fmax(worst, std::fabs(a.G_00_gg - b.G_00_gg));
    worst = std::fmax(worst, std::fabs(a.G_11_22 - b.G_11_22));
  }
  Outcome o;
  o.pass = worst < 1e-10;
  o.detail = "max |closed - exponential| = " + num(worst) + ", limit 1e-10";
  return o;
}

// 7. Spectroscopic maximum: closed form vs brute-force optimization, plus the
//    half-gap anchor identity.
Outcome check_spectro_maximum() {
  double worst_val = 0.0, worst_anchor = 0.0;
  for (int it = 0; it < 10; ++it) {
    const double tau = 0.1 + 0.8 * it / 9.0;
    for (int ic = 0; ic < 10; ++ic) {
      const double cp = 1.5 + 8.5 * ic / 9.0;
      for (int ig = 0; ig < 5; ++ig) {
        qhe::DimensionlessPoint pt;
        pt.tau = tau;
        pt.c_p = cp;
        pt.lambda_prime = 1.0;
        pt.gamma_c = 0.1 * std::pow(100.0, ig / 4.0);
        const auto f = [&pt](double c) {
          return qhe::dimensionless_spectro_power(c, pt);
        };
        const auto mr = qhe::maximize_on_interval(f, 0.0, pt.c_p_prime());
        worst_val = std::fmax(worst_val, rel_err(mr.value, qhe::pmax_s(pt)));
      }
      qhe::DimensionlessPoint pt;
      pt.tau = tau;
      pt.c_p = cp;
      pt.lambda_prime = 1.0;
      pt.gamma_c = pt.c_p_prime() / 2.0;
      const double cpp = pt.c_p_prime();
      const double anchor = cpp * cpp / (16.0 * tau * tau * tau * tau);
      worst_anchor = std::fmax(worst_anchor, rel_err(qhe::pmax_s(pt), anchor));
    }
  }
  Outcome o;
  o.pass = worst_val <= 1e-6 && worst_anchor <= 1e-12;
  o.detail = "max rel err vs brute force " + num(worst_val) +
             " (limit 1e-6); half-gap anchor rel err " + num(worst_anchor) +
             " (limit 1e-12)";
  return o;
}

// 8. Headline reduced-power anchors of the branch comparison.
Outcome check_headline_anchors() {
  double worst_head = 0.0, worst_ratio = 0.0, worst_cross = 0.0;
  for (const double tau : {0.3, 0.5, 0.7}) {
    qhe::DimensionlessPoint pt;
    pt.tau = tau;
    pt.lambda_prime = 1.0;
    pt.c_p = 1.0 + 16.0 * tau * tau / 3.0;
    auto cmp = qhe::compare_engines(pt);
    worst_head = std::fmax(worst_head, rel_err(cmp.p_q_star, 32.0 / 9.0));
    worst_ratio = std::fmax(worst_ratio, rel_err(cmp.ratio_q_over_s, 2.0));

    pt.c_p = 1.0 + 32.0 * tau * tau / 3.0;
    cmp = qhe::compare_engines(pt);
    worst_cross = std::fmax(worst_cross, rel_err(cmp.p_q_star, cmp.p_s_star));
  }
  Outcome o;
  o.pass = worst_head <= 1e-12 && worst_ratio <= 1e-12 && worst_cross <= 1e-12;
  o.detail = "32/9 anchor " + num(worst_head) + ", ratio-2 anchor " + num(worst_ratio) +
             ", crossing " + num(worst_cross) + ", limit 1e-12";
  return o;
}

// 9. Conservation across every trajectory the runner integrated.
Outcome check_conservation() {
  Outcome o;
  if (g_trajectories == 0) {
    o.pass = false;
    o.detail = "no trajectory was integrated (the full-model check aborted early)";
    return o;
  }
  const auto& c = g_conservation;
  o.pass = c.max_trace_drift < 1e-8 && c.max_hermiticity_error < 1e-10 &&
           c.min_positivity_floor > -1e-7;
  o.detail = "trace drift " + num(c.max_trace_drift) + " (<1e-8), hermiticity " +
             num(c.max_hermiticity_error) + " (<1e-10), positivity floor " +
             num(c.min_positivity_floor) + " (>-1e-7) over " +
             std::to_string(g_trajectories) + " trajectory(ies)";
  return o;
}

struct Criterion {
  const char* name;
  double limit_s;  // 0 = no wall-clock budget
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"time-dependent bath match identity", 1.0, check_timedep_match},
      {"fixed bath match error bracket", 1.0, check_fixed_match_error},
      {"full model vs pumped closed transients", 30.0, check_full_model_oracle},
      {"engine closed-form consistency", 10.0, check_engine_closed_forms},
      {"efficiency bound-map boundaries", 1.0, check_bound_map},
      {"population propagator oracle", 1.0, check_propagator_oracle},
      {"spectroscopic maximum consistency", 5.0, check_spectro_maximum},
      {"headline reduced-power anchors", 1.0, check_headline_anchors},
      {"conservation suite", 0.0, check_conservation},
  };

  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    bool in_budget = true;
    char timing[64];
    if (c.limit_s > 0.0) {
      in_budget = elapsed < c.limit_s;
      std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", elapsed, c.limit_s);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", elapsed);
    }
    const bool ok = o.pass && in_budget;
    if (ok) ++passed;

    std::printf("[%zu/9] %-40s %s  %s  [%s]\n", i + 1, c.name, ok ? "PASS" : "FAIL",
                o.detail.c_str(), timing);
    if (o.pass && !in_budget) {
      std::printf("      note: check succeeded but exceeded its wall-clock budget\n");
    }
    for (const auto& note : o.notes) {
      std::printf("      note: %s\n", note.c_str());
    }
  }

  std::printf("ACCEPTANCE: %d/9 PASSED\n", passed);
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
