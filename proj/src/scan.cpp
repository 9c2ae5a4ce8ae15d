#include "qhe/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "qhe/effective_bath.hpp"
#include "qhe/engine.hpp"
#include "qhe/errors.hpp"
#include "qhe/evolve.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/response.hpp"
#include "qhe/units.hpp"

namespace qhe {
namespace {

constexpr const char* kArtifactVersion = "0.1.0";
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string meta_num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> standard_metadata(const RunConfig& config) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "0x%016llx",
                static_cast<unsigned long long>(config.config_hash));
  return {
      std::string("version: qhe-spectro ") + kArtifactVersion,
      "mode: " + config.mode,
      std::string("config: ") + hash,
      "units: energies eV, rates 1/ps, times ps, hbar = 0.6582119569 eV*ps",
  };
}

// Accumulates one output row. Non-finite numerics become empty cells and an
// explicit flag token; the flag column is always appended last.
struct RowBuilder {
  std::vector<CsvCell> cells;
  std::string flags;

  void flag(const std::string& token) {
    if (flags.find(token) != std::string::npos) return;
    if (!flags.empty()) flags += ';';
    flags += token;
  }
  void num(double v, const char* name) {
    if (std::isfinite(v)) {
      cells.emplace_back(v);
    } else {
      cells.emplace_back();
      flag(std::string("nonfinite:") + name);
    }
  }
  void boolean(bool b) { cells.emplace_back(b ? 1.0 : 0.0); }
  void text(std::string s) { cells.emplace_back(std::move(s)); }
  void empty(std::size_t n = 1) {
    for (std::size_t i = 0; i < n; ++i) cells.emplace_back();
  }
  std::vector<CsvCell> finish() {
    cells.emplace_back(flags);
    return std::move(cells);
  }
};

// Runs make_row over [0, n) with a pulled-index worker pool. Rows land in
// their own preallocated slots, so the output order never depends on the
// worker count. The first worker exception is rethrown after the join.
void fill_rows(std::size_t n, int jobs,
               const std::function<std::vector<CsvCell>(std::size_t)>& make_row,
               std::vector<std::vector<CsvCell>>& out) {
  out.assign(n, {});
  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)),
                            std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = make_row(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        out[i] = make_row(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct AxisSpec {
  std::string name;
  std::vector<double> values;
};

void reject_unknown_axes(const RunConfig& config,
                         const std::vector<std::string>& allowed,
                         const char* mode_name) {
  for (const auto& [name, axis] : config.grids) {
    (void)axis;
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError(std::string(mode_name) + ": unknown grid axis '" + name +
                        "' (allowed: " + list + ")");
    }
  }
}

std::size_t total_rows(const std::vector<AxisSpec>& axes) {
  std::size_t n = 1;
  for (const auto& a : axes) {
    if (a.values.empty()) throw ConfigError("grid axis '" + a.name + "' is empty");
    if (n > 50'000'000 / a.values.size()) {
      throw ConfigError("grid too large: more than 5e7 rows requested");
    }
    n *= a.values.size();
  }
  return n;
}

// Row-major decode: the last axis varies fastest.
std::vector<double> coords_for_row(const std::vector<AxisSpec>& axes, std::size_t row) {
  std::vector<double> c(axes.size());
  std::size_t idx = row;
  for (std::size_t j = axes.size(); j-- > 0;) {
    const std::size_t nj = axes[j].values.size();
    c[j] = axes[j].values[idx % nj];
    idx /= nj;
  }
  return c;
}

std::string axes_metadata(const std::vector<AxisSpec>& axes) {
  std::string line = "axes (outer to inner):";
  for (const auto& a : axes) {
    line += " " + a.name + "[" + std::to_string(a.values.size()) + "]";
  }
  return line;
}

double cell_as_double(const CsvCell& cell) {
  if (const double* d = std::get_if<double>(&cell)) return *d;
  return kNaN;
}

// Pulls a plottable series out of finished rows: x from column ix, y from
// column iy, one point per stride-th row starting at offset, count points.
SvgSeries series_from_rows(const std::vector<std::vector<CsvCell>>& rows,
                           std::size_t ix, std::size_t iy, std::size_t offset,
                           std::size_t stride, std::size_t count,
                           const std::string& label) {
  SvgSeries s;
  s.label = label;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t r = offset + k * stride;
    if (r >= rows.size()) break;
    s.x.push_back(cell_as_double(rows[r][ix]));
    s.y.push_back(cell_as_double(rows[r][iy]));
  }
  return s;
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw NumericalFailure("internal: missing column " + name);
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

int resolve_jobs(int requested) {
  constexpr int kMaxJobs = 256;
  if (requested >= 1) return std::min(requested, kMaxJobs);
  if (const char* env = std::getenv("QHE_SPECTRO_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (env[0] == '\0' || end == nullptr || *end != '\0' || v < 1) {
      throw ConfigError("QHE_SPECTRO_JOBS must be a positive integer");
    }
    return static_cast<int>(std::min<long>(v, kMaxJobs));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, static_cast<unsigned>(kMaxJobs)));
}

ScanResult run_fig2(const RunConfig& config, int jobs) {
  (void)jobs;  // one stiff trajectory dominates; row assembly is trivial
  ModelParams m = config.model;
  m.validate();
  reject_unknown_axes(config, {"t"}, "fig2");

  const double gt_high = gamma_tilde(m, GammaTildeMode::kHighTemperature);
  const double gt_exact = gamma_tilde(m, GammaTildeMode::kExact);

  std::vector<double> tgrid;
  if (const auto it = config.grids.find("t"); it != config.grids.end()) {
    tgrid = it->second.values();
  } else {
    if (gt_high <= 0.0) {
      throw InvalidParams(
          "fig2: pump is off, the default window 8/gamma_tilde is undefined; "
          "provide grids.t explicitly");
    }
    GridAxis a;
    a.min = 0.0;
    a.max = 8.0 / gt_high;
    a.points = 400;
    tgrid = a.values();
  }
  if (tgrid.front() < 0.0) throw InvalidParams("fig2: times must be >= 0");

  // The integrator starts at t = 0 no matter where the output grid begins.
  std::vector<double> igrid = tgrid;
  std::size_t skip = 0;
  if (igrid.front() > 0.0) {
    igrid.insert(igrid.begin(), 0.0);
    skip = 1;
  }

  const EffectiveBath fixed = match_bath_fixed(m);
  const Generator M = build_generator(m);
  const Trajectory traj =
      evolve(M, DensityState::ground(), igrid, config.ode_rel, config.ode_abs);

  ScanResult result;
  result.table.metadata = standard_metadata(config);
  result.table.metadata.push_back("gamma_tilde_high_T: " + meta_num(gt_high) + " 1/ps");
  result.table.metadata.push_back("gamma_tilde_exact: " + meta_num(gt_exact) + " 1/ps");
  result.table.metadata.push_back("t_star: " + meta_num(fixed.t_star) + " ps");
  result.table.metadata.push_back("Gamma_h_fixed: " + meta_num(fixed.Gamma_h) + " 1/ps");
  result.table.metadata.push_back(
      "validity_horizon: " + meta_num(std::log(m.n_2()) / gt_high) + " ps");
  result.table.metadata.push_back(
      "ode: steps_accepted=" + std::to_string(traj.stats.steps_accepted) +
      " steps_rejected=" + std::to_string(traj.stats.steps_rejected));
  result.table.metadata.push_back(
      "conservation: trace_drift=" + meta_num(traj.conservation.max_trace_drift) +
      " hermiticity=" + meta_num(traj.conservation.max_hermiticity_error) +
      " positivity_floor=" + meta_num(traj.conservation.min_positivity_floor));

  result.table.header = {
      "t",                "rho_gg_coherent", "rho_11_coherent", "rho_gg_bath",
      "rho_11_bath",      "n_h_bath",        "rho_gg_bath_fixed",
      "rho_11_bath_fixed", "n_h_fixed",      "rho_gg_full",     "rho_00_full",
      "rho_11_full",      "rho_22_full",     "abs_g2_full",     "rho_gg_full_pair",
      "rho_11_full_pair", "rho_gg_closed",   "rho_11_closed",   "rho_22_closed",
      "abs_g2_closed",    "diff_bath",       "diff_bath_fixed", "diff_full_closed",
      "flags"};

  result.table.rows.reserve(tgrid.size());
  for (std::size_t i = 0; i < tgrid.size(); ++i) {
    const double t = tgrid[i];
    RowBuilder row;
    row.num(t, "t");

    const ReducedPopulations coh = coherent_populations(t, m);
    row.num(coh.rho_gg, "rho_gg_coherent");
    row.num(coh.rho_11, "rho_11_coherent");

    // Time-dependent matched bath. The map itself needs t > 0; at t = 0 every
    // thermal contact gives exactly (1, 0), so the row uses that limit.
    double bath_gg = kNaN, bath_11 = kNaN, bath_nh = kNaN;
    bool bath_ok = false;
    if (t == 0.0) {
      bath_gg = 1.0;
      bath_11 = 0.0;
      bath_ok = true;
      row.flag("t0-limit");
    } else {
      try {
        const EffectiveBath b = match_bath_timedep(t, m);
        const ReducedPopulations th = thermal_populations(t, b.n_h, b.Gamma_h);
        bath_gg = th.rho_gg;
        bath_11 = th.rho_11;
        bath_nh = b.n_h;
        bath_ok = true;
      } catch (const BeyondHorizon&) {
        row.flag("beyond-horizon");
      }
    }
    if (bath_ok) {
      row.num(bath_gg, "rho_gg_bath");
      row.num(bath_11, "rho_11_bath");
      if (t == 0.0) {
        row.empty();  // n_h(t) is defined only for t > 0
      } else {
        row.num(bath_nh, "n_h_bath");
      }
    } else {
      row.empty(3);
    }

    const ReducedPopulations thf = thermal_populations(t, fixed.n_h, fixed.Gamma_h);
    row.num(thf.rho_gg, "rho_gg_bath_fixed");
    row.num(thf.rho_11, "rho_11_bath_fixed");
    row.num(fixed.n_h, "n_h_fixed");

    const DensityState& s = traj.states[i + skip];
    const double gg = s[kGG].real();
    const double p00 = s[k00].real();
    const double p11 = s[k11].real();
    const double p22 = s[k22].real();
    row.num(gg, "rho_gg_full");
    row.num(p00, "rho_00_full");
    row.num(p11, "rho_11_full");
    row.num(p22, "rho_22_full");
    row.num(std::abs(s[kG2]), "abs_g2_full");
    const double pair = gg + p11;
    if (pair > 0.0) {
      row.num(gg / pair, "rho_gg_full_pair");
      row.num(p11 / pair, "rho_11_full_pair");
    } else {
      row.empty(2);
      row.flag("empty-pair");
    }

    const PumpedClosedForm cf = pumped_closed_forms(t, m);
    row.num(cf.rho_gg, "rho_gg_closed");
    row.num(cf.rho_11, "rho_11_closed");
    row.num(cf.rho_22, "rho_22_closed");
    row.num(std::abs(cf.rho_g2), "abs_g2_closed");

    if (bath_ok) {
      row.num(std::fmax(std::fabs(coh.rho_gg - bath_gg), std::fabs(coh.rho_11 - bath_11)),
              "diff_bath");
    } else {
      row.empty();
    }
    row.num(std::fmax(std::fabs(coh.rho_gg - thf.rho_gg), std::fabs(coh.rho_11 - thf.rho_11)),
            "diff_bath_fixed");
    const double dfc = std::fmax(std::fabs(gg - cf.rho_gg),
                                 std::fmax(std::fabs(p11 - cf.rho_11),
                                           std::fabs(p22 - cf.rho_22)));
    row.num(dfc, "diff_full_closed");

    result.table.rows.push_back(row.finish());
  }

  const auto& rows = result.table.rows;
  const auto& hdr = result.table.header;
  const std::size_t ix = column_index(hdr, "t");
  result.plot_title = "pump-stage populations";
  result.plot_x = "t (ps)";
  result.plot_y = "rho_11";
  for (const char* col : {"rho_11_coherent", "rho_11_bath", "rho_11_bath_fixed",
                          "rho_11_full_pair"}) {
    result.plot.push_back(
        series_from_rows(rows, ix, column_index(hdr, col), 0, 1, rows.size(), col));
  }
  return result;
}

ScanResult run_fig3(const RunConfig& config, int jobs) {
  reject_unknown_axes(config, {"eta_C", "c_p"}, "fig3");

  GridAxis eta_axis;
  eta_axis.min = 0.05;
  eta_axis.max = 0.95;
  eta_axis.points = 19;
  GridAxis cp_axis;
  cp_axis.min = 1.2;
  cp_axis.max = 6.0;
  cp_axis.points = 25;
  if (const auto it = config.grids.find("eta_C"); it != config.grids.end()) {
    eta_axis = it->second;
  }
  if (const auto it = config.grids.find("c_p"); it != config.grids.end()) {
    cp_axis = it->second;
  }
  const std::vector<AxisSpec> axes = {{"eta_C", eta_axis.values()},
                                      {"c_p", cp_axis.values()}};
  const std::size_t n = total_rows(axes);

  ScanResult result;
  result.table.metadata = standard_metadata(config);
  result.table.metadata.push_back(axes_metadata(axes));
  result.table.header = {"eta_C",
                         "c_p",
                         "eta_star_sc",
                         "eta_map",
                         "region",
                         "on_boundary",
                         "cp_lower_I",
                         "cp_I_II",
                         "cp_II_III",
                         "cp_III_IV",
                         "cp_IV_carnot",
                         "eta_lower_I",
                         "eta_I_II",
                         "eta_II_III",
                         "eta_III_IV",
                         "eta_IV_carnot",
                         "flags"};

  auto make_row = [&](std::size_t r) {
    const std::vector<double> c = coords_for_row(axes, r);
    const double eta_C = c[0];
    const double c_p = c[1];
    RowBuilder row;
    row.num(eta_C, "eta_C");
    row.num(c_p, "c_p");
    try {
      DimensionlessPoint pt;
      pt.tau = 1.0 - eta_C;
      pt.c_p = c_p;
      row.num(eta_star_sc(pt), "eta_star_sc");
    } catch (const Error&) {
      row.empty();
      row.flag("domain:eta_star_sc");
    }
    try {
      row.num(boundary_efficiency_map(c_p), "eta_map");
    } catch (const Error&) {
      row.empty();
      row.flag("domain:eta_map");
    }
    try {
      const RegionInfo info = classify_region(eta_C, c_p);
      row.text(info.label);
      row.boolean(info.on_boundary);
      for (int k = 0; k < 5; ++k) row.num(info.boundaries[static_cast<std::size_t>(k)], "cp_bound");
      for (int k = 0; k < 5; ++k) row.num(info.boundary_eta[static_cast<std::size_t>(k)], "eta_bound");
    } catch (const Error&) {
      row.empty(12);
      row.flag("domain:classify_region");
    }
    return row.finish();
  };

  fill_rows(n, jobs, make_row, result.table.rows);

  const auto& hdr = result.table.header;
  const std::size_t n_cp = axes[1].values.size();
  const std::size_t n_eta = axes[0].values.size();
  result.plot_title = "efficiency-bound map";
  result.plot_x = "eta_C";
  result.plot_y = "c_p";
  const std::size_t ix = column_index(hdr, "eta_C");
  for (const char* col :
       {"cp_lower_I", "cp_I_II", "cp_II_III", "cp_III_IV", "cp_IV_carnot"}) {
    result.plot.push_back(series_from_rows(result.table.rows, ix,
                                           column_index(hdr, col), 0, n_cp, n_eta, col));
  }
  return result;
}

ScanResult run_scan(const RunConfig& config, int jobs) {
  static const std::vector<std::string> kOrder = {"tau",   "c_p",     "lambda_prime",
                                                  "gamma", "gamma_c", "c_21"};
  reject_unknown_axes(config, kOrder, "scan");
  const std::map<std::string, double> fixed = {{"tau", 0.5},          {"c_p", 4.0},
                                               {"lambda_prime", 1.0}, {"gamma", 1.0},
                                               {"gamma_c", 1.0},      {"c_21", 0.5}};
  std::vector<AxisSpec> axes;
  for (const auto& name : kOrder) {
    if (const auto it = config.grids.find(name); it != config.grids.end()) {
      axes.push_back({name, it->second.values()});
    } else if (config.grids.empty() && name == "c_21") {
      GridAxis a;
      a.min = 0.02;
      a.max = 0.98;
      a.points = 49;
      axes.push_back({name, a.values()});
    } else {
      axes.push_back({name, {fixed.at(name)}});
    }
  }
  const std::size_t n = total_rows(axes);

  ScanResult result;
  result.table.metadata = standard_metadata(config);
  result.table.metadata.push_back(axes_metadata(axes));
  result.table.metadata.push_back(
      "power units: P0_Q = Gamma_c*omega_c, P0_s = 6*Gamma_c^2*T_c^2/(sigma_p*omega_c)");
  result.table.header = {"tau",        "c_p",        "lambda_prime", "gamma",
                         "gamma_c",    "c_21",       "p_reduced",    "p_small_gap",
                         "s_reduced",  "pmax_q",     "c_21_star",    "eta_star",
                         "eta_star_sc", "pmax_s",    "c_21_star_s",  "region",
                         "flags"};

  auto make_row = [&](std::size_t r) {
    const std::vector<double> c = coords_for_row(axes, r);
    DimensionlessPoint pt;
    pt.tau = c[0];
    pt.c_p = c[1];
    pt.lambda_prime = c[2];
    pt.gamma = c[3];
    pt.gamma_c = c[4];
    pt.c_21 = c[5];
    RowBuilder row;
    for (std::size_t j = 0; j < kOrder.size(); ++j) row.num(c[j], kOrder[j].c_str());

    auto guarded = [&row](const char* name, auto&& fn) {
      try {
        row.num(fn(), name);
      } catch (const SingularCoupling&) {
        row.empty();
        row.flag("singular-coupling");
      } catch (const Error&) {
        row.empty();
        row.flag(std::string("domain:") + name);
      }
    };
    guarded("p_reduced", [&] { return dimensionless_power(pt.c_21, pt); });
    guarded("p_small_gap", [&] { return dimensionless_power_small_gap(pt.c_21, pt); });
    guarded("s_reduced", [&] { return dimensionless_spectro_power(pt.c_21, pt); });
    guarded("pmax_q", [&] { return pmax_q(pt); });
    guarded("c_21_star", [&] { return optimal_gap_ratio(pt); });
    guarded("eta_star", [&] { return eta_star(pt); });
    guarded("eta_star_sc", [&] { return eta_star_sc(pt); });
    guarded("pmax_s", [&] { return pmax_s(pt); });
    guarded("c_21_star_s", [&] { return spectro_optimal_gap_ratio(pt); });
    try {
      row.text(classify_region(pt.eta_C(), pt.c_p).label);
    } catch (const Error&) {
      row.empty();
      row.flag("domain:region");
    }
    return row.finish();
  };

  fill_rows(n, jobs, make_row, result.table.rows);

  const auto& hdr = result.table.header;
  const std::size_t n_inner = axes.back().values.size();
  result.plot_title = "reduced power scan";
  result.plot_x = axes.back().name;
  result.plot_y = "power (P0 units)";
  const std::size_t ix = column_index(hdr, axes.back().name);
  for (const char* col : {"p_reduced", "p_small_gap", "s_reduced"}) {
    result.plot.push_back(series_from_rows(result.table.rows, ix,
                                           column_index(hdr, col), 0, 1, n_inner, col));
  }
  return result;
}

ScanResult run_compare(const RunConfig& config, int jobs) {
  static const std::vector<std::string> kOrder = {"tau", "lambda_prime", "gamma_c",
                                                  "c_p_prime"};
  reject_unknown_axes(config, kOrder, "compare");
  ModelParams anchor = config.model;
  anchor.validate();

  const bool gamma_c_given = config.grids.count("gamma_c") != 0;
  std::vector<AxisSpec> axes;
  for (const auto& name : kOrder) {
    if (const auto it = config.grids.find(name); it != config.grids.end()) {
      axes.push_back({name, it->second.values()});
    } else if (name == "tau") {
      axes.push_back({name, {0.5}});
    } else if (name == "lambda_prime") {
      axes.push_back({name, {1.0}});
    } else if (name == "gamma_c") {
      // Placeholder; without an axis the row uses the optimum c_p'/2.
      axes.push_back({name, {0.0}});
    } else {
      GridAxis a;
      a.min = 0.25;
      a.max = 6.0;
      a.points = 24;
      axes.push_back({name, a.values()});
    }
  }
  const std::size_t n = total_rows(axes);

  ScanResult result;
  result.table.metadata = standard_metadata(config);
  result.table.metadata.push_back(axes_metadata(axes));
  result.table.metadata.push_back(
      "power units: P0_Q = P0_s = 1 (dimensionless comparison)");
  if (!gamma_c_given) {
    result.table.metadata.push_back("gamma_c: optimal c_p_prime/2 (no axis given)");
  }
  result.table.header = {"tau",
                         "lambda_prime",
                         "gamma_c",
                         "c_p_prime",
                         "p_q",
                         "p_q_star",
                         "p_s",
                         "p_s_star",
                         "ratio_star",
                         "diff_star",
                         "gamma_c_equivalent",
                         "gamma_c_optimal",
                         "c_p_prime_crossing",
                         "c_p_prime_max_gap",
                         "at_crossing",
                         "at_max_gap",
                         "omega_p_star",
                         "omega_p_double_star",
                         "weak_coupling_violated",
                         "flags"};

  auto make_row = [&](std::size_t r) {
    const std::vector<double> c = coords_for_row(axes, r);
    const double tau = c[0];
    const double lp = c[1];
    const double cpp = c[3];
    const double gc = gamma_c_given ? c[2] : cpp / 2.0;
    DimensionlessPoint pt;
    pt.tau = tau;
    pt.lambda_prime = lp;
    pt.gamma_c = gc;
    pt.c_p = 1.0 + cpp;
    RowBuilder row;
    row.num(tau, "tau");
    row.num(lp, "lambda_prime");
    row.num(gc, "gamma_c");
    row.num(cpp, "c_p_prime");

    try {
      row.num(pmax_q(pt), "p_q");
    } catch (const SingularCoupling&) {
      row.empty();
      row.flag("singular-coupling");
    } catch (const Error&) {
      row.empty();
      row.flag("domain:p_q");
    }

    EngineComparison cmp;
    bool have_cmp = false;
    try {
      cmp = compare_engines(pt, &anchor);
      have_cmp = true;
    } catch (const Error&) {
      row.flag("domain:compare");
    }
    if (have_cmp) {
      row.num(cmp.p_q_star, "p_q_star");
      double p_s = kNaN;
      try {
        p_s = pmax_s(pt);
      } catch (const Error&) {
        row.flag("domain:p_s");
      }
      if (std::isfinite(p_s)) {
        row.num(p_s, "p_s");
      } else {
        row.empty();
      }
      row.num(cmp.p_s_star, "p_s_star");
      row.num(cmp.ratio_q_over_s, "ratio_star");
      row.num(cmp.p_q_star - cmp.p_s_star, "diff_star");
      row.num(cmp.gamma_c_equivalent, "gamma_c_equivalent");
      row.num(cmp.gamma_c_optimal, "gamma_c_optimal");
      row.num(cmp.c_p_prime_crossing, "c_p_prime_crossing");
      row.num(cmp.c_p_prime_max_gap, "c_p_prime_max_gap");
      row.boolean(std::fabs(cpp - cmp.c_p_prime_crossing) <= 1e-9);
      row.boolean(std::fabs(cpp - cmp.c_p_prime_max_gap) <= 1e-9);
      row.num(cmp.Omega_p_star, "omega_p_star");
      row.num(cmp.Omega_p_double_star, "omega_p_double_star");
      row.boolean(cmp.weak_coupling_violated);
    } else {
      row.empty(14);
    }
    return row.finish();
  };

  fill_rows(n, jobs, make_row, result.table.rows);

  const auto& hdr = result.table.header;
  const std::size_t n_inner = axes.back().values.size();
  result.plot_title = "laser vs spectroscopic maximum power";
  result.plot_x = "c_p_prime";
  result.plot_y = "power (P0 = 1)";
  const std::size_t ix = column_index(hdr, "c_p_prime");
  for (const char* col : {"p_q", "p_q_star", "p_s_star"}) {
    result.plot.push_back(series_from_rows(result.table.rows, ix,
                                           column_index(hdr, col), 0, 1, n_inner, col));
  }
  return result;
}

ScanResult run_mode(const RunConfig& config, int jobs) {
  ScanResult result;
  if (config.mode == "fig2") {
    result = run_fig2(config, jobs);
  } else if (config.mode == "fig3") {
    result = run_fig3(config, jobs);
  } else if (config.mode == "scan") {
    result = run_scan(config, jobs);
  } else if (config.mode == "compare") {
    result = run_compare(config, jobs);
  } else {
    throw ConfigError("run_mode: '" + config.mode + "' is not a scan mode");
  }
  write_csv(result.table, config.csv_path, config.precision);
  if (!config.svg_path.empty()) {
    write_svg(result.plot, config.svg_path, result.plot_title, result.plot_x,
              result.plot_y);
  }
  return result;
}

}  // namespace qhe
