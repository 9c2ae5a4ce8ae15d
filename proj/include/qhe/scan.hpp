#pragma once

#include <string>
#include <vector>

#include "qhe/config.hpp"
#include "qhe/csv.hpp"
#include "qhe/svg.hpp"

namespace qhe {

// A finished scan: CSV-ready table (metadata, header, rows in deterministic
// row-major grid order regardless of worker count) plus an optional line plot
// assembled by the mode that knows the grid shape.
struct ScanResult {
  CsvTable table;
  std::vector<SvgSeries> plot;
  std::string plot_title;
  std::string plot_x;
  std::string plot_y;
};

// Resolves a worker count: requested >= 1 wins; otherwise the
// QHE_SPECTRO_JOBS environment variable; otherwise the hardware concurrency.
int resolve_jobs(int requested);

// Reduced-dynamics figure data: coherent pair, matched and fixed effective
// baths, the full-model integration, closed forms, pairwise differences,
// and n_h(t) with the fixed-match n_h*.
ScanResult run_fig2(const RunConfig& config, int jobs = 1);

// Efficiency-bound map: eta*_SC, the map curve 1-2/c_p, region labels, and the
// five bound curves over an (eta_C, c_p) grid.
ScanResult run_fig3(const RunConfig& config, int jobs = 1);

// Generic reduced-variable scan over axes among
// {tau, c_p, lambda_prime, gamma, gamma_c, c_21}.
ScanResult run_scan(const RunConfig& config, int jobs = 1);

// Laser-vs-spectroscopic power comparison over axes among
// {tau, lambda_prime, gamma_c, c_p_prime}.
ScanResult run_compare(const RunConfig& config, int jobs = 1);

// Dispatches fig2/fig3/scan/compare, writes the CSV (config.csv_path; stdout
// when empty) and the optional SVG, and returns the result. The validate mode
// is handled separately.
ScanResult run_mode(const RunConfig& config, int jobs);

}  // namespace qhe
