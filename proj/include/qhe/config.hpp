#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qhe/model.hpp"

namespace qhe {

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int points = 1;
  bool log_spacing = false;

  std::vector<double> values() const;
};

// Fully resolved run configuration. Parsed from a flat UTF-8 JSON object with
// dotted keys (model.Omega_p_eV, grids.tau.min, output.precision, ...);
// unknown keys are rejected.
struct RunConfig {
  std::string mode;  // fig2 | fig3 | validate | scan | compare
  ModelParams model;
  std::map<std::string, GridAxis> grids;  // sorted by axis name
  std::string csv_path;                   // empty -> stdout
  std::string svg_path;                   // empty -> no plot
  int precision = 12;
  double ode_rel = 1e-9;
  double ode_abs = 1e-12;
  double oracle_rel = 1e-6;
  // Fault-injection hook for the validation suite: multiplies one side's hot
  // rate in the closed-form-vs-steady-state check. 1.0 = no fault.
  double corrupt_rate_factor = 1.0;

  std::string canonical_text;  // canonical emitted form of this config
  uint64_t config_hash = 0;    // FNV-1a 64 of canonical_text
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text,
                            const std::string& origin = "<memory>");

// Canonical flat-JSON emission: sorted keys, shortest round-trip numbers.
// parse(emit(c)) reproduces emit(c) byte for byte.
std::string emit_config(const RunConfig& config);

uint64_t fnv1a_hash(const std::string& text);

}  // namespace qhe
