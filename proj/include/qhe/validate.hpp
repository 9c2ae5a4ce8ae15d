#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qhe/config.hpp"

namespace qhe {

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double max_error = 0.0;  // worst observed deviation
  double tolerance = 0.0;  // acceptance threshold (or bracket upper edge)
  std::string note;        // optional context (brackets, measured values, ...)
};

struct ValidationReport {
  std::uint64_t seed = 0;
  std::vector<ValidationCheck> checks;

  bool all_passed() const;
  // Deterministic report body: same config and seed, same bytes.
  std::string render() const;
};

// Runs every cross-check the library's closed forms are validated against:
// closed form vs adaptive ODE, vs null-space steady states, vs matrix
// exponentials, vs grid+refine maximization, plus the printed anchor numbers.
// config.corrupt_rate_factor != 1 deliberately breaks the flux-vs-closed-form
// comparison (fault-injection hook for the test suite).
ValidationReport run_validate(const RunConfig& config, std::uint64_t seed = 12345);

}  // namespace qhe
