// Command-line front end: figure-data reproduction, parameter scans, and the
// self-validation suite. Exit codes: 0 success, 1 validation failure,
// 2 configuration error, 3 numerical failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>

#include "CLI11.hpp"
#include "qhe/config.hpp"
#include "qhe/errors.hpp"
#include "qhe/scan.hpp"
#include "qhe/validate.hpp"

namespace {

int run(const std::string& mode, const std::string& config_path,
        const std::string& out_path, const std::string& svg_path, int jobs,
        std::uint64_t seed) {
  qhe::RunConfig cfg = qhe::parse_config_file(config_path);
  if (cfg.mode != mode) {
    throw qhe::ConfigError("CLI mode '" + mode + "' does not match config mode '" +
                           cfg.mode + "'");
  }
  if (!out_path.empty()) cfg.csv_path = out_path;
  if (!svg_path.empty()) cfg.svg_path = svg_path;

  if (cfg.mode == "validate") {
    const qhe::ValidationReport report = qhe::run_validate(cfg, seed);
    const std::string body = report.render();
    if (cfg.csv_path.empty()) {
      std::fputs(body.c_str(), stdout);
    } else {
      std::ofstream out(cfg.csv_path, std::ios::binary);
      if (!out) {
        throw qhe::ConfigError("cannot open report path '" + cfg.csv_path + "'");
      }
      out << body;
    }
    return report.all_passed() ? 0 : 1;
  }

  qhe::run_mode(cfg, qhe::resolve_jobs(jobs));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qhe-spectro: pump-probe quantum-heat-engine simulator/analyzer"};
  std::string mode, config_path, out_path, svg_path;
  int jobs = 0;
  std::uint64_t seed = 12345;

  app.add_option("mode", mode, "one of fig2|fig3|validate|scan|compare")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig3", "validate", "scan", "compare"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--out", out_path, "output path (overrides output.csv_path)");
  app.add_option("--svg", svg_path, "plot path (overrides output.svg_path)");
  app.add_option("--jobs", jobs,
                 "worker threads; 0 = QHE_SPECTRO_JOBS env or hardware");
  app.add_option("--seed", seed, "seed for randomized validation draws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run(mode, config_path, out_path, svg_path, jobs, seed);
  } catch (const qhe::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const qhe::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
}
