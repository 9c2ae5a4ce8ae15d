#include "qhe/config.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qhe/errors.hpp"
#include "qhe/units.hpp"

namespace qhe {

namespace {

using nlohmann::json;

const std::set<std::string>& scalar_keys() {
  static const std::set<std::string> keys = {
      "mode",
      "model.omega_p_eV", "model.omega_2g_eV", "model.omega_21_eV",
      "model.omega_c_eV", "model.omega_10_eV",
      "model.Gamma_2", "model.Gamma_c",
      "model.Omega_p_eV", "model.lambda_eV",
      "model.T_c_eV", "model.n_2", "model.n_c",
      "output.csv_path", "output.svg_path", "output.precision",
      "tolerances.ode_rel", "tolerances.ode_abs", "tolerances.oracle_rel",
      "validate.corrupt_rate_factor",
  };
  return keys;
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw ConfigError("config key '" + key + "' must be a number");
  }
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) {
    throw ConfigError("config key '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

int as_int(const json& v, const std::string& key) {
  const double d = as_number(v, key);
  if (d != std::floor(d) || std::abs(d) > 1e9) {
    throw ConfigError("config key '" + key + "' must be an integer");
  }
  return static_cast<int>(d);
}

// Splits a grids.<axis>.<field> key; returns false for non-grid keys.
bool split_grid_key(const std::string& key, std::string* axis, std::string* field) {
  if (key.rfind("grids.", 0) != 0) return false;
  const size_t dot = key.rfind('.');
  if (dot <= 6 || dot == std::string::npos) return false;
  *axis = key.substr(6, dot - 6);
  *field = key.substr(dot + 1);
  return !axis->empty() && !field->empty() && axis->find('.') == std::string::npos;
}

}  // namespace

std::vector<double> GridAxis::values() const {
  if (points < 1) {
    throw ConfigError("grid axis: points must be >= 1");
  }
  if (!std::isfinite(min) || !std::isfinite(max) || min > max) {
    throw ConfigError("grid axis: need finite min <= max");
  }
  if (log_spacing && min <= 0.0) {
    throw ConfigError("grid axis: log spacing needs min > 0");
  }
  std::vector<double> v(static_cast<size_t>(points));
  if (points == 1) {
    v[0] = min;
    return v;
  }
  if (log_spacing) {
    const double lmin = std::log(min);
    const double lmax = std::log(max);
    for (int i = 0; i < points; ++i) {
      v[static_cast<size_t>(i)] =
          (i == points - 1) ? max : std::exp(lmin + (lmax - lmin) * i / (points - 1));
    }
  } else {
    for (int i = 0; i < points; ++i) {
      v[static_cast<size_t>(i)] =
          (i == points - 1) ? max : min + (max - min) * i / (points - 1);
    }
  }
  return v;
}

uint64_t fnv1a_hash(const std::string& text) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("config " + origin + ": JSON parse failed: " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("config " + origin + ": top level must be a JSON object");
  }

  RunConfig cfg;
  std::optional<double> omega_p, omega_2g, omega_21, omega_c, omega_10;
  std::optional<double> gamma_2, gamma_c, big_omega, lambda, t_c, n_2, n_c;

  for (const auto& [key, value] : doc.items()) {
    std::string axis, field;
    if (split_grid_key(key, &axis, &field)) {
      GridAxis& g = cfg.grids[axis];
      if (field == "min") g.min = as_number(value, key);
      else if (field == "max") g.max = as_number(value, key);
      else if (field == "points") g.points = as_int(value, key);
      else if (field == "spacing") {
        const std::string s = as_string(value, key);
        if (s == "log") g.log_spacing = true;
        else if (s == "linear") g.log_spacing = false;
        else throw ConfigError("config key '" + key + "': spacing must be 'linear' or 'log'");
      } else {
        throw ConfigError("unknown grid field in config key '" + key + "'");
      }
      continue;
    }
    if (scalar_keys().count(key) == 0) {
      throw ConfigError("unknown config key '" + key + "'");
    }
    if (key == "mode") cfg.mode = as_string(value, key);
    else if (key == "model.omega_p_eV") omega_p = as_number(value, key);
    else if (key == "model.omega_2g_eV") omega_2g = as_number(value, key);
    else if (key == "model.omega_21_eV") omega_21 = as_number(value, key);
    else if (key == "model.omega_c_eV") omega_c = as_number(value, key);
    else if (key == "model.omega_10_eV") omega_10 = as_number(value, key);
    else if (key == "model.Gamma_2") gamma_2 = as_number(value, key);
    else if (key == "model.Gamma_c") gamma_c = as_number(value, key);
    else if (key == "model.Omega_p_eV") big_omega = as_number(value, key);
    else if (key == "model.lambda_eV") lambda = as_number(value, key);
    else if (key == "model.T_c_eV") t_c = as_number(value, key);
    else if (key == "model.n_2") n_2 = as_number(value, key);
    else if (key == "model.n_c") n_c = as_number(value, key);
    else if (key == "output.csv_path") cfg.csv_path = as_string(value, key);
    else if (key == "output.svg_path") cfg.svg_path = as_string(value, key);
    else if (key == "output.precision") cfg.precision = as_int(value, key);
    else if (key == "tolerances.ode_rel") cfg.ode_rel = as_number(value, key);
    else if (key == "tolerances.ode_abs") cfg.ode_abs = as_number(value, key);
    else if (key == "tolerances.oracle_rel") cfg.oracle_rel = as_number(value, key);
    else if (key == "validate.corrupt_rate_factor") cfg.corrupt_rate_factor = as_number(value, key);
  }

  static const std::set<std::string> kModes = {"fig2", "fig3", "validate", "scan",
                                               "compare"};
  if (kModes.count(cfg.mode) == 0) {
    throw ConfigError("config " + origin + ": mode must be one of fig2|fig3|validate|scan|compare, got '" +
                      cfg.mode + "'");
  }
  if (cfg.precision < 6 || cfg.precision > 17) {
    throw ConfigError("output.precision must lie in [6, 17]");
  }
  for (double tol : {cfg.ode_rel, cfg.ode_abs, cfg.oracle_rel}) {
    if (!std::isfinite(tol) || tol <= 0.0) {
      throw ConfigError("tolerances must be finite and > 0");
    }
  }
  if (!std::isfinite(cfg.corrupt_rate_factor) || cfg.corrupt_rate_factor <= 0.0) {
    throw ConfigError("validate.corrupt_rate_factor must be finite and > 0");
  }

  // Model resolution, in order: reference values; temperature; explicit
  // energies/rates; occupation overrides (n wins over the matching energy);
  // ladder closure for whichever of omega_10/omega_2g was not given; resonant
  // pump default.
  ModelParams& m = cfg.model;
  m = ModelParams::reference();
  if (t_c) m.T_c = *t_c;
  if (gamma_2) m.Gamma_2 = *gamma_2;
  if (gamma_c) m.Gamma_c = *gamma_c;
  if (big_omega) m.Omega_p = *big_omega;
  if (lambda) m.lambda = *lambda;
  if (omega_c) m.omega_c = *omega_c;
  if (omega_21) m.omega_21 = *omega_21;
  if (omega_10) m.omega_10 = *omega_10;
  if (omega_2g) m.omega_2g = *omega_2g;
  if (omega_p) m.omega_p = *omega_p;
  if (n_2) {
    if (!std::isfinite(*n_2) || *n_2 <= 0.0) {
      throw ConfigError("model.n_2 must be finite and > 0");
    }
    m.omega_21 = energy_for_occupation(*n_2, m.T_c);
  }
  if (n_c) {
    if (!std::isfinite(*n_c) || *n_c <= 0.0) {
      throw ConfigError("model.n_c must be finite and > 0");
    }
    m.omega_c = energy_for_occupation(*n_c, m.T_c);
  }
  if (omega_10 && omega_2g) {
    // both ends of the ladder explicit: validate() checks closure
  } else if (omega_10) {
    m.omega_2g = m.omega_c + m.omega_10 + m.omega_21;
  } else {
    m.omega_10 = m.omega_2g - m.omega_c - m.omega_21;
  }
  if (!omega_p) m.omega_p = m.omega_2g;
  try {
    m.validate();
  } catch (const Error& e) {
    throw ConfigError("config " + origin + ": resolved model is invalid: " + e.what());
  }

  cfg.canonical_text = emit_config(cfg);
  cfg.config_hash = fnv1a_hash(cfg.canonical_text);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string emit_config(const RunConfig& cfg) {
  json doc = json::object();
  doc["mode"] = cfg.mode;
  doc["model.omega_p_eV"] = cfg.model.omega_p;
  doc["model.omega_2g_eV"] = cfg.model.omega_2g;
  doc["model.omega_21_eV"] = cfg.model.omega_21;
  doc["model.omega_c_eV"] = cfg.model.omega_c;
  doc["model.omega_10_eV"] = cfg.model.omega_10;
  doc["model.Gamma_2"] = cfg.model.Gamma_2;
  doc["model.Gamma_c"] = cfg.model.Gamma_c;
  doc["model.Omega_p_eV"] = cfg.model.Omega_p;
  doc["model.lambda_eV"] = cfg.model.lambda;
  doc["model.T_c_eV"] = cfg.model.T_c;
  for (const auto& [axis, g] : cfg.grids) {
    const std::string base = "grids." + axis + ".";
    doc[base + "min"] = g.min;
    doc[base + "max"] = g.max;
    doc[base + "points"] = g.points;
    doc[base + "spacing"] = g.log_spacing ? "log" : "linear";
  }
  doc["output.csv_path"] = cfg.csv_path;
  doc["output.svg_path"] = cfg.svg_path;
  doc["output.precision"] = cfg.precision;
  doc["tolerances.ode_rel"] = cfg.ode_rel;
  doc["tolerances.ode_abs"] = cfg.ode_abs;
  doc["tolerances.oracle_rel"] = cfg.oracle_rel;
  doc["validate.corrupt_rate_factor"] = cfg.corrupt_rate_factor;
  return doc.dump(2) + "\n";
}

}  // namespace qhe
