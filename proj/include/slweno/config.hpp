#pragma once

// Run configuration: preset defaults, key=value overrides and the manifest
// format. A manifest is an ordinary config file with one [preset] section, so
// `--config manifest.cfg` reproduces a run exactly.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slweno/sl_weno.hpp"
#include "slweno/vlasov_driver.hpp"

namespace slweno {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string preset;
  ModelKind model = ModelKind::vlasov_poisson;
  int nx = 80;
  int nv = 160;
  double cfl = 0.8;
  double t_final = 0.0;
  bool limiter = true;
  Weights weights = Weights::nonlinear;
  double epsilon = 1e-6;
  double x_lo = 0.0;
  double length = 2.0 * std::numbers::pi;
  double vc = 2.0 * std::numbers::pi;
  int diag_stride = 1;
  std::vector<double> snapshot_times;
  std::string output_dir;
  // Physical parameters of the initial data and drive (alpha, k, ...).
  std::map<std::string, double> params;
  // x-length follows 2 pi / k unless set explicitly.
  bool length_from_k = false;
  std::vector<std::pair<std::string, std::string>> overrides;

  double param(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw ConfigError("preset '" + preset + "' has no parameter '" + key + "'");
    return it->second;
  }
};

inline const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{
      "advect_sin4",  "rigid_cos6",         "rigid_slotted", "vp_smooth",
      "landau_weak",  "landau_strong",      "twostream_sym", "twostream_unstable",
      "bump_on_tail", "keen_J",             "keen_A",        "ion_acoustic"};
  return names;
}

inline const char* model_name(ModelKind m) {
  switch (m) {
    case ModelKind::advection: return "advection";
    case ModelKind::rigid_rotation: return "rigid_rotation";
    case ModelKind::vlasov_poisson: return "vlasov_poisson";
  }
  return "?";
}

/// Defaults for a named preset; throws ConfigError for unknown names.
inline RunConfig preset(const std::string& name) {
  constexpr double pi = std::numbers::pi;
  RunConfig c;
  c.preset = name;
  auto vp = [&](double k, double vc, int nx, int nv, double T) {
    c.model = ModelKind::vlasov_poisson;
    c.params["k"] = k;
    c.length_from_k = true;
    c.length = 2.0 * pi / k;
    c.vc = vc;
    c.nx = nx;
    c.nv = nv;
    c.t_final = T;
  };
  if (name == "advect_sin4") {
    c.model = ModelKind::advection;
    c.length = 2.0 * pi;
    c.vc = pi;
    c.nx = c.nv = 80;
    c.t_final = 1.0;
  } else if (name == "rigid_cos6" || name == "rigid_slotted") {
    c.model = ModelKind::rigid_rotation;
    c.x_lo = -pi;
    c.length = 2.0 * pi;
    c.vc = pi;
    c.nx = c.nv = 80;
    c.t_final = 2.0 * pi;
    if (name == "rigid_slotted") {
      c.nx = c.nv = 100;
      c.t_final = 12.0 * pi;
      c.weights = Weights::linear;
    }
  } else if (name == "vp_smooth") {
    vp(0.5, 20.0, 80, 160, 0.01);
  } else if (name == "landau_weak" || name == "landau_strong") {
    vp(0.5, 2.0 * pi, 80, 160, name == "landau_weak" ? 60.0 : 40.0);
    c.params["alpha"] = name == "landau_weak" ? 0.01 : 0.5;
  } else if (name == "twostream_sym") {
    vp(2.0 / 13.0, 2.0 * pi, 80, 160, 70.0);
    c.params["alpha"] = 0.05;
    c.params["u"] = 0.99;
    c.params["vth"] = 0.3;
  } else if (name == "twostream_unstable") {
    vp(0.5, 2.0 * pi, 80, 160, 50.0);
    c.params["alpha"] = 0.01;
  } else if (name == "bump_on_tail") {
    vp(0.3, 8.0, 256, 256, 500.0);
    c.params["alpha"] = 0.04;
    c.params["np"] = 0.9;
    c.params["nb"] = 0.2;
    c.params["vb"] = 4.5;
    c.params["vt"] = 0.5;
  } else if (name == "keen_J" || name == "keen_A") {
    vp(0.26, 8.0, 200, 400, 300.0);
    c.params["amplitude"] = name == "keen_J" ? 0.052 : 0.4;
    c.params["omega"] = 0.37;
  } else if (name == "ion_acoustic") {
    vp(0.05, 8.0, 256, 256, 2000.0);
    c.params["mass_ratio"] = 1000.0;
    c.params["drift"] = -2.0;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return c;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  const double x = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(x))
    throw ConfigError("invalid number for '" + key + "': '" + v + "'");
  return x;
}

inline int parse_int(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  char* end = nullptr;
  const long x = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || x < 0 || x > 1'000'000)
    throw ConfigError("invalid integer for '" + key + "': '" + v + "'");
  return static_cast<int>(x);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "on" || t == "true" || t == "1" || t == "yes") return true;
  if (t == "off" || t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("invalid boolean for '" + key + "': '" + v + "'");
}

inline std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!trim(item).empty()) out.push_back(parse_double(key, item));
  return out;
}

inline std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

/// Applies one override. Unknown keys and malformed values are ConfigErrors.
inline void apply_override(RunConfig& c, const std::string& raw_key, const std::string& value) {
  const std::string key = detail::trim(raw_key);
  if (key == "nx") {
    c.nx = detail::parse_int(key, value);
  } else if (key == "nv") {
    c.nv = detail::parse_int(key, value);
  } else if (key == "cfl") {
    c.cfl = detail::parse_double(key, value);
    if (!(c.cfl > 0.0)) throw ConfigError("cfl must be positive");
  } else if (key == "t_final") {
    c.t_final = detail::parse_double(key, value);
    if (c.t_final < 0.0) throw ConfigError("t_final must be non-negative");
  } else if (key == "limiter") {
    c.limiter = detail::parse_bool(key, value);
  } else if (key == "weights") {
    const auto v = detail::trim(value);
    if (v == "nonlinear") c.weights = Weights::nonlinear;
    else if (v == "linear") c.weights = Weights::linear;
    else throw ConfigError("weights must be 'nonlinear' or 'linear'");
  } else if (key == "epsilon") {
    c.epsilon = detail::parse_double(key, value);
    if (!(c.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  } else if (key == "x_lo") {
    c.x_lo = detail::parse_double(key, value);
  } else if (key == "length") {
    c.length = detail::parse_double(key, value);
    c.length_from_k = false;
    if (!(c.length > 0.0)) throw ConfigError("length must be positive");
  } else if (key == "vc") {
    c.vc = detail::parse_double(key, value);
    if (!(c.vc > 0.0)) throw ConfigError("vc must be positive");
  } else if (key == "diag_stride") {
    c.diag_stride = detail::parse_int(key, value);
    if (c.diag_stride < 1) throw ConfigError("diag_stride must be >= 1");
  } else if (key == "snapshot_times") {
    c.snapshot_times = detail::parse_list(key, value);
  } else if (key == "output_dir") {
    c.output_dir = detail::trim(value);
  } else if (c.params.count(key)) {
    c.params[key] = detail::parse_double(key, value);
    if (key == "k") {
      if (!(c.params[key] > 0.0)) throw ConfigError("k must be positive");
      if (c.length_from_k) c.length = 2.0 * std::numbers::pi / c.params[key];
    }
  } else {
    throw ConfigError("unknown key '" + key + "' for preset '" + c.preset + "'");
  }
  c.overrides.emplace_back(key, detail::trim(value));
}

/// "key=value" form used on the command line.
inline void apply_override(RunConfig& c, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + kv + "' is not key=value");
  apply_override(c, kv.substr(0, eq), kv.substr(eq + 1));
}

/// Reads a config file: `[preset]` starts from that preset's defaults, the
/// following `key = value` lines override it. '#' starts a comment. Only
/// one section is allowed.
inline RunConfig parse_config(std::istream& is) {
  std::optional<RunConfig> cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section");
      if (cfg) throw ConfigError("line " + std::to_string(lineno) + ": only one section allowed");
      cfg = preset(detail::trim(line.substr(1, line.size() - 2)));
      continue;
    }
    if (!cfg) throw ConfigError("line " + std::to_string(lineno) + ": key before [preset] section");
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    apply_override(*cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  if (!cfg) throw ConfigError("config has no [preset] section");
  return *cfg;
}

/// Fully resolved config in config-file syntax.
inline std::string manifest(const RunConfig& c) {
  using detail::fmt;
  std::ostringstream os;
  os << "# model: " << model_name(c.model) << "\n";
  for (const auto& [k, v] : c.overrides) os << "# override: " << k << " = " << v << "\n";
  os << "[" << c.preset << "]\n";
  os << "nx = " << c.nx << "\n";
  os << "nv = " << c.nv << "\n";
  os << "cfl = " << fmt(c.cfl) << "\n";
  os << "t_final = " << fmt(c.t_final) << "\n";
  os << "limiter = " << (c.limiter ? "on" : "off") << "\n";
  os << "weights = " << (c.weights == Weights::linear ? "linear" : "nonlinear") << "\n";
  os << "epsilon = " << fmt(c.epsilon) << "\n";
  for (const auto& [k, v] : c.params) os << k << " = " << fmt(v) << "\n";
  os << "x_lo = " << fmt(c.x_lo) << "\n";
  os << "length = " << fmt(c.length) << "\n";
  os << "vc = " << fmt(c.vc) << "\n";
  os << "diag_stride = " << c.diag_stride << "\n";
  os << "snapshot_times = ";
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i)
    os << (i ? "," : "") << fmt(c.snapshot_times[i]);
  os << "\n";
  if (!c.output_dir.empty()) os << "output_dir = " << c.output_dir << "\n";
  return os.str();
}

}  // namespace slweno
