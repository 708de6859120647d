#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mlswe/desingularize.hpp"
#include "mlswe/fluxes.hpp"
#include "mlswe/types.hpp"

namespace mlswe {

/// Flat "key = value" text configuration; '#' starts a comment.
class Config {
 public:
  Config() = default;

  static Config parse(std::istream& in, const std::string& origin = "config") {
    Config c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
      c.values_[key] = value;
    }
    return c;
  }

  static Config parse_string(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
  }

  static Config load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    return parse(in, path);
  }

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) > 0; }
  [[nodiscard]] const std::map<std::string, std::string>& values() const { return values_; }

  /// Keys of `other` override keys of this config.
  void merge(const Config& other) {
    for (const auto& [k, v] : other.values_) values_[k] = v;
  }

  [[nodiscard]] std::string get_string(const std::string& key, const std::string& fallback) const {
    used_.insert(key);
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  [[nodiscard]] double get_double(const std::string& key, double fallback) const {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t pos = 0;
      const double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': expected a number, got '" + it->second + "'");
    }
  }

  [[nodiscard]] long long get_int(const std::string& key, long long fallback) const {
    used_.insert(key);
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument(key);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("key '" + key + "': expected an integer, got '" + it->second + "'");
    }
  }

  [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const {
    const std::string v = get_string(key, fallback ? "true" : "false");
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + v + "'");
  }

  /// Throws if a key was never read.
  void check_all_used() const {
    std::string unknown;
    for (const auto& [k, v] : values_)
      if (!used_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
    if (!unknown.empty()) throw ConfigError("unknown config keys: " + unknown);
  }

 private:
  static std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
  }

  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

/// Settings of one simulation run.
struct RunConfig {
  std::string scenario;
  std::string variant;
  std::string solver;
  int N = 4;
  int elements = 16;
  int elements_y = 0;  ///< 0: same as elements
  double warp = 0.0;
  std::string mesh_file;
  double cfl = 0.5;
  double dt = 0.0;  ///< fixed step when positive
  double t_end = 1.0;
  Thresholds thresholds;
  bool shock_capturing = true;
  bool limit_momentum = true;
  SurfaceFlux surface = SurfaceFlux::entropy_stable;
  double manning = 0.0;
  double output_interval = 0.0;  ///< snapshot cadence; 0 writes only the first and last state
  int diagnostics_every = 1;
  double gauge_interval = 0.1;
  std::string output_dir = "output";
  std::uint64_t seed = 0;
  Config source;

  void validate() const {
    if (scenario.empty()) throw ConfigError("missing key 'scenario'");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
    if (!(t_end > 0.0)) throw ConfigError("t_end must be positive");
    if (dt < 0.0) throw ConfigError("dt must be non-negative");
    if (N < 1 || N > 30) throw ConfigError("N must lie in [1, 30]");
    if (elements < 1 || elements_y < 0) throw ConfigError("element counts must be positive");
    if (!(manning >= 0.0)) throw ConfigError("manning must be non-negative");
    if (output_interval < 0.0) throw ConfigError("output_interval must be non-negative");
    if (diagnostics_every < 1) throw ConfigError("diagnostics_every must be at least 1");
    if (!(gauge_interval > 0.0)) throw ConfigError("gauge_interval must be positive");
    thresholds.validate();
  }

  /// Reads every known key; `c` must already contain the scenario defaults.
  static RunConfig from(const Config& c) {
    RunConfig r;
    r.source = c;
    r.scenario = c.get_string("scenario", "");
    r.variant = c.get_string("variant", "");
    r.solver = c.get_string("solver", "");
    r.N = static_cast<int>(c.get_int("N", r.N));
    r.elements = static_cast<int>(c.get_int("elements", r.elements));
    r.elements_y = static_cast<int>(c.get_int("elements_y", r.elements_y));
    r.warp = c.get_double("warp", r.warp);
    r.mesh_file = c.get_string("mesh_file", "");
    r.cfl = c.get_double("cfl", r.cfl);
    r.dt = c.get_double("dt", r.dt);
    r.t_end = c.get_double("t_end", r.t_end);
    r.thresholds.tau_wet = c.get_double("tau_wet", r.thresholds.tau_wet);
    r.thresholds.tau_vel = c.get_double("tau_vel", r.thresholds.tau_vel);
    r.thresholds.alpha_max = c.get_double("alpha_max", r.thresholds.alpha_max);
    r.shock_capturing = c.get_bool("shock_capturing", r.shock_capturing);
    r.limit_momentum = c.get_bool("limit_momentum", r.limit_momentum);
    const std::string flux = c.get_string("surface_flux", "es");
    if (flux == "es")
      r.surface = SurfaceFlux::entropy_stable;
    else if (flux == "ec")
      r.surface = SurfaceFlux::entropy_conservative;
    else
      throw ConfigError("surface_flux must be 'es' or 'ec'");
    r.manning = c.get_double("manning", r.manning);
    r.output_interval = c.get_double("output_interval", r.output_interval);
    r.diagnostics_every = static_cast<int>(c.get_int("diagnostics_every", r.diagnostics_every));
    r.gauge_interval = c.get_double("gauge_interval", r.gauge_interval);
    r.output_dir = c.get_string("output_dir", r.output_dir);
    r.seed = static_cast<std::uint64_t>(c.get_int("seed", 0));
    return r;
  }
};

}  // namespace mlswe
