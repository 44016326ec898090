#include "vwave/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vwave {

namespace {

using nlohmann::json;

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string(key) + " must be a number");
  return j[key].get<double>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw ConfigError(std::string(key) + " must be a string");
  return j[key].get<std::string>();
}

}  // namespace

WaveSpeed RunConfig::make_speed() const {
  if (speed_family == "sinusoidal") return WaveSpeed::sinusoidal(speed_a0, speed_a1);
  if (speed_family == "sqrt_quadratic") return WaveSpeed::sqrt_quadratic(speed_a0, speed_a1);
  if (speed_family == "constant") return WaveSpeed::constant(speed_a0);
  throw ConfigError("unknown speed family: " + speed_family);
}

InitialData RunConfig::make_data() const {
  if (data_family == "gaussian")
    return InitialData::gaussian(data_a0, data_s0, data_a1, data_s1);
  if (data_family == "gaussian_pair")
    return InitialData::gaussian_pair(data_a0, data_s0, data_a1, data_s1,
                                      data_offset);
  if (data_family == "constant") return InitialData::constant(data_a0);
  throw ConfigError("unknown data family: " + data_family);
}

void RunConfig::validate() const {
  if (!(x_min < x_max)) throw ConfigError("domain requires x_min < x_max");
  if (cells < 8) throw ConfigError("domain needs at least 8 cells");
  if (cells > 4000) throw ConfigError("domain cells above supported limit (4000)");
  if (mode != "both" && mode != "conservative" && mode != "dissipative")
    throw ConfigError("mode must be both, conservative, or dissipative");
  if (threads < 0 || threads > 64) throw ConfigError("threads out of range [0,64]");
  if (field_stride == 0) throw ConfigError("field_stride must be positive");
  for (double tau : isochrones)
    if (!(tau >= 0.0)) throw ConfigError("isochrone times must be nonnegative");
  // Construction validates family parameters (positivity etc.).
  (void)make_speed();
  (void)make_data();
}

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");

  RunConfig cfg;
  if (j.contains("domain")) {
    const json& d = j["domain"];
    if (!d.is_object()) throw ConfigError("domain must be an object");
    cfg.x_min = get_num(d, "x_min", cfg.x_min);
    cfg.x_max = get_num(d, "x_max", cfg.x_max);
    double cells = get_num(d, "cells", static_cast<double>(cfg.cells));
    if (cells < 1 || cells != static_cast<double>(static_cast<std::size_t>(cells)))
      throw ConfigError("domain.cells must be a positive integer");
    cfg.cells = static_cast<std::size_t>(cells);
  }
  if (j.contains("speed")) {
    const json& s = j["speed"];
    if (!s.is_object()) throw ConfigError("speed must be an object");
    cfg.speed_family = get_str(s, "family", cfg.speed_family);
    cfg.speed_a0 = get_num(s, "a0", cfg.speed_a0);
    cfg.speed_a1 = get_num(s, "a1", cfg.speed_a1);
  }
  if (j.contains("data")) {
    const json& d = j["data"];
    if (!d.is_object()) throw ConfigError("data must be an object");
    cfg.data_family = get_str(d, "family", cfg.data_family);
    cfg.data_a0 = get_num(d, "a0", cfg.data_a0);
    cfg.data_s0 = get_num(d, "s0", cfg.data_s0);
    cfg.data_a1 = get_num(d, "a1", cfg.data_a1);
    cfg.data_s1 = get_num(d, "s1", cfg.data_s1);
    cfg.data_offset = get_num(d, "offset", cfg.data_offset);
  }
  cfg.mode = get_str(j, "mode", cfg.mode);
  cfg.threads = static_cast<int>(get_num(j, "threads", cfg.threads));
  cfg.output_dir = get_str(j, "output_dir", cfg.output_dir);
  if (j.contains("isochrones")) {
    if (!j["isochrones"].is_array()) throw ConfigError("isochrones must be an array");
    for (const json& v : j["isochrones"]) {
      if (!v.is_number()) throw ConfigError("isochrones entries must be numbers");
      cfg.isochrones.push_back(v.get<double>());
    }
  }
  if (j.contains("write_fields")) {
    if (!j["write_fields"].is_boolean()) throw ConfigError("write_fields must be a boolean");
    cfg.write_fields = j["write_fields"].get<bool>();
  }
  cfg.field_stride = static_cast<std::size_t>(get_num(j, "field_stride", 8.0));

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

int resolve_threads(const RunConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("VWAVE_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1 && n <= 64) return n;
  }
  return 1;
}

}  // namespace vwave
