#pragma once

// Run configuration, loaded from a small JSON document:
//
// {
//   "domain":     {"x_min": -10.0, "x_max": 10.0, "cells": 800},
//   "speed":      {"family": "sinusoidal", "a0": 2.0, "a1": 1.0},
//   "data":       {"family": "gaussian", "a0": 1.0, "s0": 1.0,
//                  "a1": 0.0, "s1": 1.0},
//                  // family "gaussian_pair": (a0,s0) left and (a1,s1) right
//                  // velocity bump, "offset" = half separation, u0 = 0
//   "mode":       "both" | "conservative" | "dissipative",
//   "threads":    0,                 // 0: VWAVE_THREADS env var, else 1
//   "output_dir": "out",             // optional; no files when absent
//   "isochrones": [0.5, 1.0],        // times for profile/energy extraction
//   "write_fields": false,
//   "field_stride": 8
// }

#include <stdexcept>
#include <string>
#include <vector>

#include "vwave/initial_data.hpp"
#include "vwave/wavespeed.hpp"

namespace vwave {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RunConfig {
  double x_min = -10.0, x_max = 10.0;
  std::size_t cells = 800;
  std::string speed_family = "sinusoidal";
  double speed_a0 = 2.0, speed_a1 = 1.0;
  std::string data_family = "gaussian";
  double data_a0 = 1.0, data_s0 = 1.0, data_a1 = 0.0, data_s1 = 1.0;
  double data_offset = 0.0;
  std::string mode = "both";
  int threads = 0;
  std::string output_dir;
  std::vector<double> isochrones;
  bool write_fields = false;
  std::size_t field_stride = 8;

  WaveSpeed make_speed() const;
  InitialData make_data() const;
  void validate() const;  // throws ConfigError on bad values
};

// Parse from a file or a JSON string; both throw ConfigError on problems.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

// threads from the config, the VWAVE_THREADS environment variable, or 1.
int resolve_threads(const RunConfig& cfg);

}  // namespace vwave
