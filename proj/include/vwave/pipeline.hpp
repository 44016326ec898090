#pragma once

// Orchestration of a full run: assumption scan, data line construction,
// solve (conservative and/or dissipative), blowup scan and classification,
// energy accounting, and optional CSV/JSON outputs.
//
// Exit codes: 0 success; 1 configuration problem (ConfigError propagates to
// the caller); 2 numerical failure during the march; 3 a blowup point was
// found but fails the nondegeneracy thresholds (analysis is still emitted).

#include <string>

#include "json.hpp"
#include "vwave/config.hpp"

namespace vwave {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerics = 2;
inline constexpr int kExitGenericity = 3;

struct PipelineResult {
  int exit_code = kExitOk;
  nlohmann::json report;
};

// Runs everything the config asks for.  Throws ConfigError for problems a
// user must fix; numerical failures are caught and reported (exit_code 2).
PipelineResult run_pipeline(const RunConfig& cfg);

struct HuntResult {
  bool ok = false;
  double amplitude = 0.0;  // settled velocity-pulse amplitude (data a1)
  double t0 = 0.0;         // first blowup time at that amplitude
  double horizon = 0.0;    // largest full-width time of that run
  int type = 0;
  char family = 'w';
  int evaluations = 0;
};

// Bisection on the velocity-pulse amplitude so that the first blowup time
// lands near target_frac * horizon.  Blowup time decreases as the pulse
// strengthens; [lo, hi] must bracket the target (checked and reported).
HuntResult hunt_blowup(const RunConfig& base, double lo, double hi,
                       double target_frac = 0.5, int max_iter = 20);

}  // namespace vwave
