// Command-line front end.
//
//   vwave run   -c cfg.json [-o dir]   full pipeline, JSON report on stdout
//   vwave check -c cfg.json            assumption scan + data-line residuals
//   vwave hunt  -c cfg.json [...]      amplitude bisection for a mid-run blowup
//
// Exit codes: 0 success, 1 configuration problem, 2 numerical failure,
// 3 blowup found but nondegeneracy thresholds violated.

#include <algorithm>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "vwave/boundary.hpp"
#include "vwave/common.hpp"
#include "vwave/config.hpp"
#include "vwave/physmap.hpp"
#include "vwave/pipeline.hpp"

namespace {

int do_check(const vwave::RunConfig& cfg) {
  using nlohmann::json;
  vwave::WaveSpeed speed = cfg.make_speed();
  vwave::InitialData data = cfg.make_data();
  vwave::BoundaryTrace trace = vwave::build_boundary_trace(
      data, speed, cfg.x_min, cfg.x_max, cfg.cells + 1);
  auto [lo_it, hi_it] = std::minmax_element(trace.u.begin(), trace.u.end());
  vwave::WaveSpeedReport sr = speed.check_assumptions(*lo_it - 1.0, *hi_it + 1.0);
  vwave::CompatibilityReport cr = vwave::check_compatibility(trace, speed);
  vwave::EnergySplit e0 = vwave::boundary_energy(trace);
  json rep{{"speed_check",
            {{"c_min", sr.c_min},
             {"c_max", sr.c_max},
             {"log_deriv_max", sr.log_deriv_max},
             {"positive_ok", sr.positive_ok},
             {"morse_ok", sr.morse_ok},
             {"critical_points", sr.critical_points.size()}}},
           {"compatibility",
            {{"res_u", cr.res_u},
             {"res_x", cr.res_x},
             {"res_t", cr.res_t},
             {"rhs_x_dev", cr.rhs_x_dev},
             {"rhs_t_dev", cr.rhs_t_dev}}},
           {"initial_energy", e0.total()}};
  std::cout << rep.dump(2) << '\n';
  if (!sr.positive_ok) {
    std::cerr << "check: wave speed not positive over the data range\n";
    return vwave::kExitConfig;
  }
  return vwave::kExitOk;
}

int do_hunt(const vwave::RunConfig& cfg, double lo, double hi, double target,
            int iters) {
  using nlohmann::json;
  vwave::HuntResult hr = vwave::hunt_blowup(cfg, lo, hi, target, iters);
  json rep{{"ok", hr.ok},
           {"amplitude", hr.amplitude},
           {"t0", hr.t0},
           {"horizon", hr.horizon},
           {"type", hr.type},
           {"family", std::string(1, hr.family)},
           {"evaluations", hr.evaluations}};
  std::cout << rep.dump(2) << '\n';
  return hr.ok ? vwave::kExitOk : vwave::kExitNumerics;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Characteristic-coordinate solver and blowup analyzer for the "
      "variational wave equation u_tt - c(u)(c(u) u_x)_x = 0"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;

  CLI::App* run = app.add_subcommand("run", "Solve, scan for blowup, report");
  run->add_option("-c,--config", config_path, "JSON config file")->required();
  run->add_option("-o,--output-dir", output_dir,
                  "Write report.json and CSVs here (overrides config)");

  CLI::App* check = app.add_subcommand(
      "check", "Wave-speed assumption scan and data-line compatibility");
  check->add_option("-c,--config", config_path, "JSON config file")->required();

  double hunt_lo = 0.25, hunt_hi = 4.0, hunt_target = 0.5;
  int hunt_iters = 20;
  CLI::App* hunt = app.add_subcommand(
      "hunt", "Bisect the velocity-pulse amplitude for a mid-run blowup");
  hunt->add_option("-c,--config", config_path, "JSON config file")->required();
  hunt->add_option("--lo", hunt_lo, "Weak end of the amplitude bracket");
  hunt->add_option("--hi", hunt_hi, "Strong end of the amplitude bracket");
  hunt->add_option("--target", hunt_target,
                   "Target blowup time as a fraction of the run horizon");
  hunt->add_option("--iters", hunt_iters, "Bisection iterations");

  CLI11_PARSE(app, argc, argv);

  try {
    vwave::RunConfig cfg = vwave::load_config(config_path);
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (run->parsed()) {
      vwave::PipelineResult res = vwave::run_pipeline(cfg);
      std::cout << res.report.dump(2) << '\n';
      return res.exit_code;
    }
    if (check->parsed()) return do_check(cfg);
    if (hunt->parsed())
      return do_hunt(cfg, hunt_lo, hunt_hi, hunt_target, hunt_iters);
  } catch (const vwave::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return vwave::kExitConfig;
  } catch (const vwave::NumericsError& e) {
    std::cerr << "numerics error: " << e.what() << '\n';
    return vwave::kExitNumerics;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return vwave::kExitNumerics;
  }
  return vwave::kExitOk;
}
