#include "vwave/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "vwave/asymptotics.hpp"
#include "vwave/boundary.hpp"
#include "vwave/common.hpp"
#include "vwave/csv.hpp"
#include "vwave/physmap.hpp"
#include "vwave/singular.hpp"
#include "vwave/solver.hpp"

namespace vwave {

namespace {

using nlohmann::json;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

json point_json(const SingularPoint& p) {
  return json{{"family", std::string(1, p.family)},
              {"type", p.type},
              {"level", p.level},
              {"X0", p.X0},
              {"Y0", p.Y0},
              {"t0", p.t0},
              {"x0", p.x0},
              {"u0", p.u0},
              {"c0", p.c0},
              {"w_X", p.w_X},
              {"w_XX", p.w_XX},
              {"w_Y", p.w_Y},
              {"z0", p.z0},
              {"p0", p.p0},
              {"q0", p.q0},
              {"z_Y", p.z_Y},
              {"kappa", p.kappa},
              {"genericity_ok", p.genericity_ok}};
}

json prediction_json(const SingularPoint& p, const WaveSpeed& speed) {
  if (p.type == 2) {
    Type2Prediction pr = predict_type2(p, speed);
    return json{{"cusp_amp", pr.cusp_amp},
                {"kappa", pr.kappa},
                {"alpha", pr.alpha},
                {"beta_tilde", pr.beta_tilde}};
  }
  if (p.type == 3) {
    Type3Prediction pr = predict_type3(p, speed);
    return json{{"amp_plus", pr.amp_plus}, {"amp_minus", pr.amp_minus}};
  }
  return json::object();
}

json energies_json(const Grid& g, const std::vector<double>& taus,
                   double horizon) {
  json arr = json::array();
  for (double tau : taus) {
    if (!(tau > 0.0) || tau > horizon) continue;
    auto iso = extract_isochrone(g, tau);
    if (iso.size() < 2) continue;
    EnergySplit e = isochrone_energy(iso);
    arr.push_back(json{{"tau", tau},
                       {"r_part", e.r_part},
                       {"s_part", e.s_part},
                       {"total", e.total()},
                       {"points", iso.size()}});
  }
  return arr;
}

void write_isochrone_csv(const std::string& path,
                         const std::vector<IsoPoint>& iso) {
  std::vector<std::vector<double>> rows;
  rows.reserve(iso.size());
  for (const IsoPoint& pt : iso)
    rows.push_back({pt.X, pt.Y, pt.x, pt.t, pt.u, pt.w, pt.z, pt.p, pt.q,
                    pt.w_frozen ? 1.0 : 0.0, pt.z_frozen ? 1.0 : 0.0});
  write_csv(path,
            {"X", "Y", "x", "t", "u", "w", "z", "p", "q", "w_frozen",
             "z_frozen"},
            rows);
}

void write_fields_csv(const std::string& path, const Grid& g,
                      std::size_t stride) {
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < g.n; j += stride)
    for (std::size_t i = 0; i < g.n; i += stride) {
      if (!g.in_domain(i, j)) continue;
      std::size_t k = g.idx(i, j);
      rows.push_back({g.X(i), g.Y(j), g.u[k], g.w[k], g.z[k], g.p[k], g.q[k],
                      g.x[k], g.t[k], static_cast<double>(g.flags[k])});
    }
  write_csv(path, {"X", "Y", "u", "w", "z", "p", "q", "x", "t", "flags"},
            rows);
}

// Curve chain in the grid's own frame, mapped back to the original frame
// when the grid is the swap (swap exchanges X and Y and negates x).
void write_curve_csv(const std::string& path,
                     const std::vector<LevelCrossing>& chain, bool swapped) {
  std::vector<std::vector<double>> rows;
  rows.reserve(chain.size());
  for (const LevelCrossing& c : chain) {
    double X = swapped ? c.Y : c.X;
    double Y = swapped ? c.X : c.Y;
    double x = swapped ? -c.x : c.x;
    rows.push_back({X, Y, x, c.t});
  }
  write_csv(path, {"X", "Y", "x", "t"}, rows);
}

struct FreezeCounts {
  std::size_t domain = 0, w = 0, z = 0;
};

FreezeCounts freeze_counts(const Grid& g) {
  FreezeCounts fc;
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t i = g.n - 1 - j; i < g.n; ++i) {
      ++fc.domain;
      if (g.w_frozen(i, j)) ++fc.w;
      if (g.z_frozen(i, j)) ++fc.z;
    }
  return fc;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  PipelineResult out;
  json& rep = out.report;
  double t_start = now_seconds();

  WaveSpeed speed = cfg.make_speed();
  InitialData data = cfg.make_data();

  rep["config"] = json{{"x_min", cfg.x_min},
                       {"x_max", cfg.x_max},
                       {"cells", cfg.cells},
                       {"speed", speed.family_name()},
                       {"data", data.family_name()},
                       {"mode", cfg.mode},
                       {"threads", resolve_threads(cfg)}};

  BoundaryTrace trace = build_boundary_trace(data, speed, cfg.x_min, cfg.x_max,
                                             cfg.cells + 1);

  {
    auto [lo_it, hi_it] = std::minmax_element(trace.u.begin(), trace.u.end());
    WaveSpeedReport sr = speed.check_assumptions(*lo_it - 1.0, *hi_it + 1.0);
    if (!sr.positive_ok)
      throw ConfigError("wave speed is not positive over the data range");
    rep["speed_check"] = json{{"c_min", sr.c_min},
                             {"c_max", sr.c_max},
                             {"log_deriv_max", sr.log_deriv_max},
                             {"morse_ok", sr.morse_ok},
                             {"critical_points", sr.critical_points.size()}};
  }

  {
    CompatibilityReport cr = check_compatibility(trace, speed);
    rep["compatibility"] = json{{"res_u", cr.res_u},
                                {"res_x", cr.res_x},
                                {"res_t", cr.res_t},
                                {"rhs_x_dev", cr.rhs_x_dev},
                                {"rhs_t_dev", cr.rhs_t_dev}};
  }

  EnergySplit e0 = boundary_energy(trace);
  if (e0.total() > 1e6)
    throw ConfigError("initial energy exceeds the supported range");
  rep["initial_energy"] =
      json{{"r_part", e0.r_part}, {"s_part", e0.s_part}, {"total", e0.total()}};

  const bool want_cons = cfg.mode == "both" || cfg.mode == "conservative";
  const bool want_diss = cfg.mode == "both" || cfg.mode == "dissipative";
  const bool want_files = !cfg.output_dir.empty();
  if (want_files) std::filesystem::create_directories(cfg.output_dir);
  auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(cfg.output_dir) / name).string();
  };
  if (want_files) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < trace.size(); ++i)
      rows.push_back({trace.s(i), trace.u[i], trace.w[i], trace.z[i],
                      trace.p[i], trace.q[i], trace.x[i], trace.t[i]});
    write_csv(out_path("boundary.csv"),
              {"s", "u", "w", "z", "p", "q", "x", "t"}, rows);
  }

  SolveOptions sopt;
  sopt.threads = resolve_threads(cfg);

  std::optional<Grid> cons, diss;
  try {
    double t0 = now_seconds();
    if (want_cons) {
      sopt.dissipative = false;
      cons = solve_goursat(trace, speed, sopt);
      rep["timings"]["solve_conservative_s"] = now_seconds() - t0;
    }
    t0 = now_seconds();
    if (want_diss) {
      sopt.dissipative = true;
      diss = solve_goursat(trace, speed, sopt);
      rep["timings"]["solve_dissipative_s"] = now_seconds() - t0;
    }
  } catch (const NumericsError& e) {
    rep["error"] = e.what();
    out.exit_code = kExitNumerics;
    if (want_files) {
      std::ofstream f(out_path("report.json"));
      f << rep.dump(2) << '\n';
    }
    return out;
  }

  if (cons) {
    const Grid& g = *cons;
    json sec;
    double horizon = max_common_time(g);
    sec["max_common_time"] = horizon;
    auto [ulo, uhi] = std::minmax_element(g.u.begin(), g.u.end());
    (void)ulo;
    (void)uhi;
    sec["energies"] = energies_json(g, cfg.isochrones, horizon);

    SingularScan scan = find_first_singularities(g, speed);
    if (scan.w_first) {
      sec["w_first"] = point_json(*scan.w_first);
      sec["w_first"]["prediction"] = prediction_json(*scan.w_first, speed);
    }
    if (scan.z_first) {
      sec["z_first"] = point_json(*scan.z_first);
      sec["z_first"]["prediction"] = prediction_json(*scan.z_first, speed);
    }
    const SingularPoint* first = nullptr;
    if (scan.w_first && scan.z_first)
      first = scan.w_first->t0 <= scan.z_first->t0 ? &*scan.w_first
                                                   : &*scan.z_first;
    else if (scan.w_first)
      first = &*scan.w_first;
    else if (scan.z_first)
      first = &*scan.z_first;
    sec["blowup_found"] = first != nullptr;
    if (first) {
      sec["first"] = point_json(*first);
      if (!first->genericity_ok) out.exit_code = kExitGenericity;
    }

    if (want_files) {
      for (const json& e : sec["energies"]) {
        double tau = e["tau"].get<double>();
        auto iso = extract_isochrone(g, tau);
        write_isochrone_csv(
            out_path("cons_isochrone_" + format_double(tau) + ".csv"), iso);
      }
      if (scan.w_first) {
        auto chain = first_curve_crossings(g, *scan.w_first);
        write_curve_csv(out_path("singular_curve_w.csv"), chain, false);
      }
      if (scan.z_first) {
        Grid sw = swapped_grid(g);
        auto chain = first_curve_crossings(sw, *scan.z_first);
        write_curve_csv(out_path("singular_curve_z.csv"), chain, true);
      }
      if (cfg.write_fields)
        write_fields_csv(out_path("fields_cons.csv"), g, cfg.field_stride);
    }
    rep["conservative"] = std::move(sec);
  }

  if (diss) {
    const Grid& g = *diss;
    json sec;
    double horizon = max_common_time(g);
    sec["max_common_time"] = horizon;
    sec["energies"] = energies_json(g, cfg.isochrones, horizon);
    FreezeCounts fc = freeze_counts(g);
    sec["halted_fraction_w"] =
        fc.domain ? static_cast<double>(fc.w) / static_cast<double>(fc.domain)
                  : 0.0;
    sec["halted_fraction_z"] =
        fc.domain ? static_cast<double>(fc.z) / static_cast<double>(fc.domain)
                  : 0.0;
    PlateauShape pw = w_plateau_shape(g);
    if (pw.ok)
      sec["w_plateau"] = json{{"X0", pw.X0},
                              {"Y0", pw.Y0},
                              {"kappa", pw.kappa},
                              {"columns", pw.Xs.size()}};
    Grid sw = swapped_grid(g);
    PlateauShape pz = w_plateau_shape(sw);
    if (pz.ok)
      sec["z_plateau"] = json{{"X0", pz.X0},
                              {"Y0", pz.Y0},
                              {"kappa", pz.kappa},
                              {"columns", pz.Xs.size()}};
    if (want_files) {
      for (const json& e : sec["energies"]) {
        double tau = e["tau"].get<double>();
        auto iso = extract_isochrone(g, tau);
        write_isochrone_csv(
            out_path("diss_isochrone_" + format_double(tau) + ".csv"), iso);
      }
      if (cfg.write_fields)
        write_fields_csv(out_path("fields_diss.csv"), g, cfg.field_stride);
    }
    rep["dissipative"] = std::move(sec);
  }

  if (cons && diss) {
    json cmp = json::array();
    double horizon =
        std::min(max_common_time(*cons), max_common_time(*diss));
    for (double tau : cfg.isochrones) {
      if (!(tau > 0.0) || tau > horizon) continue;
      cmp.push_back(json{
          {"tau", tau},
          {"sup_u_diff", sup_profile_difference(*cons, *diss, tau)}});
    }
    rep["mode_comparison"] = std::move(cmp);
  }

  rep["timings"]["total_s"] = now_seconds() - t_start;
  rep["exit_code"] = out.exit_code;
  if (want_files) {
    std::ofstream f(out_path("report.json"));
    f << rep.dump(2) << '\n';
    if (!f) throw ConfigError("cannot write report to " + cfg.output_dir);
  }
  return out;
}

namespace {

struct HuntEval {
  bool solved = false;
  bool found = false;
  double t0 = std::numeric_limits<double>::infinity();
  double horizon = 0.0;
  int type = 0;
  char family = 'w';
};

HuntEval hunt_eval(const RunConfig& base, double amp) {
  RunConfig cfg = base;
  // For the colliding-pair family both bumps scale together so the bisection
  // preserves their shape; otherwise only the velocity amplitude moves.
  if (cfg.data_family == "gaussian_pair" && base.data_a1 != 0.0)
    cfg.data_a0 = base.data_a0 * (amp / base.data_a1);
  cfg.data_a1 = amp;
  cfg.mode = "conservative";
  HuntEval ev;
  try {
    WaveSpeed speed = cfg.make_speed();
    InitialData data = cfg.make_data();
    BoundaryTrace trace = build_boundary_trace(data, speed, cfg.x_min,
                                               cfg.x_max, cfg.cells + 1);
    SolveOptions opt;
    opt.threads = resolve_threads(cfg);
    Grid g = solve_goursat(trace, speed, opt);
    ev.solved = true;
    ev.horizon = max_common_time(g);
    SingularScan scan = find_first_singularities(g, speed);
    const SingularPoint* first = nullptr;
    if (scan.w_first && scan.z_first)
      first = scan.w_first->t0 <= scan.z_first->t0 ? &*scan.w_first
                                                   : &*scan.z_first;
    else if (scan.w_first)
      first = &*scan.w_first;
    else if (scan.z_first)
      first = &*scan.z_first;
    if (first) {
      ev.found = true;
      ev.t0 = first->t0;
      ev.type = first->type;
      ev.family = first->family;
    }
  } catch (const NumericsError&) {
    // An overflow means the pulse is far too strong: treat as "too early".
    ev.solved = false;
  }
  return ev;
}

bool too_early(const HuntEval& ev, double target_frac) {
  if (!ev.solved) return true;
  return ev.found && ev.t0 <= target_frac * ev.horizon;
}

}  // namespace

HuntResult hunt_blowup(const RunConfig& base, double lo, double hi,
                       double target_frac, int max_iter) {
  HuntResult best;
  auto consider = [&](double amp, const HuntEval& ev) {
    ++best.evaluations;
    if (!ev.found) return;
    double target = target_frac * ev.horizon;
    if (!best.ok || std::abs(ev.t0 - target) <
                        std::abs(best.t0 - target_frac * best.horizon)) {
      best.ok = true;
      best.amplitude = amp;
      best.t0 = ev.t0;
      best.horizon = ev.horizon;
      best.type = ev.type;
      best.family = ev.family;
    }
  };

  HuntEval elo = hunt_eval(base, lo);
  consider(lo, elo);
  if (too_early(elo, target_frac)) return best;  // lo already past the target
  HuntEval ehi = hunt_eval(base, hi);
  consider(hi, ehi);
  if (!too_early(ehi, target_frac)) return best;  // no bracket; best effort

  double a = lo, b = hi;
  for (int it = 0; it < max_iter; ++it) {
    double mid = 0.5 * (a + b);
    HuntEval em = hunt_eval(base, mid);
    consider(mid, em);
    if (too_early(em, target_frac))
      b = mid;
    else
      a = mid;
  }
  return best;
}

}  // namespace vwave
