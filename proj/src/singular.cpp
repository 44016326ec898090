#include "vwave/singular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "vwave/common.hpp"
#include "vwave/physmap.hpp"

namespace vwave {

namespace {

double frac_i(const Grid& g, double X) { return (X - g.x_min) / g.h; }
double frac_j(const Grid& g, double Y) { return (Y - g.Y(0)) / g.h; }

double bilinear_of(const Grid& g, double fi, double fj,
                   double (*nodal)(const Grid&, const std::vector<double>&,
                                   std::size_t, std::size_t),
                   const std::vector<double>& f) {
  std::size_t i0 = static_cast<std::size_t>(std::max(0.0, fi));
  std::size_t j0 = static_cast<std::size_t>(std::max(0.0, fj));
  if (i0 + 1 >= g.n) i0 = g.n - 2;
  if (j0 + 1 >= g.n) j0 = g.n - 2;
  const double a = fi - double(i0);
  const double b = fj - double(j0);
  const double v00 = nodal(g, f, i0, j0);
  const double v10 = nodal(g, f, i0 + 1, j0);
  const double v01 = nodal(g, f, i0, j0 + 1);
  const double v11 = nodal(g, f, i0 + 1, j0 + 1);
  return (1.0 - a) * (1.0 - b) * v00 + a * (1.0 - b) * v10 +
         (1.0 - a) * b * v01 + a * b * v11;
}

// Crossings of one level bucketed per column.
std::map<std::size_t, std::vector<LevelCrossing>> bucket_by_column(
    const std::vector<LevelCrossing>& all, double level) {
  std::map<std::size_t, std::vector<LevelCrossing>> buckets;
  for (const auto& c : all)
    if (c.level == level) buckets[c.i].push_back(c);
  return buckets;
}

// Follow the branch through `seed` column by column, choosing per column the
// crossing nearest the running Y and stopping at gaps or Y jumps.
std::vector<LevelCrossing> walk_curve(
    const std::map<std::size_t, std::vector<LevelCrossing>>& buckets,
    const LevelCrossing& seed, const Grid& g, std::size_t max_cols) {
  std::vector<LevelCrossing> fwd, bwd;
  const auto step = [&](std::size_t i, double& y_ref, double& jump,
                        std::vector<LevelCrossing>& dst) -> bool {
    const auto it = buckets.find(i);
    if (it == buckets.end()) return false;
    const LevelCrossing* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& c : it->second) {
      const double d = std::abs(c.Y - y_ref);
      if (d < best_d) {
        best_d = d;
        best = &c;
      }
    }
    if (!best || best_d > jump) return false;
    jump = std::max(10.0 * g.h, 3.0 * best_d);
    y_ref = best->Y;
    dst.push_back(*best);
    return true;
  };

  double y = seed.Y, jump = 10.0 * g.h;
  for (std::size_t i = seed.i + 1; i < g.n && fwd.size() < max_cols; ++i)
    if (!step(i, y, jump, fwd)) break;
  y = seed.Y;
  jump = 10.0 * g.h;
  for (std::size_t i = seed.i; i-- > 0 && bwd.size() < max_cols;)
    if (!step(i, y, jump, bwd)) break;

  std::vector<LevelCrossing> chain(bwd.rbegin(), bwd.rend());
  chain.push_back(seed);
  chain.insert(chain.end(), fwd.begin(), fwd.end());
  return chain;
}

struct CurveFits {
  ParabolaFit Y, t, x;
  bool ok = false;
};

CurveFits fit_chain(const std::vector<LevelCrossing>& chain, double Xc,
                    int half_width, double h) {
  std::vector<double> X, Y, t, x;
  for (const auto& c : chain) {
    if (std::abs(c.X - Xc) <= (double(half_width) + 0.5) * h) {
      X.push_back(c.X - Xc);  // center for conditioning
      Y.push_back(c.Y);
      t.push_back(c.t);
      x.push_back(c.x);
    }
  }
  CurveFits f;
  if (X.size() < 5) return f;
  f.Y = fit_parabola(X, Y);
  f.t = fit_parabola(X, t);
  f.x = fit_parabola(X, x);
  f.ok = f.Y.ok && f.t.ok && f.x.ok;
  return f;
}

double eval_parab(const ParabolaFit& f, double s) {
  return f.c0 + f.c1 * s + f.c2 * s * s;
}

// z-curve branch X(Y) near a point, from the per-row z crossings.
ParabolaFit fit_z_branch(const Grid& g, double X0, double Y0, double z_level,
                         int half_width) {
  const auto all = z_level_crossings(g);
  std::vector<double> Y, X;
  for (const auto& c : all) {
    if (c.level != z_level) continue;
    if (std::abs(c.Y - Y0) <= (double(half_width) + 0.5) * g.h &&
        std::abs(c.X - X0) <= 10.0 * g.h) {
      Y.push_back(c.Y - Y0);
      X.push_back(c.X);
    }
  }
  ParabolaFit f;
  if (Y.size() < 5) return f;
  f = fit_parabola(Y, X);
  return f;
}

}  // namespace

double sample_field(const Grid& g, const std::vector<double>& f, double fi,
                    double fj) {
  return bilinear(g, f, fi, fj);
}
double sample_dX(const Grid& g, const std::vector<double>& f, double fi,
                 double fj) {
  return bilinear_of(g, fi, fj, &fd_X, f);
}
double sample_dY(const Grid& g, const std::vector<double>& f, double fi,
                 double fj) {
  return bilinear_of(g, fi, fj, &fd_Y, f);
}
double sample_dXX(const Grid& g, const std::vector<double>& f, double fi,
                  double fj) {
  return bilinear_of(g, fi, fj, &fd_XX, f);
}

double column_interp(const Grid& g, const std::vector<double>& f,
                     std::size_t i, double fj) {
  constexpr int P = 6;  // stencil size
  const std::size_t N = g.n - 1;
  const long j_min = long(N) - long(i);
  if (j_min > long(N) - (P - 1))  // column too short for the stencil
    return bilinear(g, f, double(i), fj);
  long j0 = long(std::floor(fj)) - (P / 2 - 1);
  if (j0 < j_min) j0 = j_min;
  if (j0 + P - 1 > long(N)) j0 = long(N) - (P - 1);
  const double s = fj - double(j0);
  double out = 0.0;
  for (int a = 0; a < P; ++a) {
    double L = 1.0;
    for (int b = 0; b < P; ++b)
      if (b != a) L *= (s - double(b)) / double(a - b);
    out += L * f[g.idx(i, std::size_t(j0 + a))];
  }
  return out;
}

std::vector<LevelCrossing> first_curve_crossings(const Grid& g,
                                                 const SingularPoint& apex) {
  const auto all = w_level_crossings(g);
  const auto buckets = bucket_by_column(all, apex.level);
  // Seed: crossing nearest the apex.
  LevelCrossing seed;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [i, v] : buckets)
    for (const auto& c : v) {
      const double d = std::hypot(c.X - apex.X0, c.Y - apex.Y0);
      if (d < best) {
        best = d;
        seed = c;
      }
    }
  if (!std::isfinite(best)) return {};
  return walk_curve(buckets, seed, g, g.n);
}

std::optional<SingularPoint> find_first_w_singularity(
    const Grid& g, const WaveSpeed& speed, const SingularSearchOptions& opt) {
  const auto all = w_level_crossings(g);
  if (all.empty()) return std::nullopt;
  const auto* cmin = &all.front();
  for (const auto& c : all)
    if (c.t < cmin->t) cmin = &c;

  const auto buckets = bucket_by_column(all, cmin->level);
  auto chain = walk_curve(buckets, *cmin, g, g.n);

  // Two centering passes (fit t(X), move to the vertex), then a final fit
  // centered at the settled position so evaluation at 0 is the vertex.
  double Xc = cmin->X;
  CurveFits fits;
  for (int pass = 0; pass < 2; ++pass) {
    fits = fit_chain(chain, Xc, opt.fit_half_width, g.h);
    if (!fits.ok) return std::nullopt;
    if (fits.t.c2 > 0.0) {
      const double lim = double(opt.fit_half_width) * g.h;
      Xc += std::clamp(parabola_vertex(fits.t), -lim, lim);
    }
  }
  fits = fit_chain(chain, Xc, opt.fit_half_width, g.h);
  if (!fits.ok) return std::nullopt;

  SingularPoint pt;
  pt.family = 'w';
  pt.level = cmin->level;
  pt.X0 = Xc;
  pt.Y0 = eval_parab(fits.Y, 0.0);
  pt.t0 = eval_parab(fits.t, 0.0);
  pt.x0 = eval_parab(fits.x, 0.0);
  pt.kappa = fits.Y.c2;

  double fi = frac_i(g, pt.X0), fj = frac_j(g, pt.Y0);
  pt.u0 = sample_field(g, g.u, fi, fj);
  pt.c0 = speed.c(pt.u0);
  pt.w_X = sample_dX(g, g.w, fi, fj);
  pt.w_XX = sample_dXX(g, g.w, fi, fj);
  pt.w_Y = sample_dY(g, g.w, fi, fj);
  pt.z0 = sample_field(g, g.z, fi, fj);
  pt.p0 = sample_field(g, g.p, fi, fj);
  pt.q0 = sample_field(g, g.q, fi, fj);
  pt.p_X = sample_dX(g, g.p, fi, fj);
  pt.z_Y = sample_dY(g, g.z, fi, fj);

  if (dist_to_odd_pi(pt.z0) < opt.type3_angle_tol) {
    pt.type = 3;
    // Refine to the intersection of the two degeneracy curves.
    const double z_level = nearest_odd_pi(pt.z0);
    for (int it = 0; it < 10; ++it) {
      const ParabolaFit zb =
          fit_z_branch(g, pt.X0, pt.Y0, z_level, opt.fit_half_width);
      if (!zb.ok) break;
      const double Xn = eval_parab(zb, 0.0);
      const CurveFits wf = fit_chain(chain, Xn, opt.fit_half_width, g.h);
      if (!wf.ok) break;
      pt.X0 = Xn;
      pt.Y0 = eval_parab(wf.Y, 0.0);
    }
    fi = frac_i(g, pt.X0);
    fj = frac_j(g, pt.Y0);
    pt.u0 = sample_field(g, g.u, fi, fj);
    pt.c0 = speed.c(pt.u0);
    pt.t0 = sample_field(g, g.t, fi, fj);
    pt.x0 = sample_field(g, g.x, fi, fj);
    pt.w_X = sample_dX(g, g.w, fi, fj);
    pt.w_XX = sample_dXX(g, g.w, fi, fj);
    pt.w_Y = sample_dY(g, g.w, fi, fj);
    pt.z0 = sample_field(g, g.z, fi, fj);
    pt.p0 = sample_field(g, g.p, fi, fj);
    pt.q0 = sample_field(g, g.q, fi, fj);
    pt.z_Y = sample_dY(g, g.z, fi, fj);
    const double floor_wx = 10.0 * g.h * g.h;
    pt.genericity_ok = std::abs(pt.w_X) > floor_wx &&
                       std::abs(pt.z_Y) > floor_wx &&
                       std::abs(speed.dc(pt.u0)) > 1e-8;
  } else {
    pt.type = 2;
    pt.genericity_ok = std::abs(pt.w_XX) > opt.genericity_wXX &&
                       pt.w_Y > 0.0 &&
                       std::abs(speed.dc(pt.u0)) > 1e-8;
  }
  return pt;
}

SingularScan find_first_singularities(const Grid& g, const WaveSpeed& speed,
                                      const SingularSearchOptions& opt) {
  SingularScan scan;
  scan.w_first = find_first_w_singularity(g, speed, opt);
  const Grid sw = swapped_grid(g);
  scan.z_first = find_first_w_singularity(sw, speed, opt);
  if (scan.z_first) scan.z_first->family = 'z';
  return scan;
}

std::optional<SingularPoint> find_type3_crossing(
    const Grid& g, const WaveSpeed& speed, const SingularSearchOptions& opt) {
  const auto wr = w_row_level_crossings(g);
  const auto zc = z_col_level_crossings(g);
  if (wr.empty() || zc.empty()) return std::nullopt;

  // z crossings ordered by X for windowed candidate lookups.
  std::vector<std::size_t> order(zc.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return zc[a].X < zc[b].X; });
  std::vector<double> zx(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) zx[k] = zc[order[k]].X;

  // Earliest pair of co-located crossings seeds the refinement.
  const double r = 2.0 * g.h;
  const LevelCrossing* bw = nullptr;
  const LevelCrossing* bz = nullptr;
  double bt = std::numeric_limits<double>::infinity();
  for (const auto& cw : wr) {
    const auto lo =
        std::lower_bound(zx.begin(), zx.end(), cw.X - r) - zx.begin();
    const auto hi =
        std::upper_bound(zx.begin(), zx.end(), cw.X + r) - zx.begin();
    for (auto k = lo; k < hi; ++k) {
      const auto& cz = zc[order[static_cast<std::size_t>(k)]];
      if (std::abs(cz.Y - cw.Y) > r) continue;
      const double t = 0.5 * (cw.t + cz.t);
      if (t < bt) {
        bt = t;
        bw = &cw;
        bz = &cz;
      }
    }
  }
  if (!bw) return std::nullopt;

  // Alternate the two single-valued branch fits until the point settles:
  // rows give X(Y) of the w-curve, columns give Y(X) of the z-curve.
  const double w_level = bw->level, z_level = bz->level;
  double X0 = bw->X, Y0 = bz->Y;
  const double win = (double(opt.fit_half_width) + 0.5) * g.h;
  for (int it = 0; it < 12; ++it) {
    std::vector<double> wy, wx;
    for (const auto& c : wr) {
      if (c.level != w_level) continue;
      if (std::abs(c.Y - Y0) <= win && std::abs(c.X - X0) <= 10.0 * g.h) {
        wy.push_back(c.Y - Y0);
        wx.push_back(c.X);
      }
    }
    if (wy.size() < 5) break;
    const ParabolaFit wf = fit_parabola(wy, wx);
    if (!wf.ok) break;
    const double Xn = eval_parab(wf, 0.0);

    std::vector<double> zxs, zys;
    for (const auto& c : zc) {
      if (c.level != z_level) continue;
      if (std::abs(c.X - Xn) <= win && std::abs(c.Y - Y0) <= 10.0 * g.h) {
        zxs.push_back(c.X - Xn);
        zys.push_back(c.Y);
      }
    }
    if (zxs.size() < 5) break;
    const ParabolaFit zf = fit_parabola(zxs, zys);
    if (!zf.ok) break;
    const double Yn = eval_parab(zf, 0.0);

    const double move = std::hypot(Xn - X0, Yn - Y0);
    X0 = Xn;
    Y0 = Yn;
    if (move < 1e-4 * g.h) break;
  }

  SingularPoint pt;
  pt.family = 'w';
  pt.type = 3;
  pt.level = w_level;
  pt.X0 = X0;
  pt.Y0 = Y0;
  const double fi = frac_i(g, X0), fj = frac_j(g, Y0);
  pt.u0 = sample_field(g, g.u, fi, fj);
  pt.c0 = speed.c(pt.u0);
  pt.t0 = sample_field(g, g.t, fi, fj);
  pt.x0 = sample_field(g, g.x, fi, fj);
  pt.w_X = sample_dX(g, g.w, fi, fj);
  pt.w_XX = sample_dXX(g, g.w, fi, fj);
  pt.w_Y = sample_dY(g, g.w, fi, fj);
  pt.z0 = sample_field(g, g.z, fi, fj);
  pt.p0 = sample_field(g, g.p, fi, fj);
  pt.q0 = sample_field(g, g.q, fi, fj);
  pt.p_X = sample_dX(g, g.p, fi, fj);
  pt.z_Y = sample_dY(g, g.z, fi, fj);
  const double floor_wx = 10.0 * g.h * g.h;
  pt.genericity_ok = std::abs(pt.w_X) > floor_wx &&
                     std::abs(pt.z_Y) > floor_wx &&
                     std::abs(speed.dc(pt.u0)) > 1e-8;
  return pt;
}

std::optional<SingularPoint> type1_point_on_curve(
    const Grid& g, const WaveSpeed& speed, const SingularPoint& apex,
    double dX, double w_x_floor, const SingularSearchOptions& opt) {
  const auto chain = first_curve_crossings(g, apex);
  if (chain.size() < 5) return std::nullopt;
  const double Xt = apex.X0 + dX;
  const CurveFits fits = fit_chain(chain, Xt, opt.fit_half_width, g.h);
  if (!fits.ok) return std::nullopt;

  SingularPoint pt;
  pt.family = apex.family;
  pt.type = 1;
  pt.level = apex.level;
  pt.X0 = Xt;
  pt.Y0 = eval_parab(fits.Y, 0.0);
  pt.t0 = eval_parab(fits.t, 0.0);
  pt.x0 = eval_parab(fits.x, 0.0);
  pt.kappa = fits.Y.c2;
  const double fi = frac_i(g, pt.X0), fj = frac_j(g, pt.Y0);
  pt.u0 = sample_field(g, g.u, fi, fj);
  pt.c0 = speed.c(pt.u0);
  pt.w_X = sample_dX(g, g.w, fi, fj);
  pt.w_XX = sample_dXX(g, g.w, fi, fj);
  pt.w_Y = sample_dY(g, g.w, fi, fj);
  pt.z0 = sample_field(g, g.z, fi, fj);
  pt.p0 = sample_field(g, g.p, fi, fj);
  pt.q0 = sample_field(g, g.q, fi, fj);
  pt.p_X = sample_dX(g, g.p, fi, fj);
  pt.z_Y = sample_dY(g, g.z, fi, fj);
  const double floor_wx = std::max(10.0 * g.h * g.h, w_x_floor);
  pt.genericity_ok = std::abs(pt.w_X) > floor_wx &&
                     dist_to_odd_pi(pt.z0) > opt.type3_angle_tol;
  return pt;
}

PlateauShape w_plateau_shape(const Grid& g, int fit_half_width) {
  PlateauShape sh;
  if (!g.dissipative || g.freeze_frac_w.empty()) return sh;
  const std::size_t N = g.n - 1;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = N - i; j <= N; ++j) {
      if (g.w_frozen(i, j)) {
        const double lam = g.freeze_frac_w[g.idx(i, j)];
        if (std::isfinite(lam)) {
          sh.Xs.push_back(g.X(i));
          sh.Ys.push_back(g.Y(j - 1) + lam * g.h);
        }
        break;  // first halted row of the column
      }
    }
  }
  if (sh.Xs.size() < 5) return sh;
  std::size_t m = 0;
  for (std::size_t k = 1; k < sh.Ys.size(); ++k)
    if (sh.Ys[k] < sh.Ys[m]) m = k;
  double Xc = sh.Xs[m];
  ParabolaFit fit;
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<double> X, Y;
    for (std::size_t k = 0; k < sh.Xs.size(); ++k)
      if (std::abs(sh.Xs[k] - Xc) <= (double(fit_half_width) + 0.5) * g.h) {
        X.push_back(sh.Xs[k] - Xc);
        Y.push_back(sh.Ys[k]);
      }
    if (X.size() < 5) return sh;
    fit = fit_parabola(X, Y);
    if (!fit.ok || fit.c2 <= 0.0) return sh;
    const double lim = double(fit_half_width) * g.h;
    Xc += std::clamp(parabola_vertex(fit), -lim, lim);
  }
  sh.X0 = Xc;
  // Evaluate the last fit at its (re-centered) vertex.
  const double s = std::clamp(parabola_vertex(fit), -double(fit_half_width) * g.h,
                              double(fit_half_width) * g.h);
  sh.Y0 = eval_parab(fit, s);
  sh.kappa = fit.c2;
  sh.ok = true;
  return sh;
}

std::vector<std::uint8_t> clean_mask(const Grid& g) {
  const std::size_t N = g.n - 1;
  std::vector<std::uint8_t> clean(g.n * g.n, 0);
  for (std::size_t i = 0; i < g.n; ++i) clean[g.idx(i, N - i)] = 1;
  for (std::size_t d = N + 1; d <= 2 * N; ++d)
    for (std::size_t i = d - N; i <= N; ++i) {
      const std::size_t j = d - i;
      const bool halted = g.flags[g.idx(i, j)] != 0;
      clean[g.idx(i, j)] = (!halted && clean[g.idx(i - 1, j)] &&
                            clean[g.idx(i, j - 1)])
                               ? 1
                               : 0;
    }
  return clean;
}

}  // namespace vwave
