#include "vwave/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "vwave/common.hpp"
#include "vwave/physmap.hpp"

namespace vwave {

// ---- generic least-squares helpers declared in common.hpp ----

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit f;
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return f;
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sx += x[k];
    sy += y[k];
  }
  const double mx = sx / double(n), my = sy / double(n);
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = x[k] - mx, dy = y[k] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  f.n = int(n);
  return f;
}

ParabolaFit fit_parabola(std::span<const double> x, std::span<const double> y) {
  ParabolaFit f;
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 3) return f;
  // Normal equations for [1, x, x^2] about the mean for conditioning.
  double mx = 0;
  for (std::size_t k = 0; k < n; ++k) mx += x[k];
  mx /= double(n);
  double s0 = double(n), s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  double b0 = 0, b1 = 0, b2 = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = x[k] - mx;
    const double t2 = t * t;
    s1 += t;
    s2 += t2;
    s3 += t2 * t;
    s4 += t2 * t2;
    b0 += y[k];
    b1 += y[k] * t;
    b2 += y[k] * t2;
  }
  // Solve the symmetric 3x3 system by Cramer's rule.
  const double det = s0 * (s2 * s4 - s3 * s3) - s1 * (s1 * s4 - s3 * s2) +
                     s2 * (s1 * s3 - s2 * s2);
  if (std::abs(det) < 1e-300) return f;
  const double a0 = (b0 * (s2 * s4 - s3 * s3) - s1 * (b1 * s4 - b2 * s3) +
                     s2 * (b1 * s3 - b2 * s2)) /
                    det;
  const double a1 = (s0 * (b1 * s4 - b2 * s3) - b0 * (s1 * s4 - s3 * s2) +
                     s2 * (s1 * b2 - s2 * b1)) /
                    det;
  const double a2 = (s0 * (s2 * b2 - s3 * b1) - s1 * (s1 * b2 - s3 * b0) +
                     s2 * (s1 * b1 - s2 * b0)) /
                    det;
  // Undo the centering: y = a0 + a1 (x-mx) + a2 (x-mx)^2.
  f.c2 = a2;
  f.c1 = a1 - 2.0 * a2 * mx;
  f.c0 = a0 - a1 * mx + a2 * mx * mx;
  f.ok = true;
  return f;
}

PowerFit fit_power_law(std::span<const double> s, std::span<const double> y) {
  std::vector<double> lx, ly;
  const std::size_t n = std::min(s.size(), y.size());
  for (std::size_t k = 0; k < n; ++k)
    if (s[k] > 0.0 && y[k] > 0.0) {
      lx.push_back(std::log(s[k]));
      ly.push_back(std::log(y[k]));
    }
  PowerFit pf;
  const LineFit lf = fit_line(lx, ly);
  pf.exponent = lf.slope;
  pf.coef = std::exp(lf.intercept);
  pf.r2 = lf.r2;
  pf.n = lf.n;
  return pf;
}

// ---- predictions ----

Type1Prediction predict_type1(const SingularPoint& pt,
                              const WaveSpeed& speed) {
  Type1Prediction pr;
  const double c0 = pt.c0;
  pr.amplitude = std::cbrt(9.0 * pt.p0 / (32.0 * pt.w_X)) / c0;
  pr.slope_minus = std::sin(pt.z0) / (2.0 * c0 * (1.0 + std::cos(pt.z0)));
  // Linear-in-s+ coefficient along the transversal: 2 u_XXX / (w_X^2 p0)
  // with u_XXX = -(w_XX p0 + 2 w_X p_X) / (4 c0).
  pr.slope_plus = -pt.w_XX / (2.0 * c0 * pt.w_X * pt.w_X) -
                  pt.p_X / (c0 * pt.w_X * pt.p0);
  pr.phi_d1 = -c0;
  pr.phi_d2 = -speed.dc(pt.u0) * std::sin(pt.z0) / (1.0 + std::cos(pt.z0));
  const double e = speed.dc(pt.u0) * pr.amplitude / 3.0;
  pr.envelope_coef = e * e * e;
  return pr;
}

namespace {
double odd_root5(double v) {
  return std::copysign(std::pow(std::abs(v), 0.2), v);
}
}  // namespace

Type2Prediction predict_type2(const SingularPoint& pt,
                              const WaveSpeed& speed) {
  (void)speed;
  Type2Prediction pr;
  pr.cusp_amp =
      odd_root5(512000.0 * pt.p0 * pt.p0 / pt.w_XX) / (24.0 * pt.c0);
  pr.kappa = -pt.w_XX / (2.0 * pt.w_Y);
  pr.alpha = 4.0 * pt.c0 / ((1.0 + std::cos(pt.z0)) * pt.q0);
  const double k = pr.kappa;
  // Coefficient of the branch x-separation: odd fifth-order terms of
  // x + c0 t on the level curve Y - Y0 = k (X - X0)^2, including the mixed
  // X^3 (Y - Y0) monomial whose coefficient is w_Y w_XX p0 / 4.
  pr.beta_tilde = (pt.w_XX * pt.w_XX / 80.0 +
                   pt.w_Y * pt.w_Y * k * k / 4.0 +
                   pt.w_Y * pt.w_XX * k / 12.0) *
                  std::pow(pr.alpha / k, 2.5) * pt.p0;
  return pr;
}

Type3Prediction predict_type3(const SingularPoint& pt,
                              const WaveSpeed& speed) {
  (void)speed;
  Type3Prediction pr;
  pr.amp_plus = -std::cbrt(144.0 * pt.p0 / pt.w_X) / (8.0 * pt.c0);
  pr.amp_minus = -std::cbrt(144.0 * pt.q0 / pt.z_Y) / (8.0 * pt.c0);
  return pr;
}

DissipativePrediction predict_dissipative(const SingularPoint& apex,
                                          const WaveSpeed& speed,
                                          double kappa) {
  DissipativePrediction pr;
  pr.kappa = kappa;
  const double c0 = apex.c0;
  const double dc = speed.dc(apex.u0);
  const double cz = std::cos(apex.z0), sz = std::sin(apex.z0);
  const double rk = std::sqrt(kappa);
  pr.z5_coef = -dc * (1.0 + cz) * apex.p0 / (4.0 * c0 * c0 * rk);
  pr.q5_coef = -dc * sz * apex.p0 * apex.q0 / (4.0 * c0 * c0 * rk);
  pr.eta0 = -dc * (1.0 + cz) * apex.p0 * apex.q0 / (24.0 * c0 * c0 * c0 * rk);
  return pr;
}

// ---- measurements ----

std::vector<TransversalSample> sample_transversal(const Grid& g,
                                                  const SingularPoint& pt,
                                                  int side, int k_min,
                                                  int k_max) {
  std::vector<TransversalSample> out;
  const std::size_t N = g.n - 1;
  const double fi0 = (pt.X0 - g.x_min) / g.h;
  const long i0 = std::lround(fi0);
  for (int k = k_min; k <= k_max; ++k) {
    const long i = i0 + (side >= 0 ? k : -k);
    if (i < 0 || std::size_t(i) > N) continue;
    const std::size_t ii = std::size_t(i);
    // G(fj) = c0 (t - t0) - (x - x0) is strictly increasing along a column
    // (dG/dY = (c0 + c) t_Y > 0); bracket it on node rows, then bisect.
    const std::size_t j_lo = N - ii;
    const auto G = [&](double fj) {
      return pt.c0 * (column_interp(g, g.t, ii, fj) - pt.t0) -
             (column_interp(g, g.x, ii, fj) - pt.x0);
    };
    double a = double(j_lo), b = -1.0;
    if (G(a) > 0.0) continue;  // line exits below the data row
    for (std::size_t j = j_lo + 1; j <= N; ++j)
      if (G(double(j)) >= 0.0) {
        b = double(j);
        a = double(j - 1);
        break;
      }
    if (b < 0.0) continue;  // line exits through the top
    for (int it = 0; it < 60; ++it) {
      const double m = 0.5 * (a + b);
      (G(m) >= 0.0 ? b : a) = m;
    }
    const double fj = 0.5 * (a + b);
    TransversalSample smp;
    smp.X = g.X(ii);
    smp.Y = g.Y(0) + fj * g.h;
    smp.u = column_interp(g, g.u, ii, fj);
    smp.s_plus = pt.c0 * (column_interp(g, g.t, ii, fj) - pt.t0) +
                 (column_interp(g, g.x, ii, fj) - pt.x0);
    out.push_back(smp);
  }
  return out;
}

PowerFit fit_cusp(std::span<const TransversalSample> samples, double u0,
                  double lin, double lo, double hi) {
  std::vector<double> s, y;
  for (const auto& smp : samples) {
    const double a = std::abs(smp.s_plus);
    if (a < lo || a > hi) continue;
    s.push_back(a);
    y.push_back(std::abs(smp.u - u0 - lin * smp.s_plus));
  }
  return fit_power_law(s, y);
}

CurveMotion measure_curve_motion(const std::vector<LevelCrossing>& chain,
                                 double Xc, int half_width, double h) {
  std::vector<double> X, t, x;
  for (const auto& c : chain)
    if (std::abs(c.X - Xc) <= (double(half_width) + 0.5) * h) {
      X.push_back(c.X - Xc);
      t.push_back(c.t);
      x.push_back(c.x);
    }
  CurveMotion cm;
  if (X.size() < 5) return cm;
  const ParabolaFit ft = fit_parabola(X, t);
  const ParabolaFit fx = fit_parabola(X, x);
  if (!ft.ok || !fx.ok || ft.c1 == 0.0) return cm;
  const double t1 = ft.c1, t2 = 2.0 * ft.c2;
  const double x1 = fx.c1, x2 = 2.0 * fx.c2;
  cm.phi_d1 = x1 / t1;
  cm.phi_d2 = (x2 * t1 - x1 * t2) / (t1 * t1 * t1);
  cm.ok = true;
  return cm;
}

BranchCut cut_curve_at_time(const Grid& g,
                            const std::vector<LevelCrossing>& chain,
                            const SingularPoint& apex, double tau) {
  BranchCut cut;
  cut.tau = tau;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const auto& a = chain[k];
    const auto& b = chain[k + 1];
    const double fa = a.t - tau, fb = b.t - tau;
    if (fa == 0.0 && fb == 0.0) continue;
    if ((fa <= 0.0 && fb > 0.0) || (fa > 0.0 && fb <= 0.0)) {
      ++cut.n_cross;
      const double fr = fa / (fa - fb);
      const double X = a.X + fr * (b.X - a.X);
      const double Y = a.Y + fr * (b.Y - a.Y);
      const double x = a.x + fr * (b.x - a.x);
      const double fi = (X - g.x_min) / g.h;
      const double fj = (Y - g.Y(0)) / g.h;
      const double u = bilinear(g, g.u, fi, fj);
      if (X < apex.X0) {
        cut.X_left = X;
        cut.x_left = x;
        cut.u_left = u;
      } else {
        cut.X_right = X;
        cut.x_right = x;
        cut.u_right = u;
      }
    }
  }
  cut.ok = cut.n_cross == 2 && cut.X_left != 0.0 && cut.X_right != 0.0 &&
           cut.X_left < apex.X0 && cut.X_right > apex.X0;
  return cut;
}

ColumnDiffSeries column_differences(const Grid& free_run, const Grid& halted,
                                    double X0, double Y0, double lo,
                                    double hi) {
  ColumnDiffSeries se;
  const std::size_t N = free_run.n - 1;
  const long i = std::lround((X0 - free_run.x_min) / free_run.h);
  if (i < 0 || std::size_t(i) > N) return se;
  const std::size_t ii = std::size_t(i);
  for (std::size_t j = N - ii; j <= N; ++j) {
    const double dY = free_run.Y(j) - Y0;
    if (dY < lo || dY > hi) continue;
    const std::size_t k = free_run.idx(ii, j);
    se.dY.push_back(dY);
    se.dz.push_back(halted.z[k] - free_run.z[k]);
    se.dq.push_back(halted.q[k] - free_run.q[k]);
    se.du.push_back(halted.u[k] - free_run.u[k]);
    se.dx.push_back(halted.x[k] - free_run.x[k]);
    se.dt.push_back(halted.t[k] - free_run.t[k]);
  }
  return se;
}

double sup_profile_difference(const Grid& free_run, const Grid& halted,
                              double tau) {
  const auto iso_f = extract_isochrone(free_run, tau);
  const auto iso_h = extract_isochrone(halted, tau);
  if (iso_f.size() < 2 || iso_h.size() < 2) return 0.0;
  // u(x) of the halted run, sampled at the free run's x positions (both
  // profiles are nondecreasing in x along the isochrone).
  double sup = 0.0;
  std::size_t k = 0;
  for (const auto& pf : iso_f) {
    const double x = pf.x;
    if (x < iso_h.front().x || x > iso_h.back().x) continue;
    while (k + 2 < iso_h.size() && iso_h[k + 1].x <= x) ++k;
    const double xa = iso_h[k].x, xb = iso_h[k + 1].x;
    double uh;
    if (xb > xa) {
      const double fr = std::clamp((x - xa) / (xb - xa), 0.0, 1.0);
      uh = iso_h[k].u + fr * (iso_h[k + 1].u - iso_h[k].u);
    } else {
      uh = iso_h[k].u;
    }
    sup = std::max(sup, std::abs(pf.u - uh));
  }
  return sup;
}

WeakSeries weak_singularity_series(const Grid& halted, std::size_t i,
                                   double Y0, double lo, double hi) {
  WeakSeries se;
  const std::size_t N = halted.n - 1;
  if (!halted.dissipative || i > N) return se;
  // Base node: the row nearest Y0.  The row {Y = Y0} maps to the forward
  // characteristic through the blowup point, and the series is valid from
  // there up to the halt boundary of the column.
  const long jb_l = std::lround((Y0 - halted.Y(0)) / halted.h);
  if (jb_l < long(N - i) || jb_l >= long(N)) return se;
  const std::size_t jb = std::size_t(jb_l);
  const std::size_t k0 = halted.idx(i, jb);
  if (halted.w_frozen(i, jb)) return se;
  const double t0 = halted.t[k0];
  const double u0 = halted.u[k0];
  const double tan0 = std::tan(0.5 * halted.z[k0]);
  for (std::size_t j = jb + 1; j <= N; ++j) {
    if (halted.w_frozen(i, j)) break;  // series valid below the halt only
    const std::size_t k = halted.idx(i, j);
    const double dt = halted.t[k] - t0;
    if (dt < lo || dt > hi) continue;
    se.dt.push_back(dt);
    se.dtan.push_back(std::abs(std::tan(0.5 * halted.z[k]) - tan0));
    se.du.push_back(std::abs(halted.u[k] - u0));
  }
  se.ok = se.dt.size() >= 4;
  return se;
}

EnvelopeGap envelope_gap(const Grid& g,
                         const std::vector<LevelCrossing>& chain,
                         const SingularPoint& apex, const SingularPoint& pt,
                         double lo, double hi) {
  EnvelopeGap eg;
  const std::size_t N = g.n - 1;
  const long i_l = std::lround((pt.X0 - g.x_min) / g.h);
  if (i_l < 0 || i_l > long(N)) return eg;
  const std::size_t i1 = std::size_t(i_l);
  // Re-solve each needed chain crossing with the quintic column
  // interpolation: the stored chain uses linear edge interpolation, whose
  // O(h^2) wobble would mask gaps of a few 1e-6 near the tangency.
  constexpr int P = 6;  // curve interpolation stencil size
  const auto refine = [&g](const LevelCrossing& c, double& t_out,
                           double& x_out) {
    double a = double(c.j), b = std::min(double(c.j) + 1.0, double(g.n - 1));
    double wa = column_interp(g, g.w, c.i, a) - c.level;
    const double wb = column_interp(g, g.w, c.i, b) - c.level;
    if (wa == 0.0) b = a;
    if (!(wa < 0.0) == !(wb < 0.0) && wa != 0.0) {
      // The stencil disagrees with the linear bracket; keep stored values.
      t_out = c.t;
      x_out = c.x;
      return;
    }
    for (int it = 0; it < 48 && b - a > 1e-13; ++it) {
      const double m = 0.5 * (a + b);
      const double wm = column_interp(g, g.w, c.i, m) - c.level;
      if ((wm < 0.0) == (wa < 0.0)) {
        a = m;
        wa = wm;
      } else {
        b = m;
      }
    }
    const double fj = 0.5 * (a + b);
    t_out = column_interp(g, g.t, c.i, fj);
    x_out = column_interp(g, g.x, c.i, fj);
  };
  // Tangency time: where this column crosses the curve.
  double t1 = 0.0;
  bool found = false;
  // The branch of the curve containing the tangency, as x(t).
  std::vector<double> tc, xc;
  const bool right = pt.X0 >= apex.X0;
  for (const auto& c : chain) {
    if (c.level != apex.level) continue;
    if (c.i == i1 && !found) {
      double xt = 0.0;
      refine(c, t1, xt);
      found = true;
    }
    if (right ? c.X >= apex.X0 : c.X <= apex.X0) {
      double tr = 0.0, xr = 0.0;
      refine(c, tr, xr);
      tc.push_back(tr);
      xc.push_back(xr);
    }
  }
  if (!found || tc.size() < 3) return eg;
  for (std::size_t j = N - i1; j <= N; ++j) {
    const std::size_t id = g.idx(i1, j);
    const double ta = g.t[id];
    const double dt = ta - t1;
    if (dt < lo || dt > hi) continue;
    // Interpolation of the curve position x(ta): the curve has finite
    // curvature in (t, x), so a local Lagrange stencil through several chain
    // points removes the secant error that would mask small gaps.
    std::size_t k = 0;
    bool ok = false;
    for (; k + 1 < tc.size(); ++k) {
      const double a = tc[k], b = tc[k + 1];
      if ((a <= ta && ta <= b) || (b <= ta && ta <= a)) {
        ok = true;
        break;
      }
    }
    if (!ok || tc.size() < std::size_t(P)) continue;
    std::size_t m = (k + 1 >= std::size_t(P / 2)) ? k + 1 - std::size_t(P / 2)
                                                  : 0;
    if (m + P - 1 >= tc.size()) m = tc.size() - std::size_t(P);
    double phi = 0.0;
    bool degenerate = false;
    for (int a = 0; a < P && !degenerate; ++a) {
      double L = 1.0;
      for (int b = 0; b < P; ++b) {
        if (b == a) continue;
        const double d = tc[m + a] - tc[m + b];
        if (d == 0.0) {
          degenerate = true;
          break;
        }
        L *= (ta - tc[m + b]) / d;
      }
      phi += L * xc[m + a];
    }
    if (degenerate) continue;
    eg.dt.push_back(dt);
    eg.gap.push_back(std::abs(g.x[id] - phi));
  }
  eg.ok = eg.dt.size() >= 5;
  return eg;
}

}  // namespace vwave
