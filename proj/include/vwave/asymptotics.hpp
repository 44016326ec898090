#pragma once

// Closed-form local models at blowup points, and measurement routines that
// confront them with computed solutions.
//
// Near a singular point the map inverts as
//   (w_X^2 p0 / 12)(X - X0)^3 = c0 (t - t0) + (x - x0) =: s+
//   ((1+cos z0)/2) q0 (Y - Y0) = c0 (t - t0) - (x - x0) =: s-
// so expansions in (X - X0, Y - Y0) become fractional power laws in the
// characteristic coordinates s+ and s-.

#include <span>
#include <vector>

#include "vwave/grid.hpp"
#include "vwave/levelset.hpp"
#include "vwave/singular.hpp"
#include "vwave/wavespeed.hpp"

namespace vwave {

struct PowerFit {
  double exponent = 0.0;
  double coef = 0.0;  // multiplicative constant, y ~ coef * s^exponent
  double r2 = 0.0;
  int n = 0;
};

// Log-log least squares over the pairs with s > 0 and y > 0.
PowerFit fit_power_law(std::span<const double> s, std::span<const double> y);

// ---------------- predictions ----------------

struct Type1Prediction {
  double amplitude = 0.0;   // A in u = u0 - A |s+|^(2/3) + ...  (sign of w_X)
  double slope_minus = 0.0;  // coefficient of s-
  double slope_plus = 0.0;   // coefficient of s+
  double phi_d1 = 0.0;       // singular curve x = phi(t): phi'(t0)
  double phi_d2 = 0.0;       // phi''(t0)
  double envelope_coef = 0.0;  // branch gap delta(t) ~ coef (t - t0)^3
};
Type1Prediction predict_type1(const SingularPoint& pt, const WaveSpeed& speed);

struct Type2Prediction {
  double cusp_amp = 0.0;  // B in u = u0 - B sgn(s+) |s+|^(3/5) on {t = t0}
  double kappa = 0.0;     // level curve Y - Y0 = kappa (X - X0)^2
  double alpha = 0.0;     // 1 / t_Y at the vertex
  double beta_tilde = 0.0;  // branch-value separation ~ 2 beta (tau-t0)^(5/2)
};
Type2Prediction predict_type2(const SingularPoint& pt, const WaveSpeed& speed);

struct Type3Prediction {
  double amp_plus = 0.0;   // a1 in u = u0 + a1 |s+|^(2/3) + a2 |s-|^(2/3)
  double amp_minus = 0.0;  // a2
};
Type3Prediction predict_type3(const SingularPoint& pt, const WaveSpeed& speed);

struct DissipativePrediction {
  double kappa = 0.0;    // halt-boundary curvature used below
  double z5_coef = 0.0;  // (halted z - free z) ~ z5 (Y - Y0)^(1/2) at X = X0
  double q5_coef = 0.0;  // same for q
  double eta0 = 0.0;     // (halted u - free u) ~ eta0 (Y - Y0)^(3/2)
};
DissipativePrediction predict_dissipative(const SingularPoint& apex,
                                          const WaveSpeed& speed,
                                          double kappa);

// ---------------- measurements ----------------

// Points of the transversal line {s- = 0} through pt, one per column at
// offsets k = k_min..k_max on the given side (+1: X > X0, -1: X < X0).
struct TransversalSample {
  double s_plus = 0.0;
  double u = 0.0;
  double X = 0.0, Y = 0.0;
};
std::vector<TransversalSample> sample_transversal(const Grid& g,
                                                  const SingularPoint& pt,
                                                  int side, int k_min,
                                                  int k_max);

// Power-law fit of |u - u0 - lin * s+| against |s+| over the window
// |s+| in [lo, hi]; lin subtracts a known linear term.
PowerFit fit_cusp(std::span<const TransversalSample> samples, double u0,
                  double lin, double lo, double hi);

// phi' and phi'' of the physical singular curve at the chain position Xc,
// from centered parabola fits of x(X) and t(X).
struct CurveMotion {
  double phi_d1 = 0.0, phi_d2 = 0.0;
  bool ok = false;
};
CurveMotion measure_curve_motion(const std::vector<LevelCrossing>& chain,
                                 double Xc, int half_width, double h);

// For each tau: the two points where the first curve reaches time tau
// (one per side of the apex), located by linear interpolation in t along
// the chain; u is sampled on the grid at the interpolated location.
struct BranchCut {
  double tau = 0.0;
  int n_cross = 0;              // sign changes of t - tau along the chain
  double X_left = 0.0, X_right = 0.0;
  double x_left = 0.0, x_right = 0.0;
  double u_left = 0.0, u_right = 0.0;
  bool ok = false;              // exactly one crossing on each side
};
BranchCut cut_curve_at_time(const Grid& g,
                            const std::vector<LevelCrossing>& chain,
                            const SingularPoint& apex, double tau);

// Node-exact differences (halted minus free) along the column through X0,
// for rows with Y - Y0 in [lo, hi].
struct ColumnDiffSeries {
  std::vector<double> dY;
  std::vector<double> dz, dq, du, dx, dt;
};
ColumnDiffSeries column_differences(const Grid& free_run, const Grid& halted,
                                    double X0, double Y0, double lo,
                                    double hi);

// sup_x |u_free - u_halted| over the common x-range of the tau isochrones.
double sup_profile_difference(const Grid& free_run, const Grid& halted,
                              double tau);

// Along one column of a halted run: offsets from the base node on the row
// nearest Y0 (whose image is the forward characteristic through the blowup
// point), collected until the column reaches the halt boundary.
struct WeakSeries {
  std::vector<double> dt;    // t - t_base (> 0)
  std::vector<double> dtan;  // |tan(z/2) - tan(z_base/2)|
  std::vector<double> du;    // |u - u_base|
  bool ok = false;
};
WeakSeries weak_singularity_series(const Grid& halted, std::size_t i,
                                   double Y0, double lo, double hi);

// Gap between a backward characteristic (grid column through pt) and the
// singular curve it is tangent to, at equal times: the column's nodal rows
// against a local parabola through the chain, for t - t_tangency in
// [lo, hi].  The curve is an envelope of characteristics, so the gap opens
// like (t - t_tangency)^3.
struct EnvelopeGap {
  std::vector<double> dt;   // t - t_tangency
  std::vector<double> gap;  // |x_column(t) - x_curve(t)|
  bool ok = false;
};
EnvelopeGap envelope_gap(const Grid& g,
                         const std::vector<LevelCrossing>& chain,
                         const SingularPoint& apex, const SingularPoint& pt,
                         double lo, double hi);

}  // namespace vwave
