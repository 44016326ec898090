#pragma once

// Location and classification of gradient blowup points.
//
// The physical gradient u_x = (tan(w/2) - tan(z/2))/(2c) blows up exactly
// where an angle reaches an odd multiple of pi.  On the curve {w = level},
// t has a strict minimum at the first blowup point of the w family; there
// t_X = 0 automatically, and dt/dX = -t_Y w_X / w_Y along the curve, so the
// minimum forces either w_X = 0 (a vertex point: type 2) or t_Y = 0, i.e.
// z at its own odd multiple (a two-family point: type 3).  Generic points
// of the curve away from the minimum have w_X != 0 (type 1) and describe
// the singular curve x = phi(t) after onset.
//
// All analyses are written for the w family; z-family blowups are analyzed
// by running the same code on the swapped grid (see physmap swapped_grid).

#include <cstdint>
#include <optional>
#include <vector>

#include "vwave/grid.hpp"
#include "vwave/levelset.hpp"
#include "vwave/wavespeed.hpp"

namespace vwave {

struct SingularPoint {
  char family = 'w';  // 'w': frame of the given grid; 'z': frame of its swap
  int type = 0;       // 1, 2 or 3
  double level = 0.0;            // odd multiple of pi reached by w
  double X0 = 0.0, Y0 = 0.0;     // characteristic-plane location
  double t0 = 0.0, x0 = 0.0;     // physical location
  double u0 = 0.0, c0 = 0.0;     // wave state and speed there
  double w_X = 0.0, w_XX = 0.0, w_Y = 0.0;  // degenerate-angle derivatives
  double z0 = 0.0, p0 = 0.0, q0 = 0.0;      // companion fields at the point
  double p_X = 0.0;              // weight gradient (enters cusp linear term)
  double z_Y = 0.0;              // companion-angle Y-derivative (type 3)
  double kappa = 0.0;            // level curve Y - Y0 = kappa (X - X0)^2
  bool genericity_ok = true;     // nondegeneracy thresholds satisfied
};

struct SingularSearchOptions {
  int fit_half_width = 8;        // columns on each side of the apex fits
  double type3_angle_tol = 0.3;  // dist of z to odd pi that flags type 3
  double genericity_wXX = 0.1;   // smallest |w_XX| accepted at a vertex
};

// First blowup of the w family: minimum-t crossing of {w = odd pi},
// refined by parabola fits along the curve, classified as type 2 or 3.
// Empty if w never reaches an odd multiple of pi on the grid.
std::optional<SingularPoint> find_first_w_singularity(
    const Grid& g, const WaveSpeed& speed,
    const SingularSearchOptions& opt = {});

struct SingularScan {
  std::optional<SingularPoint> w_first;  // in the frame of the grid
  std::optional<SingularPoint> z_first;  // in the frame of the swapped grid
};

// Both families.  For z analyses the caller materializes swapped_grid(g).
SingularScan find_first_singularities(const Grid& g, const WaveSpeed& speed,
                                      const SingularSearchOptions& opt = {});

// Earliest crossing of a w-curve with a z-curve (type 3): both angles at odd
// multiples of pi at one point, where w_Y = z_X = 0 and the two curves meet
// perpendicular.  Seeded by co-located crossings from the two transversal
// scans, then refined by alternating one-variable branch fits (X(Y) of the
// w-curve from row scans, Y(X) of the z-curve from column scans; both stay
// single-valued near the crossing).  Empty when the curves never meet.
std::optional<SingularPoint> find_type3_crossing(
    const Grid& g, const WaveSpeed& speed,
    const SingularSearchOptions& opt = {});

// A transversal point on the first w-curve at horizontal offset dX from the
// apex: local curve fits and derivatives there, type 1 when |w_X| clears
// max(10 h^2, w_x_floor).
std::optional<SingularPoint> type1_point_on_curve(
    const Grid& g, const WaveSpeed& speed, const SingularPoint& apex,
    double dX, double w_x_floor = 0.0,
    const SingularSearchOptions& opt = {});

// Crossings of one connected branch of the first w-curve: same level as the
// apex and, per column, the crossing nearest the apex parabola.
std::vector<LevelCrossing> first_curve_crossings(const Grid& g,
                                                 const SingularPoint& apex);

// ---- dissipative-run structure ----

struct PlateauShape {
  std::vector<double> Xs;  // columns with a halted w, boundary sample each
  std::vector<double> Ys;  // sigma(X): Y where the halt first happened
  double X0 = 0.0, Y0 = 0.0, kappa = 0.0;  // parabola fit of the boundary
  bool ok = false;
};

// Halt boundary of the w plateau from the stored freeze fractions.
PlateauShape w_plateau_shape(const Grid& g, int fit_half_width = 8);

// 1 for nodes whose dependency cone contains no halted node; such nodes
// are bit-identical between conservative and dissipative runs.
std::vector<std::uint8_t> clean_mask(const Grid& g);

// Derivative/field samples at fractional lattice coordinates (bilinear over
// 4th-order nodal finite differences; the fields are smooth in (X, Y)).
double sample_field(const Grid& g, const std::vector<double>& f, double fi,
                    double fj);
double sample_dX(const Grid& g, const std::vector<double>& f, double fi,
                 double fj);
double sample_dY(const Grid& g, const std::vector<double>& f, double fi,
                 double fj);
double sample_dXX(const Grid& g, const std::vector<double>& f, double fi,
                  double fj);

// Quintic Lagrange interpolation of a field along column i at fractional
// row fj.  Resolves sub-h^2 structure that bilinear interpolation masks
// (local asymptotics are measured down to gaps of a few 1e-7).
double column_interp(const Grid& g, const std::vector<double>& f,
                     std::size_t i, double fj);

}  // namespace vwave
