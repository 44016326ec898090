#pragma once

// Analysis of the characteristic-to-physical map (X, Y) -> (x, t).
//
// The Jacobian entries are algebraic in the fields:
//   x_X = (1+cos w) p / 4      x_Y = -(1+cos z) q / 4
//   t_X = x_X / c              t_Y = -x_Y / c
//   det = (1+cos w)(1+cos z) p q / (8 c)
// so the map degenerates exactly where an angle is an odd multiple of pi.
//
// Isochrones {t = tau} are extracted column by column: t is nondecreasing
// along Y (t_Y >= 0), so each column crosses tau at most once.  On an
// isochrone dx = (1+cos w) p/2 dX = -(1+cos z) q/2 dY, which turns the
// energy integrand (R^2 + S^2)/4 dx with R = tan(w/2), S = tan(z/2) into
//   (1-cos w) p/8 dX  +  (1-cos z) q/8 (-dY),
// a form that stays bounded through the degeneracies.  In a halted run the
// R-part of segments pinned at w = pi (and the S-part at z = pi) is trapped
// and excluded, which is exactly the energy the halted flow gives up.

#include <cstddef>
#include <optional>
#include <vector>

#include "vwave/boundary.hpp"
#include "vwave/grid.hpp"
#include "vwave/wavespeed.hpp"

namespace vwave {

struct JacobianEntries {
  double x_X = 0.0, x_Y = 0.0, t_X = 0.0, t_Y = 0.0, det = 0.0;
};

// Entries from the algebraic formulas at a node.
JacobianEntries jacobian_at(const Grid& g, const WaveSpeed& speed,
                            std::size_t i, std::size_t j);

// Entries from 4th-order centered differences of the stored x, t fields
// (node must have a 2-node margin inside the computed triangle).
JacobianEntries jacobian_fd(const Grid& g, std::size_t i, std::size_t j);

inline double riemann_of(double angle) { return std::tan(0.5 * angle); }

// Centered finite differences of one stored field along X or Y, 4th order
// for the first derivative and for the second derivative.
double fd_X(const Grid& g, const std::vector<double>& f, std::size_t i,
            std::size_t j);
double fd_Y(const Grid& g, const std::vector<double>& f, std::size_t i,
            std::size_t j);
double fd_XX(const Grid& g, const std::vector<double>& f, std::size_t i,
             std::size_t j);
double fd_YY(const Grid& g, const std::vector<double>& f, std::size_t i,
             std::size_t j);

// Bilinear sample of a stored field at fractional node coordinates.
double bilinear(const Grid& g, const std::vector<double>& f, double fi,
                double fj);

struct IsoPoint {
  std::size_t i = 0;   // column
  double fj = 0.0;     // fractional row of the crossing
  double X = 0.0, Y = 0.0;
  double x = 0.0, t = 0.0, u = 0.0;
  double w = 0.0, z = 0.0, p = 0.0, q = 0.0;
  bool w_frozen = false, z_frozen = false;  // both bracketing nodes halted
};

// One point per column whose t-range brackets tau, ordered by X.
std::vector<IsoPoint> extract_isochrone(const Grid& g, double tau);

// Largest time reached on the grid (the top-right corner value); any
// smaller positive tau has a nonempty isochrone.  The isochrone covers the
// domain of determinacy, so callers must pick tau small enough that the
// wave support has not left it.
double max_common_time(const Grid& g);

struct EnergySplit {
  double r_part = 0.0;  // forward-moving component, (1-cos w) p / 8
  double s_part = 0.0;  // backward-moving component, (1-cos z) q / 8
  double total() const { return r_part + s_part; }
};

// Trapezoid quadrature along an extracted isochrone; in dissipative grids
// segments pinned at the respective level are skipped (trapped energy).
EnergySplit isochrone_energy(const std::vector<IsoPoint>& iso);

// Energy of the initial data, integrated on the data line.
EnergySplit boundary_energy(const BoundaryTrace& trace);

// The two characteristic families are the grid coordinate lines:
// along a column (X fixed) dx/dt = -c(u); along a row (Y fixed) dx/dt = c(u).
struct CurveSample {
  double x = 0.0, t = 0.0, u = 0.0;
};
std::vector<CurveSample> column_curve(const Grid& g, std::size_t i);
std::vector<CurveSample> row_curve(const Grid& g, std::size_t j);

// Mirror image of the grid under the exchange symmetry
// (X,Y,w,z,p,q,x,t) -> (Y,X,z,w,q,p,-x,t), which maps the system onto
// itself; z-family analyses run the w-family code on the swapped grid.
Grid swapped_grid(const Grid& g);

}  // namespace vwave
