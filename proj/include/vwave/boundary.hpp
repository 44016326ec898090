#pragma once

// Data line for the Goursat problem.  The physical initial data (u0, u1) on
// t = 0 is re-expressed on the anti-diagonal {X + Y = 0} of the
// characteristic plane, parameterized by s with X = s, Y = -s, x = s, t = 0:
//
//   R = u1 + c(u0) u0_x,   S = u1 - c(u0) u0_x,
//   w = 2 atan R, z = 2 atan S, p = 1 + R^2, q = 1 + S^2.
//
// The trace must satisfy three compatibility identities relating the
// s-derivatives of (u, x, t) to the characteristic-coordinate derivatives;
// check_compatibility measures their finite-difference residuals.

#include <cstddef>
#include <vector>

#include "vwave/initial_data.hpp"
#include "vwave/wavespeed.hpp"

namespace vwave {

struct BoundaryTrace {
  double x_min = 0.0;  // s of first sample
  double h = 0.0;      // sample spacing
  std::vector<double> u, w, z, p, q, x, t;

  std::size_t size() const { return u.size(); }
  double s(std::size_t i) const { return x_min + static_cast<double>(i) * h; }
};

BoundaryTrace build_boundary_trace(const InitialData& data,
                                   const WaveSpeed& speed, double x_min,
                                   double x_max, std::size_t n_points);

struct CompatibilityReport {
  // Max |d/ds residual| over interior points, one entry per identity:
  //  [0] du/ds = (sin w / 4c) p - (sin z / 4c) q         (O(h^2) residual)
  //  [1] dx/ds = ((1+cos w) p + (1+cos z) q) / 4          (RHS is exactly 1)
  //  [2] dt/ds = ((1+cos w) p - (1+cos z) q) / (4c)       (RHS is exactly 0)
  double res_u = 0.0;
  double res_x = 0.0;
  double res_t = 0.0;
  // Max deviation of the algebraic right-hand sides from their exact values:
  // (1+cos w) p == 2 and (1+cos z) q == 2 identically for any trace built
  // from tan-half-angle variables.
  double rhs_x_dev = 0.0;
  double rhs_t_dev = 0.0;
};

CompatibilityReport check_compatibility(const BoundaryTrace& trace,
                                        const WaveSpeed& speed);

}  // namespace vwave
