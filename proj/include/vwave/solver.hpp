#pragma once

// Goursat marcher.  Starting from the data line i + j = N the solver sweeps
// anti-diagonals; each node is produced from its X-predecessor (west) and
// Y-predecessor (south) by one explicit-trapezoid (Heun) cell update, which
// is second order for this hyperbolic system.
//
// Conservative mode integrates the smooth semilinear flow; angles pass
// freely through odd multiples of pi.  Dissipative mode multiplies the four
// rotation equations (w_Y, z_X, p_Y, q_X) by a gate that drops to zero once
// either angle reaches an odd multiple of pi from below; the crossing inside
// a cell is located by bisection on the edge fraction and the angle is
// pinned exactly at the level from then on.
//
// Cells on one anti-diagonal are independent, so they may be computed by a
// fixed-chunk thread team; chunking is deterministic and each cell sees only
// committed values, hence results are bit-identical for any thread count.

#include <cstddef>

#include "vwave/boundary.hpp"
#include "vwave/grid.hpp"
#include "vwave/wavespeed.hpp"

namespace vwave {

struct SolveOptions {
  bool dissipative = false;
  int threads = 1;                 // <= 1 means serial
  double overflow_guard = 1e12;    // abort if p or q exceeds this
};

// March the full triangle from the trace (trace.size() == grid side).
Grid solve_goursat(const BoundaryTrace& trace, const WaveSpeed& speed,
                   const SolveOptions& opt);

// Max over all interior cells of |X-route - Y-route| for u, x, t before
// route averaging; used to verify path independence at order h^2 (the
// residual itself is O(h^3) per cell, and this reports max/h).
struct RouteResidual {
  double u = 0.0, x = 0.0, t = 0.0;
};
RouteResidual route_residual(const BoundaryTrace& trace, const WaveSpeed& speed,
                             const SolveOptions& opt);

}  // namespace vwave
