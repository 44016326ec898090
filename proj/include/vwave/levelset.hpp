#pragma once

// Extraction of the degeneracy curves {w = (2m+1) pi} and {z = (2m+1) pi}.
// w is scanned along columns (it evolves in Y) and z along rows; every
// bracketing node pair yields one linearly interpolated crossing.  The
// physical map folds exactly on these curves, so their minimum-t points are
// the gradient blowup locations.

#include <cstddef>
#include <vector>

#include "vwave/grid.hpp"

namespace vwave {

struct LevelCrossing {
  std::size_t i = 0;     // column index (w scan) or row index (z scan)
  std::size_t j = 0;     // lower node of the bracketing pair along the scan
  double level = 0.0;    // odd multiple of pi that is crossed
  double frac = 0.0;     // fraction along the scanned edge
  double X = 0.0, Y = 0.0;
  double x = 0.0, t = 0.0;
};

// All odd-pi crossings of w along columns, ordered by column then Y.
std::vector<LevelCrossing> w_level_crossings(const Grid& g);

// All odd-pi crossings of z along rows, ordered by row then X.
std::vector<LevelCrossing> z_level_crossings(const Grid& g);

// Complementary scan directions.  Where the w-curve and the z-curve cross,
// w_Y = z_X = 0: the usual scans become tangent to the curves there, while
// these stay transversal (w_X != 0, z_Y != 0).  Index convention matches the
// scan direction: row scans fill i = row, j = lower column node; column scans
// fill i = column, j = lower row node.
std::vector<LevelCrossing> w_row_level_crossings(const Grid& g);
std::vector<LevelCrossing> z_col_level_crossings(const Grid& g);

}  // namespace vwave
