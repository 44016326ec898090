#pragma once

// Characteristic-plane lattice.  Nodes (i, j) carry X_i = x_min + i h and
// Y_j = -x_max + j h, so the anti-diagonal i + j = N lies exactly on the
// data line {X + Y = 0}.  The solution occupies the triangle i + j >= N
// (forward in time); the other triangle stays NaN.
//
// Stored fields: the six semilinear unknowns (u, w, z, p, q) plus the
// physical coordinates (x, t).  In dissipative mode two extra layers record
// where an angle was halted at an odd multiple of pi: `flags` marks halted
// nodes and freeze_frac_* stores, at the node where the halt first happened,
// the fraction of the incoming cell edge at which the angle reached the
// level (used to reconstruct the halt boundary to second order).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace vwave {

constexpr std::uint8_t kFlagWFrozen = 1u;
constexpr std::uint8_t kFlagZFrozen = 2u;

struct Grid {
  std::size_t n = 0;   // nodes per side (N + 1)
  double h = 0.0;      // lattice spacing
  double x_min = 0.0;  // X range [x_min, x_max]; Y range [-x_max, -x_min]
  double x_max = 0.0;
  bool dissipative = false;

  std::vector<double> u, w, z, p, q, x, t;
  std::vector<std::uint8_t> flags;        // halt markers (dissipative only)
  std::vector<double> freeze_frac_w;      // edge fraction of a fresh w halt
  std::vector<double> freeze_frac_z;      // edge fraction of a fresh z halt

  std::size_t idx(std::size_t i, std::size_t j) const { return j * n + i; }
  double X(std::size_t i) const { return x_min + static_cast<double>(i) * h; }
  double Y(std::size_t j) const { return -x_max + static_cast<double>(j) * h; }
  bool in_domain(std::size_t i, std::size_t j) const { return i + j + 1 >= n; }
  bool w_frozen(std::size_t i, std::size_t j) const {
    return dissipative && (flags[idx(i, j)] & kFlagWFrozen) != 0;
  }
  bool z_frozen(std::size_t i, std::size_t j) const {
    return dissipative && (flags[idx(i, j)] & kFlagZFrozen) != 0;
  }

  void allocate(std::size_t n_nodes, bool with_freeze_layers) {
    n = n_nodes;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const std::size_t m = n * n;
    for (auto* f : {&u, &w, &z, &p, &q, &x, &t}) f->assign(m, nan);
    flags.assign(m, 0);
    if (with_freeze_layers) {
      freeze_frac_w.assign(m, nan);
      freeze_frac_z.assign(m, nan);
    }
  }
};

}  // namespace vwave
