#include "vwave/levelset.hpp"

#include <cmath>

#include "vwave/common.hpp"

namespace vwave {
namespace {

// Odd multiples of pi in (lo, hi]: (2m+1)pi for m in [m_lo, m_hi].
void levels_between(double lo, double hi, long& m_lo, long& m_hi) {
  m_lo = static_cast<long>(std::ceil((lo - kPi) / kTwoPi));
  m_hi = static_cast<long>(std::floor((hi - kPi) / kTwoPi));
  while ((2.0 * double(m_lo) + 1.0) * kPi <= lo) ++m_lo;
  while ((2.0 * double(m_hi) + 1.0) * kPi > hi) --m_hi;
}

}  // namespace

std::vector<LevelCrossing> w_level_crossings(const Grid& g) {
  std::vector<LevelCrossing> out;
  const std::size_t N = g.n - 1;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = N - i; j < N; ++j) {
      const double wa = g.w[g.idx(i, j)];
      const double wb = g.w[g.idx(i, j + 1)];
      const double lo = std::min(wa, wb), hi = std::max(wa, wb);
      if (!(hi > lo)) continue;
      long m_lo, m_hi;
      levels_between(lo, hi, m_lo, m_hi);
      for (long m = m_lo; m <= m_hi; ++m) {
        const double lvl = (2.0 * double(m) + 1.0) * kPi;
        LevelCrossing c;
        c.i = i;
        c.j = j;
        c.level = lvl;
        c.frac = (lvl - wa) / (wb - wa);
        c.X = g.X(i);
        c.Y = g.Y(j) + c.frac * g.h;
        c.x = g.x[g.idx(i, j)] + c.frac * (g.x[g.idx(i, j + 1)] - g.x[g.idx(i, j)]);
        c.t = g.t[g.idx(i, j)] + c.frac * (g.t[g.idx(i, j + 1)] - g.t[g.idx(i, j)]);
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<LevelCrossing> w_row_level_crossings(const Grid& g) {
  std::vector<LevelCrossing> out;
  const std::size_t N = g.n - 1;
  for (std::size_t j = 0; j < g.n; ++j) {
    for (std::size_t i = N - j; i < N; ++i) {
      const double wa = g.w[g.idx(i, j)];
      const double wb = g.w[g.idx(i + 1, j)];
      const double lo = std::min(wa, wb), hi = std::max(wa, wb);
      if (!(hi > lo)) continue;
      long m_lo, m_hi;
      levels_between(lo, hi, m_lo, m_hi);
      for (long m = m_lo; m <= m_hi; ++m) {
        const double lvl = (2.0 * double(m) + 1.0) * kPi;
        LevelCrossing c;
        c.i = j;  // scanned row
        c.j = i;  // lower node along the scan
        c.level = lvl;
        c.frac = (lvl - wa) / (wb - wa);
        c.Y = g.Y(j);
        c.X = g.X(i) + c.frac * g.h;
        c.x = g.x[g.idx(i, j)] + c.frac * (g.x[g.idx(i + 1, j)] - g.x[g.idx(i, j)]);
        c.t = g.t[g.idx(i, j)] + c.frac * (g.t[g.idx(i + 1, j)] - g.t[g.idx(i, j)]);
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<LevelCrossing> z_col_level_crossings(const Grid& g) {
  std::vector<LevelCrossing> out;
  const std::size_t N = g.n - 1;
  for (std::size_t i = 0; i < g.n; ++i) {
    for (std::size_t j = N - i; j < N; ++j) {
      const double za = g.z[g.idx(i, j)];
      const double zb = g.z[g.idx(i, j + 1)];
      const double lo = std::min(za, zb), hi = std::max(za, zb);
      if (!(hi > lo)) continue;
      long m_lo, m_hi;
      levels_between(lo, hi, m_lo, m_hi);
      for (long m = m_lo; m <= m_hi; ++m) {
        const double lvl = (2.0 * double(m) + 1.0) * kPi;
        LevelCrossing c;
        c.i = i;
        c.j = j;
        c.level = lvl;
        c.frac = (lvl - za) / (zb - za);
        c.X = g.X(i);
        c.Y = g.Y(j) + c.frac * g.h;
        c.x = g.x[g.idx(i, j)] + c.frac * (g.x[g.idx(i, j + 1)] - g.x[g.idx(i, j)]);
        c.t = g.t[g.idx(i, j)] + c.frac * (g.t[g.idx(i, j + 1)] - g.t[g.idx(i, j)]);
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<LevelCrossing> z_level_crossings(const Grid& g) {
  std::vector<LevelCrossing> out;
  const std::size_t N = g.n - 1;
  for (std::size_t j = 0; j < g.n; ++j) {
    for (std::size_t i = N - j; i < N; ++i) {
      const double za = g.z[g.idx(i, j)];
      const double zb = g.z[g.idx(i + 1, j)];
      const double lo = std::min(za, zb), hi = std::max(za, zb);
      if (!(hi > lo)) continue;
      long m_lo, m_hi;
      levels_between(lo, hi, m_lo, m_hi);
      for (long m = m_lo; m <= m_hi; ++m) {
        const double lvl = (2.0 * double(m) + 1.0) * kPi;
        LevelCrossing c;
        c.i = j;  // scanned row
        c.j = i;  // lower node along the scan
        c.level = lvl;
        c.frac = (lvl - za) / (zb - za);
        c.Y = g.Y(j);
        c.X = g.X(i) + c.frac * g.h;
        c.x = g.x[g.idx(i, j)] + c.frac * (g.x[g.idx(i + 1, j)] - g.x[g.idx(i, j)]);
        c.t = g.t[g.idx(i, j)] + c.frac * (g.t[g.idx(i + 1, j)] - g.t[g.idx(i, j)]);
        out.push_back(c);
      }
    }
  }
  return out;
}

}  // namespace vwave
