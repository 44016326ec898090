#include "vwave/physmap.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vwave/common.hpp"
#include "vwave/rhs.hpp"

namespace vwave {

namespace {

NodeState node_state(const Grid& g, std::size_t i, std::size_t j) {
  const std::size_t k = g.idx(i, j);
  NodeState s;
  s.u = g.u[k];
  s.w = g.w[k];
  s.z = g.z[k];
  s.p = g.p[k];
  s.q = g.q[k];
  s.w_frozen = g.w_frozen(i, j);
  s.z_frozen = g.z_frozen(i, j);
  return s;
}

void require_margin(const Grid& g, std::size_t i, std::size_t j,
                    std::size_t mi, std::size_t mj, const char* what) {
  const bool ok = i >= mi && i + mi < g.n && j >= mj && j + mj < g.n &&
                  g.in_domain(i - mi, j - mj);
  if (!ok) {
    std::ostringstream os;
    os << what << ": node (" << i << "," << j
       << ") lacks the required stencil margin";
    throw NumericsError(os.str());
  }
}

}  // namespace

JacobianEntries jacobian_at(const Grid& g, const WaveSpeed& speed,
                            std::size_t i, std::size_t j) {
  const NodeState s = node_state(g, i, j);
  const TrigState tr = trig_of(s);
  const double c = speed.c(s.u);
  JacobianEntries ja;
  ja.x_X = (1.0 + tr.cw) * s.p / 4.0;
  ja.x_Y = -(1.0 + tr.cz) * s.q / 4.0;
  ja.t_X = ja.x_X / c;
  ja.t_Y = -ja.x_Y / c;
  ja.det = (1.0 + tr.cw) * (1.0 + tr.cz) * s.p * s.q / (8.0 * c);
  return ja;
}

double fd_X(const Grid& g, const std::vector<double>& f, std::size_t i,
            std::size_t j) {
  require_margin(g, i, j, 2, 0, "fd_X");
  const auto v = [&](std::size_t ii) { return f[g.idx(ii, j)]; };
  return (-v(i + 2) + 8.0 * v(i + 1) - 8.0 * v(i - 1) + v(i - 2)) /
         (12.0 * g.h);
}

double fd_Y(const Grid& g, const std::vector<double>& f, std::size_t i,
            std::size_t j) {
  require_margin(g, i, j, 0, 2, "fd_Y");
  const auto v = [&](std::size_t jj) { return f[g.idx(i, jj)]; };
  return (-v(j + 2) + 8.0 * v(j + 1) - 8.0 * v(j - 1) + v(j - 2)) /
         (12.0 * g.h);
}

double fd_XX(const Grid& g, const std::vector<double>& f, std::size_t i,
             std::size_t j) {
  require_margin(g, i, j, 2, 0, "fd_XX");
  const auto v = [&](std::size_t ii) { return f[g.idx(ii, j)]; };
  return (-v(i + 2) + 16.0 * v(i + 1) - 30.0 * v(i) + 16.0 * v(i - 1) -
          v(i - 2)) /
         (12.0 * g.h * g.h);
}

double fd_YY(const Grid& g, const std::vector<double>& f, std::size_t i,
             std::size_t j) {
  require_margin(g, i, j, 0, 2, "fd_YY");
  const auto v = [&](std::size_t jj) { return f[g.idx(i, jj)]; };
  return (-v(j + 2) + 16.0 * v(j + 1) - 30.0 * v(j) + 16.0 * v(j - 1) -
          v(j - 2)) /
         (12.0 * g.h * g.h);
}

JacobianEntries jacobian_fd(const Grid& g, std::size_t i, std::size_t j) {
  JacobianEntries ja;
  ja.x_X = fd_X(g, g.x, i, j);
  ja.x_Y = fd_Y(g, g.x, i, j);
  ja.t_X = fd_X(g, g.t, i, j);
  ja.t_Y = fd_Y(g, g.t, i, j);
  ja.det = ja.x_X * ja.t_Y - ja.x_Y * ja.t_X;
  return ja;
}

double bilinear(const Grid& g, const std::vector<double>& f, double fi,
                double fj) {
  if (!(fi >= 0.0) || !(fj >= 0.0) || fi > double(g.n - 1) ||
      fj > double(g.n - 1))
    throw NumericsError("bilinear: sample point outside the lattice");
  std::size_t i0 = static_cast<std::size_t>(fi);
  std::size_t j0 = static_cast<std::size_t>(fj);
  if (i0 + 1 >= g.n) i0 = g.n - 2;
  if (j0 + 1 >= g.n) j0 = g.n - 2;
  const double a = fi - double(i0);
  const double b = fj - double(j0);
  if (!g.in_domain(i0, j0))
    throw NumericsError("bilinear: cell corners outside the computed region");
  const double f00 = f[g.idx(i0, j0)];
  const double f10 = f[g.idx(i0 + 1, j0)];
  const double f01 = f[g.idx(i0, j0 + 1)];
  const double f11 = f[g.idx(i0 + 1, j0 + 1)];
  return (1.0 - a) * (1.0 - b) * f00 + a * (1.0 - b) * f10 +
         (1.0 - a) * b * f01 + a * b * f11;
}

std::vector<IsoPoint> extract_isochrone(const Grid& g, double tau) {
  std::vector<IsoPoint> iso;
  const std::size_t N = g.n - 1;
  iso.reserve(g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const std::size_t j_lo = N - i;  // data-line row for this column
    // t is nondecreasing along the column; find the first row at or above
    // tau.  Flat (saturated) stretches are skipped automatically because
    // the bracketing pair must strictly increase.
    if (tau < 0.0 || g.t[g.idx(i, N)] < tau) continue;
    std::size_t j = j_lo;
    while (j < N && g.t[g.idx(i, j)] < tau) ++j;
    IsoPoint pt;
    pt.i = i;
    if (g.t[g.idx(i, j)] <= tau || j == j_lo) {
      pt.fj = double(j);
      const std::size_t k = g.idx(i, j);
      pt.x = g.x[k];
      pt.t = g.t[k];
      pt.u = g.u[k];
      pt.w = g.w[k];
      pt.z = g.z[k];
      pt.p = g.p[k];
      pt.q = g.q[k];
      pt.w_frozen = g.w_frozen(i, j);
      pt.z_frozen = g.z_frozen(i, j);
    } else {
      const std::size_t ka = g.idx(i, j - 1), kb = g.idx(i, j);
      const double ta = g.t[ka], tb = g.t[kb];
      const double fr = (tau - ta) / (tb - ta);
      pt.fj = double(j - 1) + fr;
      const auto lerp = [&](const std::vector<double>& f) {
        return f[ka] + fr * (f[kb] - f[ka]);
      };
      pt.x = lerp(g.x);
      pt.t = tau;
      pt.u = lerp(g.u);
      pt.w = lerp(g.w);
      pt.z = lerp(g.z);
      pt.p = lerp(g.p);
      pt.q = lerp(g.q);
      pt.w_frozen = g.w_frozen(i, j - 1) && g.w_frozen(i, j);
      pt.z_frozen = g.z_frozen(i, j - 1) && g.z_frozen(i, j);
    }
    pt.X = g.X(i);
    pt.Y = g.Y(0) + pt.fj * g.h;
    iso.push_back(pt);
  }
  return iso;
}

double max_common_time(const Grid& g) {
  // t is nondecreasing along both lattice directions (t_X, t_Y >= 0), so
  // its maximum over the triangle sits at the top-right corner.
  const std::size_t N = g.n - 1;
  return g.t[g.idx(N, N)];
}

EnergySplit isochrone_energy(const std::vector<IsoPoint>& iso) {
  EnergySplit acc;
  for (std::size_t k = 0; k + 1 < iso.size(); ++k) {
    const IsoPoint& a = iso[k];
    const IsoPoint& b = iso[k + 1];
    const double dX = b.X - a.X;
    const double dY = b.Y - a.Y;  // <= 0 along increasing X
    const auto rd = [](const IsoPoint& s) {
      return (1.0 - (s.w_frozen ? -1.0 : std::cos(s.w))) * s.p / 8.0;
    };
    const auto sd = [](const IsoPoint& s) {
      return (1.0 - (s.z_frozen ? -1.0 : std::cos(s.z))) * s.q / 8.0;
    };
    if (!(a.w_frozen && b.w_frozen))
      acc.r_part += 0.5 * (rd(a) + rd(b)) * dX;
    if (!(a.z_frozen && b.z_frozen))
      acc.s_part += 0.5 * (sd(a) + sd(b)) * (-dY);
  }
  return acc;
}

EnergySplit boundary_energy(const BoundaryTrace& trace) {
  EnergySplit acc;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
    const auto rd = [&](std::size_t m) {
      return (1.0 - std::cos(trace.w[m])) * trace.p[m] / 8.0;
    };
    const auto sd = [&](std::size_t m) {
      return (1.0 - std::cos(trace.z[m])) * trace.q[m] / 8.0;
    };
    acc.r_part += 0.5 * (rd(k) + rd(k + 1)) * trace.h;
    acc.s_part += 0.5 * (sd(k) + sd(k + 1)) * trace.h;
  }
  return acc;
}

std::vector<CurveSample> column_curve(const Grid& g, std::size_t i) {
  std::vector<CurveSample> cur;
  const std::size_t N = g.n - 1;
  for (std::size_t j = N - i; j <= N; ++j) {
    const std::size_t k = g.idx(i, j);
    cur.push_back({g.x[k], g.t[k], g.u[k]});
  }
  return cur;
}

std::vector<CurveSample> row_curve(const Grid& g, std::size_t j) {
  std::vector<CurveSample> cur;
  const std::size_t N = g.n - 1;
  for (std::size_t i = N - j; i <= N; ++i) {
    const std::size_t k = g.idx(i, j);
    cur.push_back({g.x[k], g.t[k], g.u[k]});
  }
  return cur;
}

Grid swapped_grid(const Grid& g) {
  Grid s;
  s.n = g.n;
  s.h = g.h;
  s.x_min = -g.x_max;
  s.x_max = -g.x_min;
  s.dissipative = g.dissipative;
  s.allocate(g.n, !g.freeze_frac_w.empty());
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t i = g.n - 1 - j; i < g.n; ++i) {
      const std::size_t from = g.idx(i, j);
      const std::size_t to = s.idx(j, i);
      s.u[to] = g.u[from];
      s.w[to] = g.z[from];
      s.z[to] = g.w[from];
      s.p[to] = g.q[from];
      s.q[to] = g.p[from];
      s.x[to] = -g.x[from];
      s.t[to] = g.t[from];
      const std::uint8_t fl = g.flags[from];
      s.flags[to] = ((fl & kFlagWFrozen) ? kFlagZFrozen : 0u) |
                    ((fl & kFlagZFrozen) ? kFlagWFrozen : 0u);
      if (!s.freeze_frac_w.empty()) {
        s.freeze_frac_w[to] = g.freeze_frac_z[from];
        s.freeze_frac_z[to] = g.freeze_frac_w[from];
      }
    }
  return s;
}

}  // namespace vwave
