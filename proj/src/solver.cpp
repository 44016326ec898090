#include "vwave/solver.hpp"

#include <atomic>
#include <barrier>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "vwave/common.hpp"
#include "vwave/rhs.hpp"

namespace vwave {
namespace {

struct CellValue {
  NodeState s;
  double x = 0.0, t = 0.0;
};

struct CellResult {
  CellValue v;
  double fresh_w = std::numeric_limits<double>::quiet_NaN();
  double fresh_z = std::numeric_limits<double>::quiet_NaN();
  double route_du = 0.0, route_dx = 0.0, route_dt = 0.0;
};

CellValue load_node(const Grid& g, std::size_t i, std::size_t j) {
  const std::size_t k = g.idx(i, j);
  CellValue v;
  v.s.u = g.u[k];
  v.s.w = g.w[k];
  v.s.z = g.z[k];
  v.s.p = g.p[k];
  v.s.q = g.q[k];
  v.s.w_frozen = g.w_frozen(i, j);
  v.s.z_frozen = g.z_frozen(i, j);
  v.x = g.x[k];
  v.t = g.t[k];
  return v;
}

// Smallest odd multiple of pi strictly greater than a.
double next_odd_pi_above(double a) {
  double k = std::ceil((a / kPi - 1.0) / 2.0);
  double lvl = (2.0 * k + 1.0) * kPi;
  while (lvl <= a) lvl += kTwoPi;
  while (lvl - kTwoPi > a) lvl -= kTwoPi;
  return lvl;
}

double gate_of(const NodeState& s) {
  return (s.w_frozen || s.z_frozen) ? 0.0 : 1.0;
}

// Bisect the edge fraction at which the trapezoid value of w, integrated in
// Y from S with cross-family values interpolated toward the predictor P,
// reaches the halt level.  Always converges: the bracket [0,1] has the value
// below the level at 0 and at or above it at 1 by the caller's probe.
double land_w(const CellValue& S, const NodeState& P, double thS,
              const YDeriv& fS, double lvl, double h, const WaveSpeed& speed,
              NodeState* landed) {
  double lo = 0.0, hi = 1.0;
  NodeState e;
  e.z_frozen = S.s.z_frozen && P.z_frozen;
  for (int it = 0; it < 40; ++it) {
    const double lam = 0.5 * (lo + hi);
    e.u = S.s.u + lam * (P.u - S.s.u);
    e.w = S.s.w + lam * h * thS * fS.w;
    e.z = S.s.z + lam * (P.z - S.s.z);
    e.p = S.s.p + lam * (P.p - S.s.p);
    e.q = S.s.q + lam * (P.q - S.s.q);
    const YDeriv fe = y_rhs(e, speed, 1.0);
    const double wl = S.s.w + 0.5 * lam * h * (thS * fS.w + fe.w);
    (wl >= lvl ? hi : lo) = lam;
  }
  e.u = S.s.u + hi * (P.u - S.s.u);
  e.w = lvl;
  e.w_frozen = true;
  e.z = S.s.z + hi * (P.z - S.s.z);
  e.p = S.s.p + hi * (P.p - S.s.p);
  e.q = S.s.q + hi * (P.q - S.s.q);
  *landed = e;
  return hi;
}

// Mirror of land_w for the z angle along the X edge from W.
double land_z(const CellValue& W, const NodeState& P, double thW,
              const XDeriv& fW, double lvl, double h, const WaveSpeed& speed,
              NodeState* landed) {
  double lo = 0.0, hi = 1.0;
  NodeState e;
  e.w_frozen = W.s.w_frozen && P.w_frozen;
  for (int it = 0; it < 40; ++it) {
    const double lam = 0.5 * (lo + hi);
    e.u = W.s.u + lam * (P.u - W.s.u);
    e.z = W.s.z + lam * h * thW * fW.z;
    e.w = W.s.w + lam * (P.w - W.s.w);
    e.p = W.s.p + lam * (P.p - W.s.p);
    e.q = W.s.q + lam * (P.q - W.s.q);
    const XDeriv fe = x_rhs(e, speed, 1.0);
    const double zl = W.s.z + 0.5 * lam * h * (thW * fW.z + fe.z);
    (zl >= lvl ? hi : lo) = lam;
  }
  e.u = W.s.u + hi * (P.u - W.s.u);
  e.z = lvl;
  e.z_frozen = true;
  e.w = W.s.w + hi * (P.w - W.s.w);
  e.p = W.s.p + hi * (P.p - W.s.p);
  e.q = W.s.q + hi * (P.q - W.s.q);
  *landed = e;
  return hi;
}

CellResult cell_update(const CellValue& W, const CellValue& S,
                       const WaveSpeed& speed, double h,
                       const SolveOptions& opt) {
  const bool dis = opt.dissipative;
  // A halted w is a fixed point of the gated flow, so the marker propagates
  // up the column; likewise a halted z along the row.
  const bool wfr_in = dis && S.s.w_frozen;
  const bool zfr_in = dis && W.s.z_frozen;

  const double thW = dis ? gate_of(W.s) : 1.0;
  const double thS = dis ? gate_of(S.s) : 1.0;
  const XDeriv fW = x_rhs(W.s, speed, 1.0);
  const YDeriv fS = y_rhs(S.s, speed, 1.0);

  // Euler predictor at the new node.
  NodeState P;
  P.w_frozen = wfr_in;
  P.z_frozen = zfr_in;
  P.w = wfr_in ? S.s.w : S.s.w + h * thS * fS.w;
  P.z = zfr_in ? W.s.z : W.s.z + h * thW * fW.z;
  P.p = S.s.p + h * thS * fS.p;
  P.q = W.s.q + h * thW * fW.q;
  P.u = 0.5 * (W.s.u + h * fW.u + S.s.u + h * fS.u);

  // If the predictor already reaches the next halt level, the end-of-cell
  // gate for the trapezoid is zero (the state there is past the halt).
  double lvl_w = 0.0, lvl_z = 0.0;
  bool pend_w = false, pend_z = false;
  if (dis && !wfr_in) {
    lvl_w = next_odd_pi_above(S.s.w);
    pend_w = P.w >= lvl_w;
  }
  if (dis && !zfr_in) {
    lvl_z = next_odd_pi_above(W.s.z);
    pend_z = P.z >= lvl_z;
  }
  const double thP =
      !dis ? 1.0 : ((wfr_in || zfr_in || pend_w || pend_z) ? 0.0 : 1.0);

  const XDeriv fPx = x_rhs(P, speed, 1.0);
  const YDeriv fPy = y_rhs(P, speed, 1.0);

  CellResult out;
  NodeState& NE = out.v.s;
  NE.w_frozen = wfr_in;
  NE.z_frozen = zfr_in;
  NE.w = wfr_in ? S.s.w : S.s.w + 0.5 * h * (thS * fS.w + thP * fPy.w);
  NE.z = zfr_in ? W.s.z : W.s.z + 0.5 * h * (thW * fW.z + thP * fPx.z);
  NE.p = S.s.p + 0.5 * h * (thS * fS.p + thP * fPy.p);
  NE.q = W.s.q + 0.5 * h * (thW * fW.q + thP * fPx.q);

  if (dis && !wfr_in) {
    // Crossing test under the live (ungated-at-the-far-end) dynamics; a
    // gated corrector could stall just under the level forever.
    const double probe = S.s.w + 0.5 * h * (thS * fS.w + fPy.w);
    if (probe >= lvl_w) {
      NodeState landed;
      const double lam = land_w(S, P, thS, fS, lvl_w, h, speed, &landed);
      const YDeriv fl = y_rhs(landed, speed, 1.0);
      NE.w = lvl_w;
      NE.w_frozen = true;
      // p rotates only over the live fraction of the edge.
      NE.p = S.s.p + 0.5 * lam * h * (thS * fS.p + fl.p);
      out.fresh_w = lam;
    }
  }
  if (dis && !zfr_in) {
    const double probe = W.s.z + 0.5 * h * (thW * fW.z + fPx.z);
    if (probe >= lvl_z) {
      NodeState landed;
      const double lam = land_z(W, P, thW, fW, lvl_z, h, speed, &landed);
      const XDeriv fl = x_rhs(landed, speed, 1.0);
      NE.z = lvl_z;
      NE.z_frozen = true;
      NE.q = W.s.q + 0.5 * lam * h * (thW * fW.q + fl.q);
      out.fresh_z = lam;
    }
  }

  // u, x, t admit both an X-route (from W) and a Y-route (from S); their
  // trapezoid end values use the corrected angles/densities.
  NodeState F = NE;
  F.u = P.u;
  const XDeriv fNx = x_rhs(F, speed, 1.0);
  const YDeriv fNy = y_rhs(F, speed, 1.0);

  const double uX = W.s.u + 0.5 * h * (fW.u + fNx.u);
  const double uY = S.s.u + 0.5 * h * (fS.u + fNy.u);
  const double xX = W.x + 0.5 * h * (fW.x + fNx.x);
  const double xY = S.x + 0.5 * h * (fS.x + fNy.x);
  const double tX = W.t + 0.5 * h * (fW.t + fNx.t);
  const double tY = S.t + 0.5 * h * (fS.t + fNy.t);

  out.route_du = std::abs(uX - uY);
  out.route_dx = std::abs(xX - xY);
  out.route_dt = std::abs(tX - tY);

  // Route choice.  Inside a w-plateau the X-increments vanish identically,
  // so taking the pure X-route keeps u, x, t exactly constant along rows
  // (the plateau maps to a single physical point per row); mirrored for
  // z-plateaus and columns.  At a plateau's entry edge prefer the route
  // whose whole edge lies inside the halted region.
  int route = 0;  // 0 = average, 1 = X only, 2 = Y only
  if (dis) {
    if (NE.w_frozen && W.s.w_frozen)
      route = 1;
    else if (NE.z_frozen && S.s.z_frozen)
      route = 2;
    else if (NE.w_frozen && S.s.w_frozen)
      route = 2;
    else if (NE.z_frozen && W.s.z_frozen)
      route = 1;
  }
  if (route == 1) {
    NE.u = uX;
    out.v.x = xX;
    out.v.t = tX;
  } else if (route == 2) {
    NE.u = uY;
    out.v.x = xY;
    out.v.t = tY;
  } else {
    NE.u = 0.5 * (uX + uY);
    out.v.x = 0.5 * (xX + xY);
    out.v.t = 0.5 * (tX + tY);
  }
  return out;
}

void accumulate(RouteResidual* rr, const CellResult& r) {
  rr->u = std::max(rr->u, r.route_du);
  rr->x = std::max(rr->x, r.route_dx);
  rr->t = std::max(rr->t, r.route_dt);
}

void run_cell(Grid& g, const WaveSpeed& speed, const SolveOptions& opt,
              std::size_t i, std::size_t j, RouteResidual* rr) {
  const CellValue W = load_node(g, i - 1, j);
  const CellValue S = load_node(g, i, j - 1);
  const CellResult r = cell_update(W, S, speed, g.h, opt);
  const std::size_t k = g.idx(i, j);
  g.u[k] = r.v.s.u;
  g.w[k] = r.v.s.w;
  g.z[k] = r.v.s.z;
  g.p[k] = r.v.s.p;
  g.q[k] = r.v.s.q;
  g.x[k] = r.v.x;
  g.t[k] = r.v.t;
  if (g.dissipative) {
    g.flags[k] = (r.v.s.w_frozen ? kFlagWFrozen : 0u) |
                 (r.v.s.z_frozen ? kFlagZFrozen : 0u);
    g.freeze_frac_w[k] = r.fresh_w;
    g.freeze_frac_z[k] = r.fresh_z;
  }
  if (rr) accumulate(rr, r);

  const bool finite = std::isfinite(r.v.s.u) && std::isfinite(r.v.s.w) &&
                      std::isfinite(r.v.s.z) && std::isfinite(r.v.s.p) &&
                      std::isfinite(r.v.s.q) && std::isfinite(r.v.x) &&
                      std::isfinite(r.v.t);
  const bool bounded = r.v.s.p > 0.0 && r.v.s.q > 0.0 &&
                       r.v.s.p <= opt.overflow_guard &&
                       r.v.s.q <= opt.overflow_guard;
  if (!finite || !bounded) {
    std::ostringstream os;
    os << "integrator failure at node (" << i << "," << j << "): "
       << (!finite ? "non-finite field" : "density out of range") << ", p="
       << r.v.s.p << ", q=" << r.v.s.q;
    throw NumericsError(os.str());
  }
}

void march(Grid& g, const WaveSpeed& speed, const SolveOptions& opt,
           RouteResidual* rr) {
  const std::size_t N = g.n - 1;
  const int T = std::max(1, opt.threads);
  if (T == 1) {
    for (std::size_t d = N + 1; d <= 2 * N; ++d)
      for (std::size_t i = d - N; i <= N; ++i)
        run_cell(g, speed, opt, i, d - i, rr);
    return;
  }

  // Wavefront team: every cell of one anti-diagonal depends only on the
  // previous one, so a static, thread-count-deterministic chunking plus one
  // barrier per diagonal reproduces the serial results bit for bit.
  std::barrier<> sync(static_cast<std::ptrdiff_t>(T));
  std::atomic<bool> failed{false};
  std::mutex err_mu;
  std::string err_msg;
  std::vector<RouteResidual> locals(static_cast<std::size_t>(T));

  auto worker = [&](int tid) {
    for (std::size_t d = N + 1; d <= 2 * N; ++d) {
      if (!failed.load(std::memory_order_acquire)) {
        const std::size_t lo = d - N;
        const std::size_t cnt = 2 * N - d + 1;
        const std::size_t b =
            lo + cnt * static_cast<std::size_t>(tid) / static_cast<std::size_t>(T);
        const std::size_t e =
            lo + cnt * static_cast<std::size_t>(tid + 1) / static_cast<std::size_t>(T);
        try {
          for (std::size_t i = b; i < e; ++i)
            run_cell(g, speed, opt, i, d - i,
                     rr ? &locals[static_cast<std::size_t>(tid)] : nullptr);
        } catch (const std::exception& ex) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!failed.exchange(true, std::memory_order_release))
            err_msg = ex.what();
        }
      }
      sync.arrive_and_wait();
    }
  };

  std::vector<std::thread> team;
  team.reserve(static_cast<std::size_t>(T));
  for (int tid = 0; tid < T; ++tid) team.emplace_back(worker, tid);
  for (auto& th : team) th.join();
  if (failed.load()) throw NumericsError(err_msg);
  if (rr)
    for (const auto& l : locals) {
      rr->u = std::max(rr->u, l.u);
      rr->x = std::max(rr->x, l.x);
      rr->t = std::max(rr->t, l.t);
    }
}

Grid init_grid(const BoundaryTrace& trace, bool dissipative) {
  const std::size_t n = trace.size();
  if (n < 2) throw NumericsError("trace too short to integrate");
  if (!(trace.h > 0.0)) throw NumericsError("trace has non-positive spacing");
  Grid g;
  g.h = trace.h;
  g.x_min = trace.x_min;
  g.x_max = trace.s(n - 1);
  g.dissipative = dissipative;
  g.allocate(n, dissipative);
  const std::size_t N = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = g.idx(i, N - i);
    g.u[k] = trace.u[i];
    g.w[k] = trace.w[i];
    g.z[k] = trace.z[i];
    g.p[k] = trace.p[i];
    g.q[k] = trace.q[i];
    g.x[k] = trace.x[i];
    g.t[k] = trace.t[i];
  }
  return g;
}

}  // namespace

Grid solve_goursat(const BoundaryTrace& trace, const WaveSpeed& speed,
                   const SolveOptions& opt) {
  Grid g = init_grid(trace, opt.dissipative);
  march(g, speed, opt, nullptr);
  return g;
}

RouteResidual route_residual(const BoundaryTrace& trace,
                             const WaveSpeed& speed, const SolveOptions& opt) {
  Grid g = init_grid(trace, opt.dissipative);
  RouteResidual rr;
  march(g, speed, opt, &rr);
  rr.u /= g.h;
  rr.x /= g.h;
  rr.t /= g.h;
  return rr;
}

}  // namespace vwave
