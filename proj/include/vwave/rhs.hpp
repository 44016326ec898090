#pragma once

// Right-hand sides of the semilinear characteristic system.  With
// c = c(u) and c' = dc/du, the fields obey
//
//   u_X = (sin w / 4c) p            u_Y = (sin z / 4c) q
//   z_X = (c'/8c^2)(cos w - cos z) p    w_Y = (c'/8c^2)(cos z - cos w) q
//   q_X = (c'/8c^2)(sin w - sin z) p q  p_Y = (c'/8c^2)(sin z - sin w) p q
//   x_X = (1 + cos w) p / 4         x_Y = -(1 + cos z) q / 4
//   t_X = x_X / c                   t_Y = -x_Y / c
//
// so w and p are ODEs in Y (per column), z and q are ODEs in X (per row),
// and u, x, t can be advanced along either direction.
//
// A halted angle is pinned at an odd multiple of pi; its trig values are
// taken as sin = 0, cos = -1 exactly, which makes the X-increments of
// u, x, t vanish identically across a w-plateau (and the Y-increments
// across a z-plateau).

#include <cmath>

#include "vwave/wavespeed.hpp"

namespace vwave {

struct NodeState {
  double u = 0.0, w = 0.0, z = 0.0, p = 0.0, q = 0.0;
  bool w_frozen = false;
  bool z_frozen = false;
};

struct XDeriv {
  double u = 0.0, z = 0.0, q = 0.0, x = 0.0, t = 0.0;
};

struct YDeriv {
  double u = 0.0, w = 0.0, p = 0.0, x = 0.0, t = 0.0;
};

struct TrigState {
  double sw, cw, sz, cz;
};

inline TrigState trig_of(const NodeState& s) {
  TrigState tr;
  if (s.w_frozen) {
    tr.sw = 0.0;
    tr.cw = -1.0;
  } else {
    tr.sw = std::sin(s.w);
    tr.cw = std::cos(s.w);
  }
  if (s.z_frozen) {
    tr.sz = 0.0;
    tr.cz = -1.0;
  } else {
    tr.sz = std::sin(s.z);
    tr.cz = std::cos(s.z);
  }
  return tr;
}

// Derivatives along X at a node.  `gate` multiplies the angle/momentum
// rotation terms (1 in the conservative flow, 0 past a halt).
inline XDeriv x_rhs(const NodeState& s, const WaveSpeed& speed, double gate) {
  const TrigState tr = trig_of(s);
  const double c = speed.c(s.u);
  const double dc = speed.dc(s.u);
  const double k = dc / (8.0 * c * c);
  XDeriv d;
  d.u = tr.sw / (4.0 * c) * s.p;
  d.z = gate * k * (tr.cw - tr.cz) * s.p;
  d.q = gate * k * (tr.sw - tr.sz) * s.p * s.q;
  d.x = (1.0 + tr.cw) * s.p / 4.0;
  d.t = d.x / c;
  return d;
}

// Derivatives along Y at a node.
inline YDeriv y_rhs(const NodeState& s, const WaveSpeed& speed, double gate) {
  const TrigState tr = trig_of(s);
  const double c = speed.c(s.u);
  const double dc = speed.dc(s.u);
  const double k = dc / (8.0 * c * c);
  YDeriv d;
  d.u = tr.sz / (4.0 * c) * s.q;
  d.w = gate * k * (tr.cz - tr.cw) * s.q;
  d.p = gate * k * (tr.sz - tr.sw) * s.p * s.q;
  d.x = -(1.0 + tr.cz) * s.q / 4.0;
  d.t = -d.x / c;
  return d;
}

}  // namespace vwave
