#include "vwave/boundary.hpp"

#include <cmath>
#include <stdexcept>

#include "vwave/common.hpp"

namespace vwave {

BoundaryTrace build_boundary_trace(const InitialData& data,
                                   const WaveSpeed& speed, double x_min,
                                   double x_max, std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("need at least 2 data points");
  if (!(x_max > x_min)) throw std::invalid_argument("need x_max > x_min");

  BoundaryTrace tr;
  tr.x_min = x_min;
  tr.h = (x_max - x_min) / static_cast<double>(n_points - 1);
  tr.u.resize(n_points);
  tr.w.resize(n_points);
  tr.z.resize(n_points);
  tr.p.resize(n_points);
  tr.q.resize(n_points);
  tr.x.resize(n_points);
  tr.t.resize(n_points);

  for (std::size_t i = 0; i < n_points; ++i) {
    const double s = tr.s(i);
    const double u0 = data.u0(s);
    const double cu = speed.c(u0);
    const double R = data.u1(s) + cu * data.du0(s);
    const double S = data.u1(s) - cu * data.du0(s);
    tr.u[i] = u0;
    tr.w[i] = 2.0 * std::atan(R);
    tr.z[i] = 2.0 * std::atan(S);
    tr.p[i] = 1.0 + R * R;
    tr.q[i] = 1.0 + S * S;
    tr.x[i] = s;
    tr.t[i] = 0.0;
  }
  return tr;
}

CompatibilityReport check_compatibility(const BoundaryTrace& tr,
                                        const WaveSpeed& speed) {
  CompatibilityReport rep;
  const std::size_t n = tr.size();
  if (n < 3) return rep;
  const double h = tr.h;

  for (std::size_t i = 0; i < n; ++i) {
    // (1+cos w) p and (1+cos z) q are algebraically 2 for tan-half-angle
    // variables; track the floating-point deviation at every sample.
    const double gw = (1.0 + std::cos(tr.w[i])) * tr.p[i];
    const double gz = (1.0 + std::cos(tr.z[i])) * tr.q[i];
    rep.rhs_x_dev = std::max(rep.rhs_x_dev, std::abs((gw + gz) / 4.0 - 1.0));
    rep.rhs_t_dev = std::max(rep.rhs_t_dev, std::abs(gw - gz) / 4.0);
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double cu = speed.c(tr.u[i]);
    const double du = (tr.u[i + 1] - tr.u[i - 1]) / (2.0 * h);
    const double dx = (tr.x[i + 1] - tr.x[i - 1]) / (2.0 * h);
    const double dt = (tr.t[i + 1] - tr.t[i - 1]) / (2.0 * h);

    const double rhs_u = (std::sin(tr.w[i]) / (4.0 * cu)) * tr.p[i] -
                         (std::sin(tr.z[i]) / (4.0 * cu)) * tr.q[i];
    const double rhs_x = ((1.0 + std::cos(tr.w[i])) * tr.p[i] +
                          (1.0 + std::cos(tr.z[i])) * tr.q[i]) /
                         4.0;
    const double rhs_t = ((1.0 + std::cos(tr.w[i])) * tr.p[i] -
                          (1.0 + std::cos(tr.z[i])) * tr.q[i]) /
                         (4.0 * cu);

    rep.res_u = std::max(rep.res_u, std::abs(du - rhs_u));
    rep.res_x = std::max(rep.res_x, std::abs(dx - rhs_x));
    rep.res_t = std::max(rep.res_t, std::abs(dt - rhs_t));
  }
  return rep;
}

}  // namespace vwave
