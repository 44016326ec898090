#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <vector>

#include "vwave/boundary.hpp"
#include "vwave/common.hpp"
#include "vwave/initial_data.hpp"
#include "vwave/physmap.hpp"
#include "vwave/solver.hpp"
#include "vwave/wavespeed.hpp"

using vwave::Grid;
using vwave::InitialData;
using vwave::WaveSpeed;

namespace {

Grid solve(const InitialData& data, const WaveSpeed& speed, double x_min,
           double x_max, std::size_t cells, bool dissipative = false) {
  vwave::BoundaryTrace tr =
      vwave::build_boundary_trace(data, speed, x_min, x_max, cells + 1);
  vwave::SolveOptions opt;
  opt.dissipative = dissipative;
  return vwave::solve_goursat(tr, speed, opt);
}

}  // namespace

TEST_CASE("jacobian entries at the rest state") {
  Grid g;
  g.allocate(5, false);
  g.h = 0.1;
  g.x_min = 0.0;
  g.x_max = 0.4;
  for (std::size_t k = 0; k < 25; ++k) {
    g.u[k] = 0.0;
    g.w[k] = 0.0;
    g.z[k] = 0.0;
    g.p[k] = 1.0;
    g.q[k] = 1.0;
  }
  WaveSpeed speed = WaveSpeed::constant(1.0);
  vwave::JacobianEntries e = vwave::jacobian_at(g, speed, 2, 2);
  CHECK(e.x_X == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.x_Y == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(e.t_X == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(e.t_Y == doctest::Approx(0.5).epsilon(1e-15));
  // (1+cos w)(1+cos z) p q / (8 c) = 2*2/8.
  CHECK(e.det == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("differenced map entries match the algebraic ones at order 2") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 0.8, 1.0);
  auto max_gap = [&](std::size_t cells) {
    Grid g = solve(data, speed, -10.0, 10.0, cells);
    double gap = 0.0, ident = 0.0;
    const std::size_t lo = g.n / 2 + 4, hi = g.n - 3;
    const std::size_t step = (hi - lo) / 12 + 1;
    for (std::size_t j = lo; j < hi; j += step)
      for (std::size_t i = lo; i < hi; i += step) {
        vwave::JacobianEntries fd = vwave::jacobian_fd(g, i, j);
        vwave::JacobianEntries al = vwave::jacobian_at(g, speed, i, j);
        gap = std::max({gap, std::abs(fd.x_X - al.x_X),
                        std::abs(fd.x_Y - al.x_Y), std::abs(fd.t_X - al.t_X),
                        std::abs(fd.t_Y - al.t_Y), std::abs(fd.det - al.det)});
        double c = speed.c(g.u[g.idx(i, j)]);
        ident = std::max({ident, std::abs(fd.x_X - c * fd.t_X),
                          std::abs(fd.x_Y + c * fd.t_Y)});
      }
    return std::pair{gap, ident};
  };
  auto [g1, i1] = max_gap(200);
  auto [g2, i2] = max_gap(400);
  CHECK(g1 > 0.0);
  CHECK(g1 / g2 > 2.2);
  CHECK(g1 / g2 < 7.0);
  CHECK(i1 / i2 > 2.2);
  CHECK(i1 / i2 < 7.0);
}

TEST_CASE("bilinear sampling is exact for bilinear fields") {
  Grid g;
  g.allocate(9, false);
  g.h = 0.5;
  g.x_min = 0.0;
  g.x_max = 4.0;
  std::vector<double> f(81);
  for (std::size_t j = 0; j < 9; ++j)
    for (std::size_t i = 0; i < 9; ++i)
      f[g.idx(i, j)] = 2.0 + 3.0 * i + 5.0 * j + 0.5 * i * j;
  auto exact = [](double fi, double fj) {
    return 2.0 + 3.0 * fi + 5.0 * fj + 0.5 * fi * fj;
  };
  for (double fi : {4.0, 4.25, 5.75, 7.0})
    for (double fj : {4.0, 4.5, 6.3, 7.9})
      CHECK(vwave::bilinear(g, f, fi, fj) ==
            doctest::Approx(exact(fi, fj)).epsilon(1e-13));
}

TEST_CASE("isochrones of the rest state are straight lines") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  const double k = 0.3, c0 = speed.c(k);
  Grid g = solve(InitialData::constant(k), speed, -8.0, 8.0, 256);
  CHECK(vwave::max_common_time(g) ==
        doctest::Approx(16.0 / (2.0 * c0)).epsilon(1e-12));
  const double tau = 1.0;
  auto iso = vwave::extract_isochrone(g, tau);
  REQUIRE(iso.size() > 10);
  for (const vwave::IsoPoint& pt : iso) {
    CHECK(pt.t == doctest::Approx(tau).epsilon(1e-12));
    CHECK(pt.x == doctest::Approx(pt.X - c0 * tau).epsilon(1e-10));
    CHECK(pt.u == doctest::Approx(k).epsilon(1e-14));
  }
  // No wave: no energy on the line.
  CHECK(vwave::isochrone_energy(iso).total() <= 1e-28);
}

TEST_CASE("data-line energy against a direct quadrature of the profiles") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 0.8, 1.0);
  vwave::BoundaryTrace tr =
      vwave::build_boundary_trace(data, speed, -10.0, 10.0, 2001);
  vwave::EnergySplit e = vwave::boundary_energy(tr);
  // Independent trapezoid of (R^2 + S^2)/4 dx on a finer sampling.
  const int m = 20000;
  double acc = 0.0, racc = 0.0;
  for (int k = 0; k <= m; ++k) {
    double x = -10.0 + 20.0 * k / m;
    double c = speed.c(data.u0(x));
    double R = data.u1(x) + c * data.du0(x);
    double S = data.u1(x) - c * data.du0(x);
    double wgt = (k == 0 || k == m) ? 0.5 : 1.0;
    acc += wgt * (R * R + S * S) / 4.0;
    racc += wgt * R * R / 4.0;
  }
  acc *= 20.0 / m;
  racc *= 20.0 / m;
  CHECK(e.total() == doctest::Approx(acc).epsilon(1e-6));
  CHECK(e.r_part == doctest::Approx(racc).epsilon(1e-6));
}

TEST_CASE("energy is carried unchanged along smooth isochrones") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 0.8, 1.0);
  vwave::BoundaryTrace tr =
      vwave::build_boundary_trace(data, speed, -10.0, 10.0, 401);
  vwave::SolveOptions opt;
  Grid g = vwave::solve_goursat(tr, speed, opt);
  double e0 = vwave::boundary_energy(tr).total();
  for (double tau : {0.4, 0.8}) {
    auto iso = vwave::extract_isochrone(g, tau);
    double e = vwave::isochrone_energy(iso).total();
    CHECK(e == doctest::Approx(e0).epsilon(0.01));
  }
}

TEST_CASE("grid columns and rows are characteristic curves") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 0.8, 1.0);
  auto worst = [&](std::size_t cells) {
    Grid g = solve(data, speed, -10.0, 10.0, cells);
    std::size_t i = (g.n * 3) / 5;
    auto col = vwave::column_curve(g, i);
    double e = 0.0;
    for (std::size_t k = 0; k + 1 < col.size(); ++k) {
      double dt = col[k + 1].t - col[k].t;
      if (dt < 1e-9) continue;
      double slope = (col[k + 1].x - col[k].x) / dt;
      double cm = speed.c(0.5 * (col[k].u + col[k + 1].u));
      e = std::max(e, std::abs(slope + cm));
    }
    std::size_t j = (g.n * 3) / 5;
    auto row = vwave::row_curve(g, j);
    for (std::size_t k = 0; k + 1 < row.size(); ++k) {
      double dt = row[k + 1].t - row[k].t;
      if (dt < 1e-9) continue;
      double slope = (row[k + 1].x - row[k].x) / dt;
      double cm = speed.c(0.5 * (row[k].u + row[k + 1].u));
      e = std::max(e, std::abs(slope - cm));
    }
    return e;
  };
  double e1 = worst(200), e2 = worst(400);
  CHECK(e1 < 0.05);
  CHECK(e2 < e1);
  CHECK(e1 / e2 > 2.0);
}

TEST_CASE("frame swap is an involution with the expected field mapping") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 1.5, 1.3);
  Grid g = solve(data, speed, -6.0, 6.0, 150, true);
  Grid sw = vwave::swapped_grid(g);
  CHECK(sw.x_min == -g.x_max);
  CHECK(sw.x_max == -g.x_min);
  CHECK(sw.h == g.h);
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t i = g.n - 1 - j; i < g.n; ++i) {
      const std::size_t a = g.idx(i, j), b = sw.idx(j, i);
      CHECK(sw.w[b] == g.z[a]);
      CHECK(sw.z[b] == g.w[a]);
      CHECK(sw.p[b] == g.q[a]);
      CHECK(sw.q[b] == g.p[a]);
      CHECK(sw.u[b] == g.u[a]);
      CHECK(sw.x[b] == -g.x[a]);
      CHECK(sw.t[b] == g.t[a]);
      CHECK(sw.w_frozen(j, i) == g.z_frozen(i, j));
      CHECK(sw.z_frozen(j, i) == g.w_frozen(i, j));
    }
  Grid back = vwave::swapped_grid(sw);
  CHECK(std::memcmp(back.u.data(), g.u.data(), g.u.size() * sizeof(double)) ==
        0);
  CHECK(std::memcmp(back.w.data(), g.w.data(), g.w.size() * sizeof(double)) ==
        0);
  CHECK(std::memcmp(back.x.data(), g.x.data(), g.x.size() * sizeof(double)) ==
        0);
  CHECK(back.flags == g.flags);
}
