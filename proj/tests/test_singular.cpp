#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "vwave/common.hpp"
#include "vwave/grid.hpp"
#include "vwave/singular.hpp"
#include "vwave/wavespeed.hpp"

using vwave::Grid;
using vwave::WaveSpeed;

namespace {

// Full set of fields from closed-form functions of (X, Y); only the upper
// triangle is filled, as in a real march.
Grid synthetic(std::size_t n, double h,
               const std::function<void(double, double, double*)>& fields,
               bool dissipative = false) {
  Grid g;
  g.allocate(n, dissipative);
  g.dissipative = dissipative;
  g.n = n;
  g.h = h;
  g.x_min = 0.0;
  g.x_max = h * static_cast<double>(n - 1);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = n - 1 - j; i < n; ++i) {
      double vals[7];  // u w z p q x t
      fields(g.X(i), g.Y(j), vals);
      const std::size_t id = g.idx(i, j);
      g.u[id] = vals[0];
      g.w[id] = vals[1];
      g.z[id] = vals[2];
      g.p[id] = vals[3];
      g.q[id] = vals[4];
      g.x[id] = vals[5];
      g.t[id] = vals[6];
    }
  return g;
}

constexpr double kX0 = 2.0, kY0 = -0.9, kT0 = 1.0;

// Vertex blowup: w reaches pi on Y - Y0 = (X - X0)^2 with its minimum-t
// point at the vertex; z stays far from pi.  The deviation from pi is
// saturated far from the curve so no other level is crossed anywhere.
Grid vertex_grid() {
  return synthetic(161, 0.025, [](double X, double Y, double* v) {
    double dX = X - kX0, dY = Y - kY0;
    v[0] = 0.3;
    v[1] = vwave::kPi +
           std::clamp(2.0 * dY - 2.0 * dX * dX, -2.5, 2.5);  // w_Y=2, w_XX=-4
    v[2] = 0.5;
    v[3] = 3.0;
    v[4] = 4.0;
    v[5] = 2.0 + 0.5 * (X - Y);
    v[6] = kT0 + 0.25 * dX * dX + 0.5 * dY;
  });
}

// Two-family blowup: the w and z level lines cross at (X0, Y0), and t has
// its curve-restricted minimum exactly there.
Grid crossing_grid() {
  return synthetic(161, 0.025, [](double X, double Y, double* v) {
    double dX = X - kX0, dY = Y - kY0;
    v[0] = 0.3;
    v[1] = vwave::kPi + std::clamp(3.0 * dX + 2.0 * dY, -2.5, 2.5);
    v[2] = vwave::kPi + std::clamp(1.0 * dX + 1.5 * dY, -2.5, 2.5);
    v[3] = 3.0;
    v[4] = 4.0;
    v[5] = 2.0 + 0.5 * (X - Y);
    v[6] = kT0 + 0.3 * dX * dX + 0.4 * dY * dY;
  });
}

}  // namespace

TEST_CASE("no blowup, no report") {
  Grid g = synthetic(81, 0.05, [](double, double, double* v) {
    v[0] = 0.1;
    v[1] = 0.5;
    v[2] = -0.2;
    v[3] = 1.0;
    v[4] = 1.0;
    v[5] = 0.0;
    v[6] = 0.0;
  });
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  CHECK_FALSE(vwave::find_first_w_singularity(g, speed).has_value());
}

TEST_CASE("vertex blowup is found, classified and measured") {
  Grid g = vertex_grid();
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  auto pt = vwave::find_first_w_singularity(g, speed);
  REQUIRE(pt.has_value());
  CHECK(pt->type == 2);
  CHECK(pt->genericity_ok);
  // Crossings are exact (w is linear in Y per column) and every fit is of a
  // true parabola, so recovery is tight.
  CHECK(pt->X0 == doctest::Approx(kX0).epsilon(1e-8));
  CHECK(pt->Y0 == doctest::Approx(kY0).epsilon(1e-8));
  CHECK(pt->t0 == doctest::Approx(kT0).epsilon(1e-8));
  CHECK(pt->x0 == doctest::Approx(2.0 + 0.5 * (kX0 - kY0)).epsilon(1e-6));
  CHECK(pt->level == doctest::Approx(vwave::kPi));
  CHECK(pt->w_XX == doctest::Approx(-4.0).epsilon(1e-7));
  CHECK(pt->w_Y == doctest::Approx(2.0).epsilon(1e-7));
  CHECK(pt->kappa == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(pt->w_X) < 1e-6);
  CHECK(pt->z0 == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(pt->p0 == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(pt->q0 == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(pt->u0 == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(pt->c0 == doctest::Approx(speed.c(0.3)).epsilon(1e-10));
}

TEST_CASE("two-family blowup is recognized and refined") {
  Grid g = crossing_grid();
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  auto pt = vwave::find_first_w_singularity(g, speed);
  REQUIRE(pt.has_value());
  CHECK(pt->type == 3);
  CHECK(pt->genericity_ok);
  CHECK(pt->X0 == doctest::Approx(kX0).epsilon(1e-7));
  CHECK(pt->Y0 == doctest::Approx(kY0).epsilon(1e-7));
  CHECK(pt->t0 == doctest::Approx(kT0).epsilon(1e-7));
  CHECK(pt->w_X == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(pt->z_Y == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(vwave::dist_to_odd_pi(pt->z0) < 1e-6);
}

TEST_CASE("transversal points on the singular curve are first-kind") {
  Grid g = vertex_grid();
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  auto apex = vwave::find_first_w_singularity(g, speed);
  REQUIRE(apex.has_value());
  auto pt = vwave::type1_point_on_curve(g, speed, *apex, 0.5);
  REQUIRE(pt.has_value());
  CHECK(pt->type == 1);
  CHECK(pt->X0 == doctest::Approx(kX0 + 0.5).epsilon(1e-7));
  CHECK(pt->Y0 == doctest::Approx(kY0 + 0.25).epsilon(1e-6));
  CHECK(pt->t0 == doctest::Approx(kT0 + 0.75 * 0.25).epsilon(1e-7));
  CHECK(pt->w_X == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(pt->z0 == doctest::Approx(0.5).epsilon(1e-8));
  // Mirror side: the slope flips sign.
  auto lt = vwave::type1_point_on_curve(g, speed, *apex, -0.5);
  REQUIRE(lt.has_value());
  CHECK(lt->w_X == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("curve chain follows the level parabola") {
  Grid g = vertex_grid();
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  auto apex = vwave::find_first_w_singularity(g, speed);
  REQUIRE(apex.has_value());
  auto chain = vwave::first_curve_crossings(g, *apex);
  REQUIRE(chain.size() > 40);
  for (const vwave::LevelCrossing& c : chain) {
    double dX = c.X - kX0;
    CHECK(c.Y == doctest::Approx(kY0 + dX * dX).epsilon(1e-9));
    CHECK(c.level == doctest::Approx(vwave::kPi));
  }
}

TEST_CASE("fractional-coordinate derivative sampling on smooth fields") {
  Grid g = vertex_grid();
  // w_X = -4 (X - X0): linear, so nodal 4th-order stencils and the bilinear
  // blend are both exact.
  for (double fi : {95.0, 100.25, 110.6})
    for (double fj : {120.0, 130.5, 140.75}) {
      double X = g.x_min + fi * g.h;
      CHECK(vwave::sample_dX(g, g.w, fi, fj) ==
            doctest::Approx(-4.0 * (X - kX0)).epsilon(1e-9));
      CHECK(vwave::sample_dY(g, g.w, fi, fj) ==
            doctest::Approx(2.0).epsilon(1e-9));
      CHECK(vwave::sample_dXX(g, g.w, fi, fj) ==
            doctest::Approx(-4.0).epsilon(1e-8));
      CHECK(vwave::sample_field(g, g.p, fi, fj) ==
            doctest::Approx(3.0).epsilon(1e-12));
    }
}

TEST_CASE("column interpolation is exact on degree-5 profiles") {
  // u is a quintic in Y alone; the 6-point column stencil must reproduce it
  // to rounding at every fractional row, including rows whose centered
  // stencil would fall off the triangle edge or the top boundary.
  auto quintic = [](double Y) {
    return 1.0 + Y - 2.0 * Y * Y + 0.5 * Y * Y * Y - 0.25 * Y * Y * Y * Y +
           0.1 * Y * Y * Y * Y * Y;
  };
  Grid g = synthetic(81, 0.05, [&](double, double Y, double* v) {
    v[0] = quintic(Y);
    v[1] = 0.5;
    v[2] = -0.2;
    v[3] = 1.0;
    v[4] = 1.0;
    v[5] = 0.0;
    v[6] = 0.0;
  });
  const std::size_t N = g.n - 1;
  for (std::size_t i : {std::size_t(40), std::size_t(60), N}) {
    const double j_min = static_cast<double>(N - i);
    for (double frac : {0.0, 0.3, 0.5, 0.9}) {
      for (double fj : {j_min + frac, j_min + 2.0 + frac, 55.0 + frac,
                        static_cast<double>(N) - 1.0 + frac}) {
        double Y = g.Y(0) + fj * g.h;
        CHECK(vwave::column_interp(g, g.u, i, fj) ==
              doctest::Approx(quintic(Y)).epsilon(1e-12));
      }
    }
  }
  // Columns shorter than the stencil fall back to linear interpolation,
  // which is still exact for an affine profile.
  Grid small = synthetic(81, 0.05, [](double, double Y, double* v) {
    v[0] = 2.0 - 3.0 * Y;
    v[1] = 0.5;
    v[2] = -0.2;
    v[3] = 1.0;
    v[4] = 1.0;
    v[5] = 0.0;
    v[6] = 0.0;
  });
  const std::size_t i_short = 3;  // only 4 valid rows: fewer than the stencil
  double fj = static_cast<double>(N - i_short) + 0.4;
  double Y = small.Y(0) + fj * small.h;
  CHECK(vwave::column_interp(small, small.u, i_short, fj) ==
        doctest::Approx(2.0 - 3.0 * Y).epsilon(1e-12));
}

TEST_CASE("halt boundary shape is recovered from the freeze fractions") {
  const double kappa = 0.7;
  Grid g = synthetic(
      161, 0.025,
      [](double, double, double* v) {
        v[0] = 0.3;
        v[1] = vwave::kPi - 0.5;
        v[2] = 0.5;
        v[3] = 3.0;
        v[4] = 4.0;
        v[5] = 0.0;
        v[6] = 0.0;
      },
      /*dissipative=*/true);
  for (std::size_t i = 0; i < g.n; ++i) {
    double dX = g.X(i) - kX0;
    if (std::abs(dX) > 0.8) continue;
    double sigma = kY0 + kappa * dX * dX;
    bool first = true;
    for (std::size_t j = g.n - 1 - i; j < g.n; ++j) {
      if (g.Y(j) < sigma) continue;
      g.flags[g.idx(i, j)] |= vwave::kFlagWFrozen;
      g.w[g.idx(i, j)] = vwave::kPi;
      if (first) {
        // Fraction of the incoming edge [Y(j-1), Y(j)] at the boundary.
        g.freeze_frac_w[g.idx(i, j)] = (sigma - g.Y(j - 1)) / g.h;
        first = false;
      }
    }
  }
  vwave::PlateauShape sh = vwave::w_plateau_shape(g);
  REQUIRE(sh.ok);
  CHECK(sh.Xs.size() > 40);
  CHECK(sh.kappa == doctest::Approx(kappa).epsilon(1e-8));
  CHECK(sh.X0 == doctest::Approx(kX0).epsilon(1e-8));
  CHECK(sh.Y0 == doctest::Approx(kY0).epsilon(1e-8));
}

TEST_CASE("clean mask shades exactly the influence cone of a halt") {
  Grid g = synthetic(
      21, 0.1,
      [](double, double, double* v) {
        v[0] = 0.0;
        v[1] = 0.1;
        v[2] = 0.1;
        v[3] = 1.0;
        v[4] = 1.0;
        v[5] = 0.0;
        v[6] = 0.0;
      },
      /*dissipative=*/true);
  const std::size_t fi = 12, fj = 10;
  g.flags[g.idx(fi, fj)] |= vwave::kFlagWFrozen;
  auto mask = vwave::clean_mask(g);
  for (std::size_t j = 0; j < g.n; ++j)
    for (std::size_t i = g.n - 1 - j; i < g.n; ++i) {
      bool in_cone = i >= fi && j >= fj;
      CHECK(mask[g.idx(i, j)] == (in_cone ? 0 : 1));
    }
}
