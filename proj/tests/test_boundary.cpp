#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "vwave/boundary.hpp"
#include "vwave/initial_data.hpp"
#include "vwave/wavespeed.hpp"

using vwave::BoundaryTrace;
using vwave::InitialData;
using vwave::WaveSpeed;

TEST_CASE("trace values at s = 0 for a gaussian pulse") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 0.5, 1.0);
  // 1601 points over [-8, 8]: s = 0 is the exact middle sample.
  BoundaryTrace tr = vwave::build_boundary_trace(data, speed, -8.0, 8.0, 1601);
  const std::size_t mid = 800;
  CHECK(tr.s(mid) == doctest::Approx(0.0).epsilon(1e-14));
  // u0(0) = 1, u0'(0) = 0, u1(0) = 0.5, so R = S = 0.5 there.
  const double R = 0.5;
  CHECK(tr.u[mid] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tr.w[mid] == doctest::Approx(2.0 * std::atan(R)).epsilon(1e-14));
  CHECK(tr.z[mid] == doctest::Approx(2.0 * std::atan(R)).epsilon(1e-14));
  CHECK(tr.p[mid] == doctest::Approx(1.0 + R * R).epsilon(1e-14));
  CHECK(tr.q[mid] == doctest::Approx(1.0 + R * R).epsilon(1e-14));
  CHECK(tr.x[mid] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(tr.t[mid] == 0.0);

  // Off-center sample: R and S split by the slope term c u0_x.
  const std::size_t k = 900;  // s = 1
  double s = tr.s(k);
  double c = speed.c(data.u0(s));
  double Rk = data.u1(s) + c * data.du0(s);
  double Sk = data.u1(s) - c * data.du0(s);
  CHECK(tr.w[k] == doctest::Approx(2.0 * std::atan(Rk)).epsilon(1e-14));
  CHECK(tr.z[k] == doctest::Approx(2.0 * std::atan(Sk)).epsilon(1e-14));
  CHECK(tr.p[k] == doctest::Approx(1.0 + Rk * Rk).epsilon(1e-14));
  CHECK(tr.q[k] == doctest::Approx(1.0 + Sk * Sk).epsilon(1e-14));
}

TEST_CASE("algebraic identities (1+cos w)p = (1+cos z)q = 2 hold to rounding") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 0.5, 1.0);
  BoundaryTrace tr = vwave::build_boundary_trace(data, speed, -8.0, 8.0, 801);
  vwave::CompatibilityReport rep = vwave::check_compatibility(tr, speed);
  // These identities are exact for tan-half-angle variables; only libm
  // rounding of cos(2 atan R) remains.
  CHECK(rep.rhs_x_dev <= 5e-15);
  CHECK(rep.rhs_t_dev <= 5e-15);
  // dx/ds = 1 and dt/ds = 0 are met at rounding level too: the trace x is
  // the sample coordinate itself and t is identically zero.
  CHECK(rep.res_x <= 1e-12);
  CHECK(rep.res_t <= 1e-13);
}

TEST_CASE("u-compatibility residual converges at second order") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 0.5, 1.0);
  BoundaryTrace t1 = vwave::build_boundary_trace(data, speed, -8.0, 8.0, 801);
  BoundaryTrace t2 = vwave::build_boundary_trace(data, speed, -8.0, 8.0, 1601);
  double r1 = vwave::check_compatibility(t1, speed).res_u;
  double r2 = vwave::check_compatibility(t2, speed).res_u;
  CHECK(r1 > 0.0);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("residual detects an inconsistent trace") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::gaussian(1.0, 1.0, 0.5, 1.0);
  BoundaryTrace tr = vwave::build_boundary_trace(data, speed, -8.0, 8.0, 801);
  double base = vwave::check_compatibility(tr, speed).res_u;
  // Bump p at an interior point where sin w != 0; the u identity residual
  // must grow by about (sin w / 4c) * bump at that point.
  const std::size_t k = 430;
  double bump = 0.1;
  double expect = std::abs(std::sin(tr.w[k]) / (4.0 * speed.c(tr.u[k]))) * bump;
  REQUIRE(expect > 1e-3);
  tr.p[k] += bump;
  double pert = vwave::check_compatibility(tr, speed).res_u;
  CHECK(pert >= base + 0.5 * expect);
}

TEST_CASE("constant data: flat trace, residuals at rounding level") {
  WaveSpeed speed = WaveSpeed::sinusoidal(2.0, 1.0);
  InitialData data = InitialData::constant(0.3);
  BoundaryTrace tr = vwave::build_boundary_trace(data, speed, -4.0, 4.0, 401);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(tr.u[i] == 0.3);
    CHECK(tr.w[i] == 0.0);
    CHECK(tr.z[i] == 0.0);
    CHECK(tr.p[i] == 1.0);
    CHECK(tr.q[i] == 1.0);
    CHECK(tr.t[i] == 0.0);
  }
  vwave::CompatibilityReport rep = vwave::check_compatibility(tr, speed);
  CHECK(rep.res_u <= 1e-15);
  CHECK(rep.res_x <= 1e-12);
  CHECK(rep.res_t <= 1e-15);
}
