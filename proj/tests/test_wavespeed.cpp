#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "vwave/common.hpp"
#include "vwave/wavespeed.hpp"

using vwave::WaveSpeed;

namespace {

// Independent dense-scan oracle for sup |c'(u)/c(u)| with c' by central
// differences, so it shares nothing with the library's analytic derivative.
double brute_log_deriv_max(const WaveSpeed& s, double lo, double hi, int n) {
  double best = 0.0;
  const double fd_h = 1e-6;
  for (int k = 0; k <= n; ++k) {
    double u = lo + (hi - lo) * k / n;
    double d = (s.c(u + fd_h) - s.c(u - fd_h)) / (2.0 * fd_h);
    best = std::max(best, std::abs(d / s.c(u)));
  }
  return best;
}

}  // namespace

TEST_CASE("sinusoidal family: values and analytic derivatives") {
  WaveSpeed s = WaveSpeed::sinusoidal(2.0, 1.0);
  CHECK(s.c(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.c(vwave::kPi / 2.0) == doctest::Approx(3.0).epsilon(1e-15));
  // dc and ddc against central differences of c.
  for (double u : {-2.0, -0.5, 0.0, 0.7, 1.9, 4.2}) {
    const double h = 1e-5;
    double d1 = (s.c(u + h) - s.c(u - h)) / (2 * h);
    double d2 = (s.c(u + h) - 2 * s.c(u) + s.c(u - h)) / (h * h);
    CHECK(s.dc(u) == doctest::Approx(d1).epsilon(1e-8));
    CHECK(s.ddc(u) == doctest::Approx(d2).epsilon(1e-4));
  }
}

TEST_CASE("sinusoidal(2,1): extrema and log-derivative sup on [-10, 10]") {
  WaveSpeed s = WaveSpeed::sinusoidal(2.0, 1.0);
  vwave::WaveSpeedReport r = s.check_assumptions(-10.0, 10.0);
  CHECK(r.positive_ok);
  CHECK(r.log_deriv_ok);
  CHECK(r.c_min == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.c_max == doctest::Approx(3.0).epsilon(1e-8));
  // sup |cos u / (2 + sin u)| is attained where sin u = -1/2 and equals
  // (sqrt(3)/2) / (3/2) = 1/sqrt(3).
  const double expected = 1.0 / std::sqrt(3.0);
  CHECK(r.log_deriv_max == doctest::Approx(expected).epsilon(1e-6));
  CHECK(brute_log_deriv_max(s, -10.0, 10.0, 200000) ==
        doctest::Approx(expected).epsilon(1e-5));
  // cos u = 0 at +-pi/2, +-3pi/2, +-5pi/2 inside [-10, 10]: six critical
  // points, each nondegenerate (c'' = -sin u = -+1 there).
  CHECK(r.critical_points.size() == 6);
  CHECK(r.morse_ok);
  for (double ucrit : r.critical_points) {
    double m = std::fmod(std::abs(ucrit), vwave::kPi);
    CHECK(std::min(m, vwave::kPi - m) ==
          doctest::Approx(vwave::kPi / 2.0).epsilon(1e-5));
  }
}

TEST_CASE("sqrt_quadratic(1,1): log-derivative peaks at u = 1 with value 1/2") {
  WaveSpeed s = WaveSpeed::sqrt_quadratic(1.0, 1.0);
  CHECK(s.c(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.c(3.0) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  vwave::WaveSpeedReport r = s.check_assumptions(-3.0, 3.0);
  CHECK(r.positive_ok);
  CHECK(r.c_min == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.c_max == doctest::Approx(std::sqrt(10.0)).epsilon(1e-8));
  // |c'/c| = |u| / (1 + u^2), maximal value 1/2 at u = +-1.
  CHECK(r.log_deriv_max == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.critical_points.size() == 1);  // u = 0, c''(0) = 1 != 0
  CHECK(r.morse_ok);
}

TEST_CASE("constant family is flagged as degenerate") {
  WaveSpeed s = WaveSpeed::constant(2.0);
  CHECK(s.c(17.0) == 2.0);
  CHECK(s.dc(17.0) == 0.0);
  vwave::WaveSpeedReport r = s.check_assumptions(-5.0, 5.0);
  CHECK(r.positive_ok);
  CHECK(r.c_min == 2.0);
  CHECK(r.c_max == 2.0);
  CHECK(r.log_deriv_max == 0.0);
  CHECK_FALSE(r.morse_ok);
}

TEST_CASE("constructor guards") {
  CHECK_THROWS_AS(WaveSpeed::sinusoidal(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(WaveSpeed::sinusoidal(2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(WaveSpeed::sinusoidal(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(WaveSpeed::sqrt_quadratic(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(WaveSpeed::sqrt_quadratic(1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(WaveSpeed::constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(WaveSpeed::constant(-2.0), std::invalid_argument);
}
