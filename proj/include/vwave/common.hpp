#pragma once

// Shared constants and small numeric helpers.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vwave {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Thrown when the integrator or an analysis step hits an unusable state
// (NaN cell, density overflow, empty extraction window, ...).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

// Representative of an angle in (-pi, pi]. std::remainder returns values in
// [-pi, pi]; map the single point -pi to +pi so "angle landed on pi" has one
// canonical representation.
inline double normalize_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r == -kPi) r = kPi;
  return r;
}

// Distance from a (lifted) angle to the nearest odd multiple of pi.
inline double dist_to_odd_pi(double a) {
  return std::abs(std::remainder(a - kPi, kTwoPi));
}

// The odd multiple of pi nearest to a lifted angle value.
inline double nearest_odd_pi(double a) {
  return a - std::remainder(a - kPi, kTwoPi);
}

// Ordinary least squares line y = a + b*x. Returns {intercept, slope, r2}.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double r2 = 0.0;
  int n = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Least squares parabola y = c0 + c1*x + c2*x^2 (normal equations).
struct ParabolaFit {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  bool ok = false;
};

ParabolaFit fit_parabola(std::span<const double> x, std::span<const double> y);

// Location of the extremum of a fitted parabola (c1 + 2 c2 x = 0).
inline double parabola_vertex(const ParabolaFit& f) { return -f.c1 / (2.0 * f.c2); }

}  // namespace vwave
