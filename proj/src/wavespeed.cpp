#include "vwave/wavespeed.hpp"

#include <cmath>
#include <stdexcept>

#include "vwave/common.hpp"

namespace vwave {

WaveSpeed WaveSpeed::sinusoidal(double a0, double a1) {
  if (!(a0 > std::abs(a1)) || !(std::abs(a1) > 0.0))
    throw std::invalid_argument(
        "sinusoidal wave speed requires a0 > |a1| > 0");
  return WaveSpeed(Family::sinusoidal, a0, a1);
}

WaveSpeed WaveSpeed::sqrt_quadratic(double a0, double a1) {
  if (!(a0 > 0.0) || !(a1 > 0.0))
    throw std::invalid_argument(
        "sqrt_quadratic wave speed requires a0 > 0 and a1 > 0");
  return WaveSpeed(Family::sqrt_quadratic, a0, a1);
}

WaveSpeed WaveSpeed::constant(double a0) {
  if (!(a0 > 0.0))
    throw std::invalid_argument("constant wave speed requires a0 > 0");
  return WaveSpeed(Family::constant, a0, 0.0);
}

double WaveSpeed::c(double u) const {
  switch (family_) {
    case Family::sinusoidal:
      return a0_ + a1_ * std::sin(u);
    case Family::sqrt_quadratic:
      return std::sqrt(a0_ + a1_ * u * u);
    case Family::constant:
      return a0_;
  }
  return a0_;
}

double WaveSpeed::dc(double u) const {
  switch (family_) {
    case Family::sinusoidal:
      return a1_ * std::cos(u);
    case Family::sqrt_quadratic:
      return a1_ * u / std::sqrt(a0_ + a1_ * u * u);
    case Family::constant:
      return 0.0;
  }
  return 0.0;
}

double WaveSpeed::ddc(double u) const {
  switch (family_) {
    case Family::sinusoidal:
      return -a1_ * std::sin(u);
    case Family::sqrt_quadratic: {
      const double s = a0_ + a1_ * u * u;
      return a1_ * a0_ / (s * std::sqrt(s));
    }
    case Family::constant:
      return 0.0;
  }
  return 0.0;
}

std::string WaveSpeed::family_name() const {
  switch (family_) {
    case Family::sinusoidal:
      return "sinusoidal";
    case Family::sqrt_quadratic:
      return "sqrt_quadratic";
    case Family::constant:
      return "constant";
  }
  return "?";
}

WaveSpeedReport WaveSpeed::check_assumptions(double u_lo, double u_hi,
                                             int n) const {
  if (!(u_hi > u_lo) || n < 3)
    throw std::invalid_argument("check_assumptions: bad scan range");
  WaveSpeedReport rep;
  const double du = (u_hi - u_lo) / (n - 1);

  rep.c_min = rep.c_max = c(u_lo);
  rep.log_deriv_max = 0.0;
  double prev_dc = dc(u_lo);
  bool morse_ok = true;

  for (int i = 0; i < n; ++i) {
    const double u = u_lo + i * du;
    const double cv = c(u);
    const double dv = dc(u);
    rep.c_min = std::min(rep.c_min, cv);
    rep.c_max = std::max(rep.c_max, cv);
    if (cv > 0.0)
      rep.log_deriv_max = std::max(rep.log_deriv_max, std::abs(dv / cv));

    // Critical point of c between consecutive samples: sign change of c'.
    if (i > 0 && ((prev_dc < 0.0) != (dv < 0.0) || dv == 0.0)) {
      if (!(prev_dc == 0.0 && dv == 0.0)) {
        // Refine by bisection on c'.
        double lo = u - du, hi = u;
        for (int k = 0; k < 60; ++k) {
          const double mid = 0.5 * (lo + hi);
          if ((dc(lo) < 0.0) != (dc(mid) < 0.0))
            hi = mid;
          else
            lo = mid;
        }
        const double ustar = 0.5 * (lo + hi);
        if (rep.critical_points.empty() ||
            std::abs(ustar - rep.critical_points.back()) > 4.0 * du) {
          rep.critical_points.push_back(ustar);
          if (std::abs(ddc(ustar)) <= 1e-8) morse_ok = false;
        }
      }
    }
    prev_dc = dv;
  }

  // A flat family (c' identically zero) has degenerate critical points
  // everywhere: the nondegeneracy condition fails even though no isolated
  // zero of c' is reported.
  if (family_ == Family::constant) morse_ok = false;

  rep.positive_ok = rep.c_min > 0.0;
  rep.log_deriv_ok = std::isfinite(rep.log_deriv_max);
  rep.morse_ok = morse_ok;
  return rep;
}

}  // namespace vwave
