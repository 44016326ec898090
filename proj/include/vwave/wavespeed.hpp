#pragma once

// Wave speed models c(u) for the quasilinear wave equation
// u_tt - c(u) (c(u) u_x)_x = 0. The solver requires c to be smooth and
// uniformly positive with bounded logarithmic derivative c'/c, and every
// critical point of c to be nondegenerate (c'(u) = 0 implies c''(u) != 0).

#include <string>
#include <vector>

namespace vwave {

struct WaveSpeedReport {
  double c_min = 0.0;          // smallest sampled c over the scan range
  double c_max = 0.0;          // largest sampled c
  double log_deriv_max = 0.0;  // sup |c'/c| over the scan range
  bool positive_ok = false;    // c_min > 0
  bool log_deriv_ok = false;   // finite sup |c'/c|
  bool morse_ok = false;       // every critical point has c'' != 0
  std::vector<double> critical_points;  // approximate zeros of c'
};

class WaveSpeed {
 public:
  enum class Family { sinusoidal, sqrt_quadratic, constant };

  // c(u) = a0 + a1 sin(u), requires a0 > |a1| > 0.
  static WaveSpeed sinusoidal(double a0, double a1);
  // c(u) = sqrt(a0 + a1 u^2), requires a0 > 0, a1 > 0.
  static WaveSpeed sqrt_quadratic(double a0, double a1);
  // c(u) = a0 > 0. Degenerate (c' == 0 everywhere): testing only; the
  // assumption report flags the Morse condition as violated.
  static WaveSpeed constant(double a0);

  double c(double u) const;
  double dc(double u) const;   // c'(u)
  double ddc(double u) const;  // c''(u)

  Family family() const { return family_; }
  double a0() const { return a0_; }
  double a1() const { return a1_; }
  std::string family_name() const;

  // Dense scan of [u_lo, u_hi]: extrema of c and |c'/c|, critical points of
  // c and their nondegeneracy. n is the number of scan samples.
  WaveSpeedReport check_assumptions(double u_lo, double u_hi,
                                    int n = 200001) const;

 private:
  WaveSpeed(Family f, double a0, double a1) : family_(f), a0_(a0), a1_(a1) {}
  Family family_;
  double a0_, a1_;
};

}  // namespace vwave
