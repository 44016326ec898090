#pragma once

// Initial profiles for the wave: u(x,0) = u0(x), u_t(x,0) = u1(x), with an
// analytic spatial derivative of u0 (needed to form the Riemann variables
// R = u_t + c u_x and S = u_t - c u_x on the data line).

#include <cmath>
#include <stdexcept>
#include <string>

namespace vwave {

class InitialData {
 public:
  enum class Family { constant, gaussian, gaussian_pair };

  // u0 = value, u1 = 0.
  static InitialData constant(double value) {
    InitialData d;
    d.family_ = Family::constant;
    d.a0_ = value;
    return d;
  }

  // u0(x) = a0 exp(-x^2/s0^2), u1(x) = a1 exp(-x^2/s1^2).
  static InitialData gaussian(double a0, double s0, double a1, double s1) {
    if (!(s0 > 0.0) || !(s1 > 0.0))
      throw std::invalid_argument("gaussian data requires positive widths");
    InitialData d;
    d.family_ = Family::gaussian;
    d.a0_ = a0;
    d.s0_ = s0;
    d.a1_ = a1;
    d.s1_ = s1;
    return d;
  }

  // Two velocity bumps racing toward each other from x = -+offset:
  //   u0 = 0,  u1(x) = aL exp(-(x+offset)^2/sL^2) + aR exp(-(x-offset)^2/sR^2).
  // Each bump splits into outgoing and incoming parts; the incoming parts
  // collide near x = 0 at time ~ offset/c.
  static InitialData gaussian_pair(double aL, double sL, double aR, double sR,
                                   double offset) {
    if (!(sL > 0.0) || !(sR > 0.0))
      throw std::invalid_argument("gaussian_pair data requires positive widths");
    if (!(offset >= 0.0))
      throw std::invalid_argument("gaussian_pair offset must be >= 0");
    InitialData d;
    d.family_ = Family::gaussian_pair;
    d.a0_ = aL;
    d.s0_ = sL;
    d.a1_ = aR;
    d.s1_ = sR;
    d.offset_ = offset;
    return d;
  }

  double u0(double x) const {
    switch (family_) {
      case Family::constant: return a0_;
      case Family::gaussian: return a0_ * std::exp(-x * x / (s0_ * s0_));
      case Family::gaussian_pair: return 0.0;
    }
    return 0.0;
  }
  double du0(double x) const {
    if (family_ != Family::gaussian) return 0.0;
    return -2.0 * x / (s0_ * s0_) * a0_ * std::exp(-x * x / (s0_ * s0_));
  }
  double u1(double x) const {
    switch (family_) {
      case Family::constant: return 0.0;
      case Family::gaussian: return a1_ * std::exp(-x * x / (s1_ * s1_));
      case Family::gaussian_pair: {
        const double l = x + offset_, r = x - offset_;
        return a0_ * std::exp(-l * l / (s0_ * s0_)) +
               a1_ * std::exp(-r * r / (s1_ * s1_));
      }
    }
    return 0.0;
  }

  Family family() const { return family_; }
  std::string family_name() const {
    switch (family_) {
      case Family::constant: return "constant";
      case Family::gaussian: return "gaussian";
      case Family::gaussian_pair: return "gaussian_pair";
    }
    return "constant";
  }
  double a0() const { return a0_; }
  double s0() const { return s0_; }
  double a1() const { return a1_; }
  double s1() const { return s1_; }
  double offset() const { return offset_; }

  // Rescale the velocity data so its reference amplitude becomes a1 (for the
  // pair family both bumps scale together, keeping their ratio).
  InitialData with_u1_amplitude(double a1) const {
    InitialData d = *this;
    if (family_ == Family::gaussian_pair && a1_ != 0.0)
      d.a0_ = a0_ * (a1 / a1_);
    d.a1_ = a1;
    return d;
  }

 private:
  InitialData() = default;
  Family family_ = Family::constant;
  double a0_ = 0.0, s0_ = 1.0, a1_ = 0.0, s1_ = 1.0, offset_ = 0.0;
};

}  // namespace vwave
