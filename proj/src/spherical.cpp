#include "quatreg/spherical.hpp"

#include <cmath>
#include <numbers>

namespace quatreg {

SphericalPoint to_spherical(const Quaternion& p, double epsilon) {
  const Quaternion dir = iota_of(p, epsilon);  // validates the real-axis guard
  const double r = p.imag_norm();
  const double rho = std::hypot(p.x, p.y);
  SphericalPoint s;
  s.t = p.t;
  s.r = r;
  s.beta = std::atan2(rho, p.z);
  if (rho == 0.0) {
    s.alpha = 0.0;
  } else {
    double a = std::atan2(dir.y, dir.x);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    if (a >= 2.0 * std::numbers::pi) a = 0.0;
    s.alpha = a;
  }
  return s;
}

Quaternion iota_at(double alpha, double beta) {
  const double sb = std::sin(beta);
  return {0.0, std::cos(alpha) * sb, std::sin(alpha) * sb, std::cos(beta)};
}

Quaternion from_spherical(const SphericalPoint& s) {
  return Quaternion(s.t) + s.r * iota_at(s.alpha, s.beta);
}

}  // namespace quatreg
