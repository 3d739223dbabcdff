#pragma once

#include "quatreg/quaternion.hpp"

namespace quatreg {

/// Chart p = t + r iota with iota = (cos a sin b) i + (sin a sin b) j + (cos b) k.
struct SphericalPoint {
  double t = 0.0;
  double r = 0.0;
  double alpha = 0.0;  // [0, 2 pi)
  double beta = 0.0;   // [0, pi]
};

/// Throws OnRealAxis when the imaginary part vanishes. On the plane t + z k
/// (sin beta = 0) alpha is set to 0.
SphericalPoint to_spherical(const Quaternion& p, double epsilon = kDefaultEpsilon);
Quaternion from_spherical(const SphericalPoint& s);

/// The imaginary unit direction at angles (alpha, beta).
Quaternion iota_at(double alpha, double beta);

}  // namespace quatreg
