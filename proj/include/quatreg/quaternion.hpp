#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace quatreg {

/// Default zero threshold, multiplied by the magnitude of the operand.
inline constexpr double kDefaultEpsilon = 1e-12;

/// t + x i + y j + z k.
struct Quaternion {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double t_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : t(t_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }
  /// Basis element e_n with e_0 = 1, e_1 = i, e_2 = j, e_3 = k.
  static constexpr Quaternion unit(int n) {
    Quaternion q;
    q[n] = 1.0;
    return q;
  }

  constexpr double& operator[](int n) { return n == 0 ? t : n == 1 ? x : n == 2 ? y : z; }
  constexpr double operator[](int n) const { return n == 0 ? t : n == 1 ? x : n == 2 ? y : z; }

  constexpr Quaternion real_part() const { return {t, 0.0, 0.0, 0.0}; }
  constexpr Quaternion imag_part() const { return {0.0, x, y, z}; }
  constexpr Quaternion conj() const { return {t, -x, -y, -z}; }
  constexpr double norm2() const { return t * t + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  double imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    t += o.t; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    t -= o.t; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    t *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.t, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product; i j = k, j k = i, k i = j.
constexpr Quaternion q_mul(const Quaternion& a, const Quaternion& b) {
  return {a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z,
          a.t * b.x + a.x * b.t + a.y * b.z - a.z * b.y,
          a.t * b.y - a.x * b.z + a.y * b.t + a.z * b.x,
          a.t * b.z + a.x * b.y - a.y * b.x + a.z * b.t};
}

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return q_mul(a, b); }

/// Conjugate over squared norm. Throws ZeroDivisor when |a| < epsilon.
Quaternion q_inv(const Quaternion& a, double epsilon = kDefaultEpsilon);

/// Unit imaginary direction (x i + y j + z k) / r. Throws OnRealAxis when the
/// imaginary part is below epsilon * max(1, |p|).
Quaternion iota_of(const Quaternion& p, double epsilon = kDefaultEpsilon);

/// Parses literals such as "1", "-k", "0.5j", "1+2i-3j+0.25k".
Quaternion parse_quaternion(std::string_view text);

/// Shortest round-trippable text form, e.g. "1+2i-3j+0k".
std::string to_string(const Quaternion& q);

}  // namespace quatreg
