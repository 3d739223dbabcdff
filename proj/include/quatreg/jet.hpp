#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>

#include "quatreg/quaternion.hpp"

namespace quatreg {

inline constexpr int kMaxJetOrder = 3;
inline constexpr int kJetVars = 4;
inline constexpr int kMaxJetCoeffs = 35;

/// Exponents of the four jet variables.
using MultiIndex = std::array<std::uint8_t, kJetVars>;

/// Number of monomials of total degree <= order in four variables.
constexpr int coeff_count(int order) {
  constexpr int counts[] = {1, 5, 15, 35};
  return counts[order];
}

int degree(const MultiIndex& m);
/// Slots are graded: constant, then degree 1, 2, 3. Throws IndexTooDeep past degree 3.
int slot_of(const MultiIndex& m);
const MultiIndex& multi_index_at(int slot);

/// Coordinates a jet is seeded in. Constants (None) combine with either.
enum class Basis : std::uint8_t { None, Cartesian, Spherical };

/// Truncated Taylor expansion of a real function of four variables. Only the
/// first coeff_count(order) slots are meaningful.
class RJet {
 public:
  RJet() { c_[0] = 0.0; }

  static RJet constant(double value, int order, Basis basis = Basis::None);
  /// value + d(var); throws OrderTooHigh for order outside [0, 3].
  static RJet variable(double value, int var, int order, Basis basis);

  int order() const { return order_; }
  Basis basis() const { return basis_; }
  int size() const { return coeff_count(order_); }
  double value() const { return c_[0]; }

  double coeff(int slot) const { return c_[slot]; }
  double& coeff(int slot) { return c_[slot]; }
  /// Taylor coefficient of the monomial, zero when its degree exceeds the order.
  double coeff(const MultiIndex& m) const;
  /// Partial derivative d^|m| / dm at the expansion point.
  double partial(const MultiIndex& m) const;
  /// Derivative with respect to one variable, as a jet of one lower order.
  RJet derivative(int var) const;
  /// Drops every term above the given order.
  RJet truncated(int order) const;

  RJet& operator+=(const RJet& o);
  RJet& operator-=(const RJet& o);
  RJet& operator*=(const RJet& o);
  RJet& operator+=(double s) { c_[0] += s; return *this; }
  RJet& operator-=(double s) { c_[0] -= s; return *this; }
  RJet& operator*=(double s);

  /// this += s * o without a temporary.
  RJet& add_scaled(const RJet& o, double s);

  friend bool operator==(const RJet& a, const RJet& b);
  friend RJet operator*(const RJet& a, const RJet& b);

 private:
  std::array<double, kMaxJetCoeffs> c_;
  std::int8_t order_ = 0;
  Basis basis_ = Basis::None;

  void unify(const RJet& o);
};

RJet operator+(RJet a, const RJet& b);
RJet operator-(RJet a, const RJet& b);
RJet operator*(const RJet& a, const RJet& b);
RJet operator-(RJet a);
inline RJet operator+(RJet a, double s) { return a += s; }
inline RJet operator+(double s, RJet a) { return a += s; }
inline RJet operator-(RJet a, double s) { return a -= s; }
inline RJet operator-(double s, const RJet& a) { return -a + s; }
inline RJet operator*(RJet a, double s) { return a *= s; }
inline RJet operator*(double s, RJet a) { return a *= s; }

/// Seeds one coordinate of a four-component point. Without a variable index
/// the result is the constant point[0].
RJet jet_seed(std::span<const double, kJetVars> point, std::optional<int> var_index, int order,
              Basis basis = Basis::Cartesian);

// Elementary functions composed with the truncated series about the constant
// term. Each throws DomainError where the function is not smooth.
RJet sin(const RJet& a);
RJet cos(const RJet& a);
RJet sqrt(const RJet& a);
RJet recip(const RJet& a);
RJet atan(const RJet& a);
RJet atanh(const RJet& a);
RJet atan2(const RJet& y, const RJet& x);

/// Quaternion-valued jet: one real jet per component sharing order and basis.
class QJet {
 public:
  QJet() = default;
  QJet(RJet t, RJet x, RJet y, RJet z);
  explicit QJet(const RJet& real);

  static QJet constant(const Quaternion& q, int order, Basis basis = Basis::None);
  /// Cartesian seed of p = t + x i + y j + z k.
  static QJet identity(const Quaternion& p, int order);

  int order() const { return c_[0].order(); }
  Basis basis() const;
  const RJet& operator[](int n) const { return c_[n]; }
  RJet& operator[](int n) { return c_[n]; }

  Quaternion value() const { return {c_[0].value(), c_[1].value(), c_[2].value(), c_[3].value()}; }
  Quaternion partial(const MultiIndex& m) const;
  QJet derivative(int var) const;
  QJet truncated(int order) const;

  QJet conj() const { return {c_[0], -c_[1], -c_[2], -c_[3]}; }
  QJet imag_part() const;
  RJet norm2() const;
  RJet imag_norm2() const;

  QJet& operator+=(const QJet& o);
  QJet& operator-=(const QJet& o);
  QJet& operator*=(const RJet& s);
  QJet& operator*=(double s);

  friend bool operator==(const QJet&, const QJet&) = default;
  friend QJet operator*(const QJet& a, const QJet& b);

 private:
  std::array<RJet, 4> c_{};
};

QJet operator+(QJet a, const QJet& b);
QJet operator-(QJet a, const QJet& b);
QJet operator-(const QJet& a);
/// Hamilton product, truncated.
QJet operator*(const QJet& a, const QJet& b);
QJet operator*(QJet a, const RJet& s);
QJet operator*(const RJet& s, QJet a);
QJet operator*(QJet a, double s);
QJet operator*(double s, QJet a);
/// Constant quaternion acting from the right or from the left.
QJet operator*(const QJet& a, const Quaternion& q);
QJet operator*(const Quaternion& q, const QJet& a);
QJet operator+(QJet a, const Quaternion& q);

/// Conjugate over squared norm. Throws ZeroDivisor at a vanishing constant term.
QJet inverse(const QJet& a);
/// a^n for any integer n; negative powers go through inverse().
QJet pow(const QJet& a, int n);

}  // namespace quatreg
