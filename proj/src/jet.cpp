#include "quatreg/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "quatreg/error.hpp"

namespace quatreg {

namespace {

struct MultiIndexTable {
  std::array<MultiIndex, kMaxJetCoeffs> indices{};
  std::array<int, 256> slot_by_code{};  // base-4 code of exponents, -1 if unused

  MultiIndexTable() {
    slot_by_code.fill(-1);
    int slot = 0;
    for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
      for (int a = deg; a >= 0; --a) {
        for (int b = deg - a; b >= 0; --b) {
          for (int c = deg - a - b; c >= 0; --c) {
            const int d = deg - a - b - c;
            const MultiIndex m{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)};
            indices[slot] = m;
            slot_by_code[code(m)] = slot;
            ++slot;
          }
        }
      }
    }
  }

  static int code(const MultiIndex& m) { return m[0] * 64 + m[1] * 16 + m[2] * 4 + m[3]; }
};

const MultiIndexTable& table() {
  static const MultiIndexTable t;
  return t;
}

struct ProductTerm {
  std::uint8_t lhs, rhs, out;
};

/// All (a, b) slot pairs whose product survives truncation at the given order.
const std::vector<ProductTerm>& product_terms(int order) {
  static const auto terms = [] {
    std::array<std::vector<ProductTerm>, kMaxJetOrder + 1> all;
    for (int o = 0; o <= kMaxJetOrder; ++o) {
      const int n = coeff_count(o);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const auto& ma = table().indices[a];
          const auto& mb = table().indices[b];
          if (degree(ma) + degree(mb) > o) continue;
          MultiIndex sum{};
          for (int v = 0; v < kJetVars; ++v) sum[v] = static_cast<std::uint8_t>(ma[v] + mb[v]);
          all[o].push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                            static_cast<std::uint8_t>(slot_of(sum))});
        }
      }
    }
    return all;
  }();
  return terms[order];
}

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw Error(ErrorKind::OrderTooHigh, fmt::format("jet order {} outside [0, {}]", order, kMaxJetOrder));
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// f(c + h) = sum_k taylor[k] h^k with h the nilpotent part of a.
RJet compose(const RJet& a, const std::array<double, kMaxJetOrder + 1>& taylor) {
  if (a.order() <= 1) {
    RJet out = a;
    out.coeff(0) = taylor[0];
    for (int s = 1; s < a.size(); ++s) out.coeff(s) = taylor[1] * a.coeff(s);
    return out;
  }
  RJet h = a;
  h.coeff(0) = 0.0;
  RJet acc = RJet::constant(taylor[a.order()], a.order(), a.basis());
  for (int k = a.order() - 1; k >= 0; --k) {
    acc = acc * h;
    acc += taylor[k];
  }
  return acc;
}

[[noreturn]] void domain_error(const char* fn, const std::string& condition, double value) {
  throw Error(ErrorKind::DomainError, fmt::format("{} requires {} (constant term {})", fn, condition, value));
}

}  // namespace

int degree(const MultiIndex& m) { return m[0] + m[1] + m[2] + m[3]; }

int slot_of(const MultiIndex& m) {
  if (degree(m) > kMaxJetOrder) {
    throw Error(ErrorKind::IndexTooDeep, fmt::format("multi-index of degree {} exceeds {}", degree(m), kMaxJetOrder));
  }
  return table().slot_by_code[MultiIndexTable::code(m)];
}

const MultiIndex& multi_index_at(int slot) { return table().indices[slot]; }

RJet RJet::constant(double value, int order, Basis basis) {
  check_order(order);
  RJet j;
  j.order_ = static_cast<std::int8_t>(order);
  j.basis_ = basis;
  std::fill_n(j.c_.begin(), coeff_count(order), 0.0);
  j.c_[0] = value;
  return j;
}

bool operator==(const RJet& a, const RJet& b) {
  return a.order_ == b.order_ && a.basis_ == b.basis_ && std::equal(a.c_.begin(), a.c_.begin() + a.size(), b.c_.begin());
}

RJet RJet::variable(double value, int var, int order, Basis basis) {
  RJet j = constant(value, order, basis);
  if (var < 0 || var >= kJetVars) throw Error(ErrorKind::BadParams, fmt::format("jet variable {} out of range", var));
  if (order >= 1) j.c_[1 + var] = 1.0;
  return j;
}

double RJet::coeff(const MultiIndex& m) const {
  if (degree(m) > order_) return 0.0;
  return c_[slot_of(m)];
}

double RJet::partial(const MultiIndex& m) const {
  if (degree(m) > order_) {
    throw Error(ErrorKind::IndexTooDeep,
                fmt::format("derivative of degree {} from a jet of order {}", degree(m), int(order_)));
  }
  double f = 1.0;
  for (auto e : m) f *= factorial(e);
  return c_[slot_of(m)] * f;
}

RJet RJet::derivative(int var) const {
  RJet d = constant(0.0, order_ > 0 ? order_ - 1 : 0, basis_);
  if (order_ == 0) return d;
  for (int s = 1; s < size(); ++s) {
    const MultiIndex& m = multi_index_at(s);
    if (m[var] == 0) continue;
    MultiIndex lower = m;
    --lower[var];
    d.c_[slot_of(lower)] += m[var] * c_[s];
  }
  return d;
}

RJet RJet::truncated(int order) const {
  check_order(order);
  RJet j = *this;
  if (order < order_) j.order_ = static_cast<std::int8_t>(order);
  return j;
}

void RJet::unify(const RJet& o) {
  if (o.order_ != order_) {
    throw Error(ErrorKind::BasisMismatch, fmt::format("jet orders {} and {} differ", int(order_), int(o.order_)));
  }
  if (basis_ == Basis::None) {
    basis_ = o.basis_;
  } else if (o.basis_ != Basis::None && o.basis_ != basis_) {
    throw Error(ErrorKind::BasisMismatch, "jets seeded in different coordinate bases");
  }
}

RJet& RJet::operator+=(const RJet& o) {
  unify(o);
  for (int s = 0; s < size(); ++s) c_[s] += o.c_[s];
  return *this;
}

RJet& RJet::operator-=(const RJet& o) {
  unify(o);
  for (int s = 0; s < size(); ++s) c_[s] -= o.c_[s];
  return *this;
}

RJet& RJet::add_scaled(const RJet& o, double s) {
  unify(o);
  for (int k = 0; k < size(); ++k) c_[k] += s * o.c_[k];
  return *this;
}

RJet& RJet::operator*=(const RJet& o) { return *this = *this * o; }

RJet& RJet::operator*=(double s) {
  for (int k = 0; k < size(); ++k) c_[k] *= s;
  return *this;
}

RJet operator+(RJet a, const RJet& b) { return a += b; }
RJet operator-(RJet a, const RJet& b) { return a -= b; }
RJet operator-(RJet a) { return a *= -1.0; }

RJet operator*(const RJet& a, const RJet& b) {
  RJet out;
  out.order_ = a.order_;
  out.basis_ = a.basis_;
  out.unify(b);
  switch (a.order_) {
    case 0:
      out.c_[0] = a.c_[0] * b.c_[0];
      break;
    case 1:
      out.c_[0] = a.c_[0] * b.c_[0];
      for (int s = 1; s <= kJetVars; ++s) out.c_[s] = a.c_[0] * b.c_[s] + a.c_[s] * b.c_[0];
      break;
    default:
      std::fill_n(out.c_.begin(), out.size(), 0.0);
      for (const auto& term : product_terms(a.order_)) out.c_[term.out] += a.c_[term.lhs] * b.c_[term.rhs];
  }
  return out;
}

RJet jet_seed(std::span<const double, kJetVars> point, std::optional<int> var_index, int order, Basis basis) {
  if (!var_index) return RJet::constant(point[0], order, Basis::None);
  if (*var_index < 0 || *var_index >= kJetVars) {
    throw Error(ErrorKind::BadParams, fmt::format("jet variable {} out of range", *var_index));
  }
  return RJet::variable(point[*var_index], *var_index, order, basis);
}

RJet sin(const RJet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {s, c, -s / 2.0, -c / 6.0});
}

RJet cos(const RJet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {c, -s, -c / 2.0, s / 6.0});
}

RJet sqrt(const RJet& a) {
  const double v = a.value();
  if (!(v > 0.0)) domain_error("sqrt", "a positive argument", v);
  const double s = std::sqrt(v);
  return compose(a, {s, 0.5 / s, -0.125 / (s * v), 0.0625 / (s * v * v)});
}

RJet recip(const RJet& a) {
  const double v = a.value();
  if (v == 0.0 || !std::isfinite(v)) domain_error("recip", "a nonzero argument", v);
  const double r = 1.0 / v;
  return compose(a, {r, -r * r, r * r * r, -r * r * r * r});
}

RJet atan(const RJet& a) {
  const double c = a.value();
  const double w = 1.0 / (1.0 + c * c);
  return compose(a, {std::atan(c), w, -c * w * w, (6.0 * c * c - 2.0) * w * w * w / 6.0});
}

RJet atanh(const RJet& a) {
  const double c = a.value();
  if (!(std::abs(c) < 1.0)) domain_error("atanh", "|argument| < 1", c);
  const double w = 1.0 / (1.0 - c * c);
  return compose(a, {std::atanh(c), w, c * w * w, (2.0 + 6.0 * c * c) * w * w * w / 6.0});
}

RJet atan2(const RJet& y, const RJet& x) {
  const double y0 = y.value();
  const double x0 = x.value();
  if (x0 == 0.0 && y0 == 0.0) domain_error("atan2", "a nonzero (y, x)", 0.0);
  // The angle offset from (x0, y0) is atan(cross / dot); cross vanishes at the
  // expansion point so the quotient is smooth there.
  const RJet cross = y * x0 - x * y0;
  const RJet dot = x * x0 + y * y0;
  RJet offset = atan(cross * recip(dot));
  offset.coeff(0) = std::atan2(y0, x0);
  return offset;
}

QJet::QJet(RJet t, RJet x, RJet y, RJet z) : c_{std::move(t), std::move(x), std::move(y), std::move(z)} {
  for (int n = 1; n < 4; ++n) {
    if (c_[n].order() != c_[0].order()) {
      throw Error(ErrorKind::BasisMismatch, "quaternion jet components of different orders");
    }
  }
}

QJet::QJet(const RJet& real) : c_{real, RJet::constant(0.0, real.order(), real.basis()),
                                  RJet::constant(0.0, real.order(), real.basis()),
                                  RJet::constant(0.0, real.order(), real.basis())} {}

QJet QJet::constant(const Quaternion& q, int order, Basis basis) {
  return {RJet::constant(q.t, order, basis), RJet::constant(q.x, order, basis), RJet::constant(q.y, order, basis),
          RJet::constant(q.z, order, basis)};
}

QJet QJet::identity(const Quaternion& p, int order) {
  return {RJet::variable(p.t, 0, order, Basis::Cartesian), RJet::variable(p.x, 1, order, Basis::Cartesian),
          RJet::variable(p.y, 2, order, Basis::Cartesian), RJet::variable(p.z, 3, order, Basis::Cartesian)};
}

Basis QJet::basis() const {
  for (const auto& c : c_) {
    if (c.basis() != Basis::None) return c.basis();
  }
  return Basis::None;
}

Quaternion QJet::partial(const MultiIndex& m) const {
  return {c_[0].partial(m), c_[1].partial(m), c_[2].partial(m), c_[3].partial(m)};
}

QJet QJet::derivative(int var) const {
  return {c_[0].derivative(var), c_[1].derivative(var), c_[2].derivative(var), c_[3].derivative(var)};
}

QJet QJet::truncated(int order) const {
  return {c_[0].truncated(order), c_[1].truncated(order), c_[2].truncated(order), c_[3].truncated(order)};
}

QJet QJet::imag_part() const {
  return {RJet::constant(0.0, order(), basis()), c_[1], c_[2], c_[3]};
}

RJet QJet::norm2() const { return c_[0] * c_[0] + imag_norm2(); }

RJet QJet::imag_norm2() const { return c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]; }

QJet& QJet::operator+=(const QJet& o) {
  for (int n = 0; n < 4; ++n) c_[n] += o.c_[n];
  return *this;
}

QJet& QJet::operator-=(const QJet& o) {
  for (int n = 0; n < 4; ++n) c_[n] -= o.c_[n];
  return *this;
}

QJet& QJet::operator*=(const RJet& s) {
  for (auto& c : c_) c = c * s;
  return *this;
}

QJet& QJet::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

QJet operator+(QJet a, const QJet& b) { return a += b; }
QJet operator-(QJet a, const QJet& b) { return a -= b; }
QJet operator-(const QJet& a) { return a * -1.0; }

QJet operator*(const QJet& a, const QJet& b) {
  // Works on quaternion-valued coefficients so each slot pair costs one Hamilton product.
  const int order = a.order();
  RJet zero = RJet::constant(0.0, order, a.basis());
  zero += RJet::constant(0.0, b.order(), b.basis());  // order and basis check
  QJet out(zero, zero, zero, zero);
  auto coeff_of = [](const QJet& q, int s) { return Quaternion(q[0].coeff(s), q[1].coeff(s), q[2].coeff(s), q[3].coeff(s)); };
  auto add_to = [&out](int s, const Quaternion& q) {
    out.c_[0].coeff(s) += q.t;
    out.c_[1].coeff(s) += q.x;
    out.c_[2].coeff(s) += q.y;
    out.c_[3].coeff(s) += q.z;
  };
  if (order <= 1) {
    const Quaternion a0 = coeff_of(a, 0);
    const Quaternion b0 = coeff_of(b, 0);
    add_to(0, a0 * b0);
    for (int s = 1; s < zero.size(); ++s) add_to(s, a0 * coeff_of(b, s) + coeff_of(a, s) * b0);
    return out;
  }
  std::array<Quaternion, kMaxJetCoeffs> qa;
  std::array<Quaternion, kMaxJetCoeffs> qb;
  for (int s = 0; s < zero.size(); ++s) {
    qa[s] = coeff_of(a, s);
    qb[s] = coeff_of(b, s);
  }
  for (const auto& term : product_terms(order)) add_to(term.out, qa[term.lhs] * qb[term.rhs]);
  return out;
}

QJet operator*(QJet a, const RJet& s) { return a *= s; }
QJet operator*(const RJet& s, QJet a) { return a *= s; }
QJet operator*(QJet a, double s) { return a *= s; }
QJet operator*(double s, QJet a) { return a *= s; }

QJet operator*(const QJet& a, const Quaternion& q) {
  return {a[0] * q.t - a[1] * q.x - a[2] * q.y - a[3] * q.z,
          a[0] * q.x + a[1] * q.t + a[2] * q.z - a[3] * q.y,
          a[0] * q.y - a[1] * q.z + a[2] * q.t + a[3] * q.x,
          a[0] * q.z + a[1] * q.y - a[2] * q.x + a[3] * q.t};
}

QJet operator*(const Quaternion& q, const QJet& a) {
  return {q.t * a[0] - q.x * a[1] - q.y * a[2] - q.z * a[3],
          q.t * a[1] + q.x * a[0] + q.y * a[3] - q.z * a[2],
          q.t * a[2] - q.x * a[3] + q.y * a[0] + q.z * a[1],
          q.t * a[3] + q.x * a[2] - q.y * a[1] + q.z * a[0]};
}

QJet operator+(QJet a, const Quaternion& q) {
  for (int n = 0; n < 4; ++n) a[n] += q[n];
  return a;
}

QJet inverse(const QJet& a) {
  const RJet n2 = a.norm2();
  if (n2.value() == 0.0) throw Error(ErrorKind::ZeroDivisor, "inverse of a jet with zero constant term");
  return a.conj() * recip(n2);
}

QJet pow(const QJet& a, int n) {
  if (n == 0) return QJet::constant(Quaternion::one(), a.order(), a.basis());
  const QJet base = n > 0 ? a : inverse(a);
  QJet acc = base;
  for (int k = 1; k < std::abs(n); ++k) acc = acc * base;
  return acc;
}

}  // namespace quatreg
