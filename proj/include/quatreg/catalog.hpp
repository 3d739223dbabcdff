#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "quatreg/jet.hpp"
#include "quatreg/quaternion.hpp"
#include "quatreg/sample_domain.hpp"

namespace quatreg {

struct FunctionFlags {
  bool expected_regular = false;
  bool expected_hyperholomorphic = false;
  bool control = false;

  std::string describe() const;
  friend bool operator==(const FunctionFlags&, const FunctionFlags&) = default;
};

/// A quaternionic function of one quaternionic variable, evaluable on points
/// and on Cartesian or spherical jets.
class QFunction {
 public:
  using JetMap = std::function<QJet(const QJet&)>;
  using PointMap = std::function<Quaternion(const Quaternion&)>;

  QFunction(std::string id, JetMap jet, PointMap reference, SampleDomain domain, FunctionFlags flags);

  const std::string& id() const { return id_; }
  const SampleDomain& domain() const { return domain_; }
  const FunctionFlags& flags() const { return flags_; }

  /// Jet of f(p) given the jet of p. Singular inputs surface as DomainError.
  QJet operator()(const QJet& p) const;
  /// f(p) through the jet path at order 0.
  Quaternion operator()(const Quaternion& p) const;
  /// f(p) through an independent evaluator built on the core quaternion type.
  Quaternion reference(const Quaternion& p) const;

 private:
  std::string id_;
  JetMap jet_;
  PointMap reference_;
  SampleDomain domain_;
  FunctionFlags flags_;
};

inline Quaternion evaluate(const QFunction& f, const Quaternion& p) { return f(p); }
inline QJet evaluate(const QFunction& f, const QJet& p) { return f(p); }

/// Looks up "name" or "name:params", e.g. "power:3", "laurent:-2:k",
/// "series:1,i,0.5j", "arctan_ex:2", "coord:x", "const:1+i".
/// Throws UnknownFunction for an unknown name and BadParams for bad parameters.
QFunction catalog_get(std::string_view spec);

/// The members exercised by the verification suites, controls last.
std::vector<QFunction> standard_members();

/// One line per standard member: id, flags, domain descriptor.
std::string list_catalog();

// Builders. Each returns a function on the common domain of its inputs.

/// sum_n p^n a_n with coefficients on the right, starting at p^lowest_power.
QFunction series(std::vector<Quaternion> coefficients, int lowest_power = 0);
QFunction power(int n);
QFunction iota_function();
/// arctan(x/y) + iota arctanh(z/r) and its two cyclic relatives.
QFunction arctan_example(int which);
QFunction conjugate();
QFunction coordinate(int component);
QFunction constant(const Quaternion& q);

/// p -> iota(p) f(p)
QFunction iota_times(const QFunction& f);
/// p -> f(p) / r^2
QFunction over_r2(const QFunction& f);
/// p -> f(p) g(p)
QFunction product(const QFunction& f, const QFunction& g);

/// Polynomial in the real coordinates (t, x, y, z) with quaternion coefficients.
struct PolynomialTerm {
  MultiIndex exponents{};
  Quaternion coefficient;
};
QFunction coordinate_polynomial(std::vector<PolynomialTerm> terms, std::string id = "polynomial");

}  // namespace quatreg
