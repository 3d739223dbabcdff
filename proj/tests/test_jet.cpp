#include <doctest.h>

#include <cmath>

#include "quatreg/error.hpp"
#include "quatreg/jet.hpp"
#include "quatreg/sample_domain.hpp"

using namespace quatreg;

namespace {

constexpr MultiIndex kT{1, 0, 0, 0};
constexpr MultiIndex kTT{2, 0, 0, 0};
constexpr MultiIndex kTTT{3, 0, 0, 0};

RJet random_integer_jet(UniformStream& rng, int order) {
  RJet j = RJet::constant(0.0, order, Basis::Cartesian);
  for (int s = 0; s < j.size(); ++s) j.coeff(s) = std::floor(rng.next(-5.0, 5.0));
  return j;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::ConfigError;
}

}  // namespace

TEST_CASE("coefficient layout") {
  for (int o = 0; o <= kMaxJetOrder; ++o) CHECK(RJet::constant(0, o).size() == coeff_count(o));
  CHECK(coeff_count(3) == 35);
  for (int s = 0; s < kMaxJetCoeffs; ++s) CHECK(slot_of(multi_index_at(s)) == s);
  CHECK(kind_of([] { slot_of(MultiIndex{2, 2, 0, 0}); }) == ErrorKind::IndexTooDeep);
}

TEST_CASE("seeding") {
  const double point[4] = {1.0, 2.0, 3.0, 4.0};
  const RJet t = jet_seed(point, 0, 2);
  CHECK(t.value() == 1.0);
  CHECK(t.coeff(kT) == 1.0);
  for (int s = 2; s < t.size(); ++s) CHECK(t.coeff(s) == 0.0);

  const RJet c = RJet::constant(3.0, 3);
  CHECK(c.value() == 3.0);
  for (int s = 1; s < c.size(); ++s) CHECK(c.coeff(s) == 0.0);

  CHECK(kind_of([&] { jet_seed(point, 0, 4); }) == ErrorKind::OrderTooHigh);
  CHECK(kind_of([] { RJet::constant(1.0, -1); }) == ErrorKind::OrderTooHigh);
}

TEST_CASE("truncated arithmetic") {
  const RJet t = RJet::variable(1.0, 0, 2, Basis::Cartesian);
  const RJet sq = t * t;
  CHECK(sq.coeff(MultiIndex{0, 0, 0, 0}) == 1.0);
  CHECK(sq.coeff(kT) == 2.0);
  CHECK(sq.coeff(kTT) == 1.0);

  const RJet eps = RJet::variable(0.0, 0, 2, Basis::Cartesian);
  const RJet cube = eps * eps * eps;
  for (int s = 0; s < cube.size(); ++s) CHECK(cube.coeff(s) == 0.0);

  CHECK(kind_of([] { return RJet::constant(1, 2) + RJet::constant(1, 3); }) == ErrorKind::BasisMismatch);
  CHECK(kind_of([] {
    return RJet::variable(1, 0, 2, Basis::Cartesian) * RJet::variable(1, 0, 2, Basis::Spherical);
  }) == ErrorKind::BasisMismatch);
  // constants adopt the basis of the jet they meet
  CHECK((RJet::constant(2, 2) * t).basis() == Basis::Cartesian);
}

TEST_CASE("product is commutative and exactly associative on integer jets") {
  UniformStream rng(99);
  for (int o = 0; o <= kMaxJetOrder; ++o) {
    for (int n = 0; n < 200; ++n) {
      const RJet a = random_integer_jet(rng, o), b = random_integer_jet(rng, o), c = random_integer_jet(rng, o);
      REQUIRE(a * b == b * a);
      REQUIRE((a * b) * c == a * (b * c));
      const QJet qa(a, b, c, a), qb(c, a, b, b), qc(b, c, a, c);
      REQUIRE((qa * qb) * qc == qa * (qb * qc));
    }
  }
}

TEST_CASE("quaternion jets keep noncommutativity") {
  const QJet i = QJet::constant(Quaternion::i(), 2);
  const QJet j = QJet::constant(Quaternion::j(), 2);
  CHECK((i * j).value() == Quaternion::k());
  CHECK((j * i).value() == -Quaternion::k());

  UniformStream rng(3);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion a(rng.next(-2, 2), rng.next(-2, 2), rng.next(-2, 2), rng.next(-2, 2));
    const Quaternion b(rng.next(-2, 2), rng.next(-2, 2), rng.next(-2, 2), rng.next(-2, 2));
    const QJet ja = QJet::constant(a, 0), jb = QJet::constant(b, 0);
    // order-0 arithmetic is bit-identical to the core product
    REQUIRE((ja * jb).value() == a * b);
    REQUIRE((ja * b).value() == a * b);
    REQUIRE((a * jb).value() == a * b);
    REQUIRE((ja + jb).value() == a + b);
    REQUIRE((ja * jb - jb * ja).value() == a * b - b * a);
  }
}

TEST_CASE("elementary functions") {
  const RJet eps = RJet::variable(0.0, 0, 3, Basis::Cartesian);
  const RJet s = sin(eps);
  CHECK(s.coeff(MultiIndex{0, 0, 0, 0}) == 0.0);
  CHECK(s.coeff(kT) == 1.0);
  CHECK(s.coeff(kTT) == 0.0);
  CHECK(s.coeff(kTTT) == doctest::Approx(-1.0 / 6.0).epsilon(1e-16));

  const RJet r = recip(RJet::variable(2.0, 0, 1, Basis::Cartesian));
  CHECK(r.value() == 0.5);
  CHECK(r.coeff(kT) == -0.25);

  // atanh'(0.5) against a central difference
  const RJet a = atanh(RJet::variable(0.5, 0, 1, Basis::Cartesian));
  const double h = 1e-6;
  const double fd = (std::atanh(0.5 + h) - std::atanh(0.5 - h)) / (2 * h);
  CHECK(a.value() == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
  CHECK(a.coeff(kT) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(a.coeff(kT) == doctest::Approx(fd).epsilon(1e-9));

  CHECK(kind_of([] { recip(RJet::constant(0.0, 2)); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { atanh(RJet::constant(1.0, 2)); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { sqrt(RJet::constant(-1.0, 2)); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { atan2(RJet::constant(0.0, 2), RJet::constant(0.0, 2)); }) == ErrorKind::DomainError);
}

TEST_CASE("elementary derivatives match finite differences up to third order") {
  struct Case {
    const char* name;
    RJet (*jet)(const RJet&);
    double (*ref)(double);
    double at;
  };
  const Case cases[] = {
      {"sin", [](const RJet& a) { return sin(a); }, [](double v) { return std::sin(v); }, 0.7},
      {"cos", [](const RJet& a) { return cos(a); }, [](double v) { return std::cos(v); }, -1.2},
      {"sqrt", [](const RJet& a) { return sqrt(a); }, [](double v) { return std::sqrt(v); }, 1.7},
      {"recip", [](const RJet& a) { return recip(a); }, [](double v) { return 1.0 / v; }, -0.8},
      {"atan", [](const RJet& a) { return atan(a); }, [](double v) { return std::atan(v); }, 1.3},
      {"atanh", [](const RJet& a) { return atanh(a); }, [](double v) { return std::atanh(v); }, -0.4},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    const RJet j = c.jet(RJet::variable(c.at, 0, 3, Basis::Cartesian));
    const double h = 1e-3;
    auto f = [&](double dx) { return c.ref(c.at + dx); };
    const double d1 = (f(-2 * h) - 8 * f(-h) + 8 * f(h) - f(2 * h)) / (12 * h);
    const double d2 = (-f(-2 * h) + 16 * f(-h) - 30 * f(0) + 16 * f(h) - f(2 * h)) / (12 * h * h);
    const double d3 = (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h * h * h);
    CHECK(j.value() == c.ref(c.at));
    CHECK(j.partial(kT) == doctest::Approx(d1).epsilon(1e-9));
    CHECK(j.partial(kTT) == doctest::Approx(d2).epsilon(1e-6));
    CHECK(j.partial(kTTT) == doctest::Approx(d3).epsilon(1e-4));
  }
}

TEST_CASE("atan2 jet follows the angle across quadrants") {
  UniformStream rng(17);
  for (int n = 0; n < 200; ++n) {
    const double x0 = rng.next(-2, 2), y0 = rng.next(-2, 2);
    const RJet x = RJet::variable(x0, 1, 2, Basis::Cartesian);
    const RJet y = RJet::variable(y0, 2, 2, Basis::Cartesian);
    const RJet a = atan2(y, x);
    const double r2 = x0 * x0 + y0 * y0;
    REQUIRE(a.value() == std::atan2(y0, x0));
    REQUIRE(a.partial(MultiIndex{0, 1, 0, 0}) == doctest::Approx(-y0 / r2).epsilon(1e-12));
    REQUIRE(a.partial(MultiIndex{0, 0, 1, 0}) == doctest::Approx(x0 / r2).epsilon(1e-12));
    // d2/dx dy atan2 = (y^2 - x^2) / r^4
    REQUIRE(a.partial(MultiIndex{0, 1, 1, 0}) == doctest::Approx((y0 * y0 - x0 * x0) / (r2 * r2)).epsilon(1e-10));
  }
}

TEST_CASE("partials of p and p squared") {
  const Quaternion p(0.3, -0.7, 1.1, 0.4);
  const QJet id = QJet::identity(p, 2);
  CHECK(id.partial(MultiIndex{0, 1, 0, 0}) == Quaternion::i());
  const QJet sq = id * id;
  CHECK(sq.partial(kTT) == Quaternion(2.0));
  CHECK(sq.partial(MultiIndex{1, 1, 0, 0}) == Quaternion(0, 2));
  CHECK(kind_of([&] { sq.partial(kTTT); }) == ErrorKind::IndexTooDeep);

  // derivative() lowers the order and agrees with partial()
  const QJet dx = sq.derivative(1);
  CHECK(dx.order() == 1);
  CHECK(dx.value() == sq.partial(MultiIndex{0, 1, 0, 0}));
  CHECK(dx.partial(kT) == sq.partial(MultiIndex{1, 1, 0, 0}));
}

TEST_CASE("inverse and integer powers") {
  const Quaternion p(0.3, -0.7, 1.1, 0.4);
  const QJet id = QJet::identity(p, 3);
  const QJet inv = inverse(id);
  const QJet prod = inv * id;
  CHECK((prod.value() - Quaternion::one()).norm() < 1e-15);
  for (int s = 1; s < prod[0].size(); ++s) {
    for (int c = 0; c < 4; ++c) REQUIRE(std::abs(prod[c].coeff(s)) < 1e-14);
  }
  CHECK((pow(id, 3).value() - p * p * p).norm() < 1e-14);
  CHECK((pow(id, -2).value() - q_inv(p * p)).norm() < 1e-14);
  CHECK(pow(id, 0).value() == Quaternion::one());
  CHECK(kind_of([] { inverse(QJet::constant(Quaternion(), 1)); }) == ErrorKind::ZeroDivisor);
}
