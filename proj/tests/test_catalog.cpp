#include <doctest.h>

#include <cmath>
#include <numbers>

#include "quatreg/catalog.hpp"
#include "quatreg/error.hpp"

using namespace quatreg;

namespace {

double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

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

TEST_CASE("catalog values") {
  CHECK(catalog_get("power:2")(Quaternion(1, 1)) == Quaternion(0, 2));
  CHECK(catalog_get("power:-1")(Quaternion::i()) == -Quaternion::i());
  CHECK(catalog_get("iota")(Quaternion(2, 0, 3)) == Quaternion::j());

  // arctan(x/y) + iota arctanh(z/r) on x = y, z = 0
  const Quaternion p(0.4, 0.7, 0.7, 0.0);
  const auto ex1 = catalog_get("arctan_ex:1");
  CHECK(dist(ex1(p), Quaternion(std::numbers::pi / 4)) < 1e-15);
  CHECK(kind_of([&] { ex1(Quaternion(0.1, 0.5, 0.0, 0.3)); }) == ErrorKind::DomainError);
  CHECK(kind_of([&] { ex1.reference(Quaternion(0.1, 0.5, 0.0, 0.3)); }) == ErrorKind::DomainError);

  // right coefficient placement: 1 + j i = 1 - k
  CHECK(catalog_get("series:1,i")(Quaternion::j()) == Quaternion(1, 0, 0, -1));
  CHECK(catalog_get("laurent:-1")(Quaternion(0, 0, 2)) == Quaternion(0, 0, -0.5));
  CHECK(kind_of([] { catalog_get("laurent:-2:k")(Quaternion()); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { catalog_get("iota")(Quaternion(3.0)); }) == ErrorKind::DomainError);
}

TEST_CASE("catalog parsing errors") {
  CHECK(kind_of([] { catalog_get("powr:2"); }) == ErrorKind::UnknownFunction);
  CHECK(kind_of([] { catalog_get("power"); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { catalog_get("power:two"); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { catalog_get("arctan_ex:4"); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { catalog_get("iota:1"); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { catalog_get("series:1,q"); }) == ErrorKind::BadParams);
  CHECK(kind_of([] { catalog_get("coord:w"); }) == ErrorKind::BadParams);
  try {
    catalog_get("powr:2");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("powr") != std::string::npos);
  }
}

TEST_CASE("flags and ids") {
  CHECK(catalog_get("power:3").flags().expected_regular);
  CHECK(catalog_get("arctan_ex:2").flags().expected_hyperholomorphic);
  CHECK(catalog_get("conj").flags().control);
  CHECK(catalog_get("coord:x").flags().control);
  CHECK(catalog_get("series:1,i,0.5j").id() == "series:1,i,0.5j");
  CHECK(catalog_get("laurent:-2:k").id() == "laurent:-2:k");
  for (const auto& f : standard_members()) CHECK(catalog_get(f.id()).id() == f.id());

  const std::string listing = list_catalog();
  CHECK(listing.find("iota expected-regular") != std::string::npos);
  CHECK(listing.find("arctan_ex:1 expected-regular expected-hyperholomorphic") != std::string::npos);
  CHECK(listing.find("conj control") != std::string::npos);
}

TEST_CASE("jet evaluation agrees with the independent point evaluator") {
  SampleDomain d;
  for (const auto& f : standard_members()) {
    CAPTURE(f.id());
    for (const auto& p : draw_samples(d.restricted_by(f.domain()), 200, 5)) {
      const Quaternion a = f(p), b = f.reference(p);
      REQUIRE(dist(a, b) < 1e-12 * (1.0 + b.norm()));
    }
  }
}

TEST_CASE("series evaluation is right-linear in the coefficients") {
  UniformStream rng(8);
  auto rq = [&] { return Quaternion(rng.next(-1, 1), rng.next(-1, 1), rng.next(-1, 1), rng.next(-1, 1)); };
  for (int n = 0; n < 100; ++n) {
    std::vector<Quaternion> a(4), b(4), mix(4);
    const Quaternion c = rq();
    for (int k = 0; k < 4; ++k) {
      a[k] = rq();
      b[k] = rq();
      mix[k] = a[k] + b[k] * c;
    }
    const Quaternion p = rq();
    const Quaternion lhs = series(mix)(p);
    const Quaternion rhs = series(a)(p) + series(b)(p) * c;
    REQUIRE(dist(lhs, rhs) < 1e-13);
  }
  // coefficient side matters: p a != a p for p = j, a = i
  const Quaternion p = Quaternion::j();
  const Quaternion right = series({Quaternion(), Quaternion::i()})(p);
  const Quaternion left = Quaternion::i() * p;
  CHECK(dist(right, left) > 1.0);
}

TEST_CASE("composite builders") {
  const Quaternion p(0.2, 0.3, -0.8, 0.5);
  const auto sq = power(2);
  CHECK(dist(iota_times(sq)(p), iota_of(p) * (p * p)) < 1e-15);
  CHECK(dist(over_r2(sq)(p), (p * p) / 0.98) < 1e-14);
  CHECK(dist(product(sq, iota_function())(p), (p * p) * iota_of(p)) < 1e-14);

  const auto poly = coordinate_polynomial({{{1, 0, 2, 0}, Quaternion::k()}, {{0, 0, 0, 0}, Quaternion(2)}});
  CHECK(dist(poly(p), Quaternion::k() * (0.2 * 0.64) + Quaternion(2)) < 1e-15);
  CHECK(kind_of([] { coordinate_polynomial({{{2, 2, 0, 0}, Quaternion(1)}}); }) == ErrorKind::BadParams);
}
