#include "quatreg/catalog.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include <fmt/format.h>

#include "quatreg/error.hpp"

namespace quatreg {

namespace {

constexpr FunctionFlags kRegular{true, true, false};
constexpr FunctionFlags kControl{false, false, true};

/// Shortest literal that parse_quaternion accepts, zero parts omitted.
std::string compact(const Quaternion& q) {
  static constexpr const char* units[] = {"", "i", "j", "k"};
  std::string out;
  for (int n = 0; n < 4; ++n) {
    if (q[n] == 0.0) continue;
    std::string term;
    if (n > 0 && std::abs(q[n]) == 1.0) {
      term = std::string(q[n] < 0 ? "-" : "") + units[n];
    } else {
      term = fmt::format("{}", q[n]) + units[n];
    }
    if (!out.empty() && term.front() != '-') out += '+';
    out += term;
  }
  return out.empty() ? "0" : out;
}

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::BadParams, fmt::format("expected an integer in '{}', got '{}'", whole, text));
  }
  return value;
}

std::vector<Quaternion> parse_coefficients(std::string_view text, std::string_view whole) {
  std::vector<Quaternion> out;
  while (true) {
    const auto comma = text.find(',');
    const auto token = text.substr(0, comma);
    try {
      out.push_back(parse_quaternion(token));
    } catch (const Error&) {
      throw Error(ErrorKind::BadParams, fmt::format("bad coefficient '{}' in '{}'", token, whole));
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Quaternion reference_pow(const Quaternion& p, int n) {
  const Quaternion base = n >= 0 ? p : q_inv(p);
  Quaternion acc = Quaternion::one();
  for (int k = 0; k < std::abs(n); ++k) acc = acc * base;
  return acc;
}

RJet imag_norm(const QJet& p) { return sqrt(p.imag_norm2()); }

QJet iota_jet(const QJet& p) { return p.imag_part() * recip(imag_norm(p)); }

SampleDomain unrestricted() {
  SampleDomain d;
  d.t_min = -1e300;
  d.t_max = 1e300;
  d.r_min = 1e-300;
  d.r_max = 1e300;
  d.sin_beta_min = 1e-300;
  return d;
}

}  // namespace

std::string FunctionFlags::describe() const {
  std::string out;
  auto add = [&](const char* s) { out += out.empty() ? s : std::string(" ") + s; };
  if (expected_regular) add("expected-regular");
  if (expected_hyperholomorphic) add("expected-hyperholomorphic");
  if (control) add("control");
  return out.empty() ? "none" : out;
}

QFunction::QFunction(std::string id, JetMap jet, PointMap reference, SampleDomain domain, FunctionFlags flags)
    : id_(std::move(id)), jet_(std::move(jet)), reference_(std::move(reference)), domain_(std::move(domain)),
      flags_(flags) {}

QJet QFunction::operator()(const QJet& p) const {
  try {
    return jet_(p);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainError) throw;
    throw Error(ErrorKind::DomainError, fmt::format("{} at {}: {}", id_, to_string(p.value()), e.what()));
  }
}

Quaternion QFunction::operator()(const Quaternion& p) const { return (*this)(QJet::constant(p, 0)).value(); }

Quaternion QFunction::reference(const Quaternion& p) const {
  try {
    return reference_(p);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DomainError) throw;
    throw Error(ErrorKind::DomainError, fmt::format("{} at {}: {}", id_, to_string(p), e.what()));
  }
}

QFunction series(std::vector<Quaternion> coefficients, int lowest_power) {
  if (coefficients.empty()) throw Error(ErrorKind::BadParams, "series needs at least one coefficient");
  std::string id;
  if (lowest_power == 0) {
    id = "series:";
  } else {
    id = fmt::format("laurent:{}:", lowest_power);
  }
  for (std::size_t n = 0; n < coefficients.size(); ++n) id += (n ? "," : "") + compact(coefficients[n]);

  auto jet = [coefficients, lowest_power](const QJet& p) {
    // Horner with p acting from the left keeps every coefficient on the right.
    QJet acc = QJet::constant(coefficients.back(), p.order(), p.basis());
    for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it) acc = p * acc + *it;
    return lowest_power == 0 ? acc : pow(p, lowest_power) * acc;
  };
  auto reference = [coefficients, lowest_power](const Quaternion& p) {
    Quaternion sum;
    for (std::size_t n = 0; n < coefficients.size(); ++n) {
      sum += reference_pow(p, lowest_power + static_cast<int>(n)) * coefficients[n];
    }
    return sum;
  };
  SampleDomain domain = unrestricted();
  return {std::move(id), jet, reference, domain, kRegular};
}

QFunction power(int n) {
  auto jet = [n](const QJet& p) { return pow(p, n); };
  auto reference = [n](const Quaternion& p) { return reference_pow(p, n); };
  return {fmt::format("power:{}", n), jet, reference, unrestricted(), kRegular};
}

QFunction iota_function() {
  return {"iota", iota_jet, [](const Quaternion& p) { return iota_of(p); }, unrestricted(), kRegular};
}

QFunction arctan_example(int which) {
  if (which < 1 || which > 3) throw Error(ErrorKind::BadParams, fmt::format("arctan_ex takes 1, 2 or 3, got {}", which));
  // arctan(a/b) + iota arctanh(c/r) with (a, b, c) = (x, y, z) cycled.
  const int a = 1 + (which - 1) % 3;
  const int b = 1 + which % 3;
  const int c = 1 + (which + 1) % 3;
  auto jet = [a, b, c](const QJet& p) {
    const RJet r = imag_norm(p);
    const RJet u = atan(p[a] * recip(p[b]));
    const RJet v = atanh(p[c] * recip(r));
    return QJet(u) + iota_jet(p) * v;
  };
  auto reference = [a, b, c](const Quaternion& p) {
    if (p[b] == 0.0) throw Error(ErrorKind::DomainError, "arctan quotient undefined on its cut");
    const double r = p.imag_norm();
    const double ratio = p[c] / r;
    if (!(std::abs(ratio) < 1.0)) throw Error(ErrorKind::DomainError, "arctanh argument outside (-1, 1)");
    return Quaternion(std::atan(p[a] / p[b])) + iota_of(p) * std::atanh(ratio);
  };
  SampleDomain domain = unrestricted();
  domain.exclusions.push_back({Exclusion::Kind::AbsComponentBelow, b, 0.05});
  domain.exclusions.push_back({Exclusion::Kind::AbsRatioAbove, c, 0.995});
  return {fmt::format("arctan_ex:{}", which), jet, reference, domain, kRegular};
}

QFunction conjugate() {
  return {"conj", [](const QJet& p) { return p.conj(); }, [](const Quaternion& p) { return p.conj(); },
          unrestricted(), kControl};
}

QFunction coordinate(int component) {
  static constexpr const char* names[] = {"t", "x", "y", "z"};
  if (component < 0 || component > 3) throw Error(ErrorKind::BadParams, "coordinate index outside 0..3");
  return {fmt::format("coord:{}", names[component]), [component](const QJet& p) { return QJet(p[component]); },
          [component](const Quaternion& p) { return Quaternion(p[component]); }, unrestricted(), kControl};
}

QFunction constant(const Quaternion& q) {
  return {"const:" + compact(q), [q](const QJet& p) { return QJet::constant(q, p.order(), p.basis()); },
          [q](const Quaternion&) { return q; }, unrestricted(), kRegular};
}

QFunction iota_times(const QFunction& f) {
  auto jet = [f](const QJet& p) { return iota_jet(p) * f(p); };
  auto reference = [f](const Quaternion& p) { return iota_of(p) * f.reference(p); };
  return {"iota*(" + f.id() + ")", jet, reference, f.domain(), f.flags()};
}

QFunction over_r2(const QFunction& f) {
  auto jet = [f](const QJet& p) { return f(p) * recip(p.imag_norm2()); };
  auto reference = [f](const Quaternion& p) {
    const double r2 = p.x * p.x + p.y * p.y + p.z * p.z;
    if (r2 == 0.0) throw Error(ErrorKind::DomainError, "division by r^2 on the real axis");
    return f.reference(p) / r2;
  };
  return {"(" + f.id() + ")/r^2", jet, reference, f.domain(), FunctionFlags{}};
}

QFunction product(const QFunction& f, const QFunction& g) {
  auto jet = [f, g](const QJet& p) { return f(p) * g(p); };
  auto reference = [f, g](const Quaternion& p) { return f.reference(p) * g.reference(p); };
  FunctionFlags flags;
  flags.expected_regular = f.flags().expected_regular && g.flags().expected_regular;
  flags.control = f.flags().control || g.flags().control;
  return {"(" + f.id() + ")*(" + g.id() + ")", jet, reference, f.domain().restricted_by(g.domain()), flags};
}

QFunction coordinate_polynomial(std::vector<PolynomialTerm> terms, std::string id) {
  for (const auto& term : terms) {
    if (degree(term.exponents) > kMaxJetOrder) {
      throw Error(ErrorKind::BadParams, "polynomial terms are limited to degree 3");
    }
  }
  auto jet = [terms](const QJet& p) {
    const RJet one = RJet::constant(1.0, p.order(), p.basis());
    std::array<std::array<RJet, kMaxJetOrder + 1>, kJetVars> powers;
    for (int v = 0; v < kJetVars; ++v) {
      powers[v][0] = one;
      for (int e = 1; e <= kMaxJetOrder; ++e) powers[v][e] = powers[v][e - 1] * p[v];
    }
    std::array<RJet, 4> sum{};
    for (auto& c : sum) c = RJet::constant(0.0, p.order(), p.basis());
    for (const auto& term : terms) {
      RJet monomial = one;
      for (int v = 0; v < kJetVars; ++v) {
        if (term.exponents[v] > 0) monomial *= powers[v][term.exponents[v]];
      }
      for (int n = 0; n < 4; ++n) {
        if (term.coefficient[n] != 0.0) sum[n].add_scaled(monomial, term.coefficient[n]);
      }
    }
    return QJet(sum[0], sum[1], sum[2], sum[3]);
  };
  auto reference = [terms](const Quaternion& p) {
    Quaternion sum;
    for (const auto& term : terms) {
      double monomial = 1.0;
      for (int v = 0; v < kJetVars; ++v) monomial *= std::pow(p[v], term.exponents[v]);
      sum += term.coefficient * monomial;
    }
    return sum;
  };
  return {std::move(id), jet, reference, unrestricted(), FunctionFlags{}};
}

QFunction catalog_get(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const std::string_view params = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_params = colon != std::string_view::npos;
  auto require_params = [&] {
    if (!has_params || params.empty()) {
      throw Error(ErrorKind::BadParams, fmt::format("'{}' needs parameters", spec));
    }
  };
  auto forbid_params = [&] {
    if (has_params) throw Error(ErrorKind::BadParams, fmt::format("'{}' takes no parameters", name));
  };

  if (name == "power") {
    require_params();
    return power(parse_int(params, spec));
  }
  if (name == "series") {
    require_params();
    return series(parse_coefficients(params, spec));
  }
  if (name == "laurent") {
    require_params();
    const auto sep = params.find(':');
    const int lowest = parse_int(params.substr(0, sep), spec);
    if (sep == std::string_view::npos) return series({Quaternion::one()}, lowest);
    return series(parse_coefficients(params.substr(sep + 1), spec), lowest);
  }
  if (name == "iota") {
    forbid_params();
    return iota_function();
  }
  if (name == "arctan_ex") {
    require_params();
    return arctan_example(parse_int(params, spec));
  }
  if (name == "conj") {
    forbid_params();
    return conjugate();
  }
  if (name == "coord") {
    require_params();
    static constexpr std::string_view names[] = {"t", "x", "y", "z"};
    for (int c = 0; c < 4; ++c) {
      if (params == names[c]) return coordinate(c);
    }
    throw Error(ErrorKind::BadParams, fmt::format("coord takes t, x, y or z, got '{}'", params));
  }
  if (name == "const") {
    require_params();
    try {
      return constant(parse_quaternion(params));
    } catch (const Error&) {
      throw Error(ErrorKind::BadParams, fmt::format("bad constant in '{}'", spec));
    }
  }
  throw Error(ErrorKind::UnknownFunction, fmt::format("unknown function '{}' in '{}'", name, spec));
}

std::vector<QFunction> standard_members() {
  std::vector<QFunction> out;
  for (int n : {-3, -2, -1, 1, 2, 3, 4, 5}) out.push_back(power(n));
  out.push_back(series({Quaternion::one(), Quaternion::i(), Quaternion(0, 0, 0.5)}));
  out.push_back(series({Quaternion::k()}, -2));
  out.push_back(iota_function());
  for (int n = 1; n <= 3; ++n) out.push_back(arctan_example(n));
  out.push_back(conjugate());
  out.push_back(coordinate(1));
  return out;
}

std::string list_catalog() {
  std::string out;
  for (const auto& f : standard_members()) {
    std::string domain;
    for (const auto& e : f.domain().exclusions) domain += (domain.empty() ? "" : ",") + e.describe();
    out += fmt::format("{} {} exclude={}\n", f.id(), f.flags().describe(), domain.empty() ? "none" : domain);
  }
  return out;
}

}  // namespace quatreg
