#include "quatreg/sample_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "quatreg/error.hpp"
#include "quatreg/spherical.hpp"

namespace quatreg {

namespace {
constexpr const char* kComponentNames[] = {"t", "x", "y", "z"};
}

bool Exclusion::excludes(const Quaternion& p) const {
  const double c = std::abs(p[component]);
  switch (kind) {
    case Kind::AbsComponentBelow: return c < threshold;
    case Kind::AbsRatioAbove: return c > threshold * p.imag_norm();
  }
  return false;
}

std::string Exclusion::describe() const {
  if (kind == Kind::AbsComponentBelow) return fmt::format("|{}|<{}", kComponentNames[component], threshold);
  return fmt::format("|{}|/r>{}", kComponentNames[component], threshold);
}

bool SampleDomain::contains(const Quaternion& p) const {
  const double r = p.imag_norm();
  if (p.t < t_min || p.t > t_max || r < r_min || r > r_max || r == 0.0) return false;
  if (std::hypot(p.x, p.y) / r < sin_beta_min) return false;
  return std::none_of(exclusions.begin(), exclusions.end(), [&](const Exclusion& e) { return e.excludes(p); });
}

std::string SampleDomain::describe() const {
  std::string out = fmt::format("t=[{},{}] r=[{},{}] sin_beta>={}", t_min, t_max, r_min, r_max, sin_beta_min);
  for (const auto& e : exclusions) out += " exclude " + e.describe();
  return out;
}

SampleDomain SampleDomain::restricted_by(const SampleDomain& other) const {
  SampleDomain d = *this;
  d.t_min = std::max(t_min, other.t_min);
  d.t_max = std::min(t_max, other.t_max);
  d.r_min = std::max(r_min, other.r_min);
  d.r_max = std::min(r_max, other.r_max);
  d.sin_beta_min = std::max(sin_beta_min, other.sin_beta_min);
  for (const auto& e : other.exclusions) {
    if (std::find(d.exclusions.begin(), d.exclusions.end(), e) == d.exclusions.end()) d.exclusions.push_back(e);
  }
  return d;
}

std::vector<Quaternion> draw_samples(const SampleDomain& domain, std::size_t count, std::uint64_t seed) {
  if (!(domain.r_min > 0.0) || domain.r_max < domain.r_min || domain.t_max < domain.t_min ||
      !(domain.sin_beta_min > 0.0) || domain.sin_beta_min >= 1.0) {
    throw Error(ErrorKind::DomainError, "empty or degenerate sample domain " + domain.describe());
  }
  // cos(beta) uniform on a band that keeps sin(beta) above the floor with a
  // little room for rounding.
  const double cos_max = std::sqrt(1.0 - domain.sin_beta_min * domain.sin_beta_min) * (1.0 - 1e-12);
  UniformStream rng(seed);
  std::vector<Quaternion> out;
  out.reserve(count);
  const std::size_t max_attempts = 1000 * count + 1000;
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt >= max_attempts) {
      throw Error(ErrorKind::DomainError, "rejection sampling exhausted on " + domain.describe());
    }
    SphericalPoint s;
    s.t = rng.next(domain.t_min, domain.t_max);
    s.r = rng.next(domain.r_min, domain.r_max);
    s.alpha = rng.next(0.0, 2.0 * std::numbers::pi);
    s.beta = std::acos(rng.next(-cos_max, cos_max));
    const Quaternion p = from_spherical(s);
    if (domain.contains(p)) out.push_back(p);
  }
  return out;
}

}  // namespace quatreg
