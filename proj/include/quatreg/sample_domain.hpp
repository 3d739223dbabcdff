#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "quatreg/quaternion.hpp"

namespace quatreg {

/// A region excluded from sampling, typically a branch cut or a blow-up locus.
struct Exclusion {
  enum class Kind {
    AbsComponentBelow,  // |p[component]| < threshold
    AbsRatioAbove,      // |p[component]| / r > threshold
  };
  Kind kind = Kind::AbsComponentBelow;
  int component = 1;
  double threshold = 0.0;

  bool excludes(const Quaternion& p) const;
  std::string describe() const;

  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

/// Sampling region inside Omega minus the real axis, in (t, r, alpha, beta).
struct SampleDomain {
  double t_min = -1.0;
  double t_max = 1.0;
  double r_min = 0.5;
  double r_max = 2.0;
  double sin_beta_min = 0.1;
  std::vector<Exclusion> exclusions;

  bool contains(const Quaternion& p) const;
  std::string describe() const;

  /// Intersection of ranges and union of exclusions.
  SampleDomain restricted_by(const SampleDomain& other) const;

  friend bool operator==(const SampleDomain&, const SampleDomain&) = default;
};

/// Uniform double in [0, 1). std::mt19937_64 output is fixed by the standard;
/// the distribution classes are not, so the conversion is done here.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

/// Deterministic rejection sampler. Throws DomainError if the exclusions leave
/// (almost) nothing to sample.
std::vector<Quaternion> draw_samples(const SampleDomain& domain, std::size_t count, std::uint64_t seed);

}  // namespace quatreg
