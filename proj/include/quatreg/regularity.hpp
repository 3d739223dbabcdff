#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quatreg/catalog.hpp"
#include "quatreg/operators.hpp"
#include "quatreg/parallel.hpp"

namespace quatreg {

/// f = u + iota v with u = 1/2 d/d_l iota (iota f) and v = 1/2 d/d_l iota (f).
struct SliceParts {
  Quaternion u;
  Quaternion v;
};

SliceParts slice_parts(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});

/// |d/d_l iota (iota f) + iota d/d_l iota (f) - 2 f|; vanishes for every f.
double lemma1_residual(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});

/// The six equivalent characterizations of left-Cullen regularity.
enum class Characterization : int {
  CullenOperator = 0,  // df/dt + iota df/dr = 0
  ProductIdentity,     // D(iota f) + iota D f = -2 f / r
  FueterOfF,           // D f = -2 v / r
  FueterOfIotaF,       // D(iota f) = -2 u / r
  FueterOfFOverR2,     // D(f / r^2) = -2 iota u / r^3
  FueterOfIotaFOverR2, // D(iota f / r^2) = +2 iota v / r^3
};
inline constexpr int kCharacterizationCount = 6;

/// Short key used in reports ("item1", "item2", "item3a", ...).
std::string_view item_key(Characterization c);
/// The identity each residual measures, spelled out.
std::string_view item_identity(Characterization c);

struct TheoremOneReport {
  std::string function_id;
  Quaternion point;
  std::array<Quaternion, kCharacterizationCount> residual_value{};
  std::array<double, kCharacterizationCount> residual{};

  double operator[](Characterization c) const { return residual[static_cast<int>(c)]; }
};

TheoremOneReport theorem1_residuals(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});

/// Residuals of
///   dv/dalpha / sin(beta) + du/dbeta = 0,
///   du/dalpha / sin(beta) - dv/dbeta = 0,
/// taken componentwise on the quaternion-valued slice parts.
struct HyperholomorphyResiduals {
  Quaternion first;
  Quaternion second;
  double max_component() const;
};

HyperholomorphyResiduals hyperholomorphy_residuals(const QFunction& f, const Quaternion& p,
                                                   const OperatorOptions& opts = {});

/// Per-sample failure kept in a verdict instead of aborting the sweep.
struct PointError {
  std::size_t index = 0;
  Quaternion point;
  std::string message;
};

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
  Quaternion worst_point;
  std::size_t evaluated = 0;
  bool pass = false;
  /// tol - max; negative on failure.
  double margin = 0.0;
};

/// Aggregated residual statistics for one quantity; pass is max < tol.
ResidualStats aggregate(std::span<const double> values, std::span<const Quaternion> points, double tol);

struct RegularityVerdict {
  std::string function_id;
  double tolerance = 0.0;
  std::array<ResidualStats, kCharacterizationCount> items{};
  /// Every item passes or every item fails.
  bool consistent = false;
  std::vector<PointError> errors;

  bool all_pass() const;
  bool all_fail() const;
};

RegularityVerdict regularity_verdict(const QFunction& f, std::span<const Quaternion> samples, double tol,
                                     const OperatorOptions& opts = {}, Execution exec = Execution::OpenMP);

/// f and iota f are Cullen-regular together or not at all.
struct IotaComposeVerdict {
  ResidualStats f;
  ResidualStats iota_f;
  bool consistent = false;
  std::vector<PointError> errors;
};

IotaComposeVerdict iota_compose_regularity(const QFunction& f, std::span<const Quaternion> samples, double tol,
                                           const OperatorOptions& opts = {}, Execution exec = Execution::OpenMP);

/// Draws the samples for f: the given region restricted by f's own exclusions.
std::vector<Quaternion> samples_for(const QFunction& f, const SampleDomain& region, std::size_t count,
                                    std::uint64_t seed);

}  // namespace quatreg
