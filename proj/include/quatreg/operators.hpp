#pragma once

#include "quatreg/catalog.hpp"
#include "quatreg/jet.hpp"
#include "quatreg/quaternion.hpp"
#include "quatreg/spherical.hpp"

namespace quatreg {

enum class Backend { Jets, FiniteDifference };

std::string_view to_string(Backend b);

struct OperatorOptions {
  Backend backend = Backend::Jets;
  /// Below this imaginary norm the point counts as on the real axis.
  double r_min = 1e-6;
  /// Below this sin(beta) the spherical chart counts as degenerate.
  double sin_beta_min = 1e-6;
  /// Central-difference steps for first, second and third derivatives.
  double fd_step1 = 1e-5;
  double fd_step2 = 1e-3;
  double fd_step3 = 1e-2;
};

struct OperatorResult {
  Quaternion value;
  Backend backend = Backend::Jets;
  Quaternion point;
};

/// Chart coordinates at p. Throws OnRealAxis if r <= r_min and, when
/// require_chart is set, DegenerateChart if sin(beta) <= sin_beta_min.
SphericalPoint checked_chart(const Quaternion& p, const OperatorOptions& opts, bool require_chart);

/// Jets in the (t, r, alpha, beta) variables of the point p and of the chart's
/// moving frame: iota, (d iota / d alpha)^-1 and (d iota / d beta)^-1. The
/// inverses are left empty without with_frame, which allows sin(beta) = 0.
struct ChartJets {
  QJet point;
  QJet iota;
  QJet inv_iota_alpha;
  QJet inv_iota_beta;
};
ChartJets chart_jets(const SphericalPoint& s, int order, bool with_frame = true);

/// (iota_alpha)^-1 dF/dalpha + (iota_beta)^-1 dF/dbeta, one order lower than F.
QJet angular_derivative_jet(const QJet& F, const ChartJets& chart);

/// Jet-chart variable slots.
inline constexpr int kVarT = 0;
inline constexpr int kVarR = 1;
inline constexpr int kVarAlpha = 2;
inline constexpr int kVarBeta = 3;

/// D_l f = df/dt + i df/dx + j df/dy + k df/dz.
OperatorResult fueter_left(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});
/// D_l f = df/dt + iota df/dr - (1/r) d/d_l iota f, valid off the plane t + z k.
OperatorResult fueter_left_spherical(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});
/// df/dt + iota df/dr.
OperatorResult cullen_left(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});
/// (iota_alpha)^-1 df/dalpha + (iota_beta)^-1 df/dbeta, inverses acting from the left.
OperatorResult angular_derivative(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});
OperatorResult laplacian(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});
/// D_l applied to the Laplacian of f.
OperatorResult fueter_laplacian(const QFunction& f, const Quaternion& p, const OperatorOptions& opts = {});

}  // namespace quatreg
