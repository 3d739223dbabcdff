#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "quatreg/catalog.hpp"
#include "quatreg/operators.hpp"
#include "quatreg/parallel.hpp"
#include "quatreg/quadrature.hpp"

namespace quatreg {

struct SurfaceNode {
  Quaternion point;
  std::array<double, 4> normal{};  // outward, unit length
  double weight = 0.0;             // area element times quadrature weight

  /// n0 + n1 i + n2 j + n3 k
  Quaternion normal_quaternion() const { return {normal[0], normal[1], normal[2], normal[3]}; }
};

struct VolumeNode {
  Quaternion point;
  double weight = 0.0;
};

/// Smooth closed 3-surface K in 4-space, the image of the unit 3-sphere under
/// w -> center + diag(axes) w. Nodes on K and in its interior K* are generated
/// on demand from a product rule on the unit sphere and a radial rule.
class Hypersurface {
 public:
  Hypersurface(std::string descriptor, const Quaternion& center, const std::array<double, 4>& axes, int resolution);

  const std::string& descriptor() const { return descriptor_; }
  const Quaternion& center() const { return center_; }
  const std::array<double, 4>& axes() const { return axes_; }
  int resolution() const { return resolution_; }

  std::size_t surface_size() const { return directions_.size(); }
  std::size_t volume_size() const { return directions_.size() * radial_.nodes.size(); }
  SurfaceNode surface_node(std::size_t i) const;
  VolumeNode volume_node(std::size_t i) const;

  /// Lower bound of r over K and K*; positive when both avoid the real axis.
  double min_axis_distance() const;

  double surface_area() const;
  double enclosed_volume() const;

 private:
  struct Direction {
    Quaternion omega;  // unit vector
    double weight;     // solid-angle weight
  };

  std::string descriptor_;
  Quaternion center_;
  std::array<double, 4> axes_{};
  int resolution_ = 0;
  double jacobian_ = 1.0;  // product of the axes
  std::vector<Direction> directions_;
  QuadratureRule radial_;
};

/// Round 3-sphere. Gauss-Legendre in the two polar angles (resolution points
/// each), trapezoid in the periodic angle (2 * resolution) and Gauss-Legendre
/// in the radius (resolution). Throws TouchesRealAxis if avoid_real_axis and
/// the closed ball meets the real axis.
Hypersurface sphere3(const Quaternion& center, double radius, int resolution, bool avoid_real_axis = true);

/// Axis-aligned ellipsoid with semi-axes along 1, i, j, k.
Hypersurface ellipsoid3(const Quaternion& center, const std::array<double, 4>& axes, int resolution,
                        bool avoid_real_axis = true);

/// "sphere:center=0+2i+0j+0k,r=1,res=32" or
/// "ellipsoid:center=0+2i,axes=1:0.8:0.6:0.9,res=16". Throws ConfigError.
Hypersurface parse_hypersurface(std::string_view descriptor, bool avoid_real_axis = true);

/// Five spheres off the real axis and off the hyperplanes x = 0, y = 0, z = 0,
/// so every standard catalog member is smooth on them.
std::vector<std::string> standard_family_descriptors(int resolution);
std::vector<Hypersurface> standard_family(int resolution);

/// Both sides of an integral identity with scale = |lhs| + |rhs| + 1.
struct IntegralReport {
  Quaternion lhs;
  Quaternion rhs;
  double residual = 0.0;
  double scale = 1.0;
  double relative() const { return residual / scale; }
};

IntegralReport make_report(const Quaternion& lhs, const Quaternion& rhs);

/// sum over K of n(p) f(p) dS, n acting from the left.
Quaternion surface_integral_left(const QFunction& f, const Hypersurface& K, Execution exec = Execution::OpenMP);

using PointField = std::function<Quaternion(const Quaternion&)>;

Quaternion volume_integral(const PointField& g, const Hypersurface& K, Execution exec = Execution::OpenMP);

/// Divergence theorem for four quaternion-valued fields:
/// sum_a f_a n_a over K against df_0/dt + df_1/dx + df_2/dy + df_3/dz over K*.
IntegralReport gauss_residual(const std::array<QFunction, 4>& fields, const Hypersurface& K,
                              Execution exec = Execution::OpenMP);

/// int_K n f dS against int_K* (-2 v / r) dV with v the slice part of f.
/// Throws TouchesRealAxis if K or its interior meets the real axis.
IntegralReport theorem2_residual(const QFunction& f, const Hypersurface& K, const OperatorOptions& opts = {},
                                 Execution exec = Execution::OpenMP);

struct GeneralizedSurfaceResult {
  std::string surface;
  IntegralReport f;
  IntegralReport iota_f;
  bool pass = false;
  std::string error;  // set when the surface could not be evaluated
};

struct GeneralizedVerdict {
  std::string function_id;
  double tolerance = 0.0;
  std::vector<GeneralizedSurfaceResult> surfaces;
  bool pass = false;
};

/// Generalized left-Cullen regularity over a family: the integral theorem and
/// its iota f counterpart hold on every surface with relative residual <= tol.
GeneralizedVerdict generalized_regularity_test(const QFunction& f, const std::vector<Hypersurface>& family, double tol,
                                               const OperatorOptions& opts = {}, Execution exec = Execution::OpenMP);

}  // namespace quatreg
