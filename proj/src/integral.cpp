#include "quatreg/integral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <tuple>
#include <utility>

#include <fmt/format.h>

#include "quatreg/error.hpp"
#include "quatreg/regularity.hpp"

namespace quatreg {

namespace {

struct QuaternionPair {
  Quaternion first;
  Quaternion second;
  QuaternionPair& operator+=(const QuaternionPair& o) {
    first += o.first;
    second += o.second;
    return *this;
  }
};

std::string axes_text(const std::array<double, 4>& a) { return fmt::format("{}:{}:{}:{}", a[0], a[1], a[2], a[3]); }

void check_axis_avoidance(const Hypersurface& K) {
  if (!(K.min_axis_distance() > 0.0)) {
    throw Error(ErrorKind::TouchesRealAxis,
                fmt::format("{} or its interior meets the real axis (distance bound {})", K.descriptor(),
                            K.min_axis_distance()));
  }
}

}  // namespace

Hypersurface::Hypersurface(std::string descriptor, const Quaternion& center, const std::array<double, 4>& axes,
                           int resolution)
    : descriptor_(std::move(descriptor)), center_(center), axes_(axes), resolution_(resolution) {
  if (resolution < 1) throw Error(ErrorKind::BadParams, fmt::format("resolution {} must be positive", resolution));
  for (double a : axes) {
    if (!(a > 0.0)) throw Error(ErrorKind::BadParams, fmt::format("semi-axes must be positive, got {}", axes_text(axes)));
  }
  jacobian_ = axes[0] * axes[1] * axes[2] * axes[3];

  // w = (cos psi, sin psi cos theta, sin psi sin theta cos phi, sin psi sin theta sin phi),
  // dOmega = sin^2 psi sin theta dpsi dtheta dphi.
  const QuadratureRule psi = gauss_legendre(resolution, 0.0, std::numbers::pi);
  const QuadratureRule theta = gauss_legendre(resolution, 0.0, std::numbers::pi);
  const QuadratureRule phi = periodic_trapezoid(2 * resolution, 2.0 * std::numbers::pi);
  directions_.reserve(psi.nodes.size() * theta.nodes.size() * phi.nodes.size());
  for (std::size_t a = 0; a < psi.nodes.size(); ++a) {
    const double sp = std::sin(psi.nodes[a]), cp = std::cos(psi.nodes[a]);
    for (std::size_t b = 0; b < theta.nodes.size(); ++b) {
      const double st = std::sin(theta.nodes[b]), ct = std::cos(theta.nodes[b]);
      for (std::size_t c = 0; c < phi.nodes.size(); ++c) {
        const double sf = std::sin(phi.nodes[c]), cf = std::cos(phi.nodes[c]);
        const Quaternion omega(cp, sp * ct, sp * st * cf, sp * st * sf);
        directions_.push_back({omega, sp * sp * st * psi.weights[a] * theta.weights[b] * phi.weights[c]});
      }
    }
  }
  radial_ = gauss_legendre(resolution, 0.0, 1.0);
}

SurfaceNode Hypersurface::surface_node(std::size_t i) const {
  const Direction& d = directions_[i];
  // For the linear image of the unit sphere the normal is A^-T w and the area
  // element picks up det(A) |A^-T w|.
  std::array<double, 4> n{};
  double len2 = 0.0;
  for (int c = 0; c < 4; ++c) {
    n[c] = d.omega[c] / axes_[c];
    len2 += n[c] * n[c];
  }
  const double len = std::sqrt(len2);
  for (auto& c : n) c /= len;
  Quaternion point = center_;
  for (int c = 0; c < 4; ++c) point[c] += axes_[c] * d.omega[c];
  return {point, n, jacobian_ * len * d.weight};
}

VolumeNode Hypersurface::volume_node(std::size_t i) const {
  const std::size_t shell = i / directions_.size();
  const Direction& d = directions_[i % directions_.size()];
  const double rho = radial_.nodes[shell];
  Quaternion point = center_;
  for (int c = 0; c < 4; ++c) point[c] += rho * axes_[c] * d.omega[c];
  return {point, jacobian_ * rho * rho * rho * radial_.weights[shell] * d.weight};
}

double Hypersurface::min_axis_distance() const {
  return center_.imag_norm() - std::max({axes_[1], axes_[2], axes_[3]});
}

double Hypersurface::surface_area() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < surface_size(); ++i) sum += surface_node(i).weight;
  return sum;
}

double Hypersurface::enclosed_volume() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < volume_size(); ++i) sum += volume_node(i).weight;
  return sum;
}

Hypersurface sphere3(const Quaternion& center, double radius, int resolution, bool avoid_real_axis) {
  Hypersurface K(fmt::format("sphere:center={},r={},res={}", to_string(center), radius, resolution), center,
                 {radius, radius, radius, radius}, resolution);
  if (avoid_real_axis) check_axis_avoidance(K);
  return K;
}

Hypersurface ellipsoid3(const Quaternion& center, const std::array<double, 4>& axes, int resolution,
                        bool avoid_real_axis) {
  Hypersurface K(fmt::format("ellipsoid:center={},axes={},res={}", to_string(center), axes_text(axes), resolution),
                 center, axes, resolution);
  if (avoid_real_axis) check_axis_avoidance(K);
  return K;
}

Hypersurface parse_hypersurface(std::string_view descriptor, bool avoid_real_axis) {
  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::ConfigError, fmt::format("bad hypersurface '{}': {}", descriptor, why));
  };
  const auto colon = descriptor.find(':');
  if (colon == std::string_view::npos) throw fail("expected kind:key=value,...");
  const std::string_view kind = descriptor.substr(0, colon);
  if (kind != "sphere" && kind != "ellipsoid") throw fail(fmt::format("unknown kind '{}'", kind));

  std::optional<Quaternion> center;
  std::optional<double> radius;
  std::optional<std::array<double, 4>> axes;
  int res = 16;
  std::string_view rest = descriptor.substr(colon + 1);
  auto number = [&](std::string_view text) {
    try {
      std::size_t used = 0;
      const std::string s(text);
      const double v = std::stod(s, &used);
      if (used != s.size()) throw fail(fmt::format("bad number '{}'", text));
      return v;
    } catch (const std::logic_error&) {
      throw fail(fmt::format("bad number '{}'", text));
    }
  };
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw fail(fmt::format("expected key=value, got '{}'", item));
    const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "center") {
      try {
        center = parse_quaternion(value);
      } catch (const Error&) {
        throw fail(fmt::format("bad center '{}'", value));
      }
    } else if (key == "r") {
      radius = number(value);
    } else if (key == "res") {
      const double r = number(value);
      if (r != std::floor(r) || r < 1 || r > 512) throw fail(fmt::format("bad resolution '{}'", value));
      res = static_cast<int>(r);
    } else if (key == "axes") {
      std::array<double, 4> a{};
      std::string_view list = value;
      for (int c = 0; c < 4; ++c) {
        const auto sep = list.find(':');
        if ((c < 3) == (sep == std::string_view::npos)) throw fail("axes needs four ':'-separated values");
        a[c] = number(list.substr(0, sep));
        list = sep == std::string_view::npos ? std::string_view{} : list.substr(sep + 1);
      }
      axes = a;
    } else {
      throw fail(fmt::format("unknown key '{}'", key));
    }
  }
  if (!center) throw fail("missing center");
  try {
    if (kind == "sphere") {
      if (!radius || axes) throw fail("a sphere takes r and no axes");
      return sphere3(*center, *radius, res, avoid_real_axis);
    }
    if (!axes || radius) throw fail("an ellipsoid takes axes and no r");
    return ellipsoid3(*center, *axes, res, avoid_real_axis);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BadParams) throw fail(e.what());
    throw;
  }
}

std::vector<std::string> standard_family_descriptors(int resolution) {
  const char* spheres[] = {
      "center=0+2i+2j+2k,r=1",
      "center=1+1.5i+2j+1.5k,r=0.8",
      "center=-0.5+2.5i+1.5j+2k,r=1.2",
      "center=0.3-2i+1.8j+2.2k,r=1",
      "center=2+1.2i-1.5j+1.4k,r=0.6",
  };
  std::vector<std::string> out;
  for (const char* s : spheres) out.push_back(fmt::format("sphere:{},res={}", s, resolution));
  return out;
}

std::vector<Hypersurface> standard_family(int resolution) {
  std::vector<Hypersurface> out;
  for (const auto& d : standard_family_descriptors(resolution)) out.push_back(parse_hypersurface(d));
  return out;
}

IntegralReport make_report(const Quaternion& lhs, const Quaternion& rhs) {
  return {lhs, rhs, (lhs - rhs).norm(), lhs.norm() + rhs.norm() + 1.0};
}

Quaternion surface_integral_left(const QFunction& f, const Hypersurface& K, Execution exec) {
  return sum_indexed<Quaternion>(K.surface_size(), exec, [&](std::size_t i) {
    const SurfaceNode node = K.surface_node(i);
    return (node.normal_quaternion() * f(node.point)) * node.weight;
  });
}

Quaternion volume_integral(const PointField& g, const Hypersurface& K, Execution exec) {
  return sum_indexed<Quaternion>(K.volume_size(), exec, [&](std::size_t i) {
    const VolumeNode node = K.volume_node(i);
    return g(node.point) * node.weight;
  });
}

IntegralReport gauss_residual(const std::array<QFunction, 4>& fields, const Hypersurface& K, Execution exec) {
  const Quaternion lhs = sum_indexed<Quaternion>(K.surface_size(), exec, [&](std::size_t i) {
    const SurfaceNode node = K.surface_node(i);
    Quaternion flux;
    for (int a = 0; a < 4; ++a) flux += fields[a](node.point) * node.normal[a];
    return flux * node.weight;
  });
  const Quaternion rhs = volume_integral(
      [&](const Quaternion& p) {
        const QJet seed = QJet::identity(p, 1);
        Quaternion div;
        for (int a = 0; a < 4; ++a) {
          MultiIndex m{};
          m[a] = 1;
          div += fields[a](seed).partial(m);
        }
        return div;
      },
      K, exec);
  return make_report(lhs, rhs);
}

IntegralReport theorem2_residual(const QFunction& f, const Hypersurface& K, const OperatorOptions& opts,
                                 Execution exec) {
  check_axis_avoidance(K);
  const Quaternion lhs = surface_integral_left(f, K, exec);
  const Quaternion rhs = volume_integral(
      [&](const Quaternion& p) { return -2.0 * slice_parts(f, p, opts).v / p.imag_norm(); }, K, exec);
  return make_report(lhs, rhs);
}

namespace {

// Both sides of the integral identity for f and for iota f in one sweep. The slice part v of
// iota f is the u of f, so a single slice decomposition per volume node serves both.
std::pair<IntegralReport, IntegralReport> theorem2_pair(const QFunction& f, const Hypersurface& K,
                                                        const OperatorOptions& opts, Execution exec) {
  check_axis_avoidance(K);
  const QuaternionPair lhs = sum_indexed<QuaternionPair>(K.surface_size(), exec, [&](std::size_t i) {
    const SurfaceNode node = K.surface_node(i);
    const Quaternion value = f(node.point);
    const Quaternion n = node.normal_quaternion();
    return QuaternionPair{(n * value) * node.weight, (n * (iota_of(node.point) * value)) * node.weight};
  });
  const QuaternionPair rhs = sum_indexed<QuaternionPair>(K.volume_size(), exec, [&](std::size_t i) {
    const VolumeNode node = K.volume_node(i);
    const SliceParts parts = slice_parts(f, node.point, opts);
    const double scale = -2.0 * node.weight / node.point.imag_norm();
    return QuaternionPair{parts.v * scale, parts.u * scale};
  });
  return {make_report(lhs.first, rhs.first), make_report(lhs.second, rhs.second)};
}

}  // namespace

GeneralizedVerdict generalized_regularity_test(const QFunction& f, const std::vector<Hypersurface>& family, double tol,
                                               const OperatorOptions& opts, Execution exec) {
  GeneralizedVerdict verdict;
  verdict.function_id = f.id();
  verdict.tolerance = tol;
  verdict.pass = !family.empty();
  for (const auto& K : family) {
    GeneralizedSurfaceResult res;
    res.surface = K.descriptor();
    try {
      std::tie(res.f, res.iota_f) = theorem2_pair(f, K, opts, exec);
      res.pass = res.f.relative() <= tol && res.iota_f.relative() <= tol;
    } catch (const Error& e) {
      res.error = e.what();
      res.pass = false;
    }
    verdict.pass = verdict.pass && res.pass;
    verdict.surfaces.push_back(std::move(res));
  }
  return verdict;
}

}  // namespace quatreg
