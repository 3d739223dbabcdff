#include "quatreg/operators.hpp"

#include <cmath>

#include <fmt/format.h>

#include "quatreg/error.hpp"

namespace quatreg {

namespace {

MultiIndex unit_index(int var, int power = 1) {
  MultiIndex m{};
  m[var] = static_cast<std::uint8_t>(power);
  return m;
}

/// Richardson-refined central difference of a quaternion-valued curve at 0.
template <class Curve>
Quaternion fd_first(const Curve& g, double h) {
  auto central = [&](double s) { return (g(s) - g(-s)) / (2.0 * s); };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

template <class Curve>
Quaternion fd_second(const Curve& g, double h) {
  const Quaternion g0 = g(0.0);
  auto central = [&](double s) { return (g(s) - 2.0 * g0 + g(-s)) / (s * s); };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

Quaternion spherical_partial_fd(const QFunction& f, const SphericalPoint& s, int var, double h) {
  return fd_first(
      [&](double d) {
        SphericalPoint q = s;
        (var == kVarT ? q.t : var == kVarR ? q.r : var == kVarAlpha ? q.alpha : q.beta) += d;
        return f.reference(from_spherical(q));
      },
      h);
}

Quaternion cartesian_partial_fd(const QFunction& f, const Quaternion& p, int var, double h) {
  return fd_first([&](double d) { return f.reference(p + d * Quaternion::unit(var)); }, h);
}

Quaternion laplacian_fd(const QFunction& f, const Quaternion& p, double h) {
  Quaternion sum;
  for (int a = 0; a < 4; ++a) sum += fd_second([&](double d) { return f.reference(p + d * Quaternion::unit(a)); }, h);
  return sum;
}

struct SphericalPartials {
  Quaternion dt, dr, dalpha, dbeta;
};

SphericalPartials spherical_partials(const QFunction& f, const SphericalPoint& s, const OperatorOptions& opts) {
  if (opts.backend == Backend::Jets) {
    const QJet F = f(chart_jets(s, 1, false).point);
    return {F.partial(unit_index(kVarT)), F.partial(unit_index(kVarR)), F.partial(unit_index(kVarAlpha)),
            F.partial(unit_index(kVarBeta))};
  }
  const double h = opts.fd_step1;
  return {spherical_partial_fd(f, s, kVarT, h), spherical_partial_fd(f, s, kVarR, h),
          spherical_partial_fd(f, s, kVarAlpha, h), spherical_partial_fd(f, s, kVarBeta, h)};
}

/// Left-inverse frame vectors at (alpha, beta): (iota_alpha)^-1, (iota_beta)^-1.
std::pair<Quaternion, Quaternion> inverse_frame(const SphericalPoint& s) {
  const double sa = std::sin(s.alpha), ca = std::cos(s.alpha), sb = std::sin(s.beta), cb = std::cos(s.beta);
  const Quaternion iota_alpha(0.0, -sa * sb, ca * sb, 0.0);
  const Quaternion iota_beta(0.0, ca * cb, sa * cb, -sb);
  return {q_inv(iota_alpha, 0.0), q_inv(iota_beta, 0.0)};
}

Quaternion angular_from_partials(const SphericalPoint& s, const SphericalPartials& d) {
  const auto [inv_alpha, inv_beta] = inverse_frame(s);
  return inv_alpha * d.dalpha + inv_beta * d.dbeta;
}

}  // namespace

std::string_view to_string(Backend b) { return b == Backend::Jets ? "jets" : "fd"; }

SphericalPoint checked_chart(const Quaternion& p, const OperatorOptions& opts, bool require_chart) {
  const double r = p.imag_norm();
  if (!(r > opts.r_min)) {
    throw Error(ErrorKind::OnRealAxis, fmt::format("r = {} at {} is not above {}", r, to_string(p), opts.r_min));
  }
  const SphericalPoint s = to_spherical(p, 0.0);
  if (require_chart && !(std::sin(s.beta) > opts.sin_beta_min)) {
    throw Error(ErrorKind::DegenerateChart,
                fmt::format("sin(beta) = {} at {} is not above {}", std::sin(s.beta), to_string(p), opts.sin_beta_min));
  }
  return s;
}

ChartJets chart_jets(const SphericalPoint& s, int order, bool with_frame) {
  const RJet t = RJet::variable(s.t, kVarT, order, Basis::Spherical);
  const RJet r = RJet::variable(s.r, kVarR, order, Basis::Spherical);
  const RJet a = RJet::variable(s.alpha, kVarAlpha, order, Basis::Spherical);
  const RJet b = RJet::variable(s.beta, kVarBeta, order, Basis::Spherical);
  const RJet sa = sin(a), ca = cos(a), sb = sin(b), cb = cos(b);
  const RJet zero = RJet::constant(0.0, order, Basis::Spherical);

  ChartJets c;
  c.iota = QJet(zero, ca * sb, sa * sb, cb);
  c.point = QJet(t) + c.iota * r;
  if (!with_frame) return c;
  c.inv_iota_alpha = inverse(QJet(zero, -(sa * sb), ca * sb, zero));
  c.inv_iota_beta = inverse(QJet(zero, ca * cb, sa * cb, -sb));
  return c;
}

QJet angular_derivative_jet(const QJet& F, const ChartJets& chart) {
  const int order = F.order() - 1;
  if (order < 0) throw Error(ErrorKind::IndexTooDeep, "angular derivative of an order-0 jet");
  return chart.inv_iota_alpha.truncated(order) * F.derivative(kVarAlpha) +
         chart.inv_iota_beta.truncated(order) * F.derivative(kVarBeta);
}

OperatorResult fueter_left(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  Quaternion value;
  if (opts.backend == Backend::Jets) {
    const QJet F = f(QJet::identity(p, 1));
    for (int a = 0; a < 4; ++a) value += Quaternion::unit(a) * F.partial(unit_index(a));
  } else {
    for (int a = 0; a < 4; ++a) value += Quaternion::unit(a) * cartesian_partial_fd(f, p, a, opts.fd_step1);
  }
  return {value, opts.backend, p};
}

OperatorResult fueter_left_spherical(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  const SphericalPoint s = checked_chart(p, opts, true);
  const SphericalPartials d = spherical_partials(f, s, opts);
  const Quaternion iota = iota_at(s.alpha, s.beta);
  return {d.dt + iota * d.dr - angular_from_partials(s, d) / s.r, opts.backend, p};
}

OperatorResult cullen_left(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  const SphericalPoint s = checked_chart(p, opts, false);
  const Quaternion iota = iota_of(p, 0.0);
  if (opts.backend == Backend::Jets) {
    const QJet F = f(chart_jets(s, 1, false).point);
    return {F.partial(unit_index(kVarT)) + iota * F.partial(unit_index(kVarR)), opts.backend, p};
  }
  // Along t and along the ray t + r iota; no angular chart needed.
  const Quaternion dt = cartesian_partial_fd(f, p, 0, opts.fd_step1);
  const Quaternion dr = fd_first([&](double d) { return f.reference(p + d * iota); }, opts.fd_step1);
  return {dt + iota * dr, opts.backend, p};
}

OperatorResult angular_derivative(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  const SphericalPoint s = checked_chart(p, opts, true);
  return {angular_from_partials(s, spherical_partials(f, s, opts)), opts.backend, p};
}

OperatorResult laplacian(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  Quaternion value;
  if (opts.backend == Backend::Jets) {
    const QJet F = f(QJet::identity(p, 2));
    for (int a = 0; a < 4; ++a) value += F.partial(unit_index(a, 2));
  } else {
    value = laplacian_fd(f, p, opts.fd_step2);
  }
  return {value, opts.backend, p};
}

OperatorResult fueter_laplacian(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  Quaternion value;
  if (opts.backend == Backend::Jets) {
    const QJet F = f(QJet::identity(p, 3));
    for (int a = 0; a < 4; ++a) {
      Quaternion d_lap;
      for (int b = 0; b < 4; ++b) {
        MultiIndex m = unit_index(b, 2);
        ++m[a];
        d_lap += F.partial(m);
      }
      value += Quaternion::unit(a) * d_lap;
    }
  } else {
    const double h = opts.fd_step3;
    for (int a = 0; a < 4; ++a) {
      value += Quaternion::unit(a) *
               fd_first([&](double d) { return laplacian_fd(f, p + d * Quaternion::unit(a), h); }, h);
    }
  }
  return {value, opts.backend, p};
}

}  // namespace quatreg
