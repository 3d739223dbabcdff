#include "quatreg/regularity.hpp"

#include <algorithm>
#include <cmath>

#include "quatreg/error.hpp"

namespace quatreg {

namespace {

constexpr MultiIndex kAlpha{0, 0, 1, 0};
constexpr MultiIndex kBeta{0, 0, 0, 1};

/// The auxiliary functions the six residuals need, built once per f.
struct TheoremOneTerms {
  const QFunction& f;
  QFunction iota_f;
  QFunction f_over_r2;
  QFunction iota_f_over_r2;

  explicit TheoremOneTerms(const QFunction& fn)
      : f(fn), iota_f(iota_times(fn)), f_over_r2(over_r2(fn)), iota_f_over_r2(over_r2(iota_times(fn))) {}

  TheoremOneReport evaluate(const Quaternion& p, const OperatorOptions& opts) const {
    const SphericalPoint s = checked_chart(p, opts, true);
    const Quaternion iota = iota_at(s.alpha, s.beta);
    const double r = s.r;
    const SliceParts sp = slice_parts(f, p, opts);
    const Quaternion value = f(p);

    const Quaternion d_f = fueter_left(f, p, opts).value;
    const Quaternion d_iota_f = fueter_left(iota_f, p, opts).value;

    TheoremOneReport rep;
    rep.function_id = f.id();
    rep.point = p;
    auto& v = rep.residual_value;
    v[0] = cullen_left(f, p, opts).value;
    v[1] = d_iota_f + iota * d_f + 2.0 * value / r;
    v[2] = d_f + 2.0 * sp.v / r;
    v[3] = d_iota_f + 2.0 * sp.u / r;
    v[4] = fueter_left(f_over_r2, p, opts).value + 2.0 * (iota * sp.u) / (r * r * r);
    // D(iota f / r^2) = D(iota f)/r^2 - 2 iota (iota f)/r^3 = 2 (f - u)/r^3 = +2 iota v/r^3
    v[5] = fueter_left(iota_f_over_r2, p, opts).value - 2.0 * (iota * sp.v) / (r * r * r);
    for (int n = 0; n < kCharacterizationCount; ++n) rep.residual[n] = v[n].norm();
    return rep;
  }
};

Quaternion fd_curve(const auto& g, double h) {
  auto central = [&](double d) { return (g(d) - g(-d)) / (2.0 * d); };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

std::vector<PointError> collect_errors(const auto& outcomes, std::span<const Quaternion> samples) {
  std::vector<PointError> errors;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].error) errors.push_back({i, samples[i], outcomes[i].error->what()});
  }
  return errors;
}

}  // namespace

std::string_view item_key(Characterization c) {
  static constexpr std::string_view keys[] = {"item1", "item2", "item3a", "item3b", "item4a", "item4b"};
  return keys[static_cast<int>(c)];
}

std::string_view item_identity(Characterization c) {
  static constexpr std::string_view ids[] = {
      "df/dt + iota df/dr = 0",
      "D(iota f) + iota D f = -2f/r",
      "D f = -2v/r",
      "D(iota f) = -2u/r",
      "D(f/r^2) = -2 iota u/r^3",
      "D(iota f/r^2) = 2 iota v/r^3",
  };
  return ids[static_cast<int>(c)];
}

SliceParts slice_parts(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  const SphericalPoint s = checked_chart(p, opts, true);
  if (opts.backend == Backend::FiniteDifference) {
    return {0.5 * angular_derivative(iota_times(f), p, opts).value, 0.5 * angular_derivative(f, p, opts).value};
  }
  const ChartJets chart = chart_jets(s, 1);
  const QJet F = f(chart.point);
  const QJet iota_F = chart.iota * F;
  return {0.5 * angular_derivative_jet(iota_F, chart).value(), 0.5 * angular_derivative_jet(F, chart).value()};
}

double lemma1_residual(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  const SphericalPoint s = checked_chart(p, opts, true);
  const SliceParts sp = slice_parts(f, p, opts);
  // d(iota f) + iota d(f) = 2u + 2 iota v
  const Quaternion lhs = 2.0 * sp.u + iota_at(s.alpha, s.beta) * (2.0 * sp.v);
  return (lhs - 2.0 * f(p)).norm();
}

TheoremOneReport theorem1_residuals(const QFunction& f, const Quaternion& p, const OperatorOptions& opts) {
  return TheoremOneTerms(f).evaluate(p, opts);
}

double HyperholomorphyResiduals::max_component() const {
  double m = 0.0;
  for (int n = 0; n < 4; ++n) m = std::max({m, std::abs(first[n]), std::abs(second[n])});
  return m;
}

HyperholomorphyResiduals hyperholomorphy_residuals(const QFunction& f, const Quaternion& p,
                                                   const OperatorOptions& opts) {
  const SphericalPoint s = checked_chart(p, opts, true);
  const double sin_beta = std::sin(s.beta);
  Quaternion du_da, du_db, dv_da, dv_db;
  if (opts.backend == Backend::Jets) {
    const ChartJets chart = chart_jets(s, 2);
    const QJet F = f(chart.point);
    const QJet u = 0.5 * angular_derivative_jet(chart.iota * F, chart);
    const QJet v = 0.5 * angular_derivative_jet(F, chart);
    du_da = u.partial(kAlpha);
    du_db = u.partial(kBeta);
    dv_da = v.partial(kAlpha);
    dv_db = v.partial(kBeta);
  } else {
    auto shifted = [&](double d_alpha, double d_beta) {
      SphericalPoint q = s;
      q.alpha += d_alpha;
      q.beta += d_beta;
      return slice_parts(f, from_spherical(q), opts);
    };
    const double h = opts.fd_step2;
    du_da = fd_curve([&](double d) { return shifted(d, 0).u; }, h);
    du_db = fd_curve([&](double d) { return shifted(0, d).u; }, h);
    dv_da = fd_curve([&](double d) { return shifted(d, 0).v; }, h);
    dv_db = fd_curve([&](double d) { return shifted(0, d).v; }, h);
  }
  return {dv_da / sin_beta + du_db, du_da / sin_beta - dv_db};
}

ResidualStats aggregate(std::span<const double> values, std::span<const Quaternion> points, double tol) {
  ResidualStats st;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (st.evaluated == 0 || values[i] > st.max) {
      st.max = values[i];
      st.worst_point = points[i];
    }
    ++st.evaluated;
  }
  st.mean = st.evaluated ? sum / static_cast<double>(st.evaluated) : 0.0;
  st.pass = st.evaluated > 0 && st.max < tol;
  st.margin = tol - st.max;
  return st;
}

bool RegularityVerdict::all_pass() const {
  return std::all_of(items.begin(), items.end(), [](const ResidualStats& s) { return s.pass; });
}

bool RegularityVerdict::all_fail() const {
  return std::none_of(items.begin(), items.end(), [](const ResidualStats& s) { return s.pass; });
}

RegularityVerdict regularity_verdict(const QFunction& f, std::span<const Quaternion> samples, double tol,
                                     const OperatorOptions& opts, Execution exec) {
  const TheoremOneTerms terms(f);
  const auto outcomes = map_indexed<TheoremOneReport>(
      samples.size(), exec, [&](std::size_t i) { return terms.evaluate(samples[i], opts); });

  RegularityVerdict verdict;
  verdict.function_id = f.id();
  verdict.tolerance = tol;
  verdict.errors = collect_errors(outcomes, samples);
  for (int n = 0; n < kCharacterizationCount; ++n) {
    std::vector<double> values;
    std::vector<Quaternion> points;
    for (const auto& o : outcomes) {
      if (!o.value) continue;
      values.push_back(o.value->residual[n]);
      points.push_back(o.value->point);
    }
    verdict.items[n] = aggregate(values, points, tol);
  }
  verdict.consistent = verdict.all_pass() || verdict.all_fail();
  return verdict;
}

IotaComposeVerdict iota_compose_regularity(const QFunction& f, std::span<const Quaternion> samples, double tol,
                                           const OperatorOptions& opts, Execution exec) {
  const QFunction iota_f = iota_times(f);
  struct Pair {
    double f, iota_f;
  };
  const auto outcomes = map_indexed<Pair>(samples.size(), exec, [&](std::size_t i) {
    return Pair{cullen_left(f, samples[i], opts).value.norm(), cullen_left(iota_f, samples[i], opts).value.norm()};
  });
  std::vector<double> a, b;
  std::vector<Quaternion> points;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].value) continue;
    a.push_back(outcomes[i].value->f);
    b.push_back(outcomes[i].value->iota_f);
    points.push_back(samples[i]);
  }
  IotaComposeVerdict v;
  v.f = aggregate(a, points, tol);
  v.iota_f = aggregate(b, points, tol);
  v.consistent = v.f.pass == v.iota_f.pass;
  v.errors = collect_errors(outcomes, samples);
  return v;
}

std::vector<Quaternion> samples_for(const QFunction& f, const SampleDomain& region, std::size_t count,
                                    std::uint64_t seed) {
  return draw_samples(region.restricted_by(f.domain()), count, seed);
}

}  // namespace quatreg
