#include "condgeo/selfconvexity.hpp"

#include "condgeo/errors.hpp"
#include "condgeo/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace condgeo {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

Profile profile(const GeodesicPath& path) {
  Profile p;
  p.times = path.times;
  p.values.reserve(path.rho_vals.size());
  for (double r : path.rho_vals) {
    if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "profile needs positive rho samples");
    p.values.push_back(-std::log(r));
  }
  return p;
}

Profile glue(const Profile& first, const Profile& second) {
  Profile out = first;
  if (second.times.empty()) return out;
  const double shift = (first.times.empty() ? 0.0 : first.times.back()) - second.times.front();
  for (std::size_t i = first.times.empty() ? 0 : 1; i < second.times.size(); ++i) {
    out.times.push_back(second.times[i] + shift);
    out.values.push_back(second.values[i]);
  }
  return out;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::convex: return "convex";
    case Classification::concave: return "concave";
    case Classification::mixed: return "mixed";
    case Classification::affine: return "affine";
  }
  return "unknown";
}

ConvexityReport convexity_report(const Profile& p, std::optional<double> tol) {
  const std::size_t m = p.times.size();
  if (m < 5 || p.values.size() != m) throw Error(ErrorCode::invalid_argument, "convexity report needs at least 5 samples");
  for (std::size_t i = 1; i < m; ++i)
    if (!(p.times[i] > p.times[i - 1])) throw Error(ErrorCode::invalid_argument, "profile times must increase");
  const auto [lo, hi] = std::minmax_element(p.values.begin(), p.values.end());
  ConvexityReport r;
  r.tolerance_used = tol ? *tol : tol::convexity_rel * std::max(1.0, *hi - *lo);
  r.second_diff.assign(m, std::numeric_limits<double>::quiet_NaN());
  r.min_second_diff = std::numeric_limits<double>::infinity();
  r.max_second_diff = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double h0 = p.times[i] - p.times[i - 1], h1 = p.times[i + 1] - p.times[i];
    const double d =
        2.0 * ((p.values[i + 1] - p.values[i]) / h1 - (p.values[i] - p.values[i - 1]) / h0) / (h0 + h1);
    r.second_diff[i] = d;
    r.min_second_diff = std::min(r.min_second_diff, d);
    r.max_second_diff = std::max(r.max_second_diff, d);
    if (d < -r.tolerance_used) r.violation_locations.push_back(p.times[i]);
  }
  const double t = r.tolerance_used;
  if (std::abs(r.min_second_diff) <= t && std::abs(r.max_second_diff) <= t)
    r.classification = Classification::affine;
  else if (r.min_second_diff >= -t)
    r.classification = Classification::convex;
  else if (r.max_second_diff <= t)
    r.classification = Classification::concave;
  else
    r.classification = Classification::mixed;
  return r;
}

QuantitySample prop4_quantity(const SubmanifoldSpec& N, const TangentVector& v) {
  if (!(g_norm(v.base, v.comps) > 0.0)) throw Error(ErrorCode::invalid_argument, "direction must be nonzero");
  QuantitySample q;
  q.x = v.base;
  q.v = v;
  const double speed2 = g_inner(metric_tensor(v.base), v.comps, v.comps);
  const double op = drho_opnorm(N, v.base);
  const double d1 = drho(N, v);
  q.norm_term = speed2 * op * op;
  q.dir_term = d1 * d1;
  q.hess_term = rho(N, v.base) * d2rho(N, v);
  q.value = q.norm_term - q.dir_term - q.hess_term;
  return q;
}

double hyperbolic_quantity(double r, double phi_dot) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("disk radius r must lie in (0, 1)");
  const double q = 1.0 - r;
  return phi_dot * phi_dot * r * (r + std::log1p(-r)) / (q * q);
}

double sphere_quantity(const Vec& theta, const Vec& theta_dot) {
  const auto n = theta.size();
  if (n < 1 || theta_dot.size() != n) throw Error(ErrorCode::invalid_argument, "angle and velocity sizes differ");
  const double t1 = theta[0];
  if (!(t1 > 0.0 && t1 < pi)) throw DomainError("theta_1 must lie in (0, pi)");
  const double factor = t1 * std::sin(t1) * std::cos(t1) - std::sin(t1) * std::sin(t1);
  double angular = 0.0, product = 1.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    angular += product * theta_dot[j] * theta_dot[j];
    product *= std::sin(theta[j]) * std::sin(theta[j]);
  }
  return -factor * angular;
}

ChartPoint sample_chart_point(const SpaceId& space, Rng& rng) {
  Vec c(space.dim());
  switch (space.kind) {
    case SpaceKind::euclidean:
      for (int i = 0; i < space.dim(); ++i) c[i] = rng.uniform(-2.0, 2.0);
      break;
    case SpaceKind::sphere:
      for (int i = 0; i + 1 < space.dim(); ++i) c[i] = rng.uniform(1e-3, pi - 1e-3);
      c[space.dim() - 1] = rng.uniform(-pi, pi);
      break;
    case SpaceKind::hyperbolic_disk:
      c << rng.uniform(0.01, 0.99), rng.uniform(-pi, pi);
      break;
    case SpaceKind::paraboloid:
      c << rng.uniform(0.05, 2.0), rng.uniform(-pi, pi);
      break;
    case SpaceKind::half_plane:
      c << rng.uniform(-2.0, 2.0), rng.uniform(0.1, 3.0);
      break;
  }
  return ChartPoint(space, c);
}

TangentVector sample_unit_direction(const ChartPoint& x, Rng& rng) {
  const int n = x.dim();
  Vec z(n);
  do {
    for (int i = 0; i < n; ++i) z[i] = rng.normal();
  } while (z.norm() == 0.0);
  z.normalize();
  // With g = L L^T, v = L^-T z has v^T g v = |z|^2 = 1.
  const Eigen::LLT<Mat> llt(metric_tensor(x).matrix);
  const Mat L = llt.matrixL();
  return TangentVector(x, Vec(L.transpose().triangularView<Eigen::Upper>().solve(z)));
}

SuiteSummary theorem_suite(const SubmanifoldSpec& N, int samples, std::uint64_t seed, std::string name) {
  const SpaceId& space = N.space();
  SuiteSummary s;
  s.name = name.empty() ? space.describe() + "/" + N.kind_name() : std::move(name);
  s.space = space.describe();
  s.submanifold = N.kind_name();
  bool nonpositive = false, fd_hessian = false;
  switch (space.kind) {
    case SpaceKind::sphere: break;
    case SpaceKind::euclidean: fd_hessian = true; break;
    case SpaceKind::hyperbolic_disk: nonpositive = true; break;
    default: throw ConfigError("no theorem predicts the sign on " + space.describe());
  }
  s.predicted = nonpositive ? "nonpositive" : "nonnegative";
  s.samples = samples;
  s.tolerance = fd_hessian ? tol::theorem_sign_fd : tol::theorem_sign;

  Rng rng(seed);
  double sum = 0.0;
  s.min_value = std::numeric_limits<double>::infinity();
  s.max_value = -std::numeric_limits<double>::infinity();
  const long max_draws = 100L * std::max(samples, 1);
  long draws = 0;
  for (int i = 0; i < samples; ++i) {
    QuantitySample q;
    for (;;) {
      if (++draws > max_draws) throw ConvergenceError("could not draw enough smooth-locus samples");
      const ChartPoint x = sample_chart_point(space, rng);
      const TangentVector v = sample_unit_direction(x, rng);
      try {
        q = prop4_quantity(N, v);
        break;
      } catch (const Error&) {
        ++s.redraws;
      }
    }
    const double scale = fd_hessian ? 1.0 : std::max(1.0, std::abs(q.hess_term));
    const bool ok = nonpositive ? q.value <= s.tolerance * scale : q.value >= -s.tolerance * scale;
    if (!ok) ++s.sign_failures;
    if (nonpositive) {
      const double r = q.x.coords[0], phi_dot = q.v.comps[1];
      if (std::abs(phi_dot) * r >= tol::strict_concavity_trigger) {
        ++s.strict_checked;
        if (!(q.value <= -tol::strict_concavity)) ++s.strict_failures;
      }
    }
    s.min_value = std::min(s.min_value, q.value);
    s.max_value = std::max(s.max_value, q.value);
    sum += q.value;
  }
  s.mean_value = samples > 0 ? sum / samples : 0.0;
  s.passed = s.sign_failures == 0 && s.strict_failures == 0;
  return s;
}

}  // namespace condgeo
