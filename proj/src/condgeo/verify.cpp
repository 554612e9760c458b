#include "condgeo/verify.hpp"

#include "condgeo/errors.hpp"
#include "condgeo/oracles.hpp"
#include "condgeo/random.hpp"
#include "condgeo/tolerances.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

namespace condgeo {

using json = nlohmann::ordered_json;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

// SplitMix64 finaliser: independent streams per check from one user seed.
std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t tag_of(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

Vec unit(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out.normalized();
}

CheckResult make(std::string suite, std::string name, std::string metric, std::string comparison, double threshold) {
  CheckResult c;
  c.suite = std::move(suite);
  c.name = std::move(name);
  c.metric = std::move(metric);
  c.comparison = std::move(comparison);
  c.threshold = threshold;
  return c;
}

bool compare(double value, const std::string& op, double threshold) {
  if (std::isnan(value)) return false;
  if (op == "<=") return value <= threshold;
  if (op == ">=") return value >= threshold;
  if (op == "<") return value < threshold;
  return value > threshold;
}

void finish(CheckResult& c) { c.passed = compare(c.value, c.comparison, c.threshold) && c.samples > 0; }

// Draws (x, v) with v of unit g-length until `accept` returns true without
// throwing; gives up after 100 draws per requested sample.
template <class F>
int sample_pairs(const SpaceId& space, int samples, std::uint64_t seed, F&& accept) {
  Rng rng(seed);
  int done = 0;
  const long cap = 100L * std::max(samples, 1);
  for (long draws = 0; done < samples && draws < cap; ++draws) {
    const ChartPoint x = sample_chart_point(space, rng);
    const TangentVector v = sample_unit_direction(x, rng);
    try {
      if (accept(v)) ++done;
    } catch (const Error&) {
    }
  }
  return done;
}

std::string target(const SubmanifoldSpec& N) {
  std::string what;
  if (const auto* ps = std::get_if<PointSet>(&N.kind()))
    what = ps->points.size() == 1 ? "point" : std::to_string(ps->points.size()) + "_points";
  else if (std::holds_alternative<AffineLine>(N.kind()))
    what = "line";
  else if (const auto* c = std::get_if<ParametricCurve>(&N.kind()))
    what = std::string(to_string(c->kind));
  else if (std::holds_alternative<SpherePoint>(N.kind()))
    what = "point";
  else if (std::holds_alternative<DiskOrigin>(N.kind()))
    what = "origin";
  else
    what = "vertex";
  const SpaceId& s = N.space();
  const char* prefix = s.kind == SpaceKind::euclidean ? "R" : s.kind == SpaceKind::sphere ? "S" : s.kind == SpaceKind::hyperbolic_disk ? "H" : "";
  if (*prefix) return prefix + std::to_string(s.n) + "_" + what;
  return std::string(to_string(s.kind)) + "_" + what;
}

// Ambient point on the sphere or curve as a sphere_point target.
SubmanifoldSpec point_target(const SpaceId& space, const Vec& k) { return SubmanifoldSpec(space, SpherePoint{k}); }

}  // namespace

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"sphere", "hyperbolic", "euclidean", "crosschecks"};
  return names;
}

CheckResult check_theorem_suite(const std::string& suite, const SubmanifoldSpec& N, int samples, std::uint64_t seed,
                                const std::string& name) {
  const SuiteSummary s = theorem_suite(N, samples, seed, name);
  const bool nonpositive = s.predicted == "nonpositive";
  auto c = make(suite, name, nonpositive ? "max quantity" : "min quantity", nonpositive ? "<=" : ">=",
                nonpositive ? s.tolerance : -s.tolerance);
  c.value = nonpositive ? s.max_value : s.min_value;
  c.samples = s.samples;
  c.passed = s.passed;
  char buf[160];
  std::snprintf(buf, sizeof buf, "sign failures %d, redraws %d", s.sign_failures, s.redraws);
  c.detail = buf;
  if (nonpositive) {
    std::snprintf(buf, sizeof buf, "; strict checks %d (|phi'| r >= %.2g), failures %d", s.strict_checked,
                  tol::strict_concavity_trigger, s.strict_failures);
    c.detail += buf;
  }
  c.summary = s;
  return c;
}

CheckResult check_sphere_closed_form(int n, int samples, std::uint64_t seed) {
  Vec pole = Vec::Zero(n + 1);
  pole[0] = 1.0;
  const auto N = SubmanifoldSpec::sphere_point(n, pole);
  auto c = make("sphere", "closed_form_S" + std::to_string(n), "max |assembled - closed form| / max(1, |rho D2rho|)",
                "<=", 1e-8);
  c.value = 0.0;
  c.samples = sample_pairs(N.space(), samples, seed, [&](const TangentVector& v) {
    const auto q = prop4_quantity(N, v);
    const double closed = sphere_quantity(v.base.coords, v.comps);
    c.value = std::max(c.value, std::abs(q.value - closed) / std::max(1.0, std::abs(q.hess_term)));
    return true;
  });
  finish(c);
  return c;
}

CheckResult check_hyperbolic_closed_form(int samples, std::uint64_t seed) {
  const auto N = SubmanifoldSpec::disk_origin();
  auto c = make("hyperbolic", "closed_form", "max |assembled - closed form| / max(1, |closed form|)", "<=", 1e-10);
  c.value = 0.0;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const double r = rng.uniform(0.01, 0.99), phi = rng.uniform(-pi, pi);
    const double rdot = rng.uniform(-2.0, 2.0), phidot = rng.uniform(-2.0, 2.0);
    const TangentVector v(ChartPoint(N.space(), {r, phi}), {rdot, phidot});
    const double closed = hyperbolic_quantity(r, phidot);
    c.value = std::max(c.value, std::abs(prop4_quantity(N, v).value - closed) / std::max(1.0, std::abs(closed)));
    ++c.samples;
  }
  finish(c);
  return c;
}

CheckResult check_hyperbolic_radial_zero(int samples, std::uint64_t seed) {
  const auto N = SubmanifoldSpec::disk_origin();
  auto c = make("hyperbolic", "radial_zero", "max |quantity| with phi' = 0", "<=", 1e-10);
  c.value = 0.0;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const double r = rng.uniform(0.01, 0.99), phi = rng.uniform(-pi, pi), rdot = rng.uniform(-2.0, 2.0);
    const TangentVector v(ChartPoint(N.space(), {r, phi}), {rdot, 0.0});
    c.value = std::max(c.value, std::abs(prop4_quantity(N, v).value));
    ++c.samples;
  }
  finish(c);
  return c;
}

CheckResult check_sphere_christoffel(int n, int samples, std::uint64_t seed) {
  Vec pole = Vec::Zero(n + 1);
  pole[0] = 1.0;
  const auto N = SubmanifoldSpec::sphere_point(n, pole);
  auto c = make("crosschecks", "christoffel_S" + std::to_string(n),
                "max |Gamma~^1_ij - listed| / max(1, |listed|)", "<=", 1e-8);
  c.value = 0.0;
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const ChartPoint x = sample_chart_point(N.space(), rng);
    const auto G = condition_christoffel(N, x);
    const double t1 = x.coords[0];
    const double lead = -(t1 * std::sin(t1) * std::cos(t1) - std::sin(t1) * std::sin(t1)) / t1;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double listed = 0.0;
        if (i == 0 && j == 0) {
          listed = -1.0 / t1;
        } else if (i == j) {
          double prod = 1.0;
          for (int r = 1; r < j; ++r) prod *= std::sin(x.coords[r]) * std::sin(x.coords[r]);
          listed = lead * prod;
        }
        c.value = std::max(c.value, std::abs(G(0, i, j) - listed) / std::max(1.0, std::abs(listed)));
      }
    ++c.samples;
  }
  finish(c);
  return c;
}

CheckResult check_cylinder_isometry(int geodesics, std::uint64_t seed) {
  const auto N = SubmanifoldSpec::point_set(SpaceId::euclidean(2), {Vec::Zero(2)});
  auto c = make("crosschecks", "cylinder_isometry", "max deviation of (angle, log r) from affine in s", "<=", 1e-6);
  c.value = 0.0;
  Rng rng(seed);
  IvpOptions opts;
  opts.samples = 257;
  for (int g = 0; g < geodesics; ++g) {
    const double r0 = rng.uniform(0.5, 2.0), a0 = rng.uniform(-pi, pi), dir = rng.uniform(-pi, pi);
    const TangentVector v(ChartPoint(N.space(), {r0 * std::cos(a0), r0 * std::sin(a0)}), {std::cos(dir), std::sin(dir)});
    const auto path = integrate_ivp(N, v, 2.0, opts);
    const std::size_t m = path.size();
    std::vector<double> angle(m), height(m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& p = path.points[k].coords;
      angle[k] = std::atan2(p[1], p[0]);
      if (k > 0) angle[k] += 2.0 * pi * std::round((angle[k - 1] - angle[k]) / (2.0 * pi));
      height[k] = std::log(p.norm());
    }
    for (const auto* series : {&angle, &height}) {
      // Least-squares line through (s, value).
      double st = 0, sv = 0, stt = 0, stv = 0;
      for (std::size_t k = 0; k < m; ++k) {
        const double t = path.times[k], y = (*series)[k];
        st += t;
        sv += y;
        stt += t * t;
        stv += t * y;
      }
      const double den = m * stt - st * st;
      const double slope = (m * stv - st * sv) / den, icpt = (sv - slope * st) / m;
      for (std::size_t k = 0; k < m; ++k)
        c.value = std::max(c.value, std::abs((*series)[k] - (icpt + slope * path.times[k])));
    }
    if (path.termination != Termination::completed) c.value = inf;
    ++c.samples;
  }
  finish(c);
  return c;
}

CheckResult check_cylinder_bvp() {
  const auto N = SubmanifoldSpec::point_set(SpaceId::euclidean(2), {Vec::Zero(2)});
  auto c = make("crosschecks", "cylinder_bvp", "|L_kappa((1,0)->(0,2)) - sqrt((pi/2)^2 + log(2)^2)|", "<=", 1e-5);
  const double exact = std::hypot(pi / 2.0, std::log(2.0));
  try {
    const auto sol = solve_bvp(N, ChartPoint(N.space(), {1.0, 0.0}), ChartPoint(N.space(), {0.0, 2.0}));
    c.value = std::abs(sol.length_kappa - exact);
    c.samples = 1;
  } catch (const Error& e) {
    c.value = inf;
    c.detail = e.what();
  }
  finish(c);
  return c;
}

CheckResult check_derivative_oracles(const SubmanifoldSpec& N, int samples, std::uint64_t seed) {
  auto c = make("crosschecks", "derivatives_" + target(N),
                "max relative error of D rho and D2 rho against finite differences", "<=", 1e-5);
  c.value = 0.0;
  const ScalarField field = [&](const ChartPoint& p) {
    const auto r = closest_point(N, p);
    require_smooth(N, p, r);
    return r.rho;
  };
  double worst1 = 0.0, worst2 = 0.0;
  c.samples = sample_pairs(N.space(), samples, seed, [&](const TangentVector& v) {
    if (rho(N, v.base) > 3.0) return false;  // keep the stencil away from the cut locus
    const double a1 = drho(N, v), a2 = d2rho(N, v);
    const auto f1 = fd_derivative(1, field, v, tol::drho_fd_step);
    const auto f2 = fd_derivative(2, field, v, 1e-3);
    worst1 = std::max(worst1, std::abs(a1 - f1.value) / std::max(1.0, std::abs(f1.value)));
    worst2 = std::max(worst2, std::abs(a2 - f2.value) / std::max(1.0, std::abs(f2.value)));
    return true;
  });
  c.value = std::max(worst1, worst2);
  char buf[120];
  std::snprintf(buf, sizeof buf, "D rho %.3g, D2 rho %.3g (scale max(1, |fd|), unit v)", worst1, worst2);
  c.detail = buf;
  finish(c);
  return c;
}

CheckResult check_gradient_norm(const SubmanifoldSpec& N, int samples, std::uint64_t seed) {
  auto c = make("crosschecks", "unit_gradient_" + target(N),
                "max | |D rho|_g - 1 |", "<=", 1e-9);
  c.value = 0.0;
  c.samples = sample_pairs(N.space(), samples, seed, [&](const TangentVector& v) {
    const Vec grad = rho_gradient(N, v.base);
    const Mat g = metric_tensor(v.base).matrix;
    c.value = std::max(c.value, std::abs(std::sqrt(grad.dot(g.ldlt().solve(grad))) - 1.0));
    return true;
  });
  finish(c);
  return c;
}

CheckResult check_dk_nonnegative(const SubmanifoldSpec& N, int samples, std::uint64_t seed) {
  auto c = make("crosschecks", "dk_nonnegative_" + target(N),
                "min <DK v, v> over unit v", ">=", -1e-8);
  c.value = inf;
  c.samples = sample_pairs(N.space(), samples, seed, [&](const TangentVector& v) {
    c.value = std::min(c.value, dk_quadform(N, v));
    return true;
  });
  finish(c);
  return c;
}

CheckResult check_orthogonality(const SubmanifoldSpec& N, int samples, std::uint64_t seed) {
  const auto* curve = std::get_if<ParametricCurve>(&N.kind());
  if (!curve) throw ConfigError("orthogonality check needs a curve");
  auto c = make("crosschecks", "orthogonality_" + target(N),
                "max |<x - K(x), c'(s*)>| / |c'(s*)|", "<=", 1e-8);
  c.value = 0.0;
  c.samples = sample_pairs(N.space(), samples, seed, [&](const TangentVector& v) {
    const auto r = closest_point(N, v.base);
    require_smooth(N, v.base, r);
    const Vec vel = curve->velocity(r.component, *r.parameter);
    c.value = std::max(c.value, std::abs((embed(v.base) - r.k).dot(vel)) / vel.norm());
    return true;
  });
  finish(c);
  return c;
}

CheckResult check_shortcut_identity(const SubmanifoldSpec& N, int samples, std::uint64_t seed) {
  auto c = make("crosschecks", "shortcut_" + target(N),
                "max |<x - K, v - DK v> - <-K, v>|", "<=", 1e-6);
  c.value = 0.0;
  const double h = 1e-5;
  c.samples = sample_pairs(N.space(), samples, seed, [&](const TangentVector& v) {
    const auto r = closest_point(N, v.base);
    require_smooth(N, v.base, r);
    const auto rp = closest_point(N, base_geodesic(v, h).base);
    const auto rm = closest_point(N, base_geodesic(v, -h).base);
    if (rp.component != r.component || rm.component != r.component) return false;
    const Vec dK = (rp.k - rm.k) / (2.0 * h);
    const Vec x = embed(v.base), xdot = push_forward(v);
    c.value = std::max(c.value, std::abs((x - r.k).dot(xdot - dK) - (-r.k).dot(xdot)));
    return true;
  });
  finish(c);
  return c;
}

CheckResult check_sign_fact(int grid) {
  auto c = make("crosschecks", "sign_fact", "max of x sin x cos x - sin^2 x on (0, pi)", "<", 0.0);
  c.value = -inf;
  const double lo = 1e-6, hi = pi - 1e-6;
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * i / (grid - 1);
    c.value = std::max(c.value, x * std::sin(x) * std::cos(x) - std::sin(x) * std::sin(x));
  }
  c.samples = grid;
  finish(c);
  return c;
}

CheckResult check_point_reduction(const SubmanifoldSpec& curve, int samples, std::uint64_t seed) {
  auto c = make("crosschecks", "point_reduction_" + target(curve),
                "min of quantity(curve) - quantity(point K(x))", ">=", -1e-8);
  c.value = inf;
  c.samples = sample_pairs(curve.space(), samples, seed, [&](const TangentVector& v) {
    const auto qc = prop4_quantity(curve, v);
    const auto K = closest_point(curve, v.base).k;
    const auto qp = prop4_quantity(point_target(curve.space(), K), v);
    c.value = std::min(c.value, (qc.value - qp.value) / std::max(1.0, std::abs(qp.hess_term)));
    return true;
  });
  finish(c);
  return c;
}

CheckResult check_quantity_oracle(const SubmanifoldSpec& N, int samples, std::uint64_t seed) {
  auto c = make("crosschecks", "quantity_oracle_" + target(N),
                "sign mismatches against FD of log(1/rho) along condition geodesics (|quantity| > 1e-4)", "<=", 0.0);
  c.value = 0.0;
  const double H = 2e-3;
  IvpOptions opts;
  opts.tol = 1e-12;
  opts.samples = 2;
  double worst_rel = 0.0;
  c.samples = sample_pairs(N.space(), samples, seed, [&](const TangentVector& v) {
    const double r0 = rho(N, v.base);
    if (N.space().kind == SpaceKind::sphere && r0 > pi - 0.1) return false;
    const double q = prop4_quantity(N, v).value;
    if (std::abs(q) <= 1e-4) return false;
    const auto fwd = integrate_ivp(N, v, H, opts);
    const auto bwd = integrate_ivp(N, TangentVector(v.base, -v.comps), H, opts);
    if (fwd.termination != Termination::completed || bwd.termination != Termination::completed) return false;
    // At unit condition speed the second derivative equals the quantity for g-unit v.
    const double f0 = -std::log(r0), fp = -std::log(fwd.rho_vals.back()), fm = -std::log(bwd.rho_vals.back());
    const double second = (fp - 2.0 * f0 + fm) / (H * H);
    if ((second > 0.0) != (q > 0.0)) c.value += 1.0;
    worst_rel = std::max(worst_rel, std::abs(second - q) / std::abs(q));
    return true;
  });
  char buf[96];
  std::snprintf(buf, sizeof buf, "max relative deviation %.3g", worst_rel);
  c.detail = buf;
  finish(c);
  return c;
}

VerifyReport run_verify(const VerifyOptions& opts) {
  if (opts.samples < 1) throw ConfigError("samples must be positive");
  VerifyReport rep;
  rep.seed = opts.seed;
  rep.samples = opts.samples;
  const auto& all = verify_suite_names();
  for (const auto& s : opts.suites)
    if (std::find(all.begin(), all.end(), s) == all.end()) throw ConfigError("unknown verify suite '" + s + "'");
  for (const auto& s : all)
    if (opts.suites.empty() || std::find(opts.suites.begin(), opts.suites.end(), s) != opts.suites.end())
      rep.suites.push_back(s);

  const int n = opts.samples;
  const int some = std::min(n, 1000), few = std::min(n, 200), handful = std::min(n, 100);
  auto seed = [&](const std::string& name) { return mix(opts.seed, tag_of(name)); };
  auto add = [&](CheckResult c) { rep.checks.push_back(std::move(c)); };

  for (const auto& suite : rep.suites) {
    if (suite == "sphere") {
      add(check_theorem_suite(suite, SubmanifoldSpec::sphere_point(2, unit({1, 0, 0})), n, seed("S2_point"),
                              "S2_point"));
      add(check_theorem_suite(suite, SubmanifoldSpec::sphere_point(3, unit({0.5, 0.5, 0.5, 0.5})), n,
                              seed("S3_point"), "S3_point"));
      add(check_theorem_suite(suite, SubmanifoldSpec::great_circle(2, unit({1, 0, 0}), unit({0, 0.6, 0.8})), n,
                              seed("S2_great_circle"), "S2_great_circle"));
      add(check_sphere_closed_form(2, some, seed("closed_form_S2")));
      add(check_sphere_closed_form(3, some, seed("closed_form_S3")));
    } else if (suite == "hyperbolic") {
      add(check_theorem_suite(suite, SubmanifoldSpec::disk_origin(), n, seed("H2_origin"), "H2_origin"));
      add(check_hyperbolic_closed_form(some, seed("hyperbolic_closed_form")));
      add(check_hyperbolic_radial_zero(some, seed("hyperbolic_radial_zero")));
    } else if (suite == "euclidean") {
      const SpaceId E2 = SpaceId::euclidean(2);
      add(check_theorem_suite(suite, SubmanifoldSpec::point_set(E2, {Vec::Zero(2)}), n, seed("R2_point"),
                              "R2_point"));
      add(check_theorem_suite(suite, SubmanifoldSpec::point_set(E2, {unit({-1, 0}), unit({1, 0})}), n,
                              seed("R2_two_points"), "R2_two_points"));
      Vec base(2);
      base << 0.0, 0.5;
      add(check_theorem_suite(suite, SubmanifoldSpec::affine_line(E2, base, unit({1, 1})), n, seed("R2_line"),
                              "R2_line"));
      add(check_theorem_suite(suite, SubmanifoldSpec::hyperbola(1.0, 1.0), n, seed("R2_hyperbola"),
                              "R2_hyperbola"));
    } else if (suite == "crosschecks") {
      const auto s2_point = SubmanifoldSpec::sphere_point(2, unit({0.3, -0.4, 0.866}));
      const auto s2_circle = SubmanifoldSpec::great_circle(2, unit({1, 0, 0}), unit({0, 0.6, 0.8}));
      const auto s3_circle = SubmanifoldSpec::great_circle(3, unit({0, 1, 0, 0}), unit({0.5, 0, 0.5, 0.5}));
      const auto disk = SubmanifoldSpec::disk_origin();
      const SpaceId E2 = SpaceId::euclidean(2);
      add(check_sphere_christoffel(2, some, seed("christoffel_S2")));
      add(check_sphere_christoffel(3, some, seed("christoffel_S3")));
      add(check_cylinder_isometry(handful, seed("cylinder_isometry")));
      add(check_cylinder_bvp());
      for (const auto* N : {&s2_point, &s2_circle, &disk})
        add(check_derivative_oracles(*N, few, seed("derivatives_" + target(*N))));
      for (const auto& N : {s2_point, s2_circle, disk, SubmanifoldSpec::point_set(E2, {unit({-1, 0}), unit({1, 0})}),
                            SubmanifoldSpec::hyperbola(1.0, 1.0)})
        add(check_gradient_norm(N, some, seed("unit_gradient_" + target(N))));
      add(check_dk_nonnegative(s2_circle, some, seed("dk_S2")));
      add(check_dk_nonnegative(s3_circle, some, seed("dk_S3")));
      add(check_orthogonality(s2_circle, some, seed("orthogonality")));
      add(check_shortcut_identity(s2_circle, few, seed("shortcut")));
      add(check_sign_fact(10000));
      add(check_point_reduction(s2_circle, some, seed("point_reduction")));
      Vec centre(2);
      centre << 0.5, -0.5;
      for (const auto& N : {SubmanifoldSpec::affine_line(E2, Vec::Zero(2), unit({1, 0})),
                            SubmanifoldSpec::circle(centre, 1.0), SubmanifoldSpec::hyperbola(1.0, 1.0), SubmanifoldSpec::sphere_point(2, unit({1, 0, 0})),
                            s2_circle, disk, SubmanifoldSpec::paraboloid_vertex()})
        add(check_quantity_oracle(N, few, seed("quantity_oracle_" + target(N))));
    }
  }
  rep.passed = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return c.passed; });
  return rep;
}

std::string verify_json(const VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json j{{"suite", c.suite},       {"name", c.name},         {"metric", c.metric},
           {"value", c.value},       {"comparison", c.comparison}, {"threshold", c.threshold},
           {"samples", c.samples},   {"passed", c.passed}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (c.summary) {
      const auto& s = *c.summary;
      j["theorem_suite"] = json{{"space", s.space},
                                {"submanifold", s.submanifold},
                                {"predicted", s.predicted},
                                {"samples", s.samples},
                                {"redraws", s.redraws},
                                {"min", s.min_value},
                                {"max", s.max_value},
                                {"mean", s.mean_value},
                                {"tolerance", s.tolerance},
                                {"sign_failures", s.sign_failures},
                                {"strict_checked", s.strict_checked},
                                {"strict_failures", s.strict_failures}};
    }
    checks.push_back(j);
  }
  json j{{"seed", report.seed},
         {"samples", report.samples},
         {"suites", report.suites},
         {"passed", report.passed},
         {"checks", checks}};
  return j.dump(2) + "\n";
}

std::string verify_table(const VerifyReport& report) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-44s %12s %-3s %10s %7s  %s\n", "suite", "check", "value", "", "bound",
                "samples", "result");
  out += line;
  out += std::string(100, '-') + "\n";
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-12s %-44s %12.4g %-3s %10.3g %7d  %s\n", c.suite.c_str(), c.name.c_str(),
                  c.value, c.comparison.c_str(), c.threshold, c.samples, c.passed ? "PASS" : "FAIL");
    out += line;
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(), [](const auto& c) { return !c.passed; });
  std::snprintf(line, sizeof line, "%zu checks, %ld failed\n", report.checks.size(), static_cast<long>(failed));
  out += line;
  return out;
}

}  // namespace condgeo
