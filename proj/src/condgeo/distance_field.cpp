#include "condgeo/distance_field.hpp"

#include "condgeo/errors.hpp"
#include "condgeo/oracles.hpp"
#include "condgeo/tolerances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace condgeo {

namespace {

constexpr double pi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct CurveCandidate {
  int branch;
  double s;
  double dist;
};

double wrap_periodic_parameter(double s, double lo, double hi) {
  const double period = hi - lo;
  double w = std::fmod(s - lo, period);
  if (w < 0) w += period;
  return lo + w;
}

// Safeguarded Newton on g(s) = <x - c(s), c'(s)>, which is positive to the
// left of a minimiser of |x - c(s)| and negative to its right.
double polish_on_bracket(const ParametricCurve& c, int branch, const Vec& x, double lo, double hi) {
  auto g = [&](double s) { return (x - c.position(branch, s)).dot(c.velocity(branch, s)); };
  double glo = g(lo), ghi = g(hi);
  if (!(glo > 0.0 && ghi < 0.0)) {
    // No interior stationary point in the bracket; the minimiser is an end.
    return (x - c.position(branch, lo)).squaredNorm() <= (x - c.position(branch, hi)).squaredNorm() ? lo : hi;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const Vec diff = x - c.position(branch, s);
    const Vec vel = c.velocity(branch, s);
    const double gs = diff.dot(vel);
    const double dist = std::max(diff.norm(), 1e-300);
    if (std::abs(gs) / dist <= tol::curve_polish * std::max(1.0, vel.norm())) break;
    if (gs > 0.0) lo = s; else hi = s;
    const double dg = -vel.squaredNorm() + diff.dot(c.acceleration(branch, s));
    double next = (dg < 0.0) ? s - gs / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-16 * (1.0 + std::abs(s))) { s = next; break; }
    s = next;
  }
  return s;
}

ClosestPointResult curve_closest(const ParametricCurve& c, const SpaceId& space, const Vec& x) {
  const int seeds = tol::curve_seeds;
  std::vector<CurveCandidate> found;
  for (int br = 0; br < c.branches(); ++br) {
    const double lo = c.s_lo(), hi = c.s_hi();
    const double step = c.periodic() ? (hi - lo) / seeds : (hi - lo) / (seeds - 1);
    std::vector<double> f(static_cast<std::size_t>(seeds));
    for (int i = 0; i < seeds; ++i) f[static_cast<std::size_t>(i)] = (x - c.position(br, lo + i * step)).squaredNorm();
    for (int i = 0; i < seeds; ++i) {
      const auto at = [&](int j) { return f[static_cast<std::size_t>(j)]; };
      double a, b;
      bool local_min;
      if (c.periodic()) {
        const int prev = (i + seeds - 1) % seeds, next = (i + 1) % seeds;
        local_min = at(i) <= at(prev) && at(i) <= at(next);
        a = lo + (i - 1) * step;
        b = lo + (i + 1) * step;
      } else {
        const bool left_ok = i == 0 || at(i) <= at(i - 1);
        const bool right_ok = i == seeds - 1 || at(i) <= at(i + 1);
        local_min = left_ok && right_ok;
        a = lo + std::max(i - 1, 0) * step;
        b = lo + std::min(i + 1, seeds - 1) * step;
      }
      if (!local_min) continue;
      double s = polish_on_bracket(c, br, x, a, b);
      if (c.periodic()) s = wrap_periodic_parameter(s, lo, hi);
      found.push_back({br, s, ambient_distance(space, x, c.position(br, s))});
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& p, const auto& q) { return p.dist < q.dist; });
  // Merge copies of the same minimiser reached from neighbouring seeds.
  std::vector<CurveCandidate> distinct;
  for (const auto& cand : found) {
    const bool dup = std::any_of(distinct.begin(), distinct.end(), [&](const CurveCandidate& d) {
      if (d.branch != cand.branch) return false;
      double ds = std::abs(d.s - cand.s);
      if (c.periodic()) ds = std::min(ds, (c.s_hi() - c.s_lo()) - ds);
      return ds < 1e-7;
    });
    if (!dup) distinct.push_back(cand);
  }
  const auto& best = distinct.front();
  ClosestPointResult r;
  r.k = c.position(best.branch, best.s);
  r.rho = best.dist;
  r.parameter = best.s;
  r.component = best.branch;
  if (distinct.size() > 1 && distinct[1].dist - best.dist <= tol::ambiguity_rel * best.dist)
    r.multiplicity = Multiplicity::ambiguous;
  return r;
}

double paraboloid_meridian_length(double u) {
  return adaptive_quadrature([](double t) { return std::sqrt(1.0 + 4.0 * t * t); }, 0.0, u,
                             tol::paraboloid_quadrature * std::max(1.0, u * u))
      .value;
}

void check_smooth_result(const SubmanifoldSpec& N, const ChartPoint& x, const ClosestPointResult& r) {
  if (r.multiplicity == Multiplicity::ambiguous)
    throw SmoothnessError("several closest points: x is on the nonsmooth set of rho");
  if (N.space().kind == SpaceKind::sphere && r.rho > pi - tol::antipode_margin)
    throw SmoothnessError("x is antipodal to its closest point on the sphere");
  if (const auto* c = std::get_if<ParametricCurve>(&N.kind())) {
    const Vec xa = embed(x);
    if (c->kind == CurveKind::great_circle) {
      if (std::hypot(xa.dot(c->e1), xa.dot(c->e2)) <= tol::focal_margin)
        throw SmoothnessError("x is at a pole of the great circle");
    } else if (c->kind == CurveKind::circle) {
      if ((xa - c->centre).norm() <= tol::focal_margin * c->a) throw SmoothnessError("x is at the circle centre");
    }
  }
}

ClosestPointResult smooth_closest(const SubmanifoldSpec& N, const ChartPoint& x) {
  auto r = closest_point(N, x);
  check_smooth_result(N, x, r);
  return r;
}

Vec half_plane_gradient_fd(const SubmanifoldSpec& N, const ChartPoint& x) {
  Vec grad(x.dim());
  for (int j = 0; j < x.dim(); ++j) {
    Vec e = Vec::Zero(x.dim());
    e[j] = 1.0;
    const double h = tol::drho_fd_step;
    grad[j] = (rho(N, base_geodesic(TangentVector(x, e), h).base) - rho(N, base_geodesic(TangentVector(x, e), -h).base)) /
              (2.0 * h);
  }
  return grad;
}

// Second central difference of rho along the base geodesic, one Richardson
// step. The step is relative to max(1, rho) in g-length so that rounding in
// rho, which grows with rho, stays below the truncation error, and never
// longer than a small fraction of rho so the stencil cannot reach across N.
double d2rho_fd(const SubmanifoldSpec& N, const TangentVector& v, const ClosestPointResult& centre) {
  const double len = std::min(tol::d2rho_fd_step * std::max(1.0, centre.rho), tol::fd_rho_fraction * centre.rho);
  const double h = len / std::max(g_norm(v.base, v.comps), 1e-300);
  auto sample = [&](double t) {
    const auto r = closest_point(N, base_geodesic(v, t).base);
    if (r.multiplicity == Multiplicity::ambiguous || r.component != centre.component)
      throw SmoothnessError("finite-difference stencil crosses the nonsmooth set of rho");
    return r.rho;
  };
  const double f0 = centre.rho;
  const double fp = sample(h), fm = sample(-h), fp2 = sample(0.5 * h), fm2 = sample(-0.5 * h);
  const double coarse = (fp - 2.0 * f0 + fm) / (h * h);
  const double fine = (fp2 - 2.0 * f0 + fm2) / (0.25 * h * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::hyperbola: return "hyperbola";
    case CurveKind::circle: return "circle";
    case CurveKind::great_circle: return "great_circle";
  }
  return "unknown";
}

CurveKind curve_kind_from_string(std::string_view name) {
  for (auto k : {CurveKind::hyperbola, CurveKind::circle, CurveKind::great_circle})
    if (to_string(k) == name) return k;
  throw ConfigError("unknown curve '" + std::string(name) + "'");
}

double ParametricCurve::s_lo() const { return periodic() ? -pi : -s_max; }
double ParametricCurve::s_hi() const { return periodic() ? pi : s_max; }

Vec ParametricCurve::position(int branch, double s) const {
  switch (kind) {
    case CurveKind::hyperbola: {
      Vec p(2);
      p << (branch == 0 ? 1.0 : -1.0) * a * std::cosh(s), b * std::sinh(s);
      return p;
    }
    case CurveKind::circle: {
      Vec p(2);
      p << centre[0] + a * std::cos(s), centre[1] + a * std::sin(s);
      return p;
    }
    case CurveKind::great_circle: return std::cos(s) * e1 + std::sin(s) * e2;
  }
  return {};
}

Vec ParametricCurve::velocity(int branch, double s) const {
  switch (kind) {
    case CurveKind::hyperbola: {
      Vec p(2);
      p << (branch == 0 ? 1.0 : -1.0) * a * std::sinh(s), b * std::cosh(s);
      return p;
    }
    case CurveKind::circle: {
      Vec p(2);
      p << -a * std::sin(s), a * std::cos(s);
      return p;
    }
    case CurveKind::great_circle: return -std::sin(s) * e1 + std::cos(s) * e2;
  }
  return {};
}

Vec ParametricCurve::acceleration(int branch, double s) const {
  switch (kind) {
    case CurveKind::hyperbola: return position(branch, s);
    case CurveKind::circle: return position(branch, s) - centre;
    case CurveKind::great_circle: return -position(branch, s);
  }
  return {};
}

SubmanifoldSpec::SubmanifoldSpec(SpaceId space, SubmanifoldKind kind) : space_(space), kind_(std::move(kind)) {
  const int amb = space_.ambient_dim();
  auto need_space = [&](bool ok, const char* what) {
    if (!ok) throw ConfigError(std::string(what) + " is not supported on " + space_.describe());
  };
  auto check_unit = [&](const Vec& p, const char* what) {
    if (p.size() != amb) throw ConfigError(std::string(what) + " has the wrong ambient dimension");
    if (std::abs(p.norm() - 1.0) > tol::unit_norm) throw ConfigError(std::string(what) + " must have unit norm");
  };
  std::visit(overloaded{
                 [&](PointSet& ps) {
                   need_space(space_.kind == SpaceKind::euclidean || space_.kind == SpaceKind::sphere ||
                                  space_.kind == SpaceKind::half_plane,
                              "point_set");
                   if (ps.points.empty()) throw ConfigError("point_set must not be empty");
                   for (const auto& p : ps.points) {
                     if (p.size() != amb) throw ConfigError("point_set point has the wrong ambient dimension");
                     if (space_.kind == SpaceKind::sphere) check_unit(p, "point_set point on a sphere");
                     if (space_.kind == SpaceKind::half_plane && !(p[1] > 0.0))
                       throw ConfigError("point_set point must lie in the upper half-plane");
                   }
                   for (std::size_t i = 0; i < ps.points.size(); ++i)
                     for (std::size_t j = i + 1; j < ps.points.size(); ++j)
                       if ((ps.points[i] - ps.points[j]).norm() == 0.0)
                         throw ConfigError("point_set contains a repeated point");
                 },
                 [&](AffineLine& l) {
                   need_space(space_.kind == SpaceKind::euclidean, "affine_line");
                   if (l.base.size() != amb || l.direction.size() != amb)
                     throw ConfigError("affine_line has the wrong dimension");
                   if (l.direction.norm() == 0.0) throw ConfigError("affine_line direction must be nonzero");
                   l.direction.normalize();
                 },
                 [&](ParametricCurve& c) {
                   if (c.kind == CurveKind::great_circle) {
                     need_space(space_.kind == SpaceKind::sphere, "great_circle");
                     check_unit(c.e1, "great_circle e1");
                     check_unit(c.e2, "great_circle e2");
                     if (std::abs(c.e1.dot(c.e2)) > tol::unit_norm)
                       throw ConfigError("great_circle frame must be orthonormal");
                   } else {
                     need_space(space_ == SpaceId::euclidean(2), to_string(c.kind).data());
                     if (!(c.a > 0.0) || (c.kind == CurveKind::hyperbola && !(c.b > 0.0)))
                       throw ConfigError("curve parameters must be positive");
                     if (c.kind == CurveKind::circle && c.centre.size() != 2)
                       throw ConfigError("circle centre must be a plane point");
                     if (c.kind == CurveKind::hyperbola && !(c.s_max > 0.0))
                       throw ConfigError("hyperbola parameter range must be positive");
                   }
                 },
                 [&](SpherePoint& p) {
                   need_space(space_.kind == SpaceKind::sphere, "sphere_point");
                   check_unit(p.unit, "sphere_point");
                 },
                 [&](DiskOrigin&) { need_space(space_.kind == SpaceKind::hyperbolic_disk, "disk_origin"); },
                 [&](ParaboloidVertex&) { need_space(space_.kind == SpaceKind::paraboloid, "paraboloid_vertex"); },
             },
             kind_);
}

SubmanifoldSpec SubmanifoldSpec::point_set(SpaceId space, std::vector<Vec> points) {
  return {space, PointSet{std::move(points)}};
}

SubmanifoldSpec SubmanifoldSpec::affine_line(SpaceId space, Vec base, Vec direction) {
  return {space, AffineLine{std::move(base), std::move(direction)}};
}

SubmanifoldSpec SubmanifoldSpec::hyperbola(double a, double b) {
  ParametricCurve c;
  c.kind = CurveKind::hyperbola;
  c.a = a;
  c.b = b;
  return {SpaceId::euclidean(2), c};
}

SubmanifoldSpec SubmanifoldSpec::circle(Vec centre, double radius) {
  ParametricCurve c;
  c.kind = CurveKind::circle;
  c.centre = std::move(centre);
  c.a = radius;
  return {SpaceId::euclidean(2), c};
}

SubmanifoldSpec SubmanifoldSpec::great_circle(int n, Vec e1, Vec e2) {
  ParametricCurve c;
  c.kind = CurveKind::great_circle;
  c.e1 = std::move(e1);
  c.e2 = std::move(e2);
  return {SpaceId::sphere(n), c};
}

SubmanifoldSpec SubmanifoldSpec::sphere_point(int n, Vec unit) { return {SpaceId::sphere(n), SpherePoint{std::move(unit)}}; }
SubmanifoldSpec SubmanifoldSpec::disk_origin() { return {SpaceId::hyperbolic_disk(), DiskOrigin{}}; }
SubmanifoldSpec SubmanifoldSpec::paraboloid_vertex() { return {SpaceId::paraboloid(), ParaboloidVertex{}}; }

std::string SubmanifoldSpec::kind_name() const {
  return std::visit(overloaded{
                        [](const PointSet&) { return std::string("point_set"); },
                        [](const AffineLine&) { return std::string("affine_line"); },
                        [](const ParametricCurve&) { return std::string("parametric_curve"); },
                        [](const SpherePoint&) { return std::string("sphere_point"); },
                        [](const DiskOrigin&) { return std::string("disk_origin"); },
                        [](const ParaboloidVertex&) { return std::string("paraboloid_vertex"); },
                    },
                    kind_);
}

bool SubmanifoldSpec::has_constant_closest_point() const {
  return !std::holds_alternative<AffineLine>(kind_) && !std::holds_alternative<ParametricCurve>(kind_);
}

double ambient_distance(const SpaceId& space, const Vec& x, const Vec& y) {
  switch (space.kind) {
    case SpaceKind::euclidean: return (x - y).norm();
    case SpaceKind::sphere:
      // 2 asin(|x - y| / 2), evaluated through atan2 to stay accurate near pi.
      return 2.0 * std::atan2((x - y).norm(), (x + y).norm());
    case SpaceKind::half_plane:
      return 2.0 * std::asinh((x - y).norm() / (2.0 * std::sqrt(x[1] * y[1])));
    default: throw Error(ErrorCode::invalid_argument, "no ambient distance formula for " + space.describe());
  }
}

ClosestPointResult closest_point(const SubmanifoldSpec& N, const ChartPoint& x) {
  if (!(x.space == N.space()))
    throw Error(ErrorCode::invalid_argument, "point of " + x.space.describe() + " queried against a submanifold of " +
                                                 N.space().describe());
  check_domain(x);
  const SpaceId& space = N.space();
  const Vec xa = embed(x);
  ClosestPointResult r = std::visit(
      overloaded{
          [&](const PointSet& ps) {
            std::vector<std::pair<double, int>> d;
            for (std::size_t i = 0; i < ps.points.size(); ++i)
              d.emplace_back(ambient_distance(space, xa, ps.points[i]), static_cast<int>(i));
            std::sort(d.begin(), d.end());
            ClosestPointResult out;
            out.k = ps.points[static_cast<std::size_t>(d[0].second)];
            out.rho = d[0].first;
            out.component = d[0].second;
            if (d.size() > 1 && d[1].first - d[0].first <= tol::ambiguity_rel * d[0].first)
              out.multiplicity = Multiplicity::ambiguous;
            return out;
          },
          [&](const AffineLine& l) {
            ClosestPointResult out;
            const double t = (xa - l.base).dot(l.direction);
            out.k = l.base + t * l.direction;
            out.rho = (xa - out.k).norm();
            out.parameter = t;
            return out;
          },
          [&](const ParametricCurve& c) { return curve_closest(c, space, xa); },
          [&](const SpherePoint& p) {
            ClosestPointResult out;
            out.k = p.unit;
            out.rho = ambient_distance(space, xa, p.unit);
            return out;
          },
          [&](const DiskOrigin&) {
            ClosestPointResult out;
            out.k = Vec::Zero(2);
            out.rho = -std::log1p(-x.coords[0]);
            return out;
          },
          [&](const ParaboloidVertex&) {
            ClosestPointResult out;
            out.k = Vec::Zero(3);
            out.rho = paraboloid_meridian_length(x.coords[0]);
            return out;
          },
      },
      N.kind());
  if (!(r.rho >= tol::on_submanifold)) throw DegeneratePointError("x lies on the submanifold (rho = 0)");
  return r;
}

double rho(const SubmanifoldSpec& N, const ChartPoint& x) { return closest_point(N, x).rho; }

RhoJet rho_jet(const SubmanifoldSpec& N, const ChartPoint& x, bool require_smooth) {
  RhoJet jet;
  jet.closest = require_smooth ? smooth_closest(N, x) : closest_point(N, x);
  const auto& K = jet.closest.k;
  const double r = jet.closest.rho;
  switch (N.space().kind) {
    case SpaceKind::euclidean: jet.gradient = (x.coords - K) / r; break;
    case SpaceKind::sphere: {
      const Vec xa = embed(x);
      // sin(rho) = |x - K| |x + K| / 2 for unit vectors
      const double sin_rho = 0.5 * (xa - K).norm() * (xa + K).norm();
      jet.gradient = -(embed_jacobian(x).transpose() * K) / sin_rho;
      break;
    }
    case SpaceKind::hyperbolic_disk:
      jet.gradient = Vec::Zero(2);
      jet.gradient[0] = 1.0 / (1.0 - x.coords[0]);
      break;
    case SpaceKind::paraboloid:
      jet.gradient = Vec::Zero(2);
      jet.gradient[0] = std::sqrt(1.0 + 4.0 * x.coords[0] * x.coords[0]);
      break;
    case SpaceKind::half_plane: jet.gradient = half_plane_gradient_fd(N, x); break;
  }
  return jet;
}

Vec rho_gradient(const SubmanifoldSpec& N, const ChartPoint& x) { return rho_jet(N, x).gradient; }

double drho(const SubmanifoldSpec& N, const TangentVector& v) {
  if (N.space().kind == SpaceKind::half_plane) {
    smooth_closest(N, v.base);
    const double h = tol::drho_fd_step;
    return (rho(N, base_geodesic(v, h).base) - rho(N, base_geodesic(v, -h).base)) / (2.0 * h);
  }
  return rho_jet(N, v.base).gradient.dot(v.comps);
}

double dk_quadform(const SubmanifoldSpec& N, const TangentVector& v) {
  const auto centre = smooth_closest(N, v.base);
  if (N.has_constant_closest_point()) return 0.0;
  const double h = std::min(tol::dk_fd_step, tol::fd_rho_fraction * centre.rho) / std::max(g_norm(v.base, v.comps), 1e-300);
  auto K_at = [&](double t) {
    const auto r = closest_point(N, base_geodesic(v, t).base);
    if (r.multiplicity == Multiplicity::ambiguous || r.component != centre.component)
      throw SmoothnessError("closest point changes branch inside the finite-difference stencil");
    return r.k;
  };
  const Vec dK = (K_at(h) - K_at(-h)) / (2.0 * h);
  return dK.dot(push_forward(v));
}

double d2rho(const SubmanifoldSpec& N, const TangentVector& v) {
  const auto centre = smooth_closest(N, v.base);
  const auto& c = v.base.coords;
  switch (N.space().kind) {
    case SpaceKind::hyperbolic_disk: {
      const double r = c[0], q = 1.0 - r;
      return r * v.comps[1] * v.comps[1] / (q * q);
    }
    case SpaceKind::sphere: {
      const Vec x = embed(v.base);
      const Vec xdot = push_forward(v);
      const Vec& K = centre.k;
      const double chord = (x - K).norm();
      const double cos_half = 0.5 * (x + K).norm();  // sqrt(1 - |x - K|^2 / 4)
      const double w = cos_half * cos_half;
      const double kv = K.dot(xdot), kx = K.dot(x);
      const double dk = dk_quadform(N, v);
      const double bracket = 0.25 * kv * kv / w - (dk - xdot.squaredNorm() * kx + kv * kv / (chord * chord));
      return bracket / (chord * cos_half);
    }
    default: return d2rho_fd(N, v, centre);
  }
}

double drho_opnorm(const SubmanifoldSpec& N, const ChartPoint& x) {
  const auto jet = rho_jet(N, x);
  switch (N.space().kind) {
    case SpaceKind::sphere:
    case SpaceKind::hyperbolic_disk:
    case SpaceKind::euclidean: return 1.0;
    default: break;
  }
  const Mat g = metric_tensor(x).matrix;
  return std::sqrt(jet.gradient.dot(g.ldlt().solve(jet.gradient)));
}

bool in_smooth_locus(const SubmanifoldSpec& N, const ChartPoint& x) {
  try {
    smooth_closest(N, x);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void require_smooth(const SubmanifoldSpec& N, const ChartPoint& x, const ClosestPointResult& r) {
  check_smooth_result(N, x, r);
}

bool minimiser_switched(const SubmanifoldSpec& N, const ClosestPointResult& prev, const ChartPoint& x,
                        const ClosestPointResult& now) {
  if (prev.component != now.component) return true;
  const auto* c = std::get_if<ParametricCurve>(&N.kind());
  if (!c || !prev.parameter || !now.parameter) return false;
  // Newton on <x - c(s), c'(s)> started from the previous minimiser.
  const Vec xa = embed(x);
  const int br = prev.component;
  double s = *prev.parameter;
  for (int it = 0; it < 50; ++it) {
    const Vec diff = xa - c->position(br, s);
    const Vec vel = c->velocity(br, s);
    const double gs = diff.dot(vel);
    const double dg = -vel.squaredNorm() + diff.dot(c->acceleration(br, s));
    if (!(dg < 0.0)) return true;  // past the focal set of the old branch
    const double next = s - gs / dg;
    if (std::abs(next - s) <= 1e-14 * (1.0 + std::abs(s))) { s = next; break; }
    s = next;
  }
  double ds = std::abs(s - *now.parameter);
  if (c->periodic()) ds = std::abs(std::remainder(ds, c->s_hi() - c->s_lo()));
  return ds > 1e-6 * (1.0 + std::abs(s));
}

int smooth_component(const SubmanifoldSpec& N, const ChartPoint& x) {
  const auto r = closest_point(N, x);
  const Vec xa = embed(x);
  return std::visit(overloaded{
                        [&](const PointSet&) { return r.component; },
                        [&](const AffineLine& l) {
                          if (xa.size() != 2) return 0;
                          const Vec d = xa - l.base;
                          return d[0] * l.direction[1] - d[1] * l.direction[0] > 0.0 ? 1 : 0;
                        },
                        [&](const ParametricCurve& c) {
                          switch (c.kind) {
                            case CurveKind::hyperbola: {
                              const double f = xa[0] * xa[0] / (c.a * c.a) - xa[1] * xa[1] / (c.b * c.b) - 1.0;
                              return 2 * r.component + (f > 0.0 ? 1 : 0);
                            }
                            case CurveKind::circle: return (xa - c.centre).norm() < c.a ? 1 : 0;
                            case CurveKind::great_circle: {
                              if (xa.size() != 3) return 0;
                              const Eigen::Vector3d n = Eigen::Vector3d(c.e1).cross(Eigen::Vector3d(c.e2));
                              return n.dot(Eigen::Vector3d(xa)) > 0.0 ? 1 : 0;
                            }
                          }
                          return 0;
                        },
                        [&](const auto&) { return 0; },
                    },
                    N.kind());
}

}  // namespace condgeo
