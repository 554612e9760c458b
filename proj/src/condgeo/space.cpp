#include "condgeo/space.hpp"

#include "condgeo/errors.hpp"
#include "condgeo/tolerances.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace condgeo {

namespace {

constexpr double pi = std::numbers::pi;

std::string fmt_coords(const Vec& c) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << ')';
  return os.str();
}

double wrap_angle(double a) {
  if (a >= -pi && a <= pi) return a;
  double w = std::remainder(a, 2.0 * pi);
  return w;
}

// Diagonal metric diag(h) with dh(a, b) = d h_b / d x^a.
ChristoffelSample diagonal_christoffel(const Vec& h, const Mat& dh) {
  const int n = static_cast<int>(h.size());
  ChristoffelSample gamma(n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        if (k == j) s += dh(i, k);
        if (k == i) s += dh(j, k);
        if (i == j) s -= dh(k, i);
        gamma.set(k, i, j, 0.5 * s / h[k]);
      }
    }
  }
  return gamma;
}

// Products of sines with one factor optionally replaced by a cosine.
double sine_product(const Vec& theta, int upto, int replaced = -1) {
  double p = 1.0;
  for (int j = 0; j < upto; ++j) p *= (j == replaced) ? std::cos(theta[j]) : std::sin(theta[j]);
  return p;
}

struct SphereDiag {
  Vec h;
  Mat dh;
};

SphereDiag sphere_diag(const Vec& theta) {
  const int n = static_cast<int>(theta.size());
  SphereDiag d{Vec::Ones(n), Mat::Zero(n, n)};
  for (int i = 1; i < n; ++i) {
    const double s = sine_product(theta, i);
    d.h[i] = s * s;
    for (int k = 0; k < i; ++k) {
      // d/dtheta_k of prod sin^2 = 2 sin cos * prod_{j != k} sin^2
      const double others = sine_product(theta, i, k);  // cos_k * prod_{j!=k} sin_j
      d.dh(k, i) = 2.0 * others * s;
    }
  }
  return d;
}

using StateDeriv = std::pair<Vec, Vec>;

StateDeriv geodesic_rhs(const SpaceId& space, const Vec& x, const Vec& v) {
  ChartPoint p{space, x};
  const auto gamma = base_christoffel(p);
  return {v, -gamma.contract(v)};
}

}  // namespace

std::string_view to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::euclidean: return "euclidean";
    case SpaceKind::sphere: return "sphere";
    case SpaceKind::hyperbolic_disk: return "hyperbolic_disk";
    case SpaceKind::paraboloid: return "paraboloid";
    case SpaceKind::half_plane: return "half_plane";
  }
  return "unknown";
}

SpaceKind space_kind_from_string(std::string_view name) {
  for (auto k : {SpaceKind::euclidean, SpaceKind::sphere, SpaceKind::hyperbolic_disk,
                 SpaceKind::paraboloid, SpaceKind::half_plane}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown space kind '" + std::string(name) + "'");
}

SpaceId SpaceId::euclidean(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "euclidean dimension must be >= 1");
  return {SpaceKind::euclidean, n};
}

SpaceId SpaceId::sphere(int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sphere dimension must be >= 1");
  return {SpaceKind::sphere, n};
}

SpaceId SpaceId::hyperbolic_disk(int n) {
  // The polar chart (r, phi) is two-dimensional; higher-dimensional punctured
  // disks contain this one isometrically.
  if (n != 2) throw Error(ErrorCode::invalid_argument, "hyperbolic_disk is implemented for n = 2 only");
  return {SpaceKind::hyperbolic_disk, 2};
}

SpaceId SpaceId::paraboloid() { return {SpaceKind::paraboloid, 2}; }
SpaceId SpaceId::half_plane() { return {SpaceKind::half_plane, 2}; }

int SpaceId::ambient_dim() const {
  switch (kind) {
    case SpaceKind::sphere: return n + 1;
    case SpaceKind::paraboloid: return 3;
    default: return n;
  }
}

bool SpaceId::is_periodic(int axis) const {
  switch (kind) {
    case SpaceKind::sphere: return axis == n - 1;
    case SpaceKind::hyperbolic_disk:
    case SpaceKind::paraboloid: return axis == 1;
    default: return false;
  }
}

std::string SpaceId::describe() const {
  return std::string(to_string(kind)) + "(" + std::to_string(n) + ")";
}

ChartPoint::ChartPoint(SpaceId s, Vec c) : space(s), coords(std::move(c)) {
  if (coords.size() != space.n)
    throw Error(ErrorCode::invalid_argument, "chart point of " + space.describe() + " needs " +
                                                 std::to_string(space.n) + " coordinates");
}

ChartPoint::ChartPoint(SpaceId s, std::initializer_list<double> c)
    : ChartPoint(s, Eigen::Map<const Vec>(c.begin(), static_cast<Eigen::Index>(c.size()))) {}

TangentVector::TangentVector(ChartPoint b, Vec c) : base(std::move(b)), comps(std::move(c)) {
  if (comps.size() != base.coords.size())
    throw Error(ErrorCode::invalid_argument, "tangent vector dimension does not match its base point");
}

TangentVector::TangentVector(ChartPoint b, std::initializer_list<double> c)
    : TangentVector(std::move(b), Vec(Eigen::Map<const Vec>(c.begin(), static_cast<Eigen::Index>(c.size())))) {}

ChristoffelSample::ChristoffelSample(int n)
    : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n * (n + 1) / 2), 0.0) {}

std::size_t ChristoffelSample::index(int k, int i, int j) const {
  if (i > j) std::swap(i, j);
  // packed upper triangle of the (i, j) block
  const int pair = i * n_ - i * (i - 1) / 2 + (j - i);
  return static_cast<std::size_t>(k) * static_cast<std::size_t>(n_ * (n_ + 1) / 2) + static_cast<std::size_t>(pair);
}

Vec ChristoffelSample::contract(const Vec& v) const {
  Vec out = Vec::Zero(n_);
  for (int k = 0; k < n_; ++k) {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
      s += (*this)(k, i, i) * v[i] * v[i];
      for (int j = i + 1; j < n_; ++j) s += 2.0 * (*this)(k, i, j) * v[i] * v[j];
    }
    out[k] = s;
  }
  return out;
}

bool in_domain(const ChartPoint& p) {
  try {
    check_domain(p);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

void check_domain(const ChartPoint& p) {
  const auto& c = p.coords;
  const auto& s = p.space;
  if (c.size() != s.n) throw DomainError("coordinate count does not match " + s.describe());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!std::isfinite(c[i])) throw DomainError("non-finite chart coordinate " + std::to_string(i));
    if (s.is_periodic(static_cast<int>(i)) && std::abs(c[i]) > pi)
      throw DomainError("periodic coordinate " + std::to_string(i) + " outside [-pi, pi] at " + fmt_coords(c));
  }
  switch (s.kind) {
    case SpaceKind::euclidean: break;
    case SpaceKind::sphere:
      for (int i = 0; i + 1 < s.n; ++i) {
        if (!(c[i] > 0.0 && c[i] < pi))
          throw DomainError("sphere angle theta_" + std::to_string(i + 1) + " must lie in (0, pi); got " +
                            fmt_coords(c));
      }
      break;
    case SpaceKind::hyperbolic_disk:
      if (!(c[0] > 0.0 && c[0] < 1.0)) throw DomainError("disk radius r must lie in (0, 1); got " + fmt_coords(c));
      break;
    case SpaceKind::paraboloid:
      if (!(c[0] > 0.0)) throw DomainError("paraboloid meridian coordinate u must be > 0; got " + fmt_coords(c));
      break;
    case SpaceKind::half_plane:
      if (!(c[1] > 0.0)) throw DomainError("half-plane coordinate y must be > 0; got " + fmt_coords(c));
      break;
  }
}

ChartPoint canonical(ChartPoint p) {
  for (int i = 0; i < p.space.n; ++i)
    if (p.space.is_periodic(i)) p.coords[i] = wrap_angle(p.coords[i]);
  return p;
}

Vec chart_difference(const ChartPoint& a, const ChartPoint& b) {
  Vec d = b.coords - a.coords;
  for (int i = 0; i < a.space.n; ++i)
    if (a.space.is_periodic(i)) d[i] = std::remainder(d[i], 2.0 * pi);
  return d;
}

double g_inner(const MetricSample& g, const Vec& u, const Vec& v) { return u.dot(g.matrix * v); }

double g_norm(const ChartPoint& p, const Vec& v) {
  return std::sqrt(g_inner(metric_tensor(p), v, v));
}

MetricSample metric_tensor(const ChartPoint& p) {
  check_domain(p);
  const int n = p.space.n;
  const auto& c = p.coords;
  Mat g = Mat::Zero(n, n);
  switch (p.space.kind) {
    case SpaceKind::euclidean: g.setIdentity(); break;
    case SpaceKind::sphere: g.diagonal() = sphere_diag(c).h; break;
    case SpaceKind::hyperbolic_disk: {
      const double w = 1.0 / ((1.0 - c[0]) * (1.0 - c[0]));
      g(0, 0) = w;
      g(1, 1) = c[0] * c[0] * w;
      break;
    }
    case SpaceKind::paraboloid:
      g(0, 0) = 1.0 + 4.0 * c[0] * c[0];
      g(1, 1) = c[0] * c[0];
      break;
    case SpaceKind::half_plane: g.diagonal().setConstant(1.0 / (c[1] * c[1])); break;
  }
  return {g};
}

ChristoffelSample christoffel_from_metric_fd(const ChartPoint& p) {
  const int n = p.space.n;
  std::vector<Mat> dg(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const double h = tol::metric_fd_step * std::max(1.0, std::abs(p.coords[a]));
    ChartPoint plus = p, minus = p;
    plus.coords[a] += h;
    minus.coords[a] -= h;
    dg[static_cast<std::size_t>(a)] = (metric_tensor(plus).matrix - metric_tensor(minus).matrix) / (2.0 * h);
  }
  const Mat ginv = metric_tensor(p).matrix.inverse();
  ChristoffelSample gamma(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[static_cast<std::size_t>(i)](l, j) + dg[static_cast<std::size_t>(j)](l, i) -
                             dg[static_cast<std::size_t>(l)](i, j));
        gamma.set(k, i, j, 0.5 * s);
      }
  return gamma;
}

ChristoffelSample base_christoffel(const ChartPoint& p) {
  check_domain(p);
  const int n = p.space.n;
  const auto& c = p.coords;
  switch (p.space.kind) {
    case SpaceKind::euclidean: return ChristoffelSample(n);
    case SpaceKind::sphere: {
      const auto d = sphere_diag(c);
      return diagonal_christoffel(d.h, d.dh);
    }
    case SpaceKind::hyperbolic_disk: {
      const double r = c[0], q = 1.0 - r;
      Vec h(2);
      h << 1.0 / (q * q), r * r / (q * q);
      Mat dh = Mat::Zero(2, 2);
      dh(0, 0) = 2.0 / (q * q * q);
      dh(0, 1) = 2.0 * r / (q * q * q);
      return diagonal_christoffel(h, dh);
    }
    case SpaceKind::half_plane: {
      const double y = c[1];
      Vec h = Vec::Constant(2, 1.0 / (y * y));
      Mat dh = Mat::Zero(2, 2);
      dh(1, 0) = dh(1, 1) = -2.0 / (y * y * y);
      return diagonal_christoffel(h, dh);
    }
    case SpaceKind::paraboloid: return christoffel_from_metric_fd(p);
  }
  return ChristoffelSample(n);
}

Vec embed(const ChartPoint& p) {
  const auto& c = p.coords;
  switch (p.space.kind) {
    case SpaceKind::sphere: {
      const int n = p.space.n;
      Vec x(n + 1);
      for (int i = 0; i < n; ++i) x[i] = sine_product(c, i) * std::cos(c[i]);
      x[n] = sine_product(c, n);
      return x;
    }
    case SpaceKind::paraboloid: {
      Vec x(3);
      x << c[0] * std::cos(c[1]), c[0] * std::sin(c[1]), c[0] * c[0];
      return x;
    }
    default: return c;
  }
}

Mat embed_jacobian(const ChartPoint& p) {
  const auto& c = p.coords;
  const int n = p.space.n;
  switch (p.space.kind) {
    case SpaceKind::sphere: {
      Mat J = Mat::Zero(n + 1, n);
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < i; ++k) J(i, k) = sine_product(c, i, k) * std::cos(c[i]);
        J(i, i) = -sine_product(c, i) * std::sin(c[i]);
      }
      for (int k = 0; k < n; ++k) J(n, k) = sine_product(c, n, k);
      return J;
    }
    case SpaceKind::paraboloid: {
      Mat J(3, 2);
      J << std::cos(c[1]), -c[0] * std::sin(c[1]), std::sin(c[1]), c[0] * std::cos(c[1]), 2.0 * c[0], 0.0;
      return J;
    }
    default: return Mat::Identity(n, n);
  }
}

Vec push_forward(const TangentVector& v) { return embed_jacobian(v.base) * v.comps; }

ChartPoint unembed(const SpaceId& space, const Vec& y) {
  if (y.size() != space.ambient_dim())
    throw Error(ErrorCode::invalid_argument, "ambient point of " + space.describe() + " needs " +
                                                 std::to_string(space.ambient_dim()) + " components");
  switch (space.kind) {
    case SpaceKind::sphere: {
      const double residual = std::abs(y.norm() - 1.0);
      if (residual > tol::unembed_residual)
        throw ProjectionError("point is off the unit sphere (| |y| - 1 | = " + std::to_string(residual) + ")",
                              residual);
      const int n = space.n;
      Vec theta(n);
      for (int k = 0; k + 1 < n; ++k) theta[k] = std::atan2(y.tail(n - k).norm(), y[k]);
      theta[n - 1] = std::atan2(y[n], y[n - 1]);
      return ChartPoint(space, theta);
    }
    case SpaceKind::paraboloid: {
      const double residual = std::abs(y[2] - y[0] * y[0] - y[1] * y[1]);
      if (residual > tol::unembed_residual)
        throw ProjectionError("point is off the paraboloid z = x^2 + y^2 (residual " + std::to_string(residual) + ")",
                              residual);
      return ChartPoint(space, {std::hypot(y[0], y[1]), std::atan2(y[1], y[0])});
    }
    default: return ChartPoint(space, y);
  }
}

TangentVector pull_back(const ChartPoint& base, const Vec& w) {
  const Mat J = embed_jacobian(base);
  if (J.rows() == J.cols()) return TangentVector(base, Vec(J.colPivHouseholderQr().solve(w)));
  const Mat JtJ = J.transpose() * J;
  return TangentVector(base, Vec(JtJ.ldlt().solve(J.transpose() * w)));
}

TangentVector base_geodesic(const TangentVector& v, double t) {
  check_domain(v.base);
  const SpaceId space = v.base.space;
  switch (space.kind) {
    case SpaceKind::euclidean:
      return TangentVector(ChartPoint(space, Vec(v.base.coords + t * v.comps)), v.comps);
    case SpaceKind::sphere: {
      const Vec x = embed(v.base);
      const Vec w = push_forward(v);
      const double speed = w.norm();
      if (speed == 0.0) return v;
      const double a = speed * t;
      const Vec y = std::cos(a) * x + std::sin(a) / speed * w;
      const Vec dy = -speed * std::sin(a) * x + std::cos(a) * w;
      const ChartPoint q = unembed(space, y / y.norm());
      for (int i = 0; i + 1 < space.n; ++i) {
        if (std::sin(q.coords[i]) < 1e-12)
          throw ChartExitError("great circle reaches a pole of the angular chart", t);
      }
      return pull_back(q, dy);
    }
    default: break;
  }
  // Fixed-step RK4 on the geodesic equations.
  if (t == 0.0) return v;
  const double speed = g_norm(v.base, v.comps);
  const double span = std::abs(t);
  const int steps = static_cast<int>(std::ceil(1.0 / tol::rk4_step_fraction * (1.0 + speed)));
  const double h = t / steps;
  Vec x = v.base.coords, u = v.comps;
  for (int s = 0; s < steps; ++s) {
    try {
      auto [k1x, k1v] = geodesic_rhs(space, x, u);
      auto [k2x, k2v] = geodesic_rhs(space, x + 0.5 * h * k1x, u + 0.5 * h * k1v);
      auto [k3x, k3v] = geodesic_rhs(space, x + 0.5 * h * k2x, u + 0.5 * h * k2v);
      auto [k4x, k4v] = geodesic_rhs(space, x + h * k3x, u + h * k3v);
      x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
      u += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      x = canonical(ChartPoint(space, x)).coords;
      check_domain(ChartPoint(space, x));
    } catch (const DomainError& e) {
      throw ChartExitError(std::string("base geodesic left the chart: ") + e.what(),
                           std::copysign(span * s / steps, t));
    }
  }
  return TangentVector(ChartPoint(space, x), u);
}

std::array<double, 2> plot_coordinates(const ChartPoint& p) {
  const auto& c = p.coords;
  switch (p.space.kind) {
    case SpaceKind::euclidean: return {c[0], p.space.n > 1 ? c[1] : 0.0};
    case SpaceKind::half_plane: return {c[0], c[1]};
    case SpaceKind::hyperbolic_disk:
    case SpaceKind::paraboloid: return {c[0] * std::cos(c[1]), c[0] * std::sin(c[1])};
    case SpaceKind::sphere: {
      if (p.space.n == 1) return {std::cos(c[0]), std::sin(c[0])};
      const Vec x = embed(p);
      const double angle = std::atan2(x[2], x[1]);
      return {c[0] * std::cos(angle), c[0] * std::sin(angle)};
    }
  }
  return {0.0, 0.0};
}

}  // namespace condgeo
