#include "condgeo/condition_metric.hpp"

#include "condgeo/errors.hpp"
#include "condgeo/oracles.hpp"

#include <cmath>
#include <limits>

namespace condgeo {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepFailure {
  Termination reason;
  std::string message;
};

struct Sample {
  double s;
  Vec y;
  ClosestPointResult closest;
};

struct RunResult {
  std::vector<Sample> samples;
  Termination termination = Termination::completed;
  std::string message;
  double s_last = 0.0;
  std::vector<double> crossings;
};

class GeodesicSystem {
 public:
  explicit GeodesicSystem(const SubmanifoldSpec& N) : N_(N) {}

  // Right-hand side of x' = v, v' = -Gamma~(v, v). Periodic chart axes are
  // wrapped before evaluation; `closest` receives the closest point used.
  Vec operator()(const Vec& y, ClosestPointResult* closest = nullptr) const {
    const int n = N_.space().dim();
    ChartPoint x;
    try {
      x = canonical(ChartPoint(N_.space(), Vec(y.head(n))));
      check_domain(x);
    } catch (const DomainError& e) {
      throw StepFailure{Termination::chart_boundary, e.what()};
    }
    Vec out(2 * n);
    out.head(n) = y.tail(n);
    try {
      const auto jet = rho_jet(N_, x, false);
      out.tail(n) = -accel_from_jet(x, y.tail(n), jet);
      if (closest) *closest = jet.closest;
    } catch (const DegeneratePointError& e) {
      throw StepFailure{Termination::near_submanifold, e.what()};
    } catch (const ChartExitError& e) {
      throw StepFailure{Termination::chart_boundary, e.what()};
    } catch (const DomainError& e) {
      // A finite-difference stencil of the metric reached past the chart boundary.
      throw StepFailure{Termination::chart_boundary, e.what()};
    }
    if (!out.allFinite()) throw StepFailure{Termination::step_underflow, "non-finite acceleration"};
    return out;
  }

  static Vec accel_from_jet(const ChartPoint& x, const Vec& v, const RhoJet& jet) {
    const Mat g = metric_tensor(x).matrix;
    const Vec dsigma = -jet.gradient / jet.closest.rho;
    const Vec raised = g.ldlt().solve(dsigma);
    return base_christoffel(x).contract(v) + 2.0 * dsigma.dot(v) * v - v.dot(g * v) * raised;
  }

 private:
  const SubmanifoldSpec& N_;
};

RunResult run_dopri(const SubmanifoldSpec& N, const Vec& y0, const ClosestPointResult& closest0, double s_end,
                    int samples, const IvpOptions& opts) {
  const int n = N.space().dim();
  const GeodesicSystem f(N);
  RunResult out;
  out.samples.push_back({0.0, y0, closest0});
  if (samples < 2 || s_end <= 0.0) return out;

  auto grid = [&](int k) { return k == samples - 1 ? s_end : s_end * k / (samples - 1); };
  double s = 0.0;
  Vec y = y0;
  ClosestPointResult prev = closest0;
  Vec k1 = f(y);
  double h = std::min(opts.max_step, 0.05);
  int next = 1;
  const double h_min = 1e-13;

  while (next < samples) {
    const double target = grid(next);
    const bool lands = h >= target - s;
    const double step = lands ? target - s : h;
    Vec y_new, k7;
    ClosestPointResult closest_new;
    double err = 0.0;
    try {
      const Vec k2 = f(y + step * a21 * k1);
      const Vec k3 = f(y + step * (a31 * k1 + a32 * k2));
      const Vec k4 = f(y + step * (a41 * k1 + a42 * k2 + a43 * k3));
      const Vec k5 = f(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Vec k6 = f(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
      y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = f(y_new, &closest_new);
      const Vec e = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      for (int i = 0; i < 2 * n; ++i) {
        const double scale = opts.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y_new[i])));
        err = std::max(err, std::abs(e[i]) / scale);
      }
    } catch (const StepFailure& fail) {
      h = 0.25 * step;
      if (h < h_min * std::max(1.0, s)) {
        out.termination = fail.reason;
        out.message = fail.message;
        break;
      }
      continue;
    }
    if (!(err <= 1.0)) {
      h = step * std::max(0.1, 0.9 * std::pow(std::isfinite(err) ? err : 1e10, -0.2));
      if (h < h_min * std::max(1.0, s)) {
        out.termination = Termination::step_underflow;
        out.message = "step size underflow at s = " + std::to_string(s);
        break;
      }
      continue;
    }

    const ChartPoint x_new = canonical(ChartPoint(N.space(), Vec(y_new.head(n))));
    if (closest_new.rho < opts.rho_floor) {
      out.termination = Termination::near_submanifold;
      out.message = "rho fell below " + std::to_string(opts.rho_floor);
      break;
    }
    bool nonsmooth = false;
    try {
      require_smooth(N, x_new, closest_new);
    } catch (const SmoothnessError&) {
      nonsmooth = true;
    }
    const bool switched = minimiser_switched(N, prev, x_new, closest_new);
    if (opts.stop_on_nonsmooth && (nonsmooth || switched)) {
      out.termination = Termination::left_smooth_locus;
      out.message = "geodesic reached the nonsmooth set of rho";
      break;
    }
    const double s_new = lands ? target : s + step;
    if (switched) out.crossings.push_back(s_new);

    s = s_new;
    y = y_new;
    y.head(n) = x_new.coords;
    k1 = k7;
    prev = closest_new;
    if (lands) {
      out.samples.push_back({s, y, closest_new});
      ++next;
    } else {
      h = step * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10), -0.2)));
    }
    h = std::min(h, opts.max_step);
  }
  out.s_last = s;
  return out;
}

GeodesicPath to_path(const SubmanifoldSpec& N, const RunResult& run) {
  const int n = N.space().dim();
  GeodesicPath path(N);
  for (const auto& smp : run.samples) {
    ChartPoint x(N.space(), Vec(smp.y.head(n)));
    const Vec v = smp.y.tail(n);
    path.times.push_back(smp.s);
    path.rho_vals.push_back(smp.closest.rho);
    path.kappa_speed.push_back(g_norm(x, v) / smp.closest.rho);
    path.velocities.emplace_back(x, v);
    path.points.push_back(std::move(x));
  }
  path.termination = run.termination;
  path.message = run.message;
  path.crossings = run.crossings;
  return path;
}

}  // namespace

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::near_submanifold: return "near_submanifold";
    case Termination::chart_boundary: return "chart_boundary";
    case Termination::left_smooth_locus: return "left_smooth_locus";
    case Termination::step_underflow: return "step_underflow";
  }
  return "unknown";
}

ChristoffelSample condition_christoffel(const SubmanifoldSpec& N, const ChartPoint& x) {
  const auto jet = rho_jet(N, x);
  const Mat g = metric_tensor(x).matrix;
  const Vec dsigma = -jet.gradient / jet.closest.rho;
  const Vec raised = g.ldlt().solve(dsigma);
  ChristoffelSample out = base_christoffel(x);
  const int n = x.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double add = -g(i, j) * raised[k];
        if (k == i) add += dsigma[j];
        if (k == j) add += dsigma[i];
        out.add(k, i, j, add);
      }
  return out;
}

Vec condition_acceleration(const SubmanifoldSpec& N, const ChartPoint& x, const Vec& v, bool require_smooth) {
  return GeodesicSystem::accel_from_jet(x, v, rho_jet(N, x, require_smooth));
}

GeodesicPath integrate_ivp(const SubmanifoldSpec& N, const TangentVector& v0, double s_max, const IvpOptions& opts) {
  if (!(v0.base.space == N.space())) throw Error(ErrorCode::invalid_argument, "initial point belongs to another space");
  if (!(s_max > 0.0) || !std::isfinite(s_max)) throw Error(ErrorCode::invalid_argument, "s_max must be positive");
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  if (opts.samples < 2) throw Error(ErrorCode::invalid_argument, "at least two samples are required");
  const ChartPoint x0 = canonical(v0.base);
  const auto jet = rho_jet(N, x0, opts.stop_on_nonsmooth);
  const double speed = g_norm(x0, v0.comps);
  if (!(speed > 0.0)) throw Error(ErrorCode::invalid_argument, "initial velocity must be nonzero");
  const int n = N.space().dim();
  Vec y0(2 * n);
  y0.head(n) = x0.coords;
  y0.tail(n) = v0.comps * (jet.closest.rho / speed);

  RunResult run = run_dopri(N, y0, jet.closest, s_max, opts.samples, opts);
  if (run.termination != Termination::completed && run.s_last > 0.0) {
    // Resample the reached part of the trajectory on its own uniform grid.
    const Termination reason = run.termination;
    const std::string message = run.message;
    double s_end = run.s_last;
    for (int attempt = 0; attempt < 4; ++attempt) {
      RunResult again = run_dopri(N, y0, jet.closest, s_end, opts.samples, opts);
      if (again.termination == Termination::completed) {
        run = std::move(again);
        break;
      }
      s_end = again.s_last * (1.0 - 1e-9);
      if (attempt == 3) run = std::move(again);
    }
    run.termination = reason;
    run.message = message;
  }
  return to_path(N, run);
}

GeodesicPath line_path(const SubmanifoldSpec& N, const ChartPoint& a, const ChartPoint& b, int samples) {
  if (samples < 2) throw Error(ErrorCode::invalid_argument, "at least two samples are required");
  const SpaceId& space = N.space();
  const Vec d = chart_difference(a, b);
  if (d.norm() == 0.0) throw Error(ErrorCode::invalid_argument, "line endpoints coincide");
  auto point_at = [&](double t) { return canonical(ChartPoint(space, Vec(a.coords + t * d))); };
  auto speed = [&](double t) {
    const ChartPoint p = point_at(t);
    return std::sqrt(d.dot(metric_tensor(p).matrix * d)) / rho(N, p);
  };
  const double total = adaptive_quadrature(speed, 0.0, 1.0, 1e-12).value;

  GeodesicPath path(N);
  constexpr int substeps = 16;
  const double ds = total / (samples - 1) / substeps;
  double t = 0.0;
  for (int k = 0; k < samples; ++k) {
    if (k > 0) {
      for (int m = 0; m < substeps; ++m) {
        auto dt = [&](double tt) { return 1.0 / speed(std::min(tt, 1.0)); };
        const double q1 = dt(t), q2 = dt(t + 0.5 * ds * q1), q3 = dt(t + 0.5 * ds * q2), q4 = dt(t + ds * q3);
        t += ds / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
      }
    }
    const double tt = (k == samples - 1) ? 1.0 : std::min(t, 1.0);
    const ChartPoint p = point_at(tt);
    const auto r = closest_point(N, p);
    const Vec v = d / speed(tt);
    path.times.push_back(total * k / (samples - 1));
    path.rho_vals.push_back(r.rho);
    path.kappa_speed.push_back(g_norm(p, v) / r.rho);
    path.velocities.emplace_back(p, v);
    path.points.push_back(p);
  }
  return path;
}

double condition_length(const GeodesicPath& path) {
  const auto& t = path.times;
  const auto& f = path.kappa_speed;
  const std::size_t m = t.size();
  if (m < 2) return 0.0;
  if (m == 2) return 0.5 * (t[1] - t[0]) * (f[0] + f[1]);
  double total = 0.0;
  std::size_t i = 0;
  for (; i + 2 < m; i += 2) {
    const double h0 = t[i + 1] - t[i], h1 = t[i + 2] - t[i + 1];
    total += (h0 + h1) / 6.0 *
             ((2.0 - h1 / h0) * f[i] + (h0 + h1) * (h0 + h1) / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i + 1 < m) {
    // One interval left: integrate the quadratic through the last three samples.
    const double h0 = t[m - 2] - t[m - 3], h1 = t[m - 1] - t[m - 2];
    total += f[m - 1] * (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1)) +
             f[m - 2] * (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0) - f[m - 3] * h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
  }
  return total;
}

namespace {

double edge_cost(const SubmanifoldSpec& N, const Vec& p, const Vec& q) {
  const ChartPoint mid = canonical(ChartPoint(N.space(), Vec(0.5 * (p + q))));
  if (!in_domain(mid)) return std::numeric_limits<double>::infinity();
  double r;
  try {
    r = rho(N, mid);
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
  const Vec d = q - p;
  return std::sqrt(d.dot(metric_tensor(mid).matrix * d)) / r;
}

// Discrete seed path: straight chart polyline relaxed by coordinate descent
// on the sum of edge condition lengths.
std::vector<Vec> relaxed_polyline(const SubmanifoldSpec& N, const ChartPoint& a, const Vec& d) {
  const int nodes = tol::bvp_polyline_nodes;
  std::vector<Vec> P(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) P[static_cast<std::size_t>(i)] = a.coords + d * (double(i) / (nodes - 1));
  const int n = static_cast<int>(d.size());
  double delta = 0.05 * d.norm();
  for (int sweep = 0; sweep < 400 && delta > 1e-4 * d.norm(); ++sweep) {
    bool improved = false;
    for (int i = 1; i + 1 < nodes; ++i) {
      auto& p = P[static_cast<std::size_t>(i)];
      const auto& lo = P[static_cast<std::size_t>(i - 1)];
      const auto& hi = P[static_cast<std::size_t>(i + 1)];
      double local = edge_cost(N, lo, p) + edge_cost(N, p, hi);
      for (int c = 0; c < n; ++c)
        for (double sign : {1.0, -1.0}) {
          Vec trial = p;
          trial[c] += sign * delta;
          const double cost = edge_cost(N, lo, trial) + edge_cost(N, trial, hi);
          if (cost < local) {
            p = trial;
            local = cost;
            improved = true;
          }
        }
    }
    if (!improved) delta *= 0.5;
  }
  return P;
}

struct Shot {
  ChartPoint end;
  Vec residual;
  bool reached = false;
};

}  // namespace

BvpSolution solve_bvp(const SubmanifoldSpec& N, const ChartPoint& a, const ChartPoint& b, double tol,
                      int samples) {
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  if (samples < 2) throw Error(ErrorCode::invalid_argument, "at least two samples are required");
  require_smooth(N, a, closest_point(N, a));
  require_smooth(N, b, closest_point(N, b));
  if (smooth_component(N, a) != smooth_component(N, b))
    throw SmoothnessError("endpoints lie in different components of the smooth locus");
  const Vec d = chart_difference(a, b);
  if (d.norm() == 0.0) throw Error(ErrorCode::invalid_argument, "boundary points coincide");

  const auto poly = relaxed_polyline(N, a, d);
  double seed_length = 0.0;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) seed_length += edge_cost(N, poly[i], poly[i + 1]);
  const Vec first = poly[1] - poly[0];
  const double rho_a = rho(N, a);
  const double rho_b = rho(N, b);
  Vec u = first * (seed_length / (g_norm(a, first) / rho_a));

  const Mat gb = metric_tensor(b).matrix;
  const Mat weight = Eigen::LLT<Mat>(gb).matrixU();
  IvpOptions shoot_opts;
  shoot_opts.tol = std::min(1e-11, 1e-3 * tol);
  shoot_opts.samples = 2;

  auto shoot = [&](const Vec& init) {
    Shot shot;
    const double length = g_norm(a, init) / rho_a;
    if (!(length > 0.0) || !std::isfinite(length)) return shot;
    try {
      const auto path = integrate_ivp(N, TangentVector(a, init), length, shoot_opts);
      shot.end = path.points.back();
      shot.reached = path.termination == Termination::completed;
      shot.residual = weight * chart_difference(b, shot.end) / rho_b;
    } catch (const Error&) {
      shot.reached = false;
    }
    return shot;
  };
  auto merit = [](const Shot& s) {
    return s.reached ? s.residual.norm() : std::numeric_limits<double>::infinity();
  };

  Shot cur = shoot(u);
  const int n = static_cast<int>(u.size());
  double lambda = 1e-3;
  int iterations = 0;
  for (; iterations < tol::bvp_max_iterations && merit(cur) > 1e-2 * tol; ++iterations) {
    if (!cur.reached) throw ConvergenceError("shooting from the polyline seed did not reach the target region");
    Mat J(n, n);
    for (int j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(1.0, u.norm());
      Vec up = u;
      up[j] += h;
      const Shot sj = shoot(up);
      if (!sj.reached) throw ConvergenceError("shooting Jacobian left the smooth locus");
      J.col(j) = (sj.residual - cur.residual) / h;
    }
    const Mat JtJ = J.transpose() * J;
    const Vec rhs = -J.transpose() * cur.residual;
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      Mat A = JtJ;
      A.diagonal() += lambda * JtJ.diagonal() + Vec::Constant(n, 1e-14 * JtJ.diagonal().maxCoeff());
      const Vec delta = A.ldlt().solve(rhs);
      const Shot trial = shoot(u + delta);
      if (merit(trial) < merit(cur)) {
        u += delta;
        cur = trial;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!accepted) break;
  }

  IvpOptions final_opts = shoot_opts;
  final_opts.samples = samples;
  const double length = g_norm(a, u) / rho_a;
  BvpSolution sol{integrate_ivp(N, TangentVector(a, u), length, final_opts), 0.0, 0.0, iterations};
  if (sol.path.termination != Termination::completed)
    throw ConvergenceError("boundary value geodesic leaves the smooth locus: " + sol.path.message);
  sol.shooting_residual = (weight * chart_difference(b, sol.path.points.back()) / rho_b).norm();
  if (!(sol.shooting_residual <= tol))
    throw ConvergenceError("shooting did not converge: residual " + std::to_string(sol.shooting_residual) +
                           " after " + std::to_string(iterations) + " iterations");
  sol.length_kappa = condition_length(sol.path);
  return sol;
}

}  // namespace condgeo
