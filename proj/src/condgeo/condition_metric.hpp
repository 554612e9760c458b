#pragma once

#include "condgeo/distance_field.hpp"
#include "condgeo/tolerances.hpp"

#include <string>
#include <vector>

namespace condgeo {

/// Christoffel symbols of rho^-2 g.
ChristoffelSample condition_christoffel(const SubmanifoldSpec& N, const ChartPoint& x);

/// Gamma~^k(v, v) without assembling the full symbol array.
Vec condition_acceleration(const SubmanifoldSpec& N, const ChartPoint& x, const Vec& v, bool require_smooth = true);

enum class Termination { completed, near_submanifold, chart_boundary, left_smooth_locus, step_underflow };
std::string_view to_string(Termination t);

struct IvpOptions {
  double tol = tol::ivp_default;
  int samples = tol::ivp_samples;
  /// When false the integration carries on across the nonsmooth set of rho,
  /// following whichever closest point is nearest, and records each crossing.
  bool stop_on_nonsmooth = true;
  double rho_floor = tol::ivp_rho_floor;
  double max_step = tol::ivp_max_step;
};

struct GeodesicPath {
  explicit GeodesicPath(SubmanifoldSpec n) : space(n.space()), N(std::move(n)) {}

  SpaceId space;
  SubmanifoldSpec N;
  std::vector<double> times;
  std::vector<ChartPoint> points;
  std::vector<TangentVector> velocities;
  std::vector<double> rho_vals;
  std::vector<double> kappa_speed;  // |gamma'|_g / rho
  Termination termination = Termination::completed;
  std::string message;
  std::vector<double> crossings;    // parameters at which the closest point jumped

  std::size_t size() const { return times.size(); }
};

/// Condition geodesic from (v0.base, v0), rescaled to unit condition speed,
/// sampled on a uniform grid of `opts.samples` parameters over [0, s_max] or
/// over the part of it reached before an early stop.
GeodesicPath integrate_ivp(const SubmanifoldSpec& N, const TangentVector& v0, double s_max,
                           const IvpOptions& opts = {});

/// The chart segment from a to b, parametrised by condition arc length.
GeodesicPath line_path(const SubmanifoldSpec& N, const ChartPoint& a, const ChartPoint& b,
                       int samples = tol::ivp_samples);

/// Integral of |gamma'|_g / rho over the samples (composite Simpson).
double condition_length(const GeodesicPath& path);

struct BvpSolution {
  GeodesicPath path;
  double length_kappa = 0.0;
  double shooting_residual = 0.0;
  int iterations = 0;
};

/// Shooting on the initial velocity, seeded by a relaxed discrete polyline.
BvpSolution solve_bvp(const SubmanifoldSpec& N, const ChartPoint& a, const ChartPoint& b,
                      double tol = tol::bvp_default, int samples = tol::ivp_samples);

}  // namespace condgeo
