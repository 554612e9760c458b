#pragma once

#include "condgeo/condition_metric.hpp"
#include "condgeo/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace condgeo {

/// log(1/rho) sampled along a path.
struct Profile {
  std::vector<double> times;
  std::vector<double> values;
};

Profile profile(const GeodesicPath& path);

/// Concatenates `second` after `first`, shifting its parameters so that the
/// two pieces meet; the junction sample of `second` is dropped.
Profile glue(const Profile& first, const Profile& second);

enum class Classification { convex, concave, mixed, affine };
std::string_view to_string(Classification c);

struct ConvexityReport {
  double min_second_diff = 0.0;
  double max_second_diff = 0.0;
  Classification classification = Classification::affine;
  std::vector<double> violation_locations;  // parameters where the second difference is below -tol
  double tolerance_used = 0.0;
  std::vector<double> second_diff;          // one per sample, NaN at both ends
};

/// Second divided differences of the profile classified against `tol`
/// (default 1e-4 * max(1, value range)).
ConvexityReport convexity_report(const Profile& p, std::optional<double> tol = std::nullopt);

struct QuantitySample {
  ChartPoint x;
  TangentVector v;
  double value = 0.0;
  double norm_term = 0.0;  // |v|_g^2 |D rho|^2
  double dir_term = 0.0;   // (D rho v)^2
  double hess_term = 0.0;  // rho D^2 rho (v, v)
};

/// |v|^2 |D rho|^2 - (D rho v)^2 - rho D^2 rho (v, v). Its sign is the sign of
/// the second derivative of log(1/rho) along the condition geodesic through v.
QuantitySample prop4_quantity(const SubmanifoldSpec& N, const TangentVector& v);

/// The same quantity on the disk with N the origin, in closed form.
double hyperbolic_quantity(double r, double phi_dot);

/// The same quantity on a sphere with N the chart pole (1, 0, ..., 0), in
/// closed form from the chart angles and angular velocities.
double sphere_quantity(const Vec& theta, const Vec& theta_dot);

/// Point drawn uniformly from the sampling box of the space's chart.
ChartPoint sample_chart_point(const SpaceId& space, Rng& rng);
/// Direction drawn uniformly from the unit g-sphere at x.
TangentVector sample_unit_direction(const ChartPoint& x, Rng& rng);

struct SuiteSummary {
  std::string name;
  std::string space;
  std::string submanifold;
  std::string predicted;  // "nonnegative" or "nonpositive"
  int samples = 0;
  int redraws = 0;
  double min_value = 0.0;
  double max_value = 0.0;
  double mean_value = 0.0;
  double tolerance = 0.0;
  int sign_failures = 0;
  int strict_checked = 0;  // hyperbolic suites: samples with |phi'| r above the trigger
  int strict_failures = 0;
  bool passed = false;
};

/// Evaluates the quantity at `samples` random smooth-locus pairs and checks
/// the sign the theorems predict for the space (nonnegative on euclidean
/// spaces and spheres, nonpositive and quantitatively negative on the disk).
SuiteSummary theorem_suite(const SubmanifoldSpec& N, int samples, std::uint64_t seed, std::string name = {});

}  // namespace condgeo
