#pragma once

// Brute-force references used to validate the analytic code paths.

#include "condgeo/distance_field.hpp"

#include <functional>

namespace condgeo {

struct QuadratureResult {
  double value = 0.0;
  long nodes = 0;
};

/// Adaptive Simpson with absolute tolerance `tol`. Throws ConvergenceError
/// when more than 10^6 integrand evaluations would be needed.
QuadratureResult adaptive_quadrature(const std::function<double(double)>& f, double a, double b, double tol);

using ScalarField = std::function<double(const ChartPoint&)>;

struct FdResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
};

/// Central difference of `field` along the base geodesic through (v.base, v).
/// Order 2 applies one Richardson extrapolation.
FdResult fd_derivative(int order, const ScalarField& field, const TangentVector& v, double h);

struct GridSpec {
  Vec lo;  // chart box
  Vec hi;
  int resolution = 64;  // nodes per axis
};

/// Shortest path on a lattice over `grid` whose stencil joins each node to every
/// primitive offset within radius max(2, log2(resolution) - 4), weighting each edge by
/// its g-length at the midpoint divided by rho at the midpoint. Two-dimensional
/// charts only.
double grid_condition_distance(const GridSpec& grid, const SubmanifoldSpec& N, const ChartPoint& a,
                               const ChartPoint& b);

}  // namespace condgeo
