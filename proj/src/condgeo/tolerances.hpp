#pragma once

// Every numerical step size and threshold used by the library lives here so
// that reports can state exactly what was used.

namespace condgeo::tol {

// geometry
inline constexpr double symmetry = 1e-12;
inline constexpr double metric_fd_step = 1e-6;      // scaled by max(1, |coord|)
inline constexpr double unembed_residual = 1e-9;
inline constexpr double rk4_step_fraction = 1e-3;   // base geodesic: h <= 1e-3 * span / (1 + |v|_g)

// distance field
inline constexpr double on_submanifold = 1e-12;
inline constexpr double ambiguity_rel = 1e-6;
inline constexpr double unit_norm = 1e-12;
inline constexpr double antipode_margin = 1e-6;      // angular margin on the sphere
inline constexpr double focal_margin = 1e-6;         // distance from a curve's focal axis/centre
inline constexpr int curve_seeds = 64;
inline constexpr double curve_polish = 1e-12;        // |d'(s)| after polishing
inline constexpr double drho_fd_step = 1e-5;
inline constexpr double d2rho_fd_step = 1e-4;
inline constexpr double dk_fd_step = 1e-5;
inline constexpr double fd_rho_fraction = 0.05;     // stencil reach at most this fraction of rho
inline constexpr double paraboloid_quadrature = 1e-14;  // scaled by max(1, u^2)

// condition metric
inline constexpr double ivp_default = 1e-9;
inline constexpr int ivp_samples = 513;
inline constexpr double ivp_rho_floor = 1e-6;
inline constexpr double ivp_max_step = 0.1;          // 0.1 * rho in g-length at unit condition speed
inline constexpr double bvp_default = 1e-6;
inline constexpr int bvp_max_iterations = 200;
inline constexpr int bvp_polyline_nodes = 64;

// self-convexity
inline constexpr double convexity_rel = 1e-4;        // default: 1e-4 * max(1, value range)
inline constexpr double theorem_sign = 1e-8;         // scaled by max(1, |terms|)
inline constexpr double theorem_sign_fd = 1e-6;      // suites whose Hessian comes from finite differences
inline constexpr double strict_concavity = 1e-6;
inline constexpr double strict_concavity_trigger = 0.1;  // |phi'| r

// oracles
inline constexpr int quadrature_max_nodes = 1000000;
inline constexpr int grid_min_resolution = 16;

}  // namespace condgeo::tol
