#ifndef CONDGEO_CONDGEO_H
#define CONDGEO_CONDGEO_H

/* Geodesics of condition metrics rho^-2 g on model Riemannian spaces.
 *
 * Every function returns a condgeo_status; on failure the message is available
 * from condgeo_last_error() on the same thread. Points and vectors are arrays
 * of chart coordinates (length = chart dimension n). Strings returned through
 * char** outputs are owned by the caller and released with condgeo_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(CONDGEO_BUILDING)
#define CONDGEO_API __attribute__((visibility("default")))
#else
#define CONDGEO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum condgeo_status {
  CONDGEO_OK = 0,
  CONDGEO_ERR_INVALID_ARGUMENT = 1,
  CONDGEO_ERR_DOMAIN = 2,           /* chart point outside its coordinate bounds */
  CONDGEO_ERR_CHART_EXIT = 3,       /* a base geodesic left the chart */
  CONDGEO_ERR_PROJECTION = 4,       /* ambient point not on the model surface */
  CONDGEO_ERR_DEGENERATE_POINT = 5, /* point on N, rho = 0 */
  CONDGEO_ERR_SMOOTHNESS = 6,       /* point outside the smooth locus of rho */
  CONDGEO_ERR_CONVERGENCE = 7,
  CONDGEO_ERR_CONFIG = 8,
  CONDGEO_ERR_IO = 9,
  CONDGEO_ERR_INTERNAL = 10
} condgeo_status;

typedef enum condgeo_space_kind {
  CONDGEO_SPACE_EUCLIDEAN = 0,
  CONDGEO_SPACE_SPHERE = 1,          /* angles theta_1..theta_n */
  CONDGEO_SPACE_HYPERBOLIC_DISK = 2, /* (r, phi), metric diag(1, r^2) / (1 - r)^2 */
  CONDGEO_SPACE_PARABOLOID = 3,      /* (u, phi) on z = x^2 + y^2 */
  CONDGEO_SPACE_HALF_PLANE = 4       /* (x, y), y > 0, metric g / y^2 */
} condgeo_space_kind;

typedef enum condgeo_classification {
  CONDGEO_CONVEX = 0,
  CONDGEO_CONCAVE = 1,
  CONDGEO_MIXED = 2,
  CONDGEO_AFFINE = 3
} condgeo_classification;

typedef struct condgeo_submanifold condgeo_submanifold;
typedef struct condgeo_path condgeo_path;

typedef struct condgeo_quantity {
  double value;
  double norm_term; /* |v|^2 |D rho|^2 */
  double dir_term;  /* (D rho v)^2 */
  double hess_term; /* rho D^2 rho (v, v) */
} condgeo_quantity;

typedef struct condgeo_convexity {
  double min_second_diff;
  double max_second_diff;
  double tolerance;
  condgeo_classification classification;
  size_t violations;
} condgeo_convexity;

CONDGEO_API const char* condgeo_version(void);
CONDGEO_API const char* condgeo_last_error(void);
CONDGEO_API const char* condgeo_status_name(condgeo_status status);
CONDGEO_API void condgeo_string_free(char* s);

/* Model spaces */
CONDGEO_API condgeo_status condgeo_ambient_dim(condgeo_space_kind kind, int n, int* out);
/* Chart components of g at x, row-major n x n. */
CONDGEO_API condgeo_status condgeo_metric(condgeo_space_kind kind, int n, const double* x, double* g_out);

/* Submanifolds. `points` holds `count` ambient points of the space back to back. */
CONDGEO_API condgeo_status condgeo_submanifold_point_set(condgeo_space_kind kind, int n, const double* points,
                                                         size_t count, condgeo_submanifold** out);
CONDGEO_API condgeo_status condgeo_submanifold_affine_line(int n, const double* base, const double* direction,
                                                           condgeo_submanifold** out);
CONDGEO_API condgeo_status condgeo_submanifold_hyperbola(double a, double b, condgeo_submanifold** out);
CONDGEO_API condgeo_status condgeo_submanifold_circle(double cx, double cy, double radius, condgeo_submanifold** out);
CONDGEO_API condgeo_status condgeo_submanifold_great_circle(int n, const double* e1, const double* e2,
                                                            condgeo_submanifold** out);
CONDGEO_API condgeo_status condgeo_submanifold_sphere_point(int n, const double* unit, condgeo_submanifold** out);
CONDGEO_API condgeo_status condgeo_submanifold_disk_origin(condgeo_submanifold** out);
CONDGEO_API condgeo_status condgeo_submanifold_paraboloid_vertex(condgeo_submanifold** out);
CONDGEO_API void condgeo_submanifold_free(condgeo_submanifold* N);
CONDGEO_API condgeo_status condgeo_submanifold_dim(const condgeo_submanifold* N, int* n_out);

/* Distance field */
CONDGEO_API condgeo_status condgeo_rho(const condgeo_submanifold* N, const double* x, double* out);
/* k_out receives the ambient closest point (length condgeo_ambient_dim). */
CONDGEO_API condgeo_status condgeo_closest_point(const condgeo_submanifold* N, const double* x, double* k_out,
                                                 double* rho_out, int* ambiguous_out);
CONDGEO_API condgeo_status condgeo_in_smooth_locus(const condgeo_submanifold* N, const double* x, int* out);
CONDGEO_API condgeo_status condgeo_drho(const condgeo_submanifold* N, const double* x, const double* v, double* out);
CONDGEO_API condgeo_status condgeo_d2rho(const condgeo_submanifold* N, const double* x, const double* v, double* out);

/* Condition metric. gamma_out has n^3 entries, index (k * n + i) * n + j. */
CONDGEO_API condgeo_status condgeo_condition_christoffel(const condgeo_submanifold* N, const double* x,
                                                         double* gamma_out);
CONDGEO_API condgeo_status condgeo_prop4_quantity(const condgeo_submanifold* N, const double* x, const double* v,
                                                  condgeo_quantity* out);

/* Paths. tol <= 0 and samples <= 0 select the defaults. */
CONDGEO_API condgeo_status condgeo_integrate_ivp(const condgeo_submanifold* N, const double* x0, const double* v0,
                                                 double s_max, double tol, int samples, int through_nonsmooth,
                                                 condgeo_path** out);
CONDGEO_API condgeo_status condgeo_solve_bvp(const condgeo_submanifold* N, const double* a, const double* b,
                                             double tol, int samples, condgeo_path** out, double* residual_out);
CONDGEO_API condgeo_status condgeo_line_path(const condgeo_submanifold* N, const double* a, const double* b,
                                             int samples, condgeo_path** out);
CONDGEO_API void condgeo_path_free(condgeo_path* path);
CONDGEO_API size_t condgeo_path_size(const condgeo_path* path);
CONDGEO_API int condgeo_path_dim(const condgeo_path* path);
/* Copies into caller buffers of size() or size() * dim() doubles. */
CONDGEO_API condgeo_status condgeo_path_times(const condgeo_path* path, double* out);
CONDGEO_API condgeo_status condgeo_path_points(const condgeo_path* path, double* out);
CONDGEO_API condgeo_status condgeo_path_velocities(const condgeo_path* path, double* out);
CONDGEO_API condgeo_status condgeo_path_rho(const condgeo_path* path, double* out);
CONDGEO_API condgeo_status condgeo_path_kappa_speed(const condgeo_path* path, double* out);
/* Static string: completed, near_submanifold, chart_boundary, left_smooth_locus or step_underflow. */
CONDGEO_API const char* condgeo_path_termination(const condgeo_path* path);
CONDGEO_API condgeo_status condgeo_path_condition_length(const condgeo_path* path, double* out);
/* tol <= 0 selects the default 1e-4 * max(1, value range). */
CONDGEO_API condgeo_status condgeo_path_convexity(const condgeo_path* path, double tol, condgeo_convexity* out);
CONDGEO_API condgeo_status condgeo_path_csv(const condgeo_path* path, char** csv_out);

/* Scenarios. `configs` lists extra scenario files (may be NULL when count is 0). */
CONDGEO_API condgeo_status condgeo_scenario_list(const char* const* configs, size_t config_count, char** json_out);
/* `scenario` is a scenario name or a path to a JSON config. `formats` is a
 * comma list of csv, svg (NULL keeps the config's choice); tol <= 0 and a NULL
 * seed keep the config's values. summary_json_out receives the run summary. */
CONDGEO_API condgeo_status condgeo_scenario_run(const char* scenario, const char* const* configs, size_t config_count,
                                                const char* out_dir, const char* formats, double tol,
                                                const uint64_t* seed, char** summary_json_out);

/* Verification suites: comma list of sphere, hyperbolic, euclidean, crosschecks
 * (NULL or empty for all). passed_out is 1 when every check passed. */
CONDGEO_API condgeo_status condgeo_verify(const char* suites, int samples, uint64_t seed, char** json_out,
                                          char** table_out, int* passed_out);

#ifdef __cplusplus
}
#endif

#endif
