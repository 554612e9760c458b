#include "condgeo/condgeo.h"

#include "condgeo/errors.hpp"
#include "condgeo/scenario.hpp"
#include "condgeo/verify.hpp"

#include <json.hpp>

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>
#include <string>

struct condgeo_submanifold {
  condgeo::SubmanifoldSpec spec;
};

struct condgeo_path {
  condgeo::GeodesicPath path;
};

namespace {

thread_local std::string last_error;

condgeo_status code_of(condgeo::ErrorCode code) {
  using condgeo::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return CONDGEO_ERR_INVALID_ARGUMENT;
    case ErrorCode::domain: return CONDGEO_ERR_DOMAIN;
    case ErrorCode::chart_exit: return CONDGEO_ERR_CHART_EXIT;
    case ErrorCode::projection: return CONDGEO_ERR_PROJECTION;
    case ErrorCode::degenerate_point: return CONDGEO_ERR_DEGENERATE_POINT;
    case ErrorCode::smoothness: return CONDGEO_ERR_SMOOTHNESS;
    case ErrorCode::convergence: return CONDGEO_ERR_CONVERGENCE;
    case ErrorCode::config: return CONDGEO_ERR_CONFIG;
    case ErrorCode::io: return CONDGEO_ERR_IO;
  }
  return CONDGEO_ERR_INTERNAL;
}

condgeo_status fail(condgeo_status s, const char* what) {
  last_error = what;
  return s;
}

template <class F>
condgeo_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return CONDGEO_OK;
  } catch (const condgeo::Error& e) {
    return fail(code_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CONDGEO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CONDGEO_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CONDGEO_ERR_INTERNAL, "unknown failure");
  }
}

void need(const void* p, const char* what) {
  if (!p) throw condgeo::Error(condgeo::ErrorCode::invalid_argument, std::string(what) + " must not be null");
}

condgeo::SpaceId space_of(condgeo_space_kind kind, int n) {
  using condgeo::SpaceId;
  switch (kind) {
    case CONDGEO_SPACE_EUCLIDEAN: return SpaceId::euclidean(n);
    case CONDGEO_SPACE_SPHERE: return SpaceId::sphere(n);
    case CONDGEO_SPACE_HYPERBOLIC_DISK: return SpaceId::hyperbolic_disk(n);
    case CONDGEO_SPACE_PARABOLOID:
      if (n != 2) throw condgeo::Error(condgeo::ErrorCode::invalid_argument, "the paraboloid is two-dimensional");
      return SpaceId::paraboloid();
    case CONDGEO_SPACE_HALF_PLANE:
      if (n != 2) throw condgeo::Error(condgeo::ErrorCode::invalid_argument, "the half-plane is two-dimensional");
      return SpaceId::half_plane();
  }
  throw condgeo::Error(condgeo::ErrorCode::invalid_argument, "unknown space kind");
}

condgeo::Vec vec(const double* p, int n, const char* what) {
  need(p, what);
  return Eigen::Map<const condgeo::Vec>(p, n);
}

condgeo::ChartPoint point(const condgeo_submanifold* N, const double* x, const char* what = "x") {
  need(N, "submanifold");
  const auto& space = N->spec.space();
  return condgeo::ChartPoint(space, vec(x, space.dim(), what));
}

condgeo::TangentVector tangent(const condgeo_submanifold* N, const double* x, const double* v) {
  const auto p = point(N, x);
  return condgeo::TangentVector(p, vec(v, p.dim(), "v"));
}

void emit(condgeo_submanifold** out, condgeo::SubmanifoldSpec spec) {
  need(out, "out");
  *out = new condgeo_submanifold{std::move(spec)};
}

void emit(condgeo_path** out, condgeo::GeodesicPath path) {
  need(out, "out");
  *out = new condgeo_path{std::move(path)};
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::vector<std::string> split(const char* list) {
  std::vector<std::string> out;
  if (!list) return out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

std::vector<std::string> config_list(const char* const* configs, size_t count) {
  std::vector<std::string> out;
  if (count > 0) need(configs, "configs");
  for (size_t i = 0; i < count; ++i) {
    need(configs[i], "config path");
    out.emplace_back(configs[i]);
  }
  return out;
}

template <class F>
condgeo_status copy_series(const condgeo_path* p, double* out, F&& per_sample) {
  return guard([&] {
    need(p, "path");
    need(out, "out");
    for (std::size_t k = 0; k < p->path.size(); ++k) per_sample(k, out);
  });
}

}  // namespace

extern "C" {

const char* condgeo_version(void) { return "1.0.0"; }

const char* condgeo_last_error(void) { return last_error.c_str(); }

const char* condgeo_status_name(condgeo_status status) {
  switch (status) {
    case CONDGEO_OK: return "ok";
    case CONDGEO_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CONDGEO_ERR_DOMAIN: return "domain";
    case CONDGEO_ERR_CHART_EXIT: return "chart_exit";
    case CONDGEO_ERR_PROJECTION: return "projection";
    case CONDGEO_ERR_DEGENERATE_POINT: return "degenerate_point";
    case CONDGEO_ERR_SMOOTHNESS: return "smoothness";
    case CONDGEO_ERR_CONVERGENCE: return "convergence";
    case CONDGEO_ERR_CONFIG: return "config";
    case CONDGEO_ERR_IO: return "io";
    case CONDGEO_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void condgeo_string_free(char* s) { std::free(s); }

condgeo_status condgeo_ambient_dim(condgeo_space_kind kind, int n, int* out) {
  return guard([&] {
    need(out, "out");
    *out = space_of(kind, n).ambient_dim();
  });
}

condgeo_status condgeo_metric(condgeo_space_kind kind, int n, const double* x, double* g_out) {
  return guard([&] {
    need(g_out, "g_out");
    const auto space = space_of(kind, n);
    const auto g = condgeo::metric_tensor(condgeo::ChartPoint(space, vec(x, n, "x"))).matrix;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g_out[i * n + j] = g(i, j);
  });
}

condgeo_status condgeo_submanifold_point_set(condgeo_space_kind kind, int n, const double* points, size_t count,
                                             condgeo_submanifold** out) {
  return guard([&] {
    const auto space = space_of(kind, n);
    const int m = space.ambient_dim();
    if (count > 0) need(points, "points");
    std::vector<condgeo::Vec> pts;
    for (size_t i = 0; i < count; ++i) pts.push_back(vec(points + i * m, m, "points"));
    emit(out, condgeo::SubmanifoldSpec::point_set(space, std::move(pts)));
  });
}

condgeo_status condgeo_submanifold_affine_line(int n, const double* base, const double* direction,
                                               condgeo_submanifold** out) {
  return guard([&] {
    emit(out, condgeo::SubmanifoldSpec::affine_line(condgeo::SpaceId::euclidean(n), vec(base, n, "base"),
                                                    vec(direction, n, "direction")));
  });
}

condgeo_status condgeo_submanifold_hyperbola(double a, double b, condgeo_submanifold** out) {
  return guard([&] { emit(out, condgeo::SubmanifoldSpec::hyperbola(a, b)); });
}

condgeo_status condgeo_submanifold_circle(double cx, double cy, double radius, condgeo_submanifold** out) {
  return guard([&] {
    condgeo::Vec c(2);
    c << cx, cy;
    emit(out, condgeo::SubmanifoldSpec::circle(c, radius));
  });
}

condgeo_status condgeo_submanifold_great_circle(int n, const double* e1, const double* e2, condgeo_submanifold** out) {
  return guard([&] {
    emit(out, condgeo::SubmanifoldSpec::great_circle(n, vec(e1, n + 1, "e1"), vec(e2, n + 1, "e2")));
  });
}

condgeo_status condgeo_submanifold_sphere_point(int n, const double* unit, condgeo_submanifold** out) {
  return guard([&] { emit(out, condgeo::SubmanifoldSpec::sphere_point(n, vec(unit, n + 1, "unit"))); });
}

condgeo_status condgeo_submanifold_disk_origin(condgeo_submanifold** out) {
  return guard([&] { emit(out, condgeo::SubmanifoldSpec::disk_origin()); });
}

condgeo_status condgeo_submanifold_paraboloid_vertex(condgeo_submanifold** out) {
  return guard([&] { emit(out, condgeo::SubmanifoldSpec::paraboloid_vertex()); });
}

void condgeo_submanifold_free(condgeo_submanifold* N) { delete N; }

condgeo_status condgeo_submanifold_dim(const condgeo_submanifold* N, int* n_out) {
  return guard([&] {
    need(N, "submanifold");
    need(n_out, "n_out");
    *n_out = N->spec.space().dim();
  });
}

condgeo_status condgeo_rho(const condgeo_submanifold* N, const double* x, double* out) {
  return guard([&] {
    need(out, "out");
    *out = condgeo::rho(N->spec, point(N, x));
  });
}

condgeo_status condgeo_closest_point(const condgeo_submanifold* N, const double* x, double* k_out, double* rho_out,
                                     int* ambiguous_out) {
  return guard([&] {
    const auto r = condgeo::closest_point(N->spec, point(N, x));
    if (k_out)
      for (Eigen::Index i = 0; i < r.k.size(); ++i) k_out[i] = r.k[i];
    if (rho_out) *rho_out = r.rho;
    if (ambiguous_out) *ambiguous_out = r.multiplicity == condgeo::Multiplicity::ambiguous ? 1 : 0;
  });
}

condgeo_status condgeo_in_smooth_locus(const condgeo_submanifold* N, const double* x, int* out) {
  return guard([&] {
    need(out, "out");
    *out = condgeo::in_smooth_locus(N->spec, point(N, x)) ? 1 : 0;
  });
}

condgeo_status condgeo_drho(const condgeo_submanifold* N, const double* x, const double* v, double* out) {
  return guard([&] {
    need(out, "out");
    *out = condgeo::drho(N->spec, tangent(N, x, v));
  });
}

condgeo_status condgeo_d2rho(const condgeo_submanifold* N, const double* x, const double* v, double* out) {
  return guard([&] {
    need(out, "out");
    *out = condgeo::d2rho(N->spec, tangent(N, x, v));
  });
}

condgeo_status condgeo_condition_christoffel(const condgeo_submanifold* N, const double* x, double* gamma_out) {
  return guard([&] {
    need(gamma_out, "gamma_out");
    const auto G = condgeo::condition_christoffel(N->spec, point(N, x));
    const int n = G.dim();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gamma_out[(k * n + i) * n + j] = G(k, i, j);
  });
}

condgeo_status condgeo_prop4_quantity(const condgeo_submanifold* N, const double* x, const double* v,
                                      condgeo_quantity* out) {
  return guard([&] {
    need(out, "out");
    const auto q = condgeo::prop4_quantity(N->spec, tangent(N, x, v));
    *out = {q.value, q.norm_term, q.dir_term, q.hess_term};
  });
}

condgeo_status condgeo_integrate_ivp(const condgeo_submanifold* N, const double* x0, const double* v0, double s_max,
                                     double tol, int samples, int through_nonsmooth, condgeo_path** out) {
  return guard([&] {
    condgeo::IvpOptions opts;
    if (tol > 0.0) opts.tol = tol;
    if (samples > 0) opts.samples = samples;
    opts.stop_on_nonsmooth = !through_nonsmooth;
    emit(out, condgeo::integrate_ivp(N->spec, tangent(N, x0, v0), s_max, opts));
  });
}

condgeo_status condgeo_solve_bvp(const condgeo_submanifold* N, const double* a, const double* b, double tol,
                                 int samples, condgeo_path** out, double* residual_out) {
  return guard([&] {
    auto sol = condgeo::solve_bvp(N->spec, point(N, a, "a"), point(N, b, "b"),
                                  tol > 0.0 ? tol : condgeo::tol::bvp_default,
                                  samples > 0 ? samples : condgeo::tol::ivp_samples);
    if (residual_out) *residual_out = sol.shooting_residual;
    emit(out, std::move(sol.path));
  });
}

condgeo_status condgeo_line_path(const condgeo_submanifold* N, const double* a, const double* b, int samples,
                                 condgeo_path** out) {
  return guard([&] {
    emit(out, condgeo::line_path(N->spec, point(N, a, "a"), point(N, b, "b"),
                                 samples > 0 ? samples : condgeo::tol::ivp_samples));
  });
}

void condgeo_path_free(condgeo_path* path) { delete path; }

size_t condgeo_path_size(const condgeo_path* path) { return path ? path->path.size() : 0; }

int condgeo_path_dim(const condgeo_path* path) { return path ? path->path.space.dim() : 0; }

condgeo_status condgeo_path_times(const condgeo_path* p, double* out) {
  return copy_series(p, out, [&](std::size_t k, double* o) { o[k] = p->path.times[k]; });
}

condgeo_status condgeo_path_points(const condgeo_path* p, double* out) {
  return copy_series(p, out, [&](std::size_t k, double* o) {
    const auto& c = p->path.points[k].coords;
    for (Eigen::Index i = 0; i < c.size(); ++i) o[k * c.size() + i] = c[i];
  });
}

condgeo_status condgeo_path_velocities(const condgeo_path* p, double* out) {
  return copy_series(p, out, [&](std::size_t k, double* o) {
    const auto& c = p->path.velocities[k].comps;
    for (Eigen::Index i = 0; i < c.size(); ++i) o[k * c.size() + i] = c[i];
  });
}

condgeo_status condgeo_path_rho(const condgeo_path* p, double* out) {
  return copy_series(p, out, [&](std::size_t k, double* o) { o[k] = p->path.rho_vals[k]; });
}

condgeo_status condgeo_path_kappa_speed(const condgeo_path* p, double* out) {
  return copy_series(p, out, [&](std::size_t k, double* o) { o[k] = p->path.kappa_speed[k]; });
}

const char* condgeo_path_termination(const condgeo_path* path) {
  return path ? condgeo::to_string(path->path.termination).data() : "";
}

condgeo_status condgeo_path_condition_length(const condgeo_path* path, double* out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = condgeo::condition_length(path->path);
  });
}

condgeo_status condgeo_path_convexity(const condgeo_path* path, double tol, condgeo_convexity* out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    const auto r = condgeo::convexity_report(condgeo::profile(path->path),
                                             tol > 0.0 ? std::optional<double>(tol) : std::nullopt);
    out->min_second_diff = r.min_second_diff;
    out->max_second_diff = r.max_second_diff;
    out->tolerance = r.tolerance_used;
    out->violations = r.violation_locations.size();
    switch (r.classification) {
      case condgeo::Classification::convex: out->classification = CONDGEO_CONVEX; break;
      case condgeo::Classification::concave: out->classification = CONDGEO_CONCAVE; break;
      case condgeo::Classification::mixed: out->classification = CONDGEO_MIXED; break;
      case condgeo::Classification::affine: out->classification = CONDGEO_AFFINE; break;
    }
  });
}

condgeo_status condgeo_path_csv(const condgeo_path* path, char** csv_out) {
  return guard([&] {
    need(path, "path");
    need(csv_out, "csv_out");
    std::optional<condgeo::ConvexityReport> rep;
    if (path->path.size() >= 5) rep = condgeo::convexity_report(condgeo::profile(path->path));
    *csv_out = dup(condgeo::segment_csv(path->path, rep ? &*rep : nullptr));
  });
}

condgeo_status condgeo_scenario_list(const char* const* configs, size_t config_count, char** json_out) {
  return guard([&] {
    need(json_out, "json_out");
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& c : condgeo::scenario_catalogue(config_list(configs, config_count)))
      list.push_back({{"name", c.name},
                      {"space", c.space().describe()},
                      {"submanifold", c.submanifold.kind_name()},
                      {"segments", c.segments.size()},
                      {"description", c.description}});
    *json_out = dup(list.dump(2) + "\n");
  });
}

condgeo_status condgeo_scenario_run(const char* scenario, const char* const* configs, size_t config_count,
                                    const char* out_dir, const char* formats, double tol, const uint64_t* seed,
                                    char** summary_json_out) {
  return guard([&] {
    need(scenario, "scenario");
    need(out_dir, "out_dir");
    auto paths = config_list(configs, config_count);
    std::string name = scenario;
    std::error_code ec;
    if (std::filesystem::is_regular_file(scenario, ec)) {
      name = condgeo::load_scenario_file(scenario).name;
      paths.emplace_back(scenario);
    }
    const auto catalogue = condgeo::scenario_catalogue(paths);
    const condgeo::ScenarioConfig* chosen = nullptr;
    std::string known;
    for (const auto& c : catalogue) {
      if (c.name == name) chosen = &c;
      known += (known.empty() ? "" : ", ") + c.name;
    }
    if (!chosen) throw condgeo::ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
    condgeo::ScenarioConfig cfg = *chosen;
    if (formats) {
      cfg.write_csv = cfg.write_svg = false;
      for (const auto& f : split(formats)) {
        if (f == "csv") cfg.write_csv = true;
        else if (f == "svg") cfg.write_svg = true;
        else throw condgeo::ConfigError("unknown output format '" + f + "'");
      }
    }
    if (tol > 0.0) cfg.tol = tol;
    if (seed) cfg.seed = *seed;
    const auto run = condgeo::run_scenario(cfg, out_dir);
    if (summary_json_out) *summary_json_out = dup(condgeo::scenario_summary_json(cfg, run));
  });
}

condgeo_status condgeo_verify(const char* suites, int samples, uint64_t seed, char** json_out, char** table_out,
                              int* passed_out) {
  return guard([&] {
    condgeo::VerifyOptions opts;
    opts.suites = split(suites);
    if (samples > 0) opts.samples = samples;
    opts.seed = seed;
    const auto rep = condgeo::run_verify(opts);
    if (json_out) *json_out = dup(condgeo::verify_json(rep));
    if (table_out) *table_out = dup(condgeo::verify_table(rep));
    if (passed_out) *passed_out = rep.passed ? 1 : 0;
  });
}

}  // extern "C"
