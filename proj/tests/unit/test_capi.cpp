#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgeo/condgeo.h"

#include <json.hpp>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

using std::numbers::pi;

namespace {

struct Owned {
  char* s = nullptr;
  ~Owned() { condgeo_string_free(s); }
};

struct Sub {
  condgeo_submanifold* h = nullptr;
  ~Sub() { condgeo_submanifold_free(h); }
};

struct Path {
  condgeo_path* h = nullptr;
  ~Path() { condgeo_path_free(h); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(condgeo_version()) > 0);
  CHECK(std::string(condgeo_status_name(CONDGEO_OK)) == "ok");
  CHECK(std::string(condgeo_status_name(CONDGEO_ERR_SMOOTHNESS)).size() > 0);
}

TEST_CASE("metric and dimensions") {
  int amb = 0;
  CHECK(condgeo_ambient_dim(CONDGEO_SPACE_SPHERE, 3, &amb) == CONDGEO_OK);
  CHECK(amb == 4);
  double g[4];
  const double x[2] = {0.5, 0.0};
  REQUIRE(condgeo_metric(CONDGEO_SPACE_HYPERBOLIC_DISK, 2, x, g) == CONDGEO_OK);
  CHECK(g[0] == doctest::Approx(4.0));
  CHECK(g[3] == doctest::Approx(1.0));
  CHECK(condgeo_metric(CONDGEO_SPACE_HYPERBOLIC_DISK, 2, x, nullptr) == CONDGEO_ERR_INVALID_ARGUMENT);
  const double out[2] = {1.5, 0.0};
  CHECK(condgeo_metric(CONDGEO_SPACE_HYPERBOLIC_DISK, 2, out, g) == CONDGEO_ERR_DOMAIN);
  CHECK(std::strlen(condgeo_last_error()) > 0);
}

TEST_CASE("distance field through handles") {
  Sub two;
  const double pts[4] = {-1, 0, 1, 0};
  REQUIRE(condgeo_submanifold_point_set(CONDGEO_SPACE_EUCLIDEAN, 2, pts, 2, &two.h) == CONDGEO_OK);
  int n = 0;
  CHECK(condgeo_submanifold_dim(two.h, &n) == CONDGEO_OK);
  CHECK(n == 2);

  const double x[2] = {0.3, 0.4};
  double k[2], r = 0, rr = 0;
  int ambiguous = -1;
  REQUIRE(condgeo_closest_point(two.h, x, k, &r, &ambiguous) == CONDGEO_OK);
  CHECK(k[0] == 1.0);
  CHECK(r == doctest::Approx(std::sqrt(0.65)));
  CHECK(ambiguous == 0);
  CHECK(condgeo_rho(two.h, x, &rr) == CONDGEO_OK);
  CHECK(rr == r);

  int smooth = 1;
  const double mid[2] = {0.0, 5.0};
  CHECK(condgeo_in_smooth_locus(two.h, mid, &smooth) == CONDGEO_OK);
  CHECK(smooth == 0);
  const double v[2] = {1.0, 0.0};
  double d = 0;
  CHECK(condgeo_drho(two.h, mid, v, &d) == CONDGEO_ERR_SMOOTHNESS);
  const double on[2] = {1.0, 0.0};
  CHECK(condgeo_drho(two.h, on, v, &d) == CONDGEO_ERR_DEGENERATE_POINT);
}

TEST_CASE("disk derivatives and quantity") {
  Sub disk;
  REQUIRE(condgeo_submanifold_disk_origin(&disk.h) == CONDGEO_OK);
  const double x[2] = {0.5, 0.0}, radial[2] = {1, 0}, angular[2] = {0, 1};
  double d1 = 0, d2 = 0;
  CHECK(condgeo_drho(disk.h, x, radial, &d1) == CONDGEO_OK);
  CHECK(d1 == doctest::Approx(2.0));
  CHECK(condgeo_d2rho(disk.h, x, angular, &d2) == CONDGEO_OK);
  CHECK(d2 == doctest::Approx(2.0));
  condgeo_quantity q{};
  CHECK(condgeo_prop4_quantity(disk.h, x, angular, &q) == CONDGEO_OK);
  CHECK(q.value == doctest::Approx(2 * (0.5 + std::log(0.5))));
}

TEST_CASE("sphere Christoffels") {
  Sub pole;
  const double north[3] = {1, 0, 0};
  REQUIRE(condgeo_submanifold_sphere_point(2, north, &pole.h) == CONDGEO_OK);
  const double x[2] = {pi / 2, 0.2};
  double G[8];
  REQUIRE(condgeo_condition_christoffel(pole.h, x, G) == CONDGEO_OK);
  CHECK(G[0] == doctest::Approx(-2 / pi));
  CHECK(G[3] == doctest::Approx(2 / pi));
}

TEST_CASE("paths") {
  Sub origin;
  const double o[2] = {0, 0};
  REQUIRE(condgeo_submanifold_point_set(CONDGEO_SPACE_EUCLIDEAN, 2, o, 1, &origin.h) == CONDGEO_OK);
  const double a[2] = {1, 0}, b[2] = {0, 2}, v[2] = {1, 0};

  Path ray;
  REQUIRE(condgeo_integrate_ivp(origin.h, a, v, 2.0, 0, 65, 0, &ray.h) == CONDGEO_OK);
  REQUIRE(condgeo_path_size(ray.h) == 65);
  CHECK(condgeo_path_dim(ray.h) == 2);
  std::vector<double> t(65), rho(65), pts(130);
  CHECK(condgeo_path_times(ray.h, t.data()) == CONDGEO_OK);
  CHECK(condgeo_path_rho(ray.h, rho.data()) == CONDGEO_OK);
  CHECK(condgeo_path_points(ray.h, pts.data()) == CONDGEO_OK);
  for (std::size_t i = 0; i < 65; ++i) CHECK(std::abs(std::log(rho[i]) - t[i]) <= 1e-7);
  CHECK(std::string(condgeo_path_termination(ray.h)) == "completed");
  condgeo_convexity c{};
  CHECK(condgeo_path_convexity(ray.h, 0, &c) == CONDGEO_OK);
  CHECK(c.classification == CONDGEO_AFFINE);

  Path bvp;
  double residual = 1, length = 0;
  REQUIRE(condgeo_solve_bvp(origin.h, a, b, 0, 0, &bvp.h, &residual) == CONDGEO_OK);
  CHECK(condgeo_path_condition_length(bvp.h, &length) == CONDGEO_OK);
  CHECK(std::abs(length - std::hypot(pi / 2, std::log(2.0))) <= 1e-5);
  CHECK(residual <= 1e-6);

  Path line;
  const double c2[2] = {2, 0};
  REQUIRE(condgeo_line_path(origin.h, a, c2, 0, &line.h) == CONDGEO_OK);
  CHECK(condgeo_path_condition_length(line.h, &length) == CONDGEO_OK);
  CHECK(std::abs(length - std::log(2.0)) <= 1e-8);

  Owned csv;
  REQUIRE(condgeo_path_csv(ray.h, &csv.s) == CONDGEO_OK);
  CHECK(std::string(csv.s).rfind("s,", 0) == 0);

  Path bad;
  CHECK(condgeo_integrate_ivp(origin.h, o, v, 1.0, 0, 0, 0, &bad.h) == CONDGEO_ERR_DEGENERATE_POINT);
  CHECK(bad.h == nullptr);
}

TEST_CASE("scenarios and verification") {
  Owned list;
  REQUIRE(condgeo_scenario_list(nullptr, 0, &list.s) == CONDGEO_OK);
  CHECK(nlohmann::json::parse(list.s).size() == 7);

  const auto dir = std::filesystem::temp_directory_path() / "condgeo_capi_test";
  std::filesystem::remove_all(dir);
  Owned summary;
  REQUIRE(condgeo_scenario_run("disk_origin", nullptr, 0, dir.string().c_str(), "csv", 0, nullptr, &summary.s) ==
          CONDGEO_OK);
  const auto j = nlohmann::json::parse(summary.s);
  CHECK(j["scenario"] == "disk_origin");
  CHECK_FALSE(std::filesystem::exists(dir / "disk_origin.svg"));
  std::filesystem::remove_all(dir);

  Owned missing;
  CHECK(condgeo_scenario_run("no_such_scenario", nullptr, 0, dir.string().c_str(), nullptr, 0, nullptr, &missing.s) ==
        CONDGEO_ERR_CONFIG);

  Owned json, table;
  int passed = 0;
  REQUIRE(condgeo_verify("hyperbolic", 200, 42, &json.s, &table.s, &passed) == CONDGEO_OK);
  CHECK(passed == 1);
  CHECK(nlohmann::json::parse(json.s)["seed"] == 42);
  Owned j2, t2;
  CHECK(condgeo_verify("torus", 200, 42, &j2.s, &t2.s, &passed) == CONDGEO_ERR_CONFIG);
}
