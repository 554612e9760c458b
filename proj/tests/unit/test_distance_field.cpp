#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgeo/distance_field.hpp"
#include "condgeo/errors.hpp"
#include "condgeo/oracles.hpp"
#include "condgeo/random.hpp"
#include "condgeo/selfconvexity.hpp"

#include <cmath>
#include <numbers>

using namespace condgeo;
using std::numbers::pi;

namespace {

Vec vec(std::initializer_list<double> c) {
  Vec v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v[i++] = x;
  return v;
}

const SpaceId E2 = SpaceId::euclidean(2);
const SpaceId S2 = SpaceId::sphere(2);

SubmanifoldSpec north_pole() { return SubmanifoldSpec::sphere_point(2, vec({1, 0, 0})); }

double meridian_length(double z) { return z * std::sqrt(1 + 4 * z * z) / 2 + std::asinh(2 * z) / 4; }

// Second difference of rho along the base geodesic through v, with one Richardson step.
double rho_second_fd(const SubmanifoldSpec& N, const TangentVector& v, double h) {
  const double f0 = rho(N, v.base);
  auto D = [&](double k) {
    return (rho(N, base_geodesic(v, k).base) - 2 * f0 + rho(N, base_geodesic(v, -k).base)) / (k * k);
  };
  return (4 * D(h / 2) - D(h)) / 3;
}

}  // namespace

TEST_CASE("closest point on a finite point set") {
  const auto N = SubmanifoldSpec::point_set(E2, {vec({-1, 0}), vec({1, 0})});
  const auto r = closest_point(N, ChartPoint(E2, {0.3, 0.4}));
  CHECK((r.k - vec({1, 0})).norm() == 0.0);
  CHECK(r.rho == doctest::Approx(std::sqrt(0.65)));
  CHECK(r.multiplicity == Multiplicity::unique);
}

TEST_CASE("closest point on the sphere and the hyperbola") {
  const auto r = closest_point(north_pole(), unembed(S2, vec({0, 1, 0})));
  CHECK(r.rho == doctest::Approx(pi / 2));

  const auto h = closest_point(SubmanifoldSpec::hyperbola(1, 1), ChartPoint(E2, {0.0, 1.0}));
  CHECK(h.multiplicity == Multiplicity::ambiguous);
  CHECK(h.rho == doctest::Approx(std::sqrt(1.5)));
}

TEST_CASE("rho in closed form") {
  CHECK(rho(SubmanifoldSpec::disk_origin(), ChartPoint(SpaceId::hyperbolic_disk(), {0.5, 1.0})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(rho(north_pole(), unembed(S2, vec({0, 0, 1}))) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(rho(SubmanifoldSpec::affine_line(E2, vec({0, 0}), vec({1, 0})), ChartPoint(E2, {3.0, -2.5})) ==
        doctest::Approx(2.5));
  const auto c = SubmanifoldSpec::circle(vec({0.5, -0.5}), 1.0);
  CHECK(rho(c, ChartPoint(E2, {0.5, 1.5})) == doctest::Approx(1.0));
  CHECK(rho(c, ChartPoint(E2, {0.5, 0.0})) == doctest::Approx(0.5));
}

TEST_CASE("paraboloid rho is the meridian arc length") {
  const auto N = SubmanifoldSpec::paraboloid_vertex();
  for (int i = 1; i <= 20; ++i) {
    const double z = 0.1 * i;
    CHECK(std::abs(rho(N, ChartPoint(SpaceId::paraboloid(), {z, 0.4})) - meridian_length(z)) <= 1e-10);
  }
}

TEST_CASE("first derivative of rho") {
  const auto x = unembed(S2, vec({0, 1, 0}));
  CHECK(drho(north_pole(), pull_back(x, vec({1, 0, 0}))) == doctest::Approx(-1.0));
  CHECK(std::abs(drho(north_pole(), pull_back(x, vec({0, 0, 1})))) < 1e-12);
  CHECK(drho(SubmanifoldSpec::disk_origin(), TangentVector(ChartPoint(SpaceId::hyperbolic_disk(), {0.5, 0.0}), {1, 0})) ==
        doctest::Approx(2.0));
}

TEST_CASE("second derivative of rho") {
  const ChartPoint d(SpaceId::hyperbolic_disk(), {0.5, 0.0});
  CHECK(d2rho(SubmanifoldSpec::disk_origin(), TangentVector(d, {0, 1})) == doctest::Approx(2.0));
  const auto x = unembed(S2, vec({0, 1, 0}));
  CHECK(std::abs(d2rho(north_pole(), pull_back(x, vec({0, 0, 1})))) < 1e-10);
}

TEST_CASE("sphere derivatives agree with finite differences along great circles") {
  Rng rng(5);
  int checked = 0;
  while (checked < 200) {
    const auto K = sample_chart_point(S2, rng);
    const auto N = SubmanifoldSpec::sphere_point(2, embed(K));
    const auto x = sample_chart_point(S2, rng);
    if (!in_smooth_locus(N, x) || rho(N, x) < 0.05 || rho(N, x) > pi - 0.05) continue;
    const auto v = sample_unit_direction(x, rng);
    const double h = 1e-5;
    const double fd1 = (rho(N, base_geodesic(v, h).base) - rho(N, base_geodesic(v, -h).base)) / (2 * h);
    CHECK(drho(N, v) == doctest::Approx(fd1).epsilon(1e-5).scale(1.0));
    CHECK(d2rho(N, v) == doctest::Approx(rho_second_fd(N, v, 1e-3)).epsilon(1e-5).scale(1.0));
    ++checked;
  }
}

TEST_CASE("derivative of the closest-point map") {
  const ChartPoint x(E2, {0.0, 1.0});
  CHECK(dk_quadform(SubmanifoldSpec::affine_line(E2, vec({0, 0}), vec({1, 0})), TangentVector(x, {1, 0})) ==
        doctest::Approx(1.0));
  Rng rng(9);
  const auto point = SubmanifoldSpec::point_set(E2, {vec({0.2, -0.1})});
  const auto gc = SubmanifoldSpec::great_circle(2, vec({0, 1, 0}), vec({0, 0, 1}));
  for (int k = 0; k < 200; ++k) {
    const auto p = sample_chart_point(E2, rng);
    CHECK(dk_quadform(point, sample_unit_direction(p, rng)) == 0.0);
    const auto s = sample_chart_point(S2, rng);
    if (!in_smooth_locus(gc, s)) continue;
    CHECK(dk_quadform(gc, sample_unit_direction(s, rng)) >= -1e-8);
  }
}

TEST_CASE("gradient of rho has unit norm") {
  Rng rng(13);
  const auto disk = SubmanifoldSpec::disk_origin();
  const auto pt = SubmanifoldSpec::point_set(E2, {vec({0, 0})});
  for (int k = 0; k < 100; ++k) {
    const auto s = sample_chart_point(S2, rng);
    if (in_smooth_locus(north_pole(), s)) CHECK(std::abs(drho_opnorm(north_pole(), s) - 1) <= 1e-9);
    CHECK(std::abs(drho_opnorm(disk, sample_chart_point(SpaceId::hyperbolic_disk(), rng)) - 1) <= 1e-9);
    CHECK(std::abs(drho_opnorm(pt, sample_chart_point(E2, rng)) - 1) <= 1e-9);
  }
}

TEST_CASE("smooth locus") {
  const auto two = SubmanifoldSpec::point_set(E2, {vec({-1, 0}), vec({1, 0})});
  CHECK_FALSE(in_smooth_locus(two, ChartPoint(E2, {0.0, 5.0})));
  CHECK(in_smooth_locus(two, ChartPoint(E2, {0.1, 5.0})));
  CHECK(in_smooth_locus(north_pole(), unembed(S2, vec({0, 1, 0}))));
  CHECK_FALSE(in_smooth_locus(north_pole(), ChartPoint(S2, {pi - 1e-9, 0.0})));
  CHECK_FALSE(in_smooth_locus(north_pole(), ChartPoint(S2, {1e-14, 0.0})));
  CHECK_FALSE(in_smooth_locus(SubmanifoldSpec::hyperbola(1, 1), ChartPoint(E2, {0.0, 0.3})));
}

TEST_CASE("derivatives refuse points off the smooth locus") {
  const auto two = SubmanifoldSpec::point_set(E2, {vec({-1, 0}), vec({1, 0})});
  CHECK_THROWS_AS(drho(two, TangentVector(ChartPoint(E2, {0.0, 2.0}), {1, 0})), SmoothnessError);
  const auto one = SubmanifoldSpec::point_set(E2, {vec({0, 0})});
  CHECK_THROWS_AS(drho(one, TangentVector(ChartPoint(E2, {0.0, 0.0}), {1, 0})), DegeneratePointError);
}
