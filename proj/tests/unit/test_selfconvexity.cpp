#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgeo/condition_metric.hpp"
#include "condgeo/distance_field.hpp"
#include "condgeo/errors.hpp"
#include "condgeo/selfconvexity.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace condgeo;
using std::numbers::pi;

namespace {

const SpaceId E2 = SpaceId::euclidean(2);
const SpaceId S2 = SpaceId::sphere(2);
const SpaceId D2 = SpaceId::hyperbolic_disk();

Vec vec(std::initializer_list<double> c) {
  Vec v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v[i++] = x;
  return v;
}

SubmanifoldSpec north_pole() { return SubmanifoldSpec::sphere_point(2, vec({1, 0, 0})); }

Profile sampled(const std::function<double(double)>& f, double lo, double hi, int n) {
  Profile p;
  for (int i = 0; i < n; ++i) {
    const double t = lo + (hi - lo) * i / (n - 1);
    p.times.push_back(t);
    p.values.push_back(f(t));
  }
  return p;
}

}  // namespace

TEST_CASE("convexity of sampled functions") {
  const auto sq = convexity_report(sampled([](double t) { return t * t; }, -1, 1, 201));
  CHECK(sq.classification == Classification::convex);
  CHECK(std::abs(sq.min_second_diff - 2.0) <= 1e-9);
  CHECK(std::abs(sq.max_second_diff - 2.0) <= 1e-9);
  CHECK(std::isnan(sq.second_diff.front()));
  CHECK(std::isnan(sq.second_diff.back()));

  CHECK(convexity_report(sampled([](double t) { return -t * t; }, -1, 1, 201)).classification == Classification::concave);
  CHECK(convexity_report(sampled([](double t) { return 3 * t - 1; }, -1, 1, 201)).classification == Classification::affine);
  CHECK(convexity_report(sampled([](double t) { return std::abs(t) + t * t; }, -1, 1, 201)).classification ==
        Classification::convex);

  const auto wave = convexity_report(sampled([](double t) { return std::sin(3 * t); }, -1, 1, 201));
  CHECK(wave.classification == Classification::mixed);
  CHECK_FALSE(wave.violation_locations.empty());
  for (double t : wave.violation_locations) CHECK(t > 0.0);
}

TEST_CASE("convexity on a non-uniform grid") {
  Profile p;
  for (int i = 0; i <= 40; ++i) {
    const double t = std::pow(i / 40.0, 2) * 3;
    p.times.push_back(t);
    p.values.push_back(std::exp(t));
  }
  const auto r = convexity_report(p);
  CHECK(r.classification == Classification::convex);
  CHECK(r.min_second_diff > 0.0);
}

TEST_CASE("convexity report rejects bad profiles") {
  CHECK_THROWS_AS(convexity_report(sampled([](double t) { return t; }, 0, 1, 3)), Error);
  Profile p = sampled([](double t) { return t; }, 0, 1, 10);
  p.times[4] = p.times[3];
  CHECK_THROWS_AS(convexity_report(p), Error);
}

TEST_CASE("profiles along paths") {
  const auto origin = SubmanifoldSpec::point_set(E2, {vec({0, 0})});
  const auto ray = profile(integrate_ivp(origin, TangentVector(ChartPoint(E2, {1.0, 0.0}), {1, 0}), 2.0));
  for (std::size_t i = 0; i < ray.times.size(); ++i) CHECK(std::abs(ray.values[i] + ray.times[i]) <= 1e-7);
  CHECK(convexity_report(ray).classification == Classification::affine);

  const auto equator = profile(line_path(north_pole(), ChartPoint(S2, {pi / 2, 0.0}), ChartPoint(S2, {pi / 2, 2.0})));
  for (double v : equator.values) CHECK(v == doctest::Approx(-std::log(pi / 2)));

  const auto disk = profile(integrate_ivp(SubmanifoldSpec::disk_origin(), TangentVector(ChartPoint(D2, {0.5, 0.0}), {0.2, 1}), 2.0));
  CHECK(convexity_report(disk).classification == Classification::concave);
}

TEST_CASE("glued profiles") {
  const auto left = sampled([](double t) { return -t; }, 0, 1, 11);
  const auto right = sampled([](double t) { return t - 1; }, 0, 1, 11);
  const auto g = glue(left, right);
  CHECK(g.times.size() == 21);
  CHECK(g.times.back() == doctest::Approx(2.0));
  CHECK(g.values[10] == doctest::Approx(-1.0));
  CHECK(convexity_report(g).classification == Classification::convex);
}

TEST_CASE("quantity on the punctured sphere") {
  const ChartPoint x(S2, {pi / 2, 0.3});
  const auto along = prop4_quantity(north_pole(), TangentVector(x, {0, 1}));
  CHECK(along.norm_term == doctest::Approx(1.0));
  CHECK(std::abs(along.dir_term) <= 1e-12);
  CHECK(std::abs(along.hess_term) <= 1e-10);
  CHECK(along.value == doctest::Approx(1.0));
  CHECK(std::abs(along.value - sphere_quantity(x.coords, vec({0, 1}))) <= 1e-8);

  const auto radial = prop4_quantity(north_pole(), TangentVector(x, {1, 0}));
  CHECK(std::abs(radial.value) <= 1e-10);
}

TEST_CASE("quantity on the punctured disk") {
  const auto q = prop4_quantity(SubmanifoldSpec::disk_origin(), TangentVector(ChartPoint(D2, {0.5, 0.0}), {0, 1}));
  const double closed = 2 * (0.5 + std::log(0.5));
  CHECK(q.value == doctest::Approx(closed).epsilon(1e-10));
  CHECK(hyperbolic_quantity(0.5, 1.0) == doctest::Approx(closed).epsilon(1e-14));
  CHECK(q.value == doctest::Approx(q.norm_term - q.dir_term - q.hess_term));
  CHECK(hyperbolic_quantity(0.3, 0.0) == 0.0);
  for (double phi_dot : {0.5, 1.0, 3.0})
    CHECK(std::abs(hyperbolic_quantity(1e-4, phi_dot)) <= 1e-7 * phi_dot * phi_dot);
}

TEST_CASE("quantity for a line in the plane is the squared parallel component") {
  const auto line = SubmanifoldSpec::affine_line(E2, vec({0, 0}), vec({1, 0}));
  const auto q = prop4_quantity(line, TangentVector(ChartPoint(E2, {0.4, 2.0}), {0.6, 0.8}));
  CHECK(std::abs(q.value - 0.36) <= 1e-8);
  CHECK(std::abs(q.hess_term) <= 1e-8);
  CHECK(q.norm_term == doctest::Approx(1.0));
}

TEST_CASE("theorem suites on small samples") {
  const auto sphere = theorem_suite(north_pole(), 2000, 1);
  CHECK(sphere.passed);
  CHECK(sphere.samples == 2000);
  CHECK(sphere.min_value >= -1e-8);

  const auto disk = theorem_suite(SubmanifoldSpec::disk_origin(), 2000, 1);
  CHECK(disk.passed);
  CHECK(disk.max_value <= 1e-8);
  CHECK(disk.strict_checked > 0);
  CHECK(disk.strict_failures == 0);

  const auto hyp = theorem_suite(SubmanifoldSpec::hyperbola(1, 1), 500, 1);
  CHECK(hyp.passed);
  CHECK(hyp.min_value >= -1e-6);
}

TEST_CASE("theorem suites are deterministic") {
  const auto a = theorem_suite(north_pole(), 300, 99);
  const auto b = theorem_suite(north_pole(), 300, 99);
  CHECK(a.min_value == b.min_value);
  CHECK(a.mean_value == b.mean_value);
  CHECK(theorem_suite(north_pole(), 300, 100).mean_value != a.mean_value);
}
