#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgeo/errors.hpp"
#include "condgeo/verify.hpp"

#include <json.hpp>

#include <set>

using namespace condgeo;

namespace {

VerifyReport quick(std::vector<std::string> suites, std::uint64_t seed = 42) {
  VerifyOptions o;
  o.suites = std::move(suites);
  o.samples = 400;
  o.seed = seed;
  return run_verify(o);
}

}  // namespace

TEST_CASE("every suite passes on a small sample") {
  for (const auto& suite : verify_suite_names()) {
    const auto r = quick({suite});
    CHECK_MESSAGE(r.passed, verify_table(r));
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) CHECK(c.suite == suite);
  }
}

TEST_CASE("check names are unique") {
  const auto r = quick({});
  std::set<std::string> names;
  for (const auto& c : r.checks) CHECK(names.insert(c.suite + "/" + c.name).second);
  CHECK(r.suites == verify_suite_names());
}

TEST_CASE("verify JSON is deterministic for a seed") {
  const auto a = verify_json(quick({"sphere", "hyperbolic"}, 7));
  const auto b = verify_json(quick({"sphere", "hyperbolic"}, 7));
  CHECK(a == b);
  CHECK(a != verify_json(quick({"sphere", "hyperbolic"}, 8)));
  const auto j = nlohmann::json::parse(a);
  CHECK(j["seed"] == 7);
  CHECK(j["passed"].get<bool>());
  CHECK(j["checks"].size() > 0);
}

TEST_CASE("unknown suite") { CHECK_THROWS_AS(quick({"torus"}), ConfigError); }

TEST_CASE("table lists every check") {
  const auto r = quick({"hyperbolic"});
  const auto table = verify_table(r);
  for (const auto& c : r.checks) CHECK(table.find(c.name) != std::string::npos);
}

TEST_CASE("individual checks") {
  CHECK(check_cylinder_bvp().passed);
  CHECK(check_sign_fact(200).passed);
  const auto h = check_hyperbolic_closed_form(300, 3);
  CHECK(h.passed);
  CHECK(h.value <= h.threshold);
  CHECK(check_sphere_christoffel(2, 200, 3).passed);
  CHECK(check_sphere_closed_form(3, 200, 3).passed);
}
