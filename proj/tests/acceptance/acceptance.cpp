// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Usage: acceptance <path to the condgeo executable>

#include "condgeo/condition_metric.hpp"
#include "condgeo/distance_field.hpp"
#include "condgeo/oracles.hpp"
#include "condgeo/random.hpp"
#include "condgeo/scenario.hpp"
#include "condgeo/selfconvexity.hpp"
#include "condgeo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace condgeo;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t seed = 42;

struct Outcome {
  bool passed = true;
  std::string detail;
};

Vec vec(std::initializer_list<double> c) {
  Vec v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v[i++] = x;
  return v;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void note(Outcome& o, bool ok, const std::string& text) {
  o.passed = o.passed && ok;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += text;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome sphere_theorem() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<std::pair<std::string, SubmanifoldSpec>> targets = {
      {"S2 point", SubmanifoldSpec::sphere_point(2, vec({1, 0, 0}))},
      {"S3 point", SubmanifoldSpec::sphere_point(3, vec({0.5, 0.5, 0.5, 0.5}))},
      {"S2 great circle", SubmanifoldSpec::great_circle(2, vec({1, 0, 0}), vec({0, 0.6, 0.8}))}};
  for (const auto& [name, N] : targets) {
    const auto s = theorem_suite(N, 10000, seed);
    note(o, s.samples == 10000 && s.min_value >= -1e-8, fmt("%s min %.3g", name.c_str(), s.min_value));
  }
  const double t = seconds_since(t0);
  note(o, t <= 60.0, fmt("%.1f s", t));
  return o;
}

Outcome hyperbolic_theorem() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto N = SubmanifoldSpec::disk_origin();
  Rng rng(seed);
  double closed_dev = 0.0, radial = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample_chart_point(N.space(), rng);
    const auto v = sample_unit_direction(x, rng);
    const double r = x.coords[0];
    // Closed form evaluated here rather than through the library.
    const double closed = v.comps[1] * v.comps[1] * r * (r + std::log1p(-r)) / ((1 - r) * (1 - r));
    closed_dev = std::max(closed_dev, std::abs(prop4_quantity(N, v).value - closed));
    const TangentVector rv(x, {v.comps[0] == 0.0 ? 1.0 : v.comps[0], 0.0});
    radial = std::max(radial, std::abs(prop4_quantity(N, rv).value));
  }
  note(o, closed_dev <= 1e-10, fmt("closed form dev %.2g", closed_dev));
  note(o, radial <= 1e-10, fmt("radial |Q| %.2g", radial));
  const auto s = theorem_suite(N, 10000, seed);
  note(o, s.max_value <= 1e-8, fmt("max %.3g", s.max_value));
  note(o, s.strict_checked > 0 && s.strict_failures == 0,
       fmt("strict %d/%d", s.strict_checked - s.strict_failures, s.strict_checked));
  const double t = seconds_since(t0);
  note(o, t <= 10.0, fmt("%.1f s", t));
  return o;
}

Outcome euclidean_theorem() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto E2 = SpaceId::euclidean(2);
  const std::vector<std::pair<std::string, SubmanifoldSpec>> targets = {
      {"point", SubmanifoldSpec::point_set(E2, {vec({0, 0})})},
      {"two points", SubmanifoldSpec::point_set(E2, {vec({-1, 0}), vec({1, 0})})},
      {"line", SubmanifoldSpec::affine_line(E2, vec({0, 0.5}), vec({1, 1}))},
      {"hyperbola", SubmanifoldSpec::hyperbola(1, 1)}};
  for (const auto& [name, N] : targets) {
    const auto s = theorem_suite(N, 10000, seed);
    note(o, s.samples == 10000 && s.min_value >= -1e-6, fmt("%s min %.3g", name.c_str(), s.min_value));
  }
  const double t = seconds_since(t0);
  note(o, t <= 120.0, fmt("%.1f s", t));
  return o;
}

Outcome sphere_christoffels() {
  Outcome o;
  const auto N = SubmanifoldSpec::sphere_point(2, vec({1, 0, 0}));
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample_chart_point(N.space(), rng);
    const double t = x.coords[0];
    const auto G = condition_christoffel(N, x);
    const double listed[3] = {-1 / t, 0.0, -(t * std::sin(t) * std::cos(t) - std::sin(t) * std::sin(t)) / t};
    const double got[3] = {G(0, 0, 0), G(0, 0, 1), G(0, 1, 1)};
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(got[k] - listed[k]) / std::max(1.0, std::abs(listed[k])));
  }
  note(o, worst <= 1e-8, fmt("S2 max rel err %.2g", worst));
  const auto s3 = check_sphere_christoffel(3, 1000, seed);
  note(o, s3.passed, fmt("S3 max rel err %.2g", s3.value));
  return o;
}

Outcome lemma_oracles() {
  Outcome o;
  const auto pole = SubmanifoldSpec::sphere_point(2, vec({0.3, -0.4, std::sqrt(0.75)}));
  const auto gc = SubmanifoldSpec::great_circle(2, vec({1, 0, 0}), vec({0, 0.6, 0.8}));
  const auto disk = SubmanifoldSpec::disk_origin();
  for (const auto* N : {&pole, &gc, &disk}) {
    const auto d = check_derivative_oracles(*N, 200, seed);
    note(o, d.passed && d.samples == 200, fmt("%s %.2g", d.name.c_str(), d.value));
  }
  for (const auto* N : {&pole, &gc, &disk}) {
    const auto g = check_gradient_norm(*N, 200, seed);
    note(o, g.passed, fmt("%s %.2g", g.name.c_str(), g.value));
  }
  const auto dk = check_dk_nonnegative(gc, 200, seed);
  note(o, dk.passed, fmt("%s min %.2g", dk.name.c_str(), dk.value));
  const auto orth = check_orthogonality(gc, 200, seed);
  note(o, orth.passed, fmt("%s %.2g", orth.name.c_str(), orth.value));
  return o;
}

Outcome quantity_sign() {
  Outcome o;
  const auto E2 = SpaceId::euclidean(2);
  const std::vector<SubmanifoldSpec> targets = {SubmanifoldSpec::sphere_point(2, vec({1, 0, 0})),
                                                SubmanifoldSpec::great_circle(2, vec({1, 0, 0}), vec({0, 0.6, 0.8})),
                                                SubmanifoldSpec::disk_origin(),
                                                SubmanifoldSpec::affine_line(E2, vec({0, 0.5}), vec({1, 1})),
                                                SubmanifoldSpec::hyperbola(1, 1),
                                                SubmanifoldSpec::paraboloid_vertex()};
  for (const auto& N : targets) {
    const auto c = check_quantity_oracle(N, 200, seed);
    note(o, c.samples == 200 && c.value == 0.0,
         fmt("%s %d/%d", c.name.c_str(), c.samples - static_cast<int>(c.value), c.samples));
  }
  return o;
}

Outcome cylinder() {
  Outcome o;
  const auto N = SubmanifoldSpec::point_set(SpaceId::euclidean(2), {vec({0, 0})});
  const auto sol = solve_bvp(N, ChartPoint(N.space(), {1.0, 0.0}), ChartPoint(N.space(), {0.0, 2.0}));
  const double dev = std::abs(sol.length_kappa - std::hypot(pi / 2, std::log(2.0)));
  note(o, dev <= 1e-5, fmt("BVP length %.9f, dev %.2g", sol.length_kappa, dev));
  const auto iso = check_cylinder_isometry(100, seed);
  note(o, iso.passed && iso.samples == 100, fmt("100 geodesics max dev %.2g", iso.value));
  return o;
}

Outcome two_point_profiles() {
  Outcome o;
  ScenarioConfig cfg = builtin_scenarios().front();
  for (auto& c : builtin_scenarios())
    if (c.name == "plane_two_points") cfg = c;
  const auto dir = fs::temp_directory_path() / "condgeo_acceptance_two_points";
  cfg.write_svg = false;
  const auto run = run_scenario(cfg, dir.string());
  fs::remove_all(dir);
  int single = 0;
  for (const auto& s : run.segments) {
    if (!s.ok) {
      note(o, false, s.label + " failed: " + s.error);
      continue;
    }
    const auto& r = *s.report;
    if (s.label == "symmetry_line") {
      note(o, r.classification != Classification::convex && r.min_second_diff < -10 * r.tolerance_used,
           fmt("symmetry line %s, min %.3g vs tol %.2g", std::string(to_string(r.classification)).c_str(),
               r.min_second_diff, r.tolerance_used));
    } else if (s.path->crossings.size() == 1) {
      ++single;
      note(o, r.classification == Classification::convex,
           s.label + " " + std::string(to_string(r.classification)));
    }
  }
  note(o, single >= 1, fmt("%d single-crossing profiles", single));
  return o;
}

Outcome grid_oracle() {
  Outcome o;
  const auto N = SubmanifoldSpec::point_set(SpaceId::euclidean(2), {vec({0, 0})});
  const ChartPoint a(N.space(), {1.0, 0.0});
  const std::vector<std::pair<ChartPoint, double>> targets = {{ChartPoint(N.space(), {2.0, 0.0}), std::log(2.0)},
                                                              {ChartPoint(N.space(), {0.0, 1.0}), pi / 2},
                                                              {ChartPoint(N.space(), {0.0, 2.0}), std::hypot(pi / 2, std::log(2.0))}};
  for (const auto& [b, exact] : targets) {
    std::vector<double> err;
    for (int res : {64, 128, 256}) {
      GridSpec g;
      g.lo = vec({-2.5, -2.5});
      g.hi = vec({2.5, 2.5});
      g.resolution = res;
      err.push_back(std::abs(grid_condition_distance(g, N, a, b) - exact) / exact);
    }
    note(o, err[2] <= 0.02 && err[1] <= err[0] && err[2] <= err[1],
         fmt("(%g,%g) rel err %.2g -> %.2g -> %.2g", b.coords[0], b.coords[1], err[0], err[1], err[2]));
  }
  return o;
}

Outcome paraboloid() {
  Outcome o;
  const auto N = SubmanifoldSpec::paraboloid_vertex();
  double worst = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const double z = 0.1 * i;
    const double exact = z * std::sqrt(1 + 4 * z * z) / 2 + std::asinh(2 * z) / 4;
    worst = std::max(worst, std::abs(rho(N, ChartPoint(N.space(), {z, 0.0})) - exact));
  }
  note(o, worst <= 1e-10, fmt("quadrature dev %.2g", worst));
  int spirals = 0, inward = 0;
  for (double angle : {-1.2, -0.6, 0.3, 0.6, 1.2}) {
    const TangentVector v(ChartPoint(N.space(), {1.0, 0.0}), {std::cos(pi / 2 + angle), std::sin(pi / 2 + angle)});
    const auto path = integrate_ivp(N, v, 40.0);
    ++spirals;
    // Eventually decreasing: past its peak rho falls monotonically and ends below its start.
    const auto& r = path.rho_vals;
    const auto peak = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
    bool falling = r.back() < 1e-3 * r.front();
    for (std::size_t k = peak + 1; k < r.size(); ++k) falling = falling && r[k] < r[k - 1];
    double winding = 0.0;
    for (std::size_t k = 1; k < path.size(); ++k)
      winding += std::abs(path.points[k].coords[1] - path.points[k - 1].coords[1]);
    if (falling && winding > 1.0) ++inward;
  }
  note(o, inward == spirals, fmt("%d/%d non-radial geodesics spiral inward", inward, spirals));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    note(o, false, "no condgeo executable given");
    return o;
  }
  const auto dir = fs::temp_directory_path() / "condgeo_acceptance_verify";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> texts;
  for (const char* name : {"a.json", "b.json"}) {
    const auto out = dir / name;
    const std::string cmd = "\"" + cli + "\" verify --seed 42 --json \"" + out.string() + "\" > /dev/null";
    const int status = std::system(cmd.c_str());
    note(o, status == 0, fmt("%s exit %d", name, status));
    texts.push_back(slurp(out));
  }
  fs::remove_all(dir);
  note(o, !texts[0].empty() && texts[0] == texts[1], fmt("%zu bytes identical", texts[0].size()));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"sphere quantity nonnegative", sphere_theorem},
      {"hyperbolic quantity closed form and sign", hyperbolic_theorem},
      {"plane quantity nonnegative", euclidean_theorem},
      {"sphere condition Christoffels", sphere_christoffels},
      {"distance-field derivatives and identities", lemma_oracles},
      {"quantity sign matches profile curvature", quantity_sign},
      {"cylinder isometry", cylinder},
      {"two-point plane profiles", two_point_profiles},
      {"grid oracle convergence", grid_oracle},
      {"paraboloid distance and spirals", paraboloid},
      {"verify JSON determinism", [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.passed ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
