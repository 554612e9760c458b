#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "condgeo/errors.hpp"
#include "condgeo/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace condgeo;
namespace fs = std::filesystem;

namespace {

const std::string data_dir = CONDGEO_TEST_DATA;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("condgeo_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

ScenarioConfig find(const std::string& name) {
  for (auto& c : builtin_scenarios())
    if (c.name == name) return c;
  throw std::runtime_error("no scenario " + name);
}

const std::string minimal = R"({
  "name": "tiny",
  "space": {"kind": "euclidean", "n": 2},
  "submanifold": {"kind": "point_set", "points": [[0.0, 0.0]]},
  "segments": [{"label": "ray", "ivp": {"x0": [1.0, 0.0], "v0": [1.0, 0.0], "s_max": 1.0}}]
})";

}  // namespace

TEST_CASE("built-in catalogue") {
  const auto all = builtin_scenarios();
  std::set<std::string> names;
  for (const auto& c : all) names.insert(c.name);
  CHECK(all.size() == 7);
  CHECK(names == std::set<std::string>{"half_plane_line", "plane_one_point", "plane_two_points", "plane_hyperbola",
                                       "sphere_north_pole", "paraboloid_vertex", "disk_origin"});
  CHECK(scenario_catalogue().size() == 7);
  CHECK(scenario_catalogue({data_dir + "/punctured_plane_spirals.json"}).size() == 8);
}

TEST_CASE("duplicate scenario names are rejected") {
  try {
    scenario_catalogue({data_dir + "/duplicate_name.json"});
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("plane_one_point") != std::string::npos);
  }
}

TEST_CASE("scenario JSON round trip") {
  for (const auto& c : builtin_scenarios()) {
    const auto text = scenario_to_json(c);
    CHECK(scenario_to_json(scenario_from_json(text)) == text);
  }
}

TEST_CASE("scenario JSON validation") {
  CHECK_NOTHROW(scenario_from_json(minimal));
  auto j = nlohmann::json::parse(minimal);
  j["colour"] = "red";
  CHECK_THROWS_AS(scenario_from_json(j.dump()), ConfigError);

  j = nlohmann::json::parse(minimal);
  j["segments"].push_back(j["segments"][0]);
  CHECK_THROWS_AS(scenario_from_json(j.dump()), ConfigError);

  j = nlohmann::json::parse(minimal);
  j["segments"].push_back({{"label", "r"}, {"random_ivp", {{"count", 2}, {"s_max", 1.0}}}});
  CHECK_THROWS_AS(scenario_from_json(j.dump()), ConfigError);
  j["seed"] = 5;
  CHECK_NOTHROW(scenario_from_json(j.dump()));

  j = nlohmann::json::parse(minimal);
  j["space"]["kind"] = "torus";
  CHECK_THROWS_AS(scenario_from_json(j.dump()), Error);

  CHECK_THROWS_AS(scenario_from_json("{ not json"), ConfigError);
  CHECK_THROWS_AS(load_scenario_file(data_dir + "/missing.json"), Error);
}

TEST_CASE("scenario outputs") {
  TempDir dir("outputs");
  const auto cfg = load_scenario_file(data_dir + "/punctured_plane_spirals.json");
  const auto run = run_scenario(cfg, dir.path.string());
  CHECK(run.exit_status == 0);
  REQUIRE(run.csv_paths.size() == 3);
  CHECK(run.svg_path.empty());
  CHECK(fs::exists(run.summary_path));

  for (const auto& path : run.csv_paths) {
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    const auto header = split(line);
    CHECK(header.front() == "s");
    const auto col = [&](const std::string& name) {
      return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
    };
    const auto rho_i = col("rho"), log_i = col("log_inv_rho"), second_i = col("second_diff");
    REQUIRE(rho_i < header.size());
    REQUIRE(log_i < header.size());
    REQUIRE(second_i < header.size());
    int rows = 0;
    while (std::getline(f, line)) {
      const auto cells = split(line);
      REQUIRE(cells.size() == header.size());
      const double rho = std::stod(cells[rho_i]), log_inv = std::stod(cells[log_i]);
      CHECK(std::abs(log_inv + std::log(rho)) <= 1e-12);
      ++rows;
    }
    CHECK(rows == 257);
  }

  const auto summary = nlohmann::json::parse(slurp(run.summary_path));
  CHECK(summary["scenario"] == "punctured_plane_spirals");
  for (const auto& seg : summary["segments"]) {
    CHECK(seg["ok"].get<bool>());
    if (seg["kind"] == "ivp") CHECK(seg["classification"] == "affine");
  }
}

TEST_CASE("scenario runs are byte-identical") {
  TempDir a("repeat_a"), b("repeat_b");
  auto cfg = find("plane_one_point");
  const auto ra = run_scenario(cfg, a.path.string());
  const auto rb = run_scenario(cfg, b.path.string());
  REQUIRE(ra.csv_paths.size() == rb.csv_paths.size());
  for (std::size_t i = 0; i < ra.csv_paths.size(); ++i)
    CHECK(slurp(ra.csv_paths[i]) == slurp(rb.csv_paths[i]));
  CHECK(slurp(ra.svg_path) == slurp(rb.svg_path));
  CHECK(slurp(ra.summary_path) == slurp(rb.summary_path));

  cfg.seed = 2;
  TempDir c("repeat_c");
  const auto rc = run_scenario(cfg, c.path.string());
  CHECK(slurp(rc.csv_paths.back()) != slurp(ra.csv_paths.back()));
}

TEST_CASE("svg output draws every segment") {
  TempDir dir("svg");
  const auto run = run_scenario(find("disk_origin"), dir.path.string());
  const auto svg = slurp(run.svg_path);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::size_t polylines = 0;
  for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++polylines;
  CHECK(polylines >= 2 * run.segments.size());
}

TEST_CASE("built-in scenario classifications") {
  TempDir dir("builtins");
  auto classes = [&](const std::string& name) {
    std::map<std::string, std::string> out;
    for (const auto& s : run_scenario(find(name), dir.path.string()).segments) {
      REQUIRE(s.ok);
      out[s.label] = std::string(to_string(s.report->classification));
    }
    return out;
  };
  for (const auto& [label, cls] : classes("plane_one_point")) CHECK((cls == "affine" || cls == "convex"));
  for (const auto& [label, cls] : classes("disk_origin")) CHECK(cls == (label == "radial" ? "affine" : "concave"));

  TempDir two("two_points");
  const auto run = run_scenario(find("plane_two_points"), two.path.string());
  for (const auto& s : run.segments) {
    REQUIRE(s.ok);
    if (s.label == "symmetry_line") {
      CHECK(s.report->classification != Classification::convex);
      CHECK(s.report->min_second_diff < -10 * s.report->tolerance_used);
    } else if (s.path->crossings.size() == 1) {
      CHECK(s.report->classification == Classification::convex);
    }
  }
}

TEST_CASE("unwritable output directory") {
  TempDir dir("blocked");
  const auto file = dir.path / "file";
  std::ofstream(file) << "x";
  CHECK_THROWS_AS(run_scenario(find("plane_one_point"), (file / "sub").string()), IoError);
}
