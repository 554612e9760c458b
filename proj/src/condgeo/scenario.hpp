#pragma once

#include "condgeo/selfconvexity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace condgeo {

enum class SegmentKind {
  ivp,         // condition geodesic from x0 with direction v0
  bvp,         // condition geodesic joining a and b
  line,        // straight chart segment a -> b at unit condition speed
  random_ivp,  // `count` condition geodesics from seeded random smooth-locus data
};

struct SegmentSpec {
  SegmentKind kind = SegmentKind::ivp;
  std::string label;
  Vec x0, v0;
  double s_max = 1.0;
  bool through_nonsmooth = false;
  Vec a, b;
  int count = 0;
};

struct ScenarioConfig {
  ScenarioConfig(std::string n, SubmanifoldSpec N) : name(std::move(n)), submanifold(std::move(N)) {}

  std::string name;
  std::string description;
  SubmanifoldSpec submanifold;
  std::vector<SegmentSpec> segments;
  double tol = tol::ivp_default;
  int samples = tol::ivp_samples;
  std::uint64_t seed = 0;
  bool write_csv = true;
  bool write_svg = true;

  const SpaceId& space() const { return submanifold.space(); }
};

/// The seven built-in scenarios.
std::vector<ScenarioConfig> builtin_scenarios();

ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_scenario_file(const std::string& path);

/// Built-ins followed by the scenarios of `config_paths`. Throws ConfigError
/// naming every duplicated scenario name.
std::vector<ScenarioConfig> scenario_catalogue(const std::vector<std::string>& config_paths = {});

struct SegmentResult {
  std::string label;
  SegmentKind kind = SegmentKind::ivp;
  bool ok = false;
  std::string error;
  std::optional<GeodesicPath> path;
  std::optional<ConvexityReport> report;
  double length_kappa = 0.0;
  std::string csv_path;
};

struct RunArtifacts {
  std::string scenario;
  std::vector<SegmentResult> segments;
  std::vector<std::string> csv_paths;
  std::string svg_path;
  std::string summary_path;
  int exit_status = 0;
};

/// Solves every segment (failures are recorded per segment), then writes one
/// CSV per segment, one SVG and a JSON summary into `out_dir`. Throws IoError
/// when an output cannot be written.
RunArtifacts run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

std::string segment_csv(const GeodesicPath& path, const ConvexityReport* report);
std::string scenario_svg(const ScenarioConfig& cfg, const std::vector<SegmentResult>& segments);
std::string scenario_summary_json(const ScenarioConfig& cfg, const RunArtifacts& run);

std::string_view to_string(SegmentKind k);

}  // namespace condgeo
