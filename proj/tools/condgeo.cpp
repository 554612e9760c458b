// condgeo: run condition-metric scenarios and verification suites.
// Exit status: 0 success, 1 verification failure, 2 usage or I/O error.

#include "condgeo/condgeo.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

using owned = std::unique_ptr<char, decltype(&condgeo_string_free)>;

owned own(char* s) { return owned(s, &condgeo_string_free); }

int report(condgeo_status s) {
  std::cerr << "condgeo: " << condgeo_status_name(s) << ": " << condgeo_last_error() << "\n";
  return exit_usage;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

int list_scenarios(const std::vector<std::string>& configs) {
  const auto argv = c_strings(configs);
  char* raw = nullptr;
  if (auto s = condgeo_scenario_list(argv.data(), argv.size(), &raw); s != CONDGEO_OK) return report(s);
  const auto text = own(raw);
  const auto list = nlohmann::json::parse(text.get());
  for (const auto& item : list) {
    std::printf("%-20s %-22s %s\n", item["name"].get<std::string>().c_str(),
                item["space"].get<std::string>().c_str(), item["description"].get<std::string>().c_str());
  }
  return exit_ok;
}

int run_scenario(const std::string& scenario, const std::vector<std::string>& configs, const std::string& out_dir,
                 const std::optional<std::string>& formats, std::optional<double> tol,
                 std::optional<std::uint64_t> seed) {
  const auto argv = c_strings(configs);
  char* raw = nullptr;
  const std::uint64_t seed_value = seed.value_or(0);
  const auto s = condgeo_scenario_run(scenario.c_str(), argv.data(), argv.size(), out_dir.c_str(),
                                      formats ? formats->c_str() : nullptr, tol.value_or(0.0),
                                      seed ? &seed_value : nullptr, &raw);
  if (s != CONDGEO_OK) return report(s);
  const auto text = own(raw);
  const auto summary = nlohmann::json::parse(text.get());
  std::printf("%s -> %s\n", summary["scenario"].get<std::string>().c_str(), out_dir.c_str());
  for (const auto& seg : summary["segments"]) {
    if (!seg["ok"].get<bool>()) {
      std::printf("  %-22s %-10s FAILED: %s\n", seg["label"].get<std::string>().c_str(),
                  seg["kind"].get<std::string>().c_str(), seg["error"].get<std::string>().c_str());
      continue;
    }
    std::printf("  %-22s %-10s %-17s L_kappa %-10.6g %s\n", seg["label"].get<std::string>().c_str(),
                seg["kind"].get<std::string>().c_str(), seg["termination"].get<std::string>().c_str(),
                seg["length_kappa"].get<double>(),
                seg.contains("classification") ? seg["classification"].get<std::string>().c_str() : "-");
  }
  return exit_ok;
}

int verify(const std::string& suites, int samples, std::uint64_t seed, const std::string& json_path) {
  char *json = nullptr, *table = nullptr;
  int passed = 0;
  if (auto s = condgeo_verify(suites.c_str(), samples, seed, &json, &table, &passed); s != CONDGEO_OK)
    return report(s);
  const auto json_text = own(json), table_text = own(table);
  std::fputs(table_text.get(), stdout);
  if (!json_path.empty()) {
    std::ofstream f(json_path, std::ios::binary);
    f << json_text.get();
    f.close();
    if (!f) {
      std::cerr << "condgeo: cannot write " << json_path << "\n";
      return exit_usage;
    }
  }
  return passed ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geodesics of condition metrics and self-convexity checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(condgeo_version()));

  auto* scenario = app.add_subcommand("scenario", "List or run built-in and configured scenarios");
  scenario->require_subcommand(1);
  std::vector<std::string> configs;

  auto* list = scenario->add_subcommand("list", "List available scenarios");
  list->add_option("--config", configs, "Extra scenario JSON file (repeatable)")->check(CLI::ExistingFile);

  auto* run = scenario->add_subcommand("run", "Run one scenario and write CSV, SVG and a JSON summary");
  std::string target, out_dir = "out";
  std::optional<std::string> formats;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  run->add_option("scenario", target, "Scenario name or path to a scenario JSON file")->required();
  run->add_option("--config", configs, "Extra scenario JSON file (repeatable)")->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_option("--format", formats, "Comma list of outputs: csv,svg");
  run->add_option("--tol", tol, "Integrator tolerance")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "Seed for random segments");

  auto* ver = app.add_subcommand("verify", "Run the theorem suites and cross-checks");
  std::string suites;
  int samples = 10000;
  std::uint64_t verify_seed = 42;
  std::string json_path;
  ver->add_option("--suite", suites, "Comma list of sphere,hyperbolic,euclidean,crosschecks (default: all)");
  ver->add_option("--samples", samples, "Samples per theorem suite")->capture_default_str()->check(CLI::PositiveNumber);
  ver->add_option("--seed", verify_seed, "Random seed")->capture_default_str();
  ver->add_option("--json", json_path, "Write the JSON summary to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  if (*list) return list_scenarios(configs);
  if (*run) return run_scenario(target, configs, out_dir, formats, tol, seed);
  if (*ver) return verify(suites, samples, verify_seed, json_path);
  return exit_usage;
}
