#pragma once

#include "condgeo/selfconvexity.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace condgeo {

/// One named pass/fail check. `value` is the measured worst case and
/// `threshold` the bound it is compared against; `comparison` says how.
struct CheckResult {
  std::string suite;
  std::string name;
  std::string metric;
  std::string comparison;  // "<=" or ">="
  double value = 0.0;
  double threshold = 0.0;
  int samples = 0;
  bool passed = false;
  std::string detail;
  std::optional<SuiteSummary> summary;
};

struct VerifyOptions {
  std::vector<std::string> suites;  // empty: every suite
  int samples = 10000;              // per theorem suite; crosschecks use at most this many
  std::uint64_t seed = 42;
};

struct VerifyReport {
  std::vector<std::string> suites;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool passed = false;
};

/// sphere, hyperbolic, euclidean, crosschecks.
const std::vector<std::string>& verify_suite_names();

/// Runs the requested suites. Unknown suite names raise ConfigError; check
/// failures are reported, never thrown. Deterministic given the options.
VerifyReport run_verify(const VerifyOptions& opts);

std::string verify_json(const VerifyReport& report);
/// Fixed-width text table, one row per check.
std::string verify_table(const VerifyReport& report);

// Individual checks, also used directly by the tests.
CheckResult check_theorem_suite(const std::string& suite, const SubmanifoldSpec& N, int samples,
                                std::uint64_t seed, const std::string& name);
CheckResult check_sphere_closed_form(int n, int samples, std::uint64_t seed);
CheckResult check_hyperbolic_closed_form(int samples, std::uint64_t seed);
CheckResult check_hyperbolic_radial_zero(int samples, std::uint64_t seed);
CheckResult check_sphere_christoffel(int n, int samples, std::uint64_t seed);
CheckResult check_cylinder_isometry(int geodesics, std::uint64_t seed);
CheckResult check_cylinder_bvp();
CheckResult check_derivative_oracles(const SubmanifoldSpec& N, int samples, std::uint64_t seed);
CheckResult check_gradient_norm(const SubmanifoldSpec& N, int samples, std::uint64_t seed);
CheckResult check_dk_nonnegative(const SubmanifoldSpec& N, int samples, std::uint64_t seed);
CheckResult check_orthogonality(const SubmanifoldSpec& N, int samples, std::uint64_t seed);
CheckResult check_shortcut_identity(const SubmanifoldSpec& N, int samples, std::uint64_t seed);
CheckResult check_sign_fact(int grid);
CheckResult check_point_reduction(const SubmanifoldSpec& curve, int samples, std::uint64_t seed);
/// Sign (and size) of the quantity against a finite-difference second
/// derivative of log(1/rho) along integrated condition geodesics.
CheckResult check_quantity_oracle(const SubmanifoldSpec& N, int samples, std::uint64_t seed);

}  // namespace condgeo
