#pragma once

#include <stdexcept>
#include <string>

namespace condgeo {

enum class ErrorCode {
  invalid_argument,
  domain,
  chart_exit,
  projection,
  degenerate_point,
  smoothness,
  convergence,
  config,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A chart point violates one of its coordinate bounds.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

/// A base geodesic left the chart domain at parameter `exit_time()`.
class ChartExitError : public Error {
 public:
  ChartExitError(const std::string& what, double exit_time)
      : Error(ErrorCode::chart_exit, what), exit_time_(exit_time) {}
  double exit_time() const noexcept { return exit_time_; }

 private:
  double exit_time_;
};

class ProjectionError : public Error {
 public:
  ProjectionError(const std::string& what, double residual)
      : Error(ErrorCode::projection, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// The query point lies on the submanifold (rho is zero).
class DegeneratePointError : public Error {
 public:
  explicit DegeneratePointError(const std::string& what) : Error(ErrorCode::degenerate_point, what) {}
};

/// The query point is outside the smooth locus of the distance function.
class SmoothnessError : public Error {
 public:
  explicit SmoothnessError(const std::string& what) : Error(ErrorCode::smoothness, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(ErrorCode::convergence, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace condgeo
