#pragma once

#include <stdexcept>
#include <string>

namespace nlup {

/// Bad user input: unknown names, malformed files, invalid counts.
class InvalidArgumentError : public std::invalid_argument {
 public:
  explicit InvalidArgumentError(const std::string& msg)
      : std::invalid_argument(msg) {}
};

/// Config file syntax or validation failure.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed binary model/dataset file.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

/// I/O failure, carries the offending path in the message.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Newton hit a singular (or numerically unusable) Jacobian.
class SingularJacobianError : public SolverError {
 public:
  explicit SingularJacobianError(const std::string& msg) : SolverError(msg) {}
};

/// Iteration budget exhausted; carries the last residual norm.
class NoConvergenceError : public SolverError {
 public:
  NoConvergenceError(const std::string& msg, double residual_norm)
      : SolverError(msg), residual_norm(residual_norm) {}
  double residual_norm;
};

/// Undefined metric, e.g. relative error against a zero reference.
class MetricError : public std::runtime_error {
 public:
  explicit MetricError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nlup
