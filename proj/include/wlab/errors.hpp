#ifndef WLAB_ERRORS_HPP
#define WLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wlab {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Array length / grid shape mismatch.
class SizeError : public Error {
 public:
  explicit SizeError(const std::string& msg) : Error(msg) {}
};

/// Input violates a physical or geometric precondition (support guard,
/// non-positive width, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Non-finite values where finite ones are required.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

/// Invalid propagation configuration (aliasing bound, stride, ...).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Iteration failed to converge within the step budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double last_value)
      : Error(msg), last_value_(last_value) {}
  double last_value() const { return last_value_; }

 private:
  double last_value_;
};

/// Sinogram does not cover enough projection angles.
class CoverageError : public Error {
 public:
  explicit CoverageError(const std::string& msg) : Error(msg) {}
};

/// File I/O failure; message carries the path.
class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Caller misuse of a public entry point (wrong style, unknown subcommand).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

}  // namespace wlab

#endif  // WLAB_ERRORS_HPP
