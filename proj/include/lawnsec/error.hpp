#pragma once

#include <stdexcept>
#include <string>

namespace lawnsec {

/// Malformed config document or out-of-range config value.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  /// Offending key; empty for document-level parse errors.
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Queue utilization rho = lambda / gamma is not in (0, 1).
class UtilizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical routine failed to reach its accuracy target.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lawnsec
