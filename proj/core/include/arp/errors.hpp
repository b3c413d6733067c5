#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arp {

/// A caller broke a documented precondition (e.g. shrinking a trajectory).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// TSPLIB or CSV input that cannot be read. `line()` is 1-based, 0 when the
/// problem is not tied to a particular line (e.g. missing header key).
class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    kMissingDimension,
    kUnsupportedMetric,
    kCoordinateCountMismatch,
    kMalformed,
  };

  ParseError(Kind kind, std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        kind_(kind),
        line_(line) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

}  // namespace arp
