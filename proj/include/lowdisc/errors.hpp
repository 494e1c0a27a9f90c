#pragma once

#include <stdexcept>
#include <string>

namespace lowdisc {

/// Malformed or inconsistent scramble configuration, permutation or manifest.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested computation exceeds an enumeration guard or work budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A search or threshold scan terminated without a result.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lowdisc
