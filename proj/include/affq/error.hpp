#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace affq {

/// Invalid input that violates an operation's precondition (q = 0 for a
/// logarithm, non-prime modulus, non-contracting field, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed configuration or measure block.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A resource guard tripped: convolution support, bit size, step cap, or
/// boundary precision.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t reached)
      : std::runtime_error(what + " (reached " + std::to_string(reached) + ")"),
        reached_(reached) {}

  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

/// Requested p-adic precision is not covered by an expansion or stabilized
/// boundary sample.
class InsufficientPrecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace affq
