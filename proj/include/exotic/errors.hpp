#pragma once

#include <stdexcept>
#include <string>

namespace exotic {

/// Raised when an input lies outside the domain of an operation
/// (zero divisor, point outside a chart overlap, broken frame invariant).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised for malformed requests: unknown suite ids, inverted ranges,
/// even k, empty sampling ranges.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace exotic
