#pragma once

#include <stdexcept>
#include <string>

namespace entrocount {

// Error categories. Everything derives from std::invalid_argument or
// std::runtime_error so callers can catch broadly when they don't care.

/// Argument outside the mathematical domain of a function (e.g. ln_a(0)).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent arguments (bad coordinate sets, empty families).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A probability vector or table that fails validation.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is too large for the requested exact algorithm.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Inputs violate a stated precondition of an inequality.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The entropic order lies outside the range a result is proved for.
class UnsupportedRangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Parse or ingestion failure on external input.
class IngestionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace entrocount
