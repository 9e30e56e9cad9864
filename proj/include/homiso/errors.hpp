#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace homiso {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad argument: dimension mismatch, wrong arity, domain violation.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Columns that should be independent are not (at the configured rank tolerance).
class RankError : public Error {
 public:
  using Error::Error;
};

/// Checked integer arithmetic ran out of range.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Requested operation is outside the supported range (e.g. polarization of huge degree).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented precondition (e.g. subspace is not null).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A root finder or certificate did not reach tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Ambient dimension is below the guaranteed bound for the requested construction.
class BoundError : public Error {
 public:
  BoundError(std::uint64_t required, std::uint64_t actual)
      : Error("construction requires dimension >= " + std::to_string(required) +
              " (have " + std::to_string(actual) + ")"),
        required_(required),
        actual_(actual) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t actual() const noexcept { return actual_; }

 private:
  std::uint64_t required_;
  std::uint64_t actual_;
};

}  // namespace homiso
