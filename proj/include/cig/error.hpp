#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition (degree mismatch, set not
/// a subgroup, subgroup not normal, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured size limit would be exceeded. Operations never degrade
/// silently past their caps.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input; `position()` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Overflow-checked arithmetic for group orders.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp);
std::uint64_t factorial(std::uint64_t n);

}  // namespace cig
