#include "cig/error.hpp"

#include <limits>

namespace cig {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw CapExceeded("group order overflows 64 bits");
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) result = checked_mul(result, base);
  return result;
}

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) result = checked_mul(result, i);
  return result;
}

}  // namespace cig
