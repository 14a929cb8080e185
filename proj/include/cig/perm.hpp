#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace cig {

using Point = std::uint32_t;

/// A permutation of the points 0..degree-1, stored as its image table.
///
/// Composition follows function notation: `(p * q)(x) == p(q(x))`, so `q`
/// is applied first.
class Perm {
 public:
  Perm() = default;

  /// Throws InvalidInput unless `images` is a bijection on 0..size-1.
  explicit Perm(std::vector<Point> images);

  static Perm identity(std::size_t degree);

  /// Builds a permutation from disjoint cycles, e.g. `{{0, 1, 2}, {3, 4}}`.
  static Perm from_cycles(std::size_t degree,
                          const std::vector<std::vector<Point>>& cycles);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const noexcept { return images_; }

  Perm operator*(const Perm& rhs) const;
  Perm inverse() const;
  bool is_identity() const noexcept;

  /// Cycle notation with fixed points omitted; "()" for the identity.
  std::string to_cycle_string() const;

  auto operator<=>(const Perm&) const = default;
  bool operator==(const Perm&) const = default;

 private:
  std::vector<Point> images_;
};

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace cig
