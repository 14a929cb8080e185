#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cig/perm.hpp"

namespace cig {

inline constexpr std::size_t kDefaultClosureCap = 200'000;
inline constexpr std::size_t kDefaultBlockSearchDegreeCap = 24;

/// A partition of 0..degree-1 into disjoint nonempty classes.
///
/// Always canonical: each class is sorted and classes are ordered by their
/// minimum element, so two partitions are equal iff they compare equal.
class PointPartition {
 public:
  PointPartition() = default;
  PointPartition(std::size_t degree, std::vector<std::vector<Point>> classes);

  /// `class_of[x]` names the class of point x; labels are arbitrary.
  static PointPartition from_labels(std::span<const std::size_t> class_of);
  static PointPartition singletons(std::size_t degree);
  static PointPartition whole(std::size_t degree);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return classes_.size(); }
  const std::vector<std::vector<Point>>& classes() const noexcept {
    return classes_;
  }
  /// Index of the class holding each point.
  std::vector<std::size_t> class_index() const;
  bool is_uniform() const;

  std::string to_string() const;

  bool operator==(const PointPartition&) const = default;
  auto operator<=>(const PointPartition&) const = default;

 private:
  std::size_t degree_ = 0;
  std::vector<std::vector<Point>> classes_;
};

/// True iff every class of `c` lies inside some class of `b`.
bool is_refinement(const PointPartition& c, const PointPartition& b);

/// A permutation group given by generators.
///
/// The element closure is computed lazily on first use and shared between
/// copies. Groups built by a construction whose order is known in closed form
/// (wreath products, automorphism searches) carry that order, so `order()`
/// does not force enumeration.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators,
            std::size_t closure_cap = kDefaultClosureCap);

  static PermGroup with_order(std::size_t degree, std::vector<Perm> generators,
                              std::uint64_t order,
                              std::size_t closure_cap = kDefaultClosureCap);

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return generators_; }
  std::size_t closure_cap() const noexcept { return closure_cap_; }

  std::uint64_t order() const;
  bool order_is_known() const noexcept { return known_order_.has_value(); }

  /// Every element, identity first, in breadth-first discovery order.
  /// Throws CapExceeded past the closure cap.
  const std::vector<Perm>& elements() const;
  bool contains(const Perm& p) const;

 private:
  struct Closure;

  std::size_t degree_;
  std::vector<Perm> generators_;
  std::size_t closure_cap_;
  std::optional<std::uint64_t> known_order_;
  std::shared_ptr<Closure> closure_;

  friend PermGroup fix(const PermGroup& g, const PointPartition& p);
};

/// Enumerates the closure of `generators` eagerly.
PermGroup closure(std::size_t degree, std::vector<Perm> generators,
                  std::size_t closure_cap = kDefaultClosureCap);

/// Sym(n) on 0..n-1, generated by (0 1) and (0 1 ... n-1).
PermGroup symmetric_group(std::size_t n);

PointPartition orbits(const PermGroup& g);
bool is_transitive(const PermGroup& g);

/// Whether every image g(block), g in the group, equals `block` or misses it.
/// The images are enumerated as the orbit of the set itself, which is exactly
/// the set of images under all closure elements.
bool is_block(const PermGroup& g, std::span<const Point> block);

/// The partition formed by the conjugates of `block`; `block` must be a block.
PointPartition conjugate_blocks(const PermGroup& g, std::span<const Point> block);

/// All invariant partitions of a transitive group with classes of size `size`.
std::vector<PointPartition> block_systems_of_size(
    const PermGroup& g, std::size_t size,
    std::size_t degree_cap = kDefaultBlockSearchDegreeCap);

bool is_primitive(const PermGroup& g,
                  std::size_t degree_cap = kDefaultBlockSearchDegreeCap);

/// Every invariant partition, trivial ones included, ordered by class size.
std::vector<PointPartition> all_invariant_partitions(
    const PermGroup& g, std::size_t degree_cap = kDefaultBlockSearchDegreeCap);

/// The subgroup fixing every class of `p` set-wise.
PermGroup fix(const PermGroup& g, const PointPartition& p);

/// Whether `perm` maps every class of `p` onto a class of `p`.
bool preserves_partition(const Perm& perm, const PointPartition& p);

/// The wreath product acting on X x Y, the pair (x, y) stored at x*|Y|+y:
/// `g` moves the first coordinate, an independent copy of `h` moves each
/// fiber {x} x Y.
PermGroup wreath_perm(const PermGroup& g, const PermGroup& h,
                      std::size_t closure_cap = kDefaultClosureCap);

/// The partition {{x} x Y : x in X} of the wreath domain.
PointPartition fiber_partition(std::size_t outer_degree, std::size_t inner_degree);

}  // namespace cig
