#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cig/perm_group.hpp"

namespace cig {

using Element = std::uint32_t;

/// A set of group elements, kept sorted and duplicate-free.
using ElementSet = std::vector<Element>;

ElementSet make_element_set(std::vector<Element> elements);

inline constexpr std::size_t kDefaultGroupOrderCap = 1024;
inline constexpr std::size_t kDefaultAutomorphismOrderCap = 24;
inline constexpr std::size_t kDefaultSubgroupOrderCap = 64;

/// A finite group stored as its multiplication table. Element 0 is the
/// identity; `mul(i, j)` is the index of the product i*j.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Validates identity, Latin-square property and associativity (all
  /// triples). Failures name the first offending entry or triple.
  FiniteGroup(std::size_t order, std::vector<Element> table,
              std::vector<std::string> labels = {});

  /// Skips the associativity check; for tables built from a known group law.
  static FiniteGroup trusted(std::size_t order, std::vector<Element> table,
                             std::vector<std::string> labels);

  std::size_t order() const noexcept { return order_; }
  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inverse(Element a) const { return inverse_[a]; }
  std::size_t element_order(Element a) const { return element_order_[a]; }
  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<Element>& table() const noexcept { return table_; }
  bool is_abelian() const;

  /// The first triple (a, b, c) with (ab)c != a(bc), if any.
  std::optional<std::array<Element, 3>> associativity_violation() const;

  bool operator==(const FiniteGroup& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

 private:
  void validate_latin_square() const;
  void derive_tables();

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::size_t> element_order_;
  std::vector<std::string> labels_;
};

/// An automorphism of a group, given by the image of each element index.
struct GroupAutomorphism {
  std::vector<Element> images;

  static GroupAutomorphism identity(std::size_t order);

  Element operator()(Element x) const { return images[x]; }
  ElementSet apply(std::span<const Element> set) const;
  /// `(a * b)(x) == a(b(x))`.
  GroupAutomorphism operator*(const GroupAutomorphism& rhs) const;
  GroupAutomorphism inverse() const;
  bool is_identity() const;

  bool operator==(const GroupAutomorphism&) const = default;
};

/// Whether `images` is a bijective homomorphism of `g`.
bool is_automorphism(const FiniteGroup& g, std::span<const Element> images);

/// Left cosets gH, ordered by minimum element; representatives are minima.
struct CosetDecomposition {
  ElementSet subgroup;
  std::vector<ElementSet> cosets;
  std::vector<Element> transversal;
  std::vector<std::size_t> coset_of;

  PointPartition as_partition() const;
};

/// The projection G -> G/H, target elements indexed like the cosets.
struct QuotientMap {
  ElementSet kernel;
  CosetDecomposition cosets;
  FiniteGroup target;
  std::vector<Element> projection;
};

ElementSet subgroup_generated(const FiniteGroup& g, std::span<const Element> gens);
bool is_subgroup(const FiniteGroup& g, std::span<const Element> h);

/// Throws InvalidInput if `h` is not a subgroup.
bool is_normal(const FiniteGroup& g, std::span<const Element> h);

/// Every subgroup, ordered by size then lexicographically.
std::vector<ElementSet> all_subgroups(const FiniteGroup& g,
                                      std::size_t order_cap = kDefaultSubgroupOrderCap);
std::vector<ElementSet> normal_subgroups(const FiniteGroup& g,
                                         std::size_t order_cap = kDefaultSubgroupOrderCap);

CosetDecomposition cosets(const FiniteGroup& g, std::span<const Element> h);

/// Throws InvalidInput when `h` is not normal.
QuotientMap quotient(const FiniteGroup& g, std::span<const Element> h);

/// A small generating set chosen greedily by ascending index.
std::vector<Element> greedy_generators(const FiniteGroup& g);

/// Calls `visit` for each isomorphism src -> dst in lexicographic order of
/// the images of `greedy_generators(src)`; stops early when `visit` returns
/// false.
void for_each_isomorphism(const FiniteGroup& src, const FiniteGroup& dst,
                          const std::function<bool(const std::vector<Element>&)>& visit);

/// All automorphisms, identity first. Throws CapExceeded when the order is
/// above `order_cap`.
std::vector<GroupAutomorphism> automorphism_group(
    const FiniteGroup& g, std::size_t order_cap = kDefaultAutomorphismOrderCap);

/// Brute-force isomorphism test between two tables.
std::optional<std::vector<Element>> find_group_isomorphism(const FiniteGroup& a,
                                                           const FiniteGroup& b);

/// The translations x -> gx, one generator per element.
PermGroup left_regular_representation(const FiniteGroup& g);

/// The automorphism gH -> alpha(g)H of the quotient. Throws InvalidInput
/// unless alpha(H) = H.
GroupAutomorphism induced_quotient_automorphism(const GroupAutomorphism& alpha,
                                                const QuotientMap& q);

}  // namespace cig
