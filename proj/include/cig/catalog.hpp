#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cig/finite_group.hpp"

namespace cig {

FiniteGroup make_cyclic(std::size_t n);
/// The dihedral group of order 2n; element r^k s^e sits at index k + n*e.
FiniteGroup make_dihedral(std::size_t n);
/// Q8 with elements 1, -1, i, -i, j, -j, k, -k in that order.
FiniteGroup make_quaternion();
/// Sym(n) with elements in lexicographic order of their image tables.
FiniteGroup make_symmetric(std::size_t n);
FiniteGroup make_alternating(std::size_t n);

/// Mixed-radix product; the first factor is the most significant digit.
FiniteGroup direct_product(std::span<const FiniteGroup> factors);

/// Parses `atom ("x" atom)*` with atoms Z<n>, D<n>, Q8, S<n>, A<n> and
/// file:<path>. A file atom consumes the remainder of the text.
FiniteGroup parse_group_spec(std::string_view spec,
                             std::size_t order_cap = kDefaultGroupOrderCap);

/// Loads {"order": n, "table": [[...]], "labels": [...]} and validates it.
FiniteGroup load_group_file(const std::string& path,
                            std::size_t order_cap = kDefaultGroupOrderCap);
FiniteGroup group_from_json_text(std::string_view text,
                                 std::size_t order_cap = kDefaultGroupOrderCap);

struct CatalogEntry {
  std::string spec;
  std::size_t order;
  std::string description;
};

/// One entry per isomorphism class the catalog can build, up to `max_order`.
std::vector<CatalogEntry> catalog(std::size_t max_order);

}  // namespace cig
