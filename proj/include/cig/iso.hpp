#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cig/digraph.hpp"
#include "cig/perm_group.hpp"

namespace cig {

inline constexpr std::size_t kDefaultSearchOrderCap = 40;

/// Vertex bijection, `map[v]` being the image of v.
using VertexMap = std::vector<Vertex>;

/// A coloring of the vertices. Color indices are canonical: refining two
/// isomorphic digraphs from corresponding colorings yields corresponding
/// colorings with identical indices.
struct VertexColoring {
  std::vector<std::uint32_t> colors;
  std::size_t num_colors = 0;

  static VertexColoring uniform(std::size_t order);
  /// Color count per color index; an isomorphism invariant after refinement.
  std::vector<std::size_t> histogram() const;
};

/// Iterated refinement by (color, loop flag, out-degree per color, in-degree
/// per color) signatures until the number of colors stops growing.
VertexColoring refine(const Digraph& d, const VertexColoring& initial);

/// An arc-exact bijection a -> b, or nothing after an exhaustive search.
/// Throws CapExceeded above `order_cap` vertices.
std::optional<VertexMap> find_isomorphism(const Digraph& a, const Digraph& b,
                                          std::size_t order_cap = kDefaultSearchOrderCap);

bool are_isomorphic(const Digraph& a, const Digraph& b,
                    std::size_t order_cap = kDefaultSearchOrderCap);

/// The full automorphism group. Generators come from a stabilizer tower over
/// the base 0, 1, ..., n-1: for every level, one automorphism per newly
/// reached point of the basic orbit. The order is the product of the basic
/// orbit lengths, so no closure is enumerated.
PermGroup automorphism_group_of(const Digraph& d,
                                std::size_t order_cap = kDefaultSearchOrderCap);

bool is_isomorphism(const Digraph& a, const Digraph& b, std::span<const Vertex> map);
bool is_automorphism(const Digraph& d, const Perm& p);

}  // namespace cig
