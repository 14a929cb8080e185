#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cig/finite_group.hpp"
#include "cig/perm_group.hpp"

namespace cig {

using Vertex = std::uint32_t;
using Arc = std::pair<Vertex, Vertex>;

inline constexpr std::size_t kDefaultDigraphOrderCap = 4096;

/// A directed graph on 0..order-1 with loops permitted. Undirected graphs are
/// the arc-symmetric digraphs. Adjacency is fixed at construction.
class Digraph {
 public:
  Digraph() = default;

  static Digraph from_arcs(std::size_t order, std::span<const Arc> arcs);

  template <class HasArc>
  static Digraph from_predicate(std::size_t order, HasArc&& has_arc) {
    Digraph d(order);
    for (std::size_t u = 0; u < order; ++u)
      for (std::size_t v = 0; v < order; ++v)
        d.adjacency_[u * order + v] =
            has_arc(static_cast<Vertex>(u), static_cast<Vertex>(v)) ? 1 : 0;
    return d;
  }

  std::size_t order() const noexcept { return order_; }
  bool has_arc(Vertex u, Vertex v) const { return adjacency_[u * order_ + v] != 0; }
  bool has_loop(Vertex v) const { return has_arc(v, v); }
  std::size_t arc_count() const;
  std::size_t loop_count() const;
  bool is_undirected() const;
  /// Arcs in lexicographic order.
  std::vector<Arc> arcs() const;

  /// The subgraph induced on `vertices`, renumbered in the given order.
  Digraph induced(std::span<const Vertex> vertices) const;
  /// The digraph with vertex v renamed to map[v].
  Digraph relabeled(std::span<const Vertex> map) const;

  bool operator==(const Digraph&) const = default;

 private:
  explicit Digraph(std::size_t order) : order_(order), adjacency_(order * order, 0) {}

  std::size_t order_ = 0;
  std::vector<std::uint8_t> adjacency_;
};

/// Loopless, with arcs both ways between every pair of distinct vertices.
Digraph complete(std::size_t n);
Digraph empty(std::size_t n);
Digraph directed_cycle(std::size_t n);

/// Off-diagonal arcs are complemented; loops are kept as they are.
Digraph complement(const Digraph& d);

/// Vertex (u, v) sits at u*|b|+v. Arcs copy `b` inside every fiber, and join
/// fiber u to fiber u' completely whenever u -> u' is an arc of `a`.
Digraph wreath_digraph(const Digraph& a, const Digraph& b,
                       std::size_t order_cap = kDefaultDigraphOrderCap);

/// Arcs (x, xs) for every x in the group and s in `s`.
Digraph cayley(const FiniteGroup& g, std::span<const Element> s);

/// Whether `s` is closed under inverses, i.e. Cay(g, s) is undirected.
bool is_graph_set(const FiniteGroup& g, std::span<const Element> s);

enum class InnerKind { complete, empty };

const char* to_string(InnerKind kind);

/// d = quotient wr X_r under `block_partition`, X_r = K_r or its complement.
/// Quotient vertex c is class c of the partition; the k-th smallest member of
/// a class plays inner vertex k.
struct WreathDecomposition {
  Digraph quotient;
  std::size_t inner_size = 0;
  PointPartition block_partition;
  InnerKind inner_kind = InnerKind::complete;
};

/// Rebuilds the digraph described by a decomposition, in original indexing.
Digraph reassemble(const WreathDecomposition& w);

/// Twin classes: u ~ v when they agree on their loops, are mutually adjacent
/// (complete) or suitably non-adjacent (empty), and see every other vertex the
/// same way in both directions.
PointPartition twin_classes(const Digraph& d, InnerKind kind);

/// The decomposition with the largest inner size r >= 2, i.e. r = gcd of the
/// twin-class sizes; nothing when that gcd is 1.
std::optional<WreathDecomposition> decompose_over_complete(const Digraph& d);
std::optional<WreathDecomposition> decompose_over_empty(const Digraph& d);
std::optional<WreathDecomposition> decompose(const Digraph& d, InnerKind kind);

/// Graphviz text for external viewers.
std::string to_dot(const Digraph& d, std::span<const std::string> labels = {});

}  // namespace cig
