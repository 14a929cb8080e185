#include "cig/digraph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cig/error.hpp"

namespace cig {

Digraph Digraph::from_arcs(std::size_t order, std::span<const Arc> arcs) {
  Digraph d(order);
  for (auto [u, v] : arcs) {
    if (u >= order || v >= order)
      throw InvalidInput("arc (" + std::to_string(u) + "," + std::to_string(v) +
                         ") outside a digraph of order " + std::to_string(order));
    d.adjacency_[u * order + v] = 1;
  }
  return d;
}

std::size_t Digraph::arc_count() const {
  return static_cast<std::size_t>(std::count(adjacency_.begin(), adjacency_.end(), 1));
}

std::size_t Digraph::loop_count() const {
  std::size_t loops = 0;
  for (Vertex v = 0; v < order_; ++v) loops += has_loop(v);
  return loops;
}

bool Digraph::is_undirected() const {
  for (Vertex u = 0; u < order_; ++u)
    for (Vertex v = u + 1; v < order_; ++v)
      if (has_arc(u, v) != has_arc(v, u)) return false;
  return true;
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  for (Vertex u = 0; u < order_; ++u)
    for (Vertex v = 0; v < order_; ++v)
      if (has_arc(u, v)) out.emplace_back(u, v);
  return out;
}

Digraph Digraph::induced(std::span<const Vertex> vertices) const {
  for (Vertex v : vertices)
    if (v >= order_) throw InvalidInput("induced subgraph vertex out of range");
  return from_predicate(vertices.size(), [&](Vertex u, Vertex v) {
    return has_arc(vertices[u], vertices[v]);
  });
}

Digraph Digraph::relabeled(std::span<const Vertex> map) const {
  if (map.size() != order_) throw InvalidInput("relabeling has the wrong length");
  std::vector<Vertex> inverse(order_, order_);
  for (Vertex v = 0; v < order_; ++v) {
    if (map[v] >= order_ || inverse[map[v]] != order_)
      throw InvalidInput("relabeling is not a bijection");
    inverse[map[v]] = v;
  }
  return from_predicate(order_, [&](Vertex u, Vertex v) {
    return has_arc(inverse[u], inverse[v]);
  });
}

Digraph complete(std::size_t n) {
  return Digraph::from_predicate(n, [](Vertex u, Vertex v) { return u != v; });
}

Digraph empty(std::size_t n) {
  return Digraph::from_predicate(n, [](Vertex, Vertex) { return false; });
}

Digraph directed_cycle(std::size_t n) {
  return Digraph::from_predicate(n, [n](Vertex u, Vertex v) { return v == (u + 1) % n; });
}

Digraph complement(const Digraph& d) {
  return Digraph::from_predicate(d.order(), [&](Vertex u, Vertex v) {
    return u == v ? d.has_loop(u) : !d.has_arc(u, v);
  });
}

Digraph wreath_digraph(const Digraph& a, const Digraph& b, std::size_t order_cap) {
  const std::size_t m = b.order();
  if (a.order() * m > order_cap)
    throw CapExceeded("wreath product order " + std::to_string(a.order() * m) +
                      " exceeds cap " + std::to_string(order_cap));
  return Digraph::from_predicate(a.order() * m, [&](Vertex x, Vertex y) {
    Vertex u = static_cast<Vertex>(x / m), v = static_cast<Vertex>(x % m);
    Vertex u2 = static_cast<Vertex>(y / m), v2 = static_cast<Vertex>(y % m);
    return (u == u2 && b.has_arc(v, v2)) || a.has_arc(u, u2);
  });
}

Digraph cayley(const FiniteGroup& g, std::span<const Element> s) {
  std::vector<bool> in(g.order(), false);
  for (Element x : s) {
    if (x >= g.order()) throw InvalidInput("connection set element outside the group");
    in[x] = true;
  }
  // x -> y is an arc iff x^-1 y lies in s.
  return Digraph::from_predicate(g.order(), [&](Vertex x, Vertex y) {
    return in[g.mul(g.inverse(x), y)];
  });
}

bool is_graph_set(const FiniteGroup& g, std::span<const Element> s) {
  std::vector<bool> in(g.order(), false);
  for (Element x : s) {
    if (x >= g.order()) throw InvalidInput("connection set element outside the group");
    in[x] = true;
  }
  return std::all_of(s.begin(), s.end(), [&](Element x) { return in[g.inverse(x)]; });
}

const char* to_string(InnerKind kind) {
  return kind == InnerKind::complete ? "complete" : "empty";
}

Digraph reassemble(const WreathDecomposition& w) {
  const std::size_t r = w.inner_size;
  const auto index = w.block_partition.class_index();
  std::vector<std::size_t> position(w.block_partition.degree());
  for (const auto& cls : w.block_partition.classes())
    for (std::size_t k = 0; k < cls.size(); ++k) position[cls[k]] = k;
  Digraph inner = w.inner_kind == InnerKind::complete ? complete(r) : empty(r);
  Digraph lexicographic = wreath_digraph(w.quotient, inner);
  return Digraph::from_predicate(w.block_partition.degree(), [&](Vertex x, Vertex y) {
    return lexicographic.has_arc(static_cast<Vertex>(index[x] * r + position[x]),
                                 static_cast<Vertex>(index[y] * r + position[y]));
  });
}

PointPartition twin_classes(const Digraph& d, InnerKind kind) {
  const std::size_t n = d.order();
  auto twins = [&](Vertex u, Vertex v) {
    if (d.has_loop(u) != d.has_loop(v)) return false;
    bool forward = d.has_arc(u, v), backward = d.has_arc(v, u);
    if (forward != backward) return false;
    // Inside an empty-inner fiber, members are non-adjacent unless the
    // quotient vertex carries a loop, which makes the fiber complete and looped.
    bool want_adjacent = kind == InnerKind::complete || d.has_loop(u);
    if (forward != want_adjacent) return false;
    for (Vertex w = 0; w < n; ++w) {
      if (w == u || w == v) continue;
      if (d.has_arc(u, w) != d.has_arc(v, w) || d.has_arc(w, u) != d.has_arc(w, v))
        return false;
    }
    return true;
  };
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), std::size_t{0});
  for (Vertex u = 0; u < n; ++u) {
    if (label[u] != u) continue;
    for (Vertex v = u + 1; v < n; ++v)
      if (label[v] == v && twins(u, v)) label[v] = u;
  }
  return PointPartition::from_labels(label);
}

std::optional<WreathDecomposition> decompose(const Digraph& d, InnerKind kind) {
  const PointPartition twins = twin_classes(d, kind);
  std::size_t r = 0;
  for (const auto& cls : twins.classes()) r = std::gcd(r, cls.size());
  if (r < 2) return std::nullopt;

  std::vector<std::vector<Point>> parts;
  for (const auto& cls : twins.classes())
    for (std::size_t i = 0; i < cls.size(); i += r)
      parts.emplace_back(cls.begin() + static_cast<std::ptrdiff_t>(i),
                         cls.begin() + static_cast<std::ptrdiff_t>(i + r));
  WreathDecomposition w;
  w.inner_size = r;
  w.inner_kind = kind;
  w.block_partition = PointPartition(d.order(), std::move(parts));
  const auto& classes = w.block_partition.classes();
  // A quotient loop is the members' (shared) loop.
  w.quotient = Digraph::from_predicate(classes.size(), [&](Vertex c, Vertex c2) {
    return d.has_arc(classes[c].front(), classes[c2].front());
  });
  return w;
}

std::optional<WreathDecomposition> decompose_over_complete(const Digraph& d) {
  return decompose(d, InnerKind::complete);
}

std::optional<WreathDecomposition> decompose_over_empty(const Digraph& d) {
  return decompose(d, InnerKind::empty);
}

std::string to_dot(const Digraph& d, std::span<const std::string> labels) {
  std::ostringstream out;
  out << "digraph G {\n";
  for (Vertex v = 0; v < d.order(); ++v) {
    out << "  " << v;
    if (v < labels.size()) out << " [label=\"" << labels[v] << "\"]";
    out << ";\n";
  }
  for (auto [u, v] : d.arcs()) out << "  " << u << " -> " << v << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace cig
