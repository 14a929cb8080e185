#include "cig/iso.hpp"

#include <algorithm>
#include <numeric>

#include "cig/error.hpp"

namespace cig {

namespace {

using Colors = std::vector<std::uint32_t>;

struct Side {
  const Digraph* graph;
  Colors colors;
};

// Refines the colorings of one or two digraphs against a shared signature
// table, so equal indices mean equal signatures on both sides. Returns false
// as soon as the sides' color histograms diverge.
bool refine_joint(std::span<Side> sides, std::size_t& num_colors) {
  std::size_t total = 0;
  for (const Side& s : sides) total += s.graph->order();
  if (total == 0) return true;

  std::vector<std::uint32_t> signatures;
  std::vector<std::size_t> order(total);
  std::vector<std::uint32_t> rank(total);
  while (true) {
    const std::size_t k = num_colors;
    const std::size_t width = 2 + 2 * k;
    signatures.assign(total * width, 0);
    std::size_t row = 0;
    for (const Side& s : sides) {
      const Digraph& g = *s.graph;
      const std::size_t n = g.order();
      for (Vertex v = 0; v < n; ++v, ++row) {
        std::uint32_t* sig = &signatures[row * width];
        sig[0] = s.colors[v];
        sig[1] = g.has_loop(v);
        for (Vertex w = 0; w < n; ++w) {
          if (w == v) continue;
          if (g.has_arc(v, w)) ++sig[2 + s.colors[w]];
          if (g.has_arc(w, v)) ++sig[2 + k + s.colors[w]];
        }
      }
    }
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t x, std::size_t y) {
      return std::lexicographical_compare(&signatures[x * width], &signatures[x * width] + width,
                                          &signatures[y * width], &signatures[y * width] + width);
    };
    std::sort(order.begin(), order.end(), less);
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (i > 0 && less(order[i - 1], order[i])) ++next;
      rank[order[i]] = next;
    }
    const std::size_t new_k = next + 1;

    row = 0;
    for (Side& s : sides)
      for (std::size_t v = 0; v < s.graph->order(); ++v, ++row) s.colors[v] = rank[row];
    if (sides.size() == 2) {
      std::vector<std::size_t> balance(new_k, 0);
      for (std::uint32_t c : sides[0].colors) ++balance[c];
      for (std::uint32_t c : sides[1].colors)
        if (balance[c]-- == 0) return false;
    }
    num_colors = new_k;
    if (new_k == k) return true;
  }
}

class PairSearch {
 public:
  PairSearch(const Digraph& a, const Digraph& b) : a_(a), b_(b), n_(a.order()) {}

  // Individualizes the forced pairs (in order, sharing fresh colors) and
  // searches for an isomorphism extending them.
  std::optional<VertexMap> run(std::span<const std::pair<Vertex, Vertex>> forced) {
    if (a_.order() != b_.order()) return std::nullopt;
    if (a_.arc_count() != b_.arc_count() || a_.loop_count() != b_.loop_count())
      return std::nullopt;
    if (n_ == 0) return VertexMap{};
    std::array<Side, 2> sides{Side{&a_, Colors(n_, 0)}, Side{&b_, Colors(n_, 0)}};
    std::size_t k = 1;
    for (auto [u, v] : forced) {
      sides[0].colors[u] = static_cast<std::uint32_t>(k);
      sides[1].colors[v] = static_cast<std::uint32_t>(k);
      ++k;
    }
    if (!refine_joint(sides, k)) return std::nullopt;
    return dfs(sides, k);
  }

 private:
  std::optional<VertexMap> dfs(std::array<Side, 2>& sides, std::size_t k) {
    if (k == n_) {
      VertexMap map(n_);
      std::vector<Vertex> in_b(n_);
      for (Vertex v = 0; v < n_; ++v) in_b[sides[1].colors[v]] = v;
      for (Vertex u = 0; u < n_; ++u) map[u] = in_b[sides[0].colors[u]];
      if (is_isomorphism(a_, b_, map)) return map;
      return std::nullopt;
    }
    std::vector<std::size_t> size(k, 0);
    for (std::uint32_t c : sides[0].colors) ++size[c];
    std::uint32_t cell = 0;
    std::size_t best = n_ + 1;
    for (std::uint32_t c = 0; c < k; ++c)
      if (size[c] >= 2 && size[c] < best) {
        best = size[c];
        cell = c;
      }
    Vertex u = 0;
    while (sides[0].colors[u] != cell) ++u;

    for (Vertex v = 0; v < n_; ++v) {
      if (sides[1].colors[v] != cell) continue;
      std::array<Side, 2> next = sides;
      next[0].colors[u] = static_cast<std::uint32_t>(k);
      next[1].colors[v] = static_cast<std::uint32_t>(k);
      std::size_t next_k = k + 1;
      if (!refine_joint(next, next_k)) continue;
      if (auto found = dfs(next, next_k)) return found;
    }
    return std::nullopt;
  }

  const Digraph& a_;
  const Digraph& b_;
  std::size_t n_;
};

void require_search_order(std::size_t n, std::size_t cap) {
  if (n > cap)
    throw CapExceeded("isomorphism search limited to " + std::to_string(cap) +
                      " vertices, got " + std::to_string(n));
}

Colors refined_with_prefix(const Digraph& d, std::size_t prefix_length) {
  std::array<Side, 1> side{Side{&d, Colors(d.order(), 0)}};
  std::size_t k = 1;
  for (std::size_t i = 0; i < prefix_length; ++i) side[0].colors[i] = static_cast<std::uint32_t>(k++);
  refine_joint(side, k);
  return side[0].colors;
}

}  // namespace

VertexColoring VertexColoring::uniform(std::size_t order) {
  return VertexColoring{std::vector<std::uint32_t>(order, 0), order ? 1u : 0u};
}

std::vector<std::size_t> VertexColoring::histogram() const {
  std::vector<std::size_t> h(num_colors, 0);
  for (std::uint32_t c : colors) ++h[c];
  return h;
}

VertexColoring refine(const Digraph& d, const VertexColoring& initial) {
  if (initial.colors.size() != d.order())
    throw InvalidInput("coloring does not match the digraph order");
  std::array<Side, 1> side{Side{&d, initial.colors}};
  std::size_t k = initial.num_colors;
  for (std::uint32_t c : initial.colors) k = std::max<std::size_t>(k, c + 1);
  refine_joint(side, k);
  return VertexColoring{std::move(side[0].colors), d.order() ? k : 0};
}

std::optional<VertexMap> find_isomorphism(const Digraph& a, const Digraph& b,
                                          std::size_t order_cap) {
  require_search_order(std::max(a.order(), b.order()), order_cap);
  auto map = PairSearch(a, b).run({});
  if (map && !is_isomorphism(a, b, *map))
    throw std::logic_error("isomorphism search returned a non-isomorphism");
  return map;
}

bool are_isomorphic(const Digraph& a, const Digraph& b, std::size_t order_cap) {
  return find_isomorphism(a, b, order_cap).has_value();
}

PermGroup automorphism_group_of(const Digraph& d, std::size_t order_cap) {
  const std::size_t n = d.order();
  require_search_order(n, order_cap);

  // Past the first prefix whose refinement is discrete, stabilizers are trivial.
  std::size_t depth = 0;
  while (depth < n) {
    Colors c = refined_with_prefix(d, depth);
    std::vector<bool> seen(n, false);
    bool discrete = true;
    for (std::uint32_t x : c) {
      if (seen[x]) discrete = false;
      seen[x] = true;
    }
    if (discrete) break;
    ++depth;
  }

  std::vector<Perm> generators;
  std::uint64_t order = 1;
  std::vector<std::pair<Vertex, Vertex>> forced;
  for (std::size_t level = depth; level-- > 0;) {
    const Vertex base = static_cast<Vertex>(level);
    // All generators found so far fix 0..level-1 pointwise.
    std::vector<bool> in_orbit(n, false);
    std::vector<Vertex> orbit{base};
    in_orbit[base] = true;
    auto grow_orbit = [&] {
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const Perm& g : generators) {
          Vertex w = g(orbit[i]);
          if (!in_orbit[w]) {
            in_orbit[w] = true;
            orbit.push_back(w);
          }
        }
    };
    grow_orbit();

    const Colors colors = refined_with_prefix(d, level);
    forced.clear();
    for (Vertex p = 0; p < level; ++p) forced.emplace_back(p, p);
    forced.emplace_back(base, base);
    for (Vertex v = 0; v < n; ++v) {
      if (in_orbit[v] || colors[v] != colors[base]) continue;
      forced.back().second = v;
      if (auto map = PairSearch(d, d).run(forced)) {
        generators.emplace_back(std::vector<Point>(map->begin(), map->end()));
        grow_orbit();
      }
    }
    order = checked_mul(order, orbit.size());
  }
  for (const Perm& g : generators)
    if (!is_automorphism(d, g))
      throw std::logic_error("automorphism search returned a non-automorphism");
  return PermGroup::with_order(n, std::move(generators), order);
}

bool is_isomorphism(const Digraph& a, const Digraph& b, std::span<const Vertex> map) {
  const std::size_t n = a.order();
  if (b.order() != n || map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Vertex v : map) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (a.has_arc(u, v) != b.has_arc(map[u], map[v])) return false;
  return true;
}

bool is_automorphism(const Digraph& d, const Perm& p) {
  if (p.degree() != d.order()) return false;
  return is_isomorphism(d, d, p.images());
}

}  // namespace cig
