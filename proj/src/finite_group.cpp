#include "cig/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cig/error.hpp"

namespace cig {

namespace {

std::vector<bool> membership(std::size_t n, std::span<const Element> set) {
  std::vector<bool> in(n, false);
  for (Element x : set) {
    if (x >= n) throw InvalidInput("element " + std::to_string(x) + " outside group of order " +
                                   std::to_string(n));
    in[x] = true;
  }
  return in;
}

void require_subgroup(const FiniteGroup& g, std::span<const Element> h) {
  if (!is_subgroup(g, h)) throw InvalidInput("element set is not a subgroup");
}

}  // namespace

ElementSet make_element_set(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

// --- FiniteGroup ----------------------------------------------------------

FiniteGroup::FiniteGroup(std::size_t order, std::vector<Element> table,
                         std::vector<std::string> labels)
    : FiniteGroup(trusted(order, std::move(table), std::move(labels))) {
  if (auto t = associativity_violation()) {
    auto [a, b, c] = *t;
    throw InvalidInput("table is not associative at (a,b,c) = (" + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(c) + "): (ab)c = " +
                       std::to_string(mul(mul(a, b), c)) +
                       ", a(bc) = " + std::to_string(mul(a, mul(b, c))));
  }
}

FiniteGroup FiniteGroup::trusted(std::size_t order, std::vector<Element> table,
                                 std::vector<std::string> labels) {
  FiniteGroup g;
  g.order_ = order;
  g.table_ = std::move(table);
  g.labels_ = std::move(labels);
  if (order == 0) throw InvalidInput("group order must be positive");
  if (g.labels_.empty()) {
    for (std::size_t i = 0; i < order; ++i) g.labels_.push_back(std::to_string(i));
  } else if (g.labels_.size() != order) {
    throw InvalidInput("label count does not match group order");
  }
  g.validate_latin_square();
  g.derive_tables();
  return g;
}

void FiniteGroup::validate_latin_square() const {
  const std::size_t n = order_;
  if (table_.size() != n * n)
    throw InvalidInput("table must have " + std::to_string(n) + "x" + std::to_string(n) +
                       " entries");
  for (std::size_t i = 0; i < n; ++i) {
    if (table_[i] != i || table_[i * n] != i)
      throw InvalidInput("element 0 is not the identity (row/column " + std::to_string(i) +
                         ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row(n, false), col(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      Element r = table_[i * n + j], c = table_[j * n + i];
      if (r >= n || c >= n) throw InvalidInput("table entry out of range");
      if (row[r]) throw InvalidInput("row " + std::to_string(i) + " repeats an entry");
      if (col[c]) throw InvalidInput("column " + std::to_string(i) + " repeats an entry");
      row[r] = col[c] = true;
    }
  }
}

void FiniteGroup::derive_tables() {
  const std::size_t n = order_;
  inverse_.assign(n, 0);
  element_order_.assign(n, 1);
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b)
      if (mul(a, b) == 0) inverse_[a] = b;
    Element p = a;
    std::size_t k = 1;
    while (p != 0) {
      p = mul(p, a);
      ++k;
    }
    element_order_[a] = a == 0 ? 1 : k;
  }
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<std::array<Element, 3>> FiniteGroup::associativity_violation() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b) {
      Element ab = mul(a, b);
      for (Element c = 0; c < order_; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return std::array<Element, 3>{a, b, c};
    }
  return std::nullopt;
}

// --- GroupAutomorphism ----------------------------------------------------

GroupAutomorphism GroupAutomorphism::identity(std::size_t order) {
  GroupAutomorphism a;
  a.images.resize(order);
  std::iota(a.images.begin(), a.images.end(), Element{0});
  return a;
}

ElementSet GroupAutomorphism::apply(std::span<const Element> set) const {
  std::vector<Element> out;
  out.reserve(set.size());
  for (Element x : set) out.push_back(images[x]);
  return make_element_set(std::move(out));
}

GroupAutomorphism GroupAutomorphism::operator*(const GroupAutomorphism& rhs) const {
  GroupAutomorphism r;
  r.images.resize(images.size());
  for (std::size_t x = 0; x < images.size(); ++x) r.images[x] = images[rhs.images[x]];
  return r;
}

GroupAutomorphism GroupAutomorphism::inverse() const {
  GroupAutomorphism r;
  r.images.resize(images.size());
  for (std::size_t x = 0; x < images.size(); ++x) r.images[images[x]] = static_cast<Element>(x);
  return r;
}

bool GroupAutomorphism::is_identity() const {
  for (std::size_t x = 0; x < images.size(); ++x)
    if (images[x] != x) return false;
  return true;
}

bool is_automorphism(const FiniteGroup& g, std::span<const Element> images) {
  const std::size_t n = g.order();
  if (images.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (Element y : images) {
    if (y >= n || hit[y]) return false;
    hit[y] = true;
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (images[g.mul(a, b)] != g.mul(images[a], images[b])) return false;
  return true;
}

// --- subgroups, cosets, quotients -----------------------------------------

ElementSet subgroup_generated(const FiniteGroup& g, std::span<const Element> gens) {
  std::vector<bool> in = membership(g.order(), gens);
  std::fill(in.begin(), in.end(), false);
  std::vector<Element> elems{0};
  in[0] = true;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (Element s : gens) {
      Element p = g.mul(elems[i], s);
      if (!in[p]) {
        in[p] = true;
        elems.push_back(p);
      }
    }
  return make_element_set(std::move(elems));
}

bool is_subgroup(const FiniteGroup& g, std::span<const Element> h) {
  if (h.empty()) return false;
  std::vector<bool> in = membership(g.order(), h);
  if (!in[0]) return false;
  for (Element a : h)
    for (Element b : h)
      if (!in[g.mul(a, b)]) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, std::span<const Element> h) {
  require_subgroup(g, h);
  std::vector<bool> in = membership(g.order(), h);
  for (Element x = 0; x < g.order(); ++x)
    for (Element a : h)
      if (!in[g.mul(g.mul(x, a), g.inverse(x))]) return false;
  return true;
}

std::vector<ElementSet> all_subgroups(const FiniteGroup& g, std::size_t order_cap) {
  if (g.order() > order_cap)
    throw CapExceeded("subgroup enumeration limited to order " + std::to_string(order_cap));
  std::set<ElementSet> found;
  for (Element x = 0; x < g.order(); ++x) found.insert(subgroup_generated(g, std::vector{x}));
  // Every subgroup is the join of its cyclic subgroups, so closing the family
  // under pairwise joins reaches all of them.
  std::vector<ElementSet> list(found.begin(), found.end());
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Element> both = list[i];
      both.insert(both.end(), list[j].begin(), list[j].end());
      ElementSet join = subgroup_generated(g, make_element_set(std::move(both)));
      if (found.insert(join).second) list.push_back(std::move(join));
    }
  }
  std::sort(list.begin(), list.end(), [](const ElementSet& a, const ElementSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return list;
}

std::vector<ElementSet> normal_subgroups(const FiniteGroup& g, std::size_t order_cap) {
  std::vector<ElementSet> normal;
  for (auto& h : all_subgroups(g, order_cap))
    if (is_normal(g, h)) normal.push_back(std::move(h));
  return normal;
}

PointPartition CosetDecomposition::as_partition() const {
  std::vector<std::vector<Point>> classes(cosets.begin(), cosets.end());
  return PointPartition(coset_of.size(), std::move(classes));
}

CosetDecomposition cosets(const FiniteGroup& g, std::span<const Element> h) {
  require_subgroup(g, h);
  CosetDecomposition d;
  d.subgroup = make_element_set({h.begin(), h.end()});
  const std::size_t none = g.order();
  d.coset_of.assign(g.order(), none);
  for (Element x = 0; x < g.order(); ++x) {
    if (d.coset_of[x] != none) continue;
    ElementSet coset;
    for (Element a : d.subgroup) {
      Element y = g.mul(x, a);
      d.coset_of[y] = d.cosets.size();
      coset.push_back(y);
    }
    d.transversal.push_back(x);
    d.cosets.push_back(make_element_set(std::move(coset)));
  }
  return d;
}

QuotientMap quotient(const FiniteGroup& g, std::span<const Element> h) {
  if (!is_normal(g, h)) throw InvalidInput("subgroup is not normal; coset product is not well-defined");
  QuotientMap q;
  q.cosets = cosets(g, h);
  q.kernel = q.cosets.subgroup;
  const std::size_t m = q.cosets.cosets.size();
  std::vector<Element> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      table[i * m + j] = static_cast<Element>(
          q.cosets.coset_of[g.mul(q.cosets.transversal[i], q.cosets.transversal[j])]);
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) {
      std::size_t i = q.cosets.coset_of[a], j = q.cosets.coset_of[b];
      if (q.cosets.coset_of[g.mul(a, b)] != table[i * m + j])
        throw InvalidInput("coset product is not well-defined");
    }
  std::vector<std::string> labels;
  for (Element r : q.cosets.transversal) labels.push_back(g.label(r) + "H");
  q.target = FiniteGroup::trusted(m, std::move(table), std::move(labels));
  q.projection.assign(q.cosets.coset_of.begin(), q.cosets.coset_of.end());
  return q;
}

// --- homomorphism search --------------------------------------------------

std::vector<Element> greedy_generators(const FiniteGroup& g) {
  std::vector<Element> gens;
  std::vector<bool> in(g.order(), false);
  in[0] = true;
  for (Element x = 1; x < g.order(); ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    std::fill(in.begin(), in.end(), false);
    for (Element y : subgroup_generated(g, gens)) in[y] = true;
  }
  return gens;
}

void for_each_isomorphism(const FiniteGroup& src, const FiniteGroup& dst,
                          const std::function<bool(const std::vector<Element>&)>& visit) {
  const std::size_t n = src.order();
  if (dst.order() != n) return;
  const std::vector<Element> gens = greedy_generators(src);
  std::vector<Element> chosen(gens.size());
  constexpr Element kUnset = ~Element{0};

  // Extends the map over <gens[0..depth]> and reports conflicts with the
  // homomorphism rule phi(x g) = phi(x) phi(g) or with injectivity.
  std::vector<Element> phi(n);
  std::vector<bool> used(n);
  auto extend = [&](std::size_t depth) {
    std::fill(phi.begin(), phi.end(), kUnset);
    std::fill(used.begin(), used.end(), false);
    phi[0] = 0;
    used[0] = true;
    std::vector<Element> queue{0};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      Element x = queue[q];
      for (std::size_t j = 0; j <= depth; ++j) {
        Element z = src.mul(x, gens[j]);
        Element w = dst.mul(phi[x], chosen[j]);
        if (phi[z] == kUnset) {
          if (used[w]) return false;
          phi[z] = w;
          used[w] = true;
          queue.push_back(z);
        } else if (phi[z] != w) {
          return false;
        }
      }
    }
    return true;
  };

  if (gens.empty()) {
    visit(std::vector<Element>{0});
    return;
  }
  bool keep_going = true;
  std::function<void(std::size_t)> recurse = [&](std::size_t depth) {
    for (Element y = 0; y < n && keep_going; ++y) {
      if (dst.element_order(y) != src.element_order(gens[depth])) continue;
      chosen[depth] = y;
      if (!extend(depth)) continue;
      if (depth + 1 == gens.size()) {
        keep_going = visit(phi);
      } else {
        recurse(depth + 1);
      }
    }
  };
  recurse(0);
}

std::vector<GroupAutomorphism> automorphism_group(const FiniteGroup& g, std::size_t order_cap) {
  if (g.order() > order_cap)
    throw CapExceeded("automorphism search limited to groups of order " +
                      std::to_string(order_cap) + ", got " + std::to_string(g.order()));
  std::vector<GroupAutomorphism> auts;
  for_each_isomorphism(g, g, [&](const std::vector<Element>& images) {
    if (!is_automorphism(g, images))
      throw std::logic_error("automorphism search produced a non-automorphism");
    auts.push_back(GroupAutomorphism{images});
    return true;
  });
  return auts;
}

std::optional<std::vector<Element>> find_group_isomorphism(const FiniteGroup& a,
                                                           const FiniteGroup& b) {
  std::optional<std::vector<Element>> found;
  for_each_isomorphism(a, b, [&](const std::vector<Element>& images) {
    found = images;
    return false;
  });
  return found;
}

PermGroup left_regular_representation(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Perm> gens;
  std::vector<Point> images(n);
  for (Element a = 0; a < n; ++a) {
    for (Element x = 0; x < n; ++x) images[x] = g.mul(a, x);
    gens.emplace_back(images);
  }
  return PermGroup::with_order(n, std::move(gens), n);
}

GroupAutomorphism induced_quotient_automorphism(const GroupAutomorphism& alpha,
                                                const QuotientMap& q) {
  if (alpha.apply(q.kernel) != q.kernel)
    throw InvalidInput("automorphism does not map the normal subgroup onto itself");
  const auto& d = q.cosets;
  GroupAutomorphism bar;
  bar.images.resize(d.cosets.size());
  for (std::size_t i = 0; i < d.cosets.size(); ++i) {
    std::size_t target = d.coset_of[alpha(d.transversal[i])];
    for (Element x : d.cosets[i])
      if (d.coset_of[alpha(x)] != target)
        throw InvalidInput("induced quotient map is not well-defined");
    bar.images[i] = static_cast<Element>(target);
  }
  if (!is_automorphism(q.target, bar.images))
    throw std::logic_error("induced quotient map is not an automorphism");
  return bar;
}

}  // namespace cig
