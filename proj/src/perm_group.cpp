#include "cig/perm_group.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "cig/error.hpp"

namespace cig {

namespace {

constexpr std::size_t kMaxWreathDegree = 4096;

void check_degree(const Perm& p, std::size_t degree) {
  if (p.degree() != degree)
    throw InvalidInput("generator of degree " + std::to_string(p.degree()) +
                       " in a group of degree " + std::to_string(degree));
}

std::vector<Point> image_of(const Perm& p, std::span<const Point> set) {
  std::vector<Point> out;
  out.reserve(set.size());
  for (Point x : set) out.push_back(p(x));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Point> validated_block(std::size_t degree, std::span<const Point> block) {
  if (block.empty()) throw InvalidInput("block must be nonempty");
  std::vector<Point> b(block.begin(), block.end());
  std::sort(b.begin(), b.end());
  if (std::adjacent_find(b.begin(), b.end()) != b.end())
    throw InvalidInput("block has repeated points");
  if (b.back() >= degree) throw InvalidInput("block point outside the domain");
  return b;
}

// Orbit of a point set under the group, as long as its members stay pairwise
// equal-or-disjoint. Returns nullopt at the first proper overlap.
std::optional<std::vector<std::vector<Point>>> set_orbit_if_block(
    const PermGroup& g, std::vector<Point> block) {
  std::vector<std::ptrdiff_t> owner(g.degree(), -1);
  std::vector<std::vector<Point>> images;
  for (Point x : block) owner[x] = 0;
  images.push_back(std::move(block));
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (const Perm& gen : g.generators()) {
      std::vector<Point> img = image_of(gen, images[i]);
      std::ptrdiff_t k = owner[img.front()];
      if (k < 0) {
        for (Point x : img)
          if (owner[x] >= 0) return std::nullopt;
        for (Point x : img) owner[x] = static_cast<std::ptrdiff_t>(images.size());
        images.push_back(std::move(img));
      } else if (img != images[static_cast<std::size_t>(k)]) {
        return std::nullopt;
      }
    }
  }
  return images;
}

void require_transitive(const PermGroup& g) {
  if (!is_transitive(g)) throw InvalidInput("group is not transitive");
}

}  // namespace

// --- PointPartition -------------------------------------------------------

PointPartition::PointPartition(std::size_t degree,
                               std::vector<std::vector<Point>> classes)
    : degree_(degree), classes_(std::move(classes)) {
  std::vector<bool> seen(degree, false);
  std::size_t covered = 0;
  for (auto& c : classes_) {
    if (c.empty()) throw InvalidInput("partition class is empty");
    std::sort(c.begin(), c.end());
    for (Point x : c) {
      if (x >= degree || seen[x])
        throw InvalidInput("partition classes overlap or exceed the degree");
      seen[x] = true;
      ++covered;
    }
  }
  if (covered != degree) throw InvalidInput("partition does not cover every point");
  std::sort(classes_.begin(), classes_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

PointPartition PointPartition::from_labels(std::span<const std::size_t> class_of) {
  std::vector<std::vector<Point>> classes;
  std::vector<std::ptrdiff_t> slot;
  for (std::size_t x = 0; x < class_of.size(); ++x) {
    std::size_t label = class_of[x];
    if (label >= slot.size()) slot.resize(label + 1, -1);
    if (slot[label] < 0) {
      slot[label] = static_cast<std::ptrdiff_t>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(slot[label])].push_back(static_cast<Point>(x));
  }
  return PointPartition(class_of.size(), std::move(classes));
}

PointPartition PointPartition::singletons(std::size_t degree) {
  std::vector<std::vector<Point>> classes(degree);
  for (std::size_t x = 0; x < degree; ++x) classes[x] = {static_cast<Point>(x)};
  return PointPartition(degree, std::move(classes));
}

PointPartition PointPartition::whole(std::size_t degree) {
  if (degree == 0) return PointPartition(0, {});
  std::vector<Point> all(degree);
  std::iota(all.begin(), all.end(), Point{0});
  return PointPartition(degree, {std::move(all)});
}

std::vector<std::size_t> PointPartition::class_index() const {
  std::vector<std::size_t> index(degree_);
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (Point x : classes_[c]) index[x] = c;
  return index;
}

bool PointPartition::is_uniform() const {
  return std::all_of(classes_.begin(), classes_.end(), [&](const auto& c) {
    return c.size() == classes_.front().size();
  });
}

std::string PointPartition::to_string() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    if (c) out << '|';
    out << '{';
    for (std::size_t i = 0; i < classes_[c].size(); ++i)
      out << (i ? "," : "") << classes_[c][i];
    out << '}';
  }
  return out.str();
}

bool is_refinement(const PointPartition& c, const PointPartition& b) {
  if (c.degree() != b.degree()) throw InvalidInput("partition degree mismatch");
  auto index = b.class_index();
  for (const auto& cls : c.classes())
    for (Point x : cls)
      if (index[x] != index[cls.front()]) return false;
  return true;
}

// --- PermGroup ------------------------------------------------------------

struct PermGroup::Closure {
  std::once_flag once;
  std::vector<Perm> elements;
  std::unordered_set<Perm, PermHash> index;
};

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators,
                     std::size_t closure_cap)
    : degree_(degree),
      generators_(std::move(generators)),
      closure_cap_(closure_cap),
      closure_(std::make_shared<Closure>()) {
  for (const Perm& p : generators_) check_degree(p, degree_);
}

PermGroup PermGroup::with_order(std::size_t degree, std::vector<Perm> generators,
                                std::uint64_t order, std::size_t closure_cap) {
  PermGroup g(degree, std::move(generators), closure_cap);
  g.known_order_ = order;
  return g;
}

const std::vector<Perm>& PermGroup::elements() const {
  std::call_once(closure_->once, [this] {
    std::vector<Perm> elems{Perm::identity(degree_)};
    std::unordered_set<Perm, PermHash> index{elems.front()};
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (const Perm& gen : generators_) {
        Perm p = gen * elems[i];
        if (index.insert(p).second) {
          if (index.size() > closure_cap_)
            throw CapExceeded("group closure exceeds cap of " +
                              std::to_string(closure_cap_) + " elements");
          elems.push_back(std::move(p));
        }
      }
    }
    closure_->elements = std::move(elems);
    closure_->index = std::move(index);
  });
  return closure_->elements;
}

std::uint64_t PermGroup::order() const {
  if (known_order_) return *known_order_;
  return elements().size();
}

bool PermGroup::contains(const Perm& p) const {
  if (p.degree() != degree_) return false;
  elements();
  return closure_->index.contains(p);
}

PermGroup closure(std::size_t degree, std::vector<Perm> generators,
                  std::size_t closure_cap) {
  PermGroup g(degree, std::move(generators), closure_cap);
  g.elements();
  return g;
}

PermGroup symmetric_group(std::size_t n) {
  std::vector<Perm> gens;
  if (n >= 2) {
    gens.push_back(Perm::from_cycles(n, {{0, 1}}));
    if (n >= 3) {
      std::vector<Point> cycle(n);
      std::iota(cycle.begin(), cycle.end(), Point{0});
      gens.push_back(Perm::from_cycles(n, {cycle}));
    }
  }
  return PermGroup::with_order(n, std::move(gens), factorial(n));
}

// --- orbits and blocks ----------------------------------------------------

PointPartition orbits(const PermGroup& g) {
  const std::size_t n = g.degree();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Perm& gen : g.generators())
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t a = find(x), b = find(gen(static_cast<Point>(x)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::size_t> label(n);
  for (std::size_t x = 0; x < n; ++x) label[x] = find(x);
  return PointPartition::from_labels(label);
}

bool is_transitive(const PermGroup& g) { return orbits(g).size() <= 1; }

bool is_block(const PermGroup& g, std::span<const Point> block) {
  return set_orbit_if_block(g, validated_block(g.degree(), block)).has_value();
}

PointPartition conjugate_blocks(const PermGroup& g, std::span<const Point> block) {
  auto images = set_orbit_if_block(g, validated_block(g.degree(), block));
  if (!images) throw InvalidInput("set is not a block");
  return PointPartition(g.degree(), std::move(*images));
}

std::vector<PointPartition> block_systems_of_size(const PermGroup& g,
                                                  std::size_t size,
                                                  std::size_t degree_cap) {
  const std::size_t n = g.degree();
  require_transitive(g);
  if (size == 0 || n % size != 0)
    throw InvalidInput("block size " + std::to_string(size) +
                       " does not divide degree " + std::to_string(n));
  if (size == 1) return {PointPartition::singletons(n)};
  if (size == n) return {PointPartition::whole(n)};
  if (n > degree_cap)
    throw CapExceeded("block search degree " + std::to_string(n) +
                      " exceeds cap " + std::to_string(degree_cap));

  // Every class of an invariant partition of a transitive group is conjugate
  // to the class through 0, so only subsets containing 0 are tried.
  std::vector<PointPartition> systems;
  const std::size_t k = size - 1;
  std::vector<Point> pick(k);
  std::iota(pick.begin(), pick.end(), Point{1});
  std::vector<Point> candidate(size);
  while (true) {
    candidate[0] = 0;
    std::copy(pick.begin(), pick.end(), candidate.begin() + 1);
    if (auto images = set_orbit_if_block(g, candidate))
      systems.emplace_back(n, std::move(*images));

    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(systems.begin(), systems.end());
  return systems;
}

bool is_primitive(const PermGroup& g, std::size_t degree_cap) {
  require_transitive(g);
  const std::size_t n = g.degree();
  for (std::size_t size = 2; size < n; ++size)
    if (n % size == 0 && !block_systems_of_size(g, size, degree_cap).empty())
      return false;
  return true;
}

std::vector<PointPartition> all_invariant_partitions(const PermGroup& g,
                                                     std::size_t degree_cap) {
  require_transitive(g);
  std::vector<PointPartition> all;
  const std::size_t n = g.degree();
  for (std::size_t size = 1; size <= n; ++size) {
    if (n % size != 0) continue;
    auto systems = block_systems_of_size(g, size, degree_cap);
    all.insert(all.end(), std::make_move_iterator(systems.begin()),
               std::make_move_iterator(systems.end()));
  }
  return all;
}

bool preserves_partition(const Perm& perm, const PointPartition& p) {
  if (perm.degree() != p.degree()) throw InvalidInput("partition degree mismatch");
  auto index = p.class_index();
  for (const auto& cls : p.classes()) {
    std::size_t target = index[perm(cls.front())];
    for (Point x : cls)
      if (index[perm(x)] != target) return false;
  }
  return true;
}

PermGroup fix(const PermGroup& g, const PointPartition& p) {
  if (p.degree() != g.degree()) throw InvalidInput("partition degree mismatch");
  auto index = p.class_index();
  std::vector<Perm> kept;
  for (const Perm& e : g.elements()) {
    bool fixes = true;
    for (std::size_t x = 0; x < g.degree() && fixes; ++x)
      fixes = index[e(static_cast<Point>(x))] == index[x];
    if (fixes) kept.push_back(e);
  }
  std::vector<Perm> gens;
  for (const Perm& e : kept)
    if (!e.is_identity()) gens.push_back(e);
  PermGroup result = PermGroup::with_order(g.degree(), std::move(gens), kept.size(),
                                           g.closure_cap());
  // The filtered set is already closed, so it seeds the closure directly.
  std::call_once(result.closure_->once, [&] {
    result.closure_->index.insert(kept.begin(), kept.end());
    result.closure_->elements = std::move(kept);
  });
  return result;
}

// --- wreath products ------------------------------------------------------

PermGroup wreath_perm(const PermGroup& g, const PermGroup& h, std::size_t closure_cap) {
  const std::size_t nx = g.degree(), ny = h.degree();
  if (nx == 0 || ny == 0) throw InvalidInput("wreath factors must act on nonempty sets");
  if (nx * ny > kMaxWreathDegree)
    throw CapExceeded("wreath product degree " + std::to_string(nx * ny) +
                      " exceeds cap " + std::to_string(kMaxWreathDegree));
  std::vector<Perm> gens;
  std::vector<Point> images(nx * ny);
  for (const Perm& sigma : g.generators()) {
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        images[x * ny + y] = static_cast<Point>(sigma(static_cast<Point>(x)) * ny + y);
    gens.emplace_back(images);
  }
  for (std::size_t x = 0; x < nx; ++x) {
    for (const Perm& tau : h.generators()) {
      std::iota(images.begin(), images.end(), Point{0});
      for (std::size_t y = 0; y < ny; ++y)
        images[x * ny + y] = static_cast<Point>(x * ny + tau(static_cast<Point>(y)));
      gens.emplace_back(images);
    }
  }
  std::uint64_t order = checked_mul(g.order(), checked_pow(h.order(), nx));
  return PermGroup::with_order(nx * ny, std::move(gens), order, closure_cap);
}

PointPartition fiber_partition(std::size_t outer_degree, std::size_t inner_degree) {
  std::vector<std::size_t> label(outer_degree * inner_degree);
  for (std::size_t i = 0; i < label.size(); ++i) label[i] = i / inner_degree;
  return PointPartition::from_labels(label);
}

}  // namespace cig
