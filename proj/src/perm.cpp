#include "cig/perm.hpp"

#include <sstream>

#include "cig/error.hpp"

namespace cig {

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point y : images_) {
    if (y >= images_.size() || seen[y])
      throw InvalidInput("permutation images are not a bijection");
    seen[y] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  Perm p;
  p.images_.resize(degree);
  for (std::size_t i = 0; i < degree; ++i) p.images_[i] = static_cast<Point>(i);
  return p;
}

Perm Perm::from_cycles(std::size_t degree,
                       const std::vector<std::vector<Point>>& cycles) {
  std::vector<Point> images = identity(degree).images_;
  std::vector<bool> used(degree, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point x = cycle[i];
      if (x >= degree || used[x])
        throw InvalidInput("cycles are not disjoint or exceed the degree");
      used[x] = true;
      images[x] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Perm(std::move(images));
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree()) throw InvalidInput("permutation degree mismatch");
  Perm result;
  result.images_.resize(degree());
  for (std::size_t i = 0; i < degree(); ++i) result.images_[i] = images_[rhs.images_[i]];
  return result;
}

Perm Perm::inverse() const {
  Perm result;
  result.images_.resize(degree());
  for (std::size_t i = 0; i < degree(); ++i) result.images_[images_[i]] = static_cast<Point>(i);
  return result;
}

bool Perm::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Perm::to_cycle_string() const {
  std::ostringstream out;
  std::vector<bool> seen(degree(), false);
  for (std::size_t start = 0; start < degree(); ++start) {
    if (seen[start] || images_[start] == start) continue;
    out << '(';
    Point x = static_cast<Point>(start);
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out << ' ';
      out << x;
      first = false;
      x = images_[x];
    }
    out << ')';
  }
  std::string s = out.str();
  return s.empty() ? "()" : s;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Point x : p.images()) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace cig
