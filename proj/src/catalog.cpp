#include "cig/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "cig/error.hpp"
#include "cig/perm.hpp"

namespace cig {

namespace {

void require_order(std::uint64_t order, std::size_t cap) {
  if (order > cap)
    throw CapExceeded("group order " + std::to_string(order) + " exceeds cap " +
                      std::to_string(cap));
}

std::uint64_t capped_factorial(std::size_t n, std::size_t cap) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    f *= i;
    require_order(f, cap);
  }
  return f;
}

FiniteGroup from_perms(const std::vector<Perm>& perms) {
  std::map<Perm, Element> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Element>(i);
  const std::size_t n = perms.size();
  std::vector<Element> table(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(perms[i].to_cycle_string());
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = index.at(perms[i] * perms[j]);
  }
  return FiniteGroup::trusted(n, std::move(table), std::move(labels));
}

bool is_even(const Perm& p) {
  std::size_t transpositions = 0;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t s = 0; s < p.degree(); ++s) {
    std::size_t len = 0;
    for (Point x = static_cast<Point>(s); !seen[x]; x = p(x)) {
      seen[x] = true;
      ++len;
    }
    if (len) transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

std::vector<Perm> all_perms(std::size_t n, bool even_only) {
  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<Perm> perms;
  do {
    Perm p(images);
    if (!even_only || is_even(p)) perms.push_back(std::move(p));
  } while (std::next_permutation(images.begin(), images.end()));
  return perms;
}

class SpecParser {
 public:
  SpecParser(std::string_view text, std::size_t cap) : text_(text), cap_(cap) {}

  FiniteGroup parse() {
    std::vector<FiniteGroup> factors;
    std::uint64_t order = 1;
    while (true) {
      factors.push_back(atom());
      order *= factors.back().order();
      require_order(order, cap_);
      if (pos_ == text_.size()) break;
      if (text_[pos_] != 'x') fail("expected 'x' or end of spec");
      ++pos_;
    }
    if (factors.size() == 1) return std::move(factors.front());
    return direct_product(factors);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("group spec '" + std::string(text_) + "': " + what, pos_);
  }

  std::size_t number() {
    std::size_t start = pos_;
    std::size_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
      if (value > 1'000'000) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return value;
  }

  FiniteGroup atom() {
    if (pos_ >= text_.size()) fail("expected a group atom");
    if (text_.substr(pos_).starts_with("file:")) {
      std::string path(text_.substr(pos_ + 5));
      pos_ = text_.size();
      if (path.empty()) fail("empty file path");
      return load_group_file(path, cap_);
    }
    char kind = text_[pos_++];
    std::size_t at = pos_;
    switch (kind) {
      case 'Z': {
        std::size_t n = number();
        if (n == 0) fail("Z0 is not a group");
        require_order(n, cap_);
        return make_cyclic(n);
      }
      case 'D': {
        std::size_t n = number();
        if (n == 0) fail("D0 is not a group");
        require_order(2 * n, cap_);
        return make_dihedral(n);
      }
      case 'Q': {
        if (number() != 8) {
          pos_ = at;
          fail("only Q8 is supported");
        }
        require_order(8, cap_);
        return make_quaternion();
      }
      case 'S': {
        std::size_t n = number();
        if (n == 0) fail("S0 is not supported");
        capped_factorial(n, cap_);
        return make_symmetric(n);
      }
      case 'A': {
        std::size_t n = number();
        if (n == 0) fail("A0 is not supported");
        capped_factorial(n, 2 * cap_);
        return make_alternating(n);
      }
      default:
        --pos_;
        fail(std::string("unknown group atom '") + kind + "'");
    }
  }

  std::string_view text_;
  std::size_t cap_;
  std::size_t pos_ = 0;
};

}  // namespace

FiniteGroup make_cyclic(std::size_t n) {
  if (n == 0) throw InvalidInput("cyclic group order must be positive");
  std::vector<Element> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = static_cast<Element>((i + j) % n);
  return FiniteGroup::trusted(n, std::move(table), {});
}

FiniteGroup make_dihedral(std::size_t n) {
  if (n == 0) throw InvalidInput("dihedral parameter must be positive");
  const std::size_t order = 2 * n;
  std::vector<Element> table(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    std::size_t a = x % n, e = x / n;
    std::string r = a == 0 ? "" : (a == 1 ? "r" : "r" + std::to_string(a));
    labels[x] = e == 0 ? (r.empty() ? "1" : r) : r + "s";
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t b = y % n, f = y / n;
      // (r^a s^e)(r^b s^f) = r^(a + (-1)^e b) s^(e+f)
      std::size_t k = e == 0 ? (a + b) % n : (a + n - b) % n;
      table[x * order + y] = static_cast<Element>(k + n * ((e + f) % 2));
    }
  }
  return FiniteGroup::trusted(order, std::move(table), std::move(labels));
}

FiniteGroup make_quaternion() {
  // unit * unit -> (sign, unit) with units 1, i, j, k.
  static constexpr int kUnit[4][4][2] = {
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
      {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
      {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
      {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
  };
  std::vector<Element> table(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      int sx = x % 2 ? -1 : 1, ux = x / 2;
      int sy = y % 2 ? -1 : 1, uy = y / 2;
      int sign = sx * sy * kUnit[ux][uy][0];
      int unit = kUnit[ux][uy][1];
      table[static_cast<std::size_t>(x * 8 + y)] = static_cast<Element>(unit * 2 + (sign < 0 ? 1 : 0));
    }
  return FiniteGroup::trusted(8, std::move(table), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

FiniteGroup make_symmetric(std::size_t n) { return from_perms(all_perms(n, false)); }

FiniteGroup make_alternating(std::size_t n) { return from_perms(all_perms(n, true)); }

FiniteGroup direct_product(std::span<const FiniteGroup> factors) {
  if (factors.empty()) return make_cyclic(1);
  std::size_t order = 1;
  for (const auto& f : factors) order *= f.order();
  const std::size_t k = factors.size();
  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(k);
    for (std::size_t i = k; i-- > 0;) {
      d[i] = x % factors[i].order();
      x /= factors[i].order();
    }
    return d;
  };
  std::vector<std::vector<std::size_t>> all(order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    all[x] = digits(x);
    std::string l = "(";
    for (std::size_t i = 0; i < k; ++i) l += (i ? "," : "") + factors[i].label(static_cast<Element>(all[x][i]));
    labels[x] = l + ")";
  }
  std::vector<Element> table(order * order);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t z = 0;
      for (std::size_t i = 0; i < k; ++i)
        z = z * factors[i].order() +
            factors[i].mul(static_cast<Element>(all[x][i]), static_cast<Element>(all[y][i]));
      table[x * order + y] = static_cast<Element>(z);
    }
  return FiniteGroup::trusted(order, std::move(table), std::move(labels));
}

FiniteGroup parse_group_spec(std::string_view spec, std::size_t order_cap) {
  return SpecParser(spec, order_cap).parse();
}

FiniteGroup group_from_json_text(std::string_view text, std::size_t order_cap) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("group file is not valid JSON: ") + e.what(), e.byte);
  }
  try {
    const std::size_t n = j.at("order").get<std::size_t>();
    require_order(n, order_cap);
    const auto& rows = j.at("table");
    if (!rows.is_array() || rows.size() != n)
      throw InvalidInput("table must have " + std::to_string(n) + " rows");
    std::vector<Element> table;
    table.reserve(n * n);
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != n)
        throw InvalidInput("every table row must have " + std::to_string(n) + " entries");
      for (const auto& v : row) table.push_back(v.get<Element>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteGroup(n, std::move(table), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed group file: ") + e.what());
  }
}

FiniteGroup load_group_file(const std::string& path, std::size_t order_cap) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open group file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return group_from_json_text(buffer.str(), order_cap);
}

std::vector<CatalogEntry> catalog(std::size_t max_order) {
  std::vector<CatalogEntry> entries;
  for (std::size_t n = 1; n <= max_order; ++n)
    entries.push_back({"Z" + std::to_string(n), n, "cyclic"});

  // Non-cyclic abelian groups in invariant-factor form d1 | d2 | ... | dk.
  std::function<void(std::vector<std::size_t>&, std::size_t)> abelian =
      [&](std::vector<std::size_t>& factors, std::size_t order) {
        if (factors.size() >= 2) {
          std::string spec;
          for (std::size_t d : factors) spec += (spec.empty() ? "Z" : "xZ") + std::to_string(d);
          entries.push_back({spec, order, "abelian"});
        }
        std::size_t last = factors.empty() ? 2 : factors.back();
        for (std::size_t d = last; order * d <= max_order; d += (factors.empty() ? 1 : last)) {
          if (!factors.empty() && d % last != 0) continue;
          factors.push_back(d);
          abelian(factors, order * d);
          factors.pop_back();
        }
      };
  std::vector<std::size_t> scratch;
  abelian(scratch, 1);

  if (6 <= max_order) entries.push_back({"S3", 6, "symmetric, also the dihedral group D3"});
  for (std::size_t n = 4; 2 * n <= max_order; ++n)
    entries.push_back({"D" + std::to_string(n), 2 * n, "dihedral"});
  if (8 <= max_order) entries.push_back({"Q8", 8, "quaternion"});
  for (std::size_t n = 4, f = 24; f <= max_order; ++n, f *= n)
    entries.push_back({"S" + std::to_string(n), f, "symmetric"});
  for (std::size_t n = 4, f = 12; f <= max_order; ++n, f *= n)
    entries.push_back({"A" + std::to_string(n), f, "alternating"});

  std::stable_sort(entries.begin(), entries.end(),
                   [](const CatalogEntry& a, const CatalogEntry& b) { return a.order < b.order; });
  return entries;
}

}  // namespace cig
