#include "cig/finite_group.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "cig/catalog.hpp"
#include "cig/error.hpp"
#include "oracles.hpp"

namespace cig {
namespace {

std::vector<FiniteGroup> small_catalog(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (const auto& entry : catalog(max_order)) out.push_back(parse_group_spec(entry.spec));
  return out;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

GroupAutomorphism negation(std::size_t n) {
  GroupAutomorphism a;
  for (Element x = 0; x < n; ++x) a.images.push_back(static_cast<Element>((n - x) % n));
  return a;
}

TEST(Catalog, Examples) {
  FiniteGroup z1 = parse_group_spec("Z1");
  EXPECT_EQ(z1.order(), 1u);

  FiniteGroup klein = parse_group_spec("Z2xZ2");
  EXPECT_EQ(klein.order(), 4u);
  for (Element x = 1; x < 4; ++x) EXPECT_EQ(klein.mul(x, x), 0u);

  FiniteGroup s3 = parse_group_spec("S3");
  EXPECT_EQ(s3.order(), 6u);
  EXPECT_FALSE(s3.is_abelian());
}

TEST(Catalog, SymmetricTableComesFromComposition) {
  FiniteGroup s3 = make_symmetric(3);
  std::vector<std::vector<Point>> perms(6, std::vector<Point>{0, 1, 2});
  for (std::size_t i = 1; i < 6; ++i) {
    perms[i] = perms[i - 1];
    std::next_permutation(perms[i].begin(), perms[i].end());
  }
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::vector<Point> ab(3);
      for (Point x = 0; x < 3; ++x) ab[x] = perms[a][perms[b][x]];
      EXPECT_EQ(perms[s3.mul(static_cast<Element>(a), static_cast<Element>(b))], ab);
    }
  EXPECT_TRUE(find_group_isomorphism(s3, make_dihedral(3)).has_value());
}

TEST(Catalog, EveryEntryIsAGroupOfTheStatedOrder) {
  for (const auto& entry : catalog(24)) {
    FiniteGroup g = parse_group_spec(entry.spec);
    EXPECT_EQ(g.order(), entry.order) << entry.spec;
    EXPECT_FALSE(g.associativity_violation().has_value()) << entry.spec;
    for (std::size_t i = 0; i < g.order(); ++i) {
      std::vector<bool> row(g.order(), false), col(g.order(), false);
      for (std::size_t j = 0; j < g.order(); ++j) {
        row[g.mul(static_cast<Element>(i), static_cast<Element>(j))] = true;
        col[g.mul(static_cast<Element>(j), static_cast<Element>(i))] = true;
      }
      EXPECT_TRUE(std::all_of(row.begin(), row.end(), [](bool b) { return b; }));
      EXPECT_TRUE(std::all_of(col.begin(), col.end(), [](bool b) { return b; }));
    }
  }
}

TEST(Catalog, OrderEightClassesAreDistinct) {
  auto groups = small_catalog(8);
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      if (groups[i].order() == groups[j].order())
        EXPECT_FALSE(find_group_isomorphism(groups[i], groups[j]).has_value()) << i << " " << j;
}

TEST(Catalog, NamedFamilies) {
  EXPECT_EQ(parse_group_spec("D4").order(), 8u);
  EXPECT_FALSE(parse_group_spec("D4").is_abelian());
  EXPECT_EQ(parse_group_spec("Q8").order(), 8u);
  EXPECT_EQ(parse_group_spec("A4").order(), 12u);
  EXPECT_EQ(parse_group_spec("S4").order(), 24u);
  EXPECT_EQ(parse_group_spec("Z2xZ3").order(), 6u);
  EXPECT_TRUE(parse_group_spec("Z2xZ3").is_abelian());
  FiniteGroup q8 = make_quaternion();
  std::size_t involutions = 0;
  for (Element x = 1; x < 8; ++x) involutions += q8.element_order(x) == 2;
  EXPECT_EQ(involutions, 1u);
}

TEST(ParseGroupSpec, Errors) {
  EXPECT_THROW(parse_group_spec("Y3"), ParseError);
  EXPECT_THROW(parse_group_spec("Z"), ParseError);
  EXPECT_THROW(parse_group_spec("Z2x"), ParseError);
  EXPECT_THROW(parse_group_spec("Z0"), Error);
  EXPECT_THROW(parse_group_spec("S7"), CapExceeded);
  try {
    parse_group_spec("Z2xQ9");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(ParseGroupSpec, FileTables) {
  auto good = write_temp("cig_z3.json", R"({"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]],
                                              "labels": ["e","a","b"]})");
  FiniteGroup z3 = parse_group_spec("file:" + good.string());
  EXPECT_EQ(z3.order(), 3u);
  EXPECT_EQ(z3.label(1), "a");

  auto bad = write_temp("cig_bad.json", R"({"order": 5, "table": [[0,1,2,3,4],[1,0,3,4,2],
      [2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]})");
  try {
    parse_group_spec("file:" + bad.string());
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("(a,b,c)"), std::string::npos) << e.what();
  }

  auto no_identity = write_temp("cig_noid.json", R"({"order": 2, "table": [[1,0],[0,1]]})");
  EXPECT_THROW(parse_group_spec("file:" + no_identity.string()), InvalidInput);
  EXPECT_THROW(parse_group_spec("file:/nonexistent/cig.json"), Error);
}

TEST(Subgroups, GeneratedExamples) {
  FiniteGroup z6 = make_cyclic(6);
  EXPECT_EQ(subgroup_generated(z6, std::vector<Element>{}), ElementSet{0});
  EXPECT_EQ(subgroup_generated(z6, std::vector<Element>{2}), (ElementSet{0, 2, 4}));
  FiniteGroup s3 = make_symmetric(3);
  Element transposition = 1, three_cycle = 3;
  ASSERT_EQ(s3.element_order(transposition), 2u);
  ASSERT_EQ(s3.element_order(three_cycle), 3u);
  EXPECT_EQ(subgroup_generated(s3, std::vector<Element>{transposition, three_cycle}).size(), 6u);
}

TEST(Subgroups, Normality) {
  FiniteGroup s3 = make_symmetric(3);
  EXPECT_TRUE(is_normal(s3, subgroup_generated(s3, std::vector<Element>{0, 1, 2, 3, 4, 5})));
  EXPECT_FALSE(is_normal(s3, subgroup_generated(s3, std::vector<Element>{1})));
  EXPECT_THROW(is_normal(s3, std::vector<Element>{0, 1, 3}), InvalidInput);
  for (const auto& g : small_catalog(8))
    if (g.is_abelian())
      for (const auto& h : all_subgroups(g)) EXPECT_TRUE(is_normal(g, h));
}

TEST(Subgroups, NormalSubgroupSizes) {
  auto sizes = [](const FiniteGroup& g) {
    std::vector<std::size_t> out;
    for (const auto& h : normal_subgroups(g)) out.push_back(h.size());
    return out;
  };
  EXPECT_EQ(sizes(make_cyclic(4)), (std::vector<std::size_t>{1, 2, 4}));
  EXPECT_EQ(sizes(make_symmetric(3)), (std::vector<std::size_t>{1, 3, 6}));
  EXPECT_EQ(sizes(parse_group_spec("Z2xZ2")), (std::vector<std::size_t>{1, 2, 2, 2, 4}));
}

TEST(Subgroups, AllSubgroupsMatchBruteForce) {
  for (const auto& g : small_catalog(8)) {
    std::set<ElementSet> expected;
    const std::size_t n = g.order();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (!(mask & 1u)) continue;
      ElementSet s;
      for (Element x = 0; x < n; ++x)
        if (mask >> x & 1u) s.push_back(x);
      bool closed = true;
      for (Element a : s)
        for (Element b : s) closed = closed && (mask >> g.mul(a, b) & 1u);
      if (closed) expected.insert(s);
    }
    auto got = all_subgroups(g);
    EXPECT_EQ(std::set<ElementSet>(got.begin(), got.end()), expected);
    EXPECT_EQ(got.size(), expected.size());
  }
}

TEST(Cosets, Examples) {
  CosetDecomposition z4 = cosets(make_cyclic(4), std::vector<Element>{0, 2});
  EXPECT_EQ(z4.cosets, (std::vector<ElementSet>{{0, 2}, {1, 3}}));
  EXPECT_EQ(z4.transversal, (std::vector<Element>{0, 1}));
  CosetDecomposition z6 = cosets(make_cyclic(6), std::vector<Element>{0, 3});
  EXPECT_EQ(z6.cosets, (std::vector<ElementSet>{{0, 3}, {1, 4}, {2, 5}}));
  CosetDecomposition trivial = cosets(make_symmetric(3), std::vector<Element>{0});
  EXPECT_EQ(trivial.cosets.size(), 6u);
  EXPECT_THROW(cosets(make_cyclic(4), std::vector<Element>{0, 1}), InvalidInput);
}

TEST(Cosets, LeftCosetsOfANonNormalSubgroup) {
  FiniteGroup s3 = make_symmetric(3);
  ElementSet h = subgroup_generated(s3, std::vector<Element>{1});
  CosetDecomposition d = cosets(s3, h);
  ASSERT_EQ(d.cosets.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    ElementSet left;
    for (Element y : h) left.push_back(s3.mul(d.transversal[i], y));
    EXPECT_EQ(make_element_set(left), d.cosets[i]);
    EXPECT_EQ(d.transversal[i], d.cosets[i].front());
  }
}

TEST(Quotient, Examples) {
  QuotientMap a = quotient(make_cyclic(4), std::vector<Element>{0, 2});
  EXPECT_TRUE(find_group_isomorphism(a.target, make_cyclic(2)).has_value());
  QuotientMap b = quotient(make_cyclic(6), std::vector<Element>{0, 3});
  EXPECT_TRUE(find_group_isomorphism(b.target, make_cyclic(3)).has_value());
  FiniteGroup s3 = make_symmetric(3);
  EXPECT_THROW(quotient(s3, subgroup_generated(s3, std::vector<Element>{1})), InvalidInput);
}

TEST(Quotient, ProjectionIsAHomomorphismWithCosetFibers) {
  for (const auto& g : small_catalog(12))
    for (const auto& h : normal_subgroups(g)) {
      QuotientMap q = quotient(g, h);
      EXPECT_EQ(q.target.order() * h.size(), g.order());
      EXPECT_EQ(q.projection[0], 0u);
      for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b)
          ASSERT_EQ(q.projection[g.mul(a, b)], q.target.mul(q.projection[a], q.projection[b]));
      std::vector<ElementSet> fibers(q.target.order());
      for (Element a = 0; a < g.order(); ++a) fibers[q.projection[a]].push_back(a);
      EXPECT_EQ(fibers, q.cosets.cosets);
      ElementSet kernel;
      for (Element a = 0; a < g.order(); ++a)
        if (q.projection[a] == 0) kernel.push_back(a);
      EXPECT_EQ(kernel, h);
    }
}

TEST(Automorphisms, Examples) {
  EXPECT_EQ(automorphism_group(make_cyclic(2)).size(), 1u);
  auto z4 = automorphism_group(make_cyclic(4));
  ASSERT_EQ(z4.size(), 2u);
  EXPECT_TRUE(z4[0].is_identity());
  EXPECT_EQ(z4[1], negation(4));
  EXPECT_EQ(automorphism_group(parse_group_spec("Z2xZ2")).size(), 6u);
  EXPECT_THROW(automorphism_group(make_cyclic(30)), CapExceeded);
}

TEST(Automorphisms, MatchBruteForceAndFormAGroup) {
  for (const auto& g : small_catalog(8)) {
    auto auts = automorphism_group(g);
    auto expected = oracle::group_automorphisms(g);
    std::set<std::vector<Element>> got;
    for (const auto& a : auts) got.insert(a.images);
    EXPECT_EQ(got, std::set<std::vector<Element>>(expected.begin(), expected.end()));
    EXPECT_EQ(got.size(), auts.size());
    EXPECT_TRUE(auts.front().is_identity());
    for (const auto& a : auts) {
      EXPECT_TRUE(got.count(a.inverse().images));
      for (const auto& b : auts) ASSERT_TRUE(got.count((a * b).images));
    }
  }
}

TEST(RegularRepresentation, Examples) {
  PermGroup z3 = left_regular_representation(make_cyclic(3));
  std::set<std::string> cycles;
  for (const Perm& p : z3.elements()) cycles.insert(p.to_cycle_string());
  EXPECT_EQ(cycles, (std::set<std::string>{"()", "(0 1 2)", "(0 2 1)"}));
  PermGroup s3 = left_regular_representation(make_symmetric(3));
  EXPECT_EQ(s3.degree(), 6u);
  EXPECT_EQ(closure(6, s3.generators()).order(), 6u);
  EXPECT_TRUE(is_transitive(s3));
}

TEST(RegularRepresentation, IsRegular) {
  for (const auto& g : small_catalog(12)) {
    PermGroup r = left_regular_representation(g);
    EXPECT_TRUE(is_transitive(r));
    PermGroup full = closure(r.degree(), r.generators());
    EXPECT_EQ(full.order(), g.order());
    for (const Perm& p : full.elements())
      if (!p.is_identity())
        for (Point x = 0; x < r.degree(); ++x) ASSERT_NE(p(x), x);
  }
}

TEST(InducedQuotientAutomorphism, Examples) {
  FiniteGroup z6 = make_cyclic(6);
  QuotientMap q = quotient(z6, std::vector<Element>{0, 3});
  EXPECT_TRUE(induced_quotient_automorphism(GroupAutomorphism::identity(6), q).is_identity());
  GroupAutomorphism bar = induced_quotient_automorphism(negation(6), q);
  EXPECT_EQ(bar.images, (std::vector<Element>{0, 2, 1}));

  FiniteGroup klein = parse_group_spec("Z2xZ2");
  QuotientMap k = quotient(klein, std::vector<Element>{0, 2});
  GroupAutomorphism swap{{0, 2, 1, 3}};
  ASSERT_TRUE(is_automorphism(klein, swap.images));
  EXPECT_THROW(induced_quotient_automorphism(swap, k), InvalidInput);
}

TEST(InducedQuotientAutomorphism, IsFunctorial) {
  std::mt19937_64 rng(3);
  for (const auto& g : small_catalog(12)) {
    auto auts = automorphism_group(g);
    for (const auto& h : normal_subgroups(g)) {
      QuotientMap q = quotient(g, h);
      std::vector<GroupAutomorphism> fixing;
      for (const auto& a : auts)
        if (a.apply(h) == h) fixing.push_back(a);
      for (int trial = 0; trial < 10; ++trial) {
        const auto& a = fixing[rng() % fixing.size()];
        const auto& b = fixing[rng() % fixing.size()];
        EXPECT_EQ(induced_quotient_automorphism(a * b, q),
                  induced_quotient_automorphism(a, q) * induced_quotient_automorphism(b, q));
      }
    }
  }
}

}  // namespace
}  // namespace cig
