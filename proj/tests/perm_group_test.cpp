#include "cig/perm_group.hpp"

#include <gtest/gtest.h>

#include <random>

#include "cig/error.hpp"
#include "oracles.hpp"

namespace cig {
namespace {

Perm cyc(std::size_t n, std::vector<std::vector<Point>> cycles) {
  return Perm::from_cycles(n, cycles);
}

PermGroup cyclic_group(std::size_t n) {
  std::vector<Point> c(n);
  std::iota(c.begin(), c.end(), Point{0});
  return PermGroup(n, {cyc(n, {c})});
}

std::vector<oracle::RawPerm> raw(const std::vector<Perm>& gens) {
  std::vector<oracle::RawPerm> out;
  for (const Perm& p : gens) out.push_back(p.images());
  return out;
}

PointPartition partition_of(const oracle::Labels& labels) {
  return PointPartition::from_labels(labels);
}

// Invariant partitions by brute force: every set partition that every
// generator maps onto itself.
std::vector<PointPartition> brute_invariant_partitions(const PermGroup& g) {
  std::vector<PointPartition> out;
  oracle::for_each_partition(g.degree(), [&](const oracle::Labels& labels) {
    PointPartition p = partition_of(labels);
    for (const Perm& gen : g.generators())
      if (!preserves_partition(gen, p)) return;
    out.push_back(p);
  });
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Perm, RejectsNonBijection) {
  EXPECT_THROW(Perm({0, 0, 1}), InvalidInput);
  EXPECT_THROW(Perm({0, 3}), InvalidInput);
}

TEST(Perm, CompositionAppliesRightFactorFirst) {
  Perm a = cyc(3, {{0, 1}});
  Perm b = cyc(3, {{1, 2}});
  EXPECT_EQ((a * b)(1), 2u);
  EXPECT_EQ((a * b)(2), 0u);
}

TEST(Perm, CycleString) {
  EXPECT_EQ(Perm::identity(4).to_cycle_string(), "()");
  EXPECT_EQ(cyc(5, {{0, 2, 4}, {1, 3}}).to_cycle_string(), "(0 2 4)(1 3)");
}

TEST(Perm, InverseCancels) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 9;
    Perm p(oracle::random_permutation(n, rng));
    EXPECT_TRUE((p * p.inverse()).is_identity());
    EXPECT_TRUE((p.inverse() * p).is_identity());
  }
}

TEST(Closure, Examples) {
  EXPECT_EQ(closure(3, {}).order(), 1u);
  EXPECT_EQ(closure(3, {cyc(3, {{0, 1, 2}})}).order(), 3u);
  EXPECT_EQ(closure(3, {cyc(3, {{0, 1}}), cyc(3, {{0, 1, 2}})}).order(), 6u);
}

TEST(Closure, DegreeMismatchRejected) {
  EXPECT_THROW(closure(3, {cyc(4, {{0, 1}})}), InvalidInput);
}

TEST(Closure, CapExceededIsLoud) {
  EXPECT_THROW(closure(8, symmetric_group(8).generators(), 1000), CapExceeded);
}

TEST(Closure, MatchesBruteForceAndIgnoresGeneratorOrder) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 2 + rng() % 5;
    std::vector<Perm> gens;
    for (std::size_t k = 0, m = rng() % 3; k <= m; ++k)
      gens.emplace_back(oracle::random_permutation(n, rng));
    auto expected = oracle::closure(n, raw(gens));
    PermGroup g = closure(n, gens);
    std::set<oracle::RawPerm> got;
    for (const Perm& e : g.elements()) got.insert(e.images());
    EXPECT_EQ(got, expected);

    std::reverse(gens.begin(), gens.end());
    PermGroup h = closure(n, gens);
    std::set<oracle::RawPerm> got2;
    for (const Perm& e : h.elements()) got2.insert(e.images());
    EXPECT_EQ(got2, expected);
    EXPECT_EQ(factorial(n) % g.order(), 0u);
    EXPECT_TRUE(g.elements().front().is_identity());
  }
}

TEST(Orbits, Examples) {
  EXPECT_EQ(orbits(PermGroup(4, {})), PointPartition::singletons(4));
  EXPECT_EQ(orbits(cyclic_group(4)), PointPartition::whole(4));
  PermGroup w = wreath_perm(PermGroup(3, {}), symmetric_group(2));
  EXPECT_EQ(orbits(w).to_string(), "{0,1}|{2,3}|{4,5}");
}

TEST(Transitivity, Examples) {
  EXPECT_TRUE(is_transitive(cyclic_group(4)));
  EXPECT_FALSE(is_transitive(PermGroup(3, {})));
  EXPECT_FALSE(is_transitive(PermGroup(4, {cyc(4, {{0, 1}}), cyc(4, {{2, 3}})})));
}

TEST(Blocks, Examples) {
  PermGroup c4 = cyclic_group(4);
  EXPECT_TRUE(is_block(c4, std::vector<Point>{0, 1, 2, 3}));
  EXPECT_TRUE(is_block(c4, std::vector<Point>{0, 2}));
  EXPECT_FALSE(is_block(c4, std::vector<Point>{0, 1}));
  EXPECT_THROW(is_block(c4, std::vector<Point>{}), InvalidInput);
}

TEST(Blocks, AgreeWithClosureDefinition) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 80; ++trial) {
    std::size_t n = 2 + rng() % 6;
    std::vector<Perm> gens{Perm(oracle::random_permutation(n, rng))};
    if (rng() % 2) gens.emplace_back(oracle::random_permutation(n, rng));
    PermGroup g = closure(n, gens);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<Point> b;
      for (Point x = 0; x < n; ++x)
        if (mask >> x & 1u) b.push_back(x);
      bool expected = true;
      for (const Perm& e : g.elements()) {
        std::size_t meet = 0;
        for (Point x : b) meet += (mask >> e(x)) & 1u;
        if (meet != 0 && meet != b.size()) expected = false;
      }
      ASSERT_EQ(is_block(g, b), expected);
    }
  }
}

TEST(Blocks, ConjugatesOfABlockAreBlocksAndPartitionThePoints) {
  PermGroup w = wreath_perm(symmetric_group(3), cyclic_group(2));
  for (std::size_t size : {2u, 3u}) {
    for (const auto& system : block_systems_of_size(w, size)) {
      std::vector<std::size_t> hits(w.degree(), 0);
      for (const auto& cls : system.classes()) {
        EXPECT_TRUE(is_block(w, cls));
        for (Point x : cls) ++hits[x];
      }
      EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h == 1; }));
      EXPECT_EQ(conjugate_blocks(w, system.classes().front()), system);
    }
  }
}

TEST(BlockSystems, Examples) {
  PermGroup c4 = cyclic_group(4);
  EXPECT_EQ(block_systems_of_size(c4, 1), std::vector{PointPartition::singletons(4)});
  EXPECT_EQ(block_systems_of_size(c4, 4), std::vector{PointPartition::whole(4)});
  auto two = block_systems_of_size(c4, 2);
  ASSERT_EQ(two.size(), 1u);
  EXPECT_EQ(two[0].to_string(), "{0,2}|{1,3}");
  EXPECT_THROW(block_systems_of_size(c4, 3), InvalidInput);
}

TEST(Primitivity, Examples) {
  EXPECT_TRUE(is_primitive(symmetric_group(3)));
  EXPECT_FALSE(is_primitive(cyclic_group(4)));
  EXPECT_TRUE(is_primitive(cyclic_group(5)));
  EXPECT_THROW(is_primitive(PermGroup(3, {})), InvalidInput);
}

TEST(Fix, Examples) {
  PermGroup c4 = cyclic_group(4);
  EXPECT_EQ(fix(c4, PointPartition::whole(4)).order(), 4u);
  PermGroup w = wreath_perm(symmetric_group(2), symmetric_group(2));
  EXPECT_EQ(fix(w, fiber_partition(2, 2)).order(), 4u);
  PointPartition halves(4, {{0, 2}, {1, 3}});
  PermGroup f = fix(c4, halves);
  EXPECT_EQ(f.order(), 2u);
  EXPECT_TRUE(f.contains(cyc(4, {{0, 2}, {1, 3}})));
  EXPECT_THROW(fix(c4, PointPartition::whole(3)), InvalidInput);
}

TEST(Fix, IsASubgroup) {
  PermGroup w = wreath_perm(symmetric_group(3), symmetric_group(2));
  for (const auto& p : all_invariant_partitions(w)) {
    PermGroup f = fix(w, p);
    const auto& els = f.elements();
    for (const Perm& a : els) {
      EXPECT_TRUE(f.contains(a.inverse()));
      for (const Perm& b : els) ASSERT_TRUE(f.contains(a * b));
    }
  }
}

TEST(Refinement, Examples) {
  PointPartition p(4, {{0, 1}, {2, 3}}), q(4, {{0, 2}, {1, 3}});
  EXPECT_TRUE(is_refinement(PointPartition::singletons(4), q));
  EXPECT_TRUE(is_refinement(q, q));
  EXPECT_FALSE(is_refinement(p, q));
  EXPECT_FALSE(is_refinement(q, p));
}

TEST(PointPartitionTest, CanonicalForm) {
  PointPartition p(5, {{4, 2}, {3, 1, 0}});
  EXPECT_EQ(p.to_string(), "{0,1,3}|{2,4}");
  EXPECT_EQ(p, PointPartition::from_labels(std::vector<std::size_t>{7, 7, 2, 7, 2}));
  EXPECT_THROW(PointPartition(3, {{0, 1}}), InvalidInput);
  EXPECT_THROW(PointPartition(3, {{0, 1}, {1, 2}}), InvalidInput);
}

TEST(Wreath, Examples) {
  PermGroup s2 = symmetric_group(2);
  PermGroup w = wreath_perm(s2, s2);
  EXPECT_EQ(w.degree(), 4u);
  EXPECT_EQ(w.order(), 8u);
  PermGroup z3s2 = wreath_perm(cyclic_group(3), s2);
  EXPECT_EQ(z3s2.degree(), 6u);
  EXPECT_EQ(z3s2.order(), 24u);
  EXPECT_EQ(orbits(wreath_perm(PermGroup(4, {}), cyclic_group(3))), fiber_partition(4, 3));
}

TEST(Wreath, OrderFormulaMatchesClosure) {
  const std::vector<PermGroup> groups{PermGroup(1, {}), symmetric_group(2), cyclic_group(3),
                                      symmetric_group(3), cyclic_group(4),
                                      PermGroup(2, {})};
  for (const auto& g : groups)
    for (const auto& h : groups) {
      if (g.degree() * h.degree() > 8) continue;
      PermGroup w = wreath_perm(g, h);
      EXPECT_EQ(oracle::closure(w.degree(), raw(w.generators())).size(), w.order())
          << g.degree() << "x" << h.degree();
    }
}

TEST(Wreath, EveryElementHasTheWreathShape) {
  PermGroup g = cyclic_group(3), h = symmetric_group(2);
  PermGroup w = wreath_perm(g, h);
  auto gs = oracle::closure(3, raw(g.generators()));
  PermGroup full = closure(6, w.generators());
  for (const Perm& f : full.elements()) {
    oracle::RawPerm outer(3);
    for (Point x = 0; x < 3; ++x) {
      outer[x] = f(x * 2) / 2;
      EXPECT_EQ(f(x * 2 + 1) / 2, outer[x]);
    }
    EXPECT_TRUE(gs.count(outer));
  }
}

TEST(Wreath, InvariantPartitionsAreComparableWithFibers) {
  const std::vector<PermGroup> groups{symmetric_group(2), cyclic_group(3), symmetric_group(3),
                                      cyclic_group(4)};
  for (const auto& g : groups)
    for (const auto& h : {symmetric_group(2), cyclic_group(3)}) {
      PermGroup w = wreath_perm(g, h);
      PointPartition fibers = fiber_partition(g.degree(), h.degree());
      auto all = all_invariant_partitions(w);
      for (const auto& c : all)
        EXPECT_TRUE(is_refinement(c, fibers) || is_refinement(fibers, c)) << c.to_string();
      EXPECT_EQ(block_systems_of_size(w, h.degree()), std::vector{fibers});
    }
}

TEST(InvariantPartitions, Examples) {
  auto s3 = all_invariant_partitions(symmetric_group(3));
  EXPECT_EQ(s3, (std::vector{PointPartition::singletons(3), PointPartition::whole(3)}));
  auto c4 = all_invariant_partitions(cyclic_group(4));
  ASSERT_EQ(c4.size(), 3u);
  EXPECT_EQ(c4[1].to_string(), "{0,2}|{1,3}");
  auto w = all_invariant_partitions(wreath_perm(cyclic_group(3), symmetric_group(2)));
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[1], fiber_partition(3, 2));
}

TEST(InvariantPartitions, MatchBruteForce) {
  std::mt19937_64 rng(23);
  std::vector<PermGroup> groups{cyclic_group(6), cyclic_group(8), symmetric_group(4),
                                wreath_perm(cyclic_group(2), cyclic_group(3)),
                                wreath_perm(cyclic_group(4), symmetric_group(2)),
                                wreath_perm(symmetric_group(2), cyclic_group(4))};
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 7;
    std::vector<Perm> gens{Perm(oracle::random_permutation(n, rng))};
    if (rng() % 2) gens.emplace_back(oracle::random_permutation(n, rng));
    PermGroup g(n, gens);
    if (is_transitive(g)) groups.push_back(g);
  }
  for (const auto& g : groups) {
    auto got = all_invariant_partitions(g);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, brute_invariant_partitions(g));
  }
}

}  // namespace
}  // namespace cig
