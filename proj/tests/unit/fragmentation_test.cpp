#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "asmidx/fixtures.hpp"
#include "asmidx/fragmentation.hpp"

namespace asmidx {
namespace {

EdgeMask mask_of(const MolecularGraph &g, std::initializer_list<EdgeId> edges) {
  EdgeMask m = g.empty_mask();
  for (EdgeId e : edges) m.set(e);
  return m;
}

const DuplicateClass &class_of_size(const DuplicateTable &t, std::size_t k) {
  for (const auto &c : t.classes()) {
    if (c.size == k) return c;
  }
  throw std::runtime_error("no class of that size");
}

Match match_for(const DuplicateClass &c, const EdgeMask &kept,
                const EdgeMask &deleted) {
  for (const auto &[a, b] : c.pairs) {
    if (c.occurrences[a] == kept && c.occurrences[b] == deleted) {
      return {c.sorted_index, a, b};
    }
  }
  throw std::runtime_error("pair not found");
}

TEST(DisjointSet, UniteAndFind) {
  DisjointSet ds(5);
  EXPECT_TRUE(ds.unite(0, 1));
  EXPECT_TRUE(ds.unite(3, 4));
  EXPECT_FALSE(ds.unite(1, 0));
  EXPECT_EQ(ds.find(0), ds.find(1));
  EXPECT_NE(ds.find(0), ds.find(3));
  ds.compress();
  for (std::uint32_t x = 0; x < 5; ++x) EXPECT_EQ(ds.find(ds.find(x)), ds.find(x));
}

TEST(Split, PentaneWithoutMiddleEdge) {
  const auto g = fixtures::chain(4);
  EXPECT_EQ(split(g, mask_of(g, {0, 1, 3})).size(), 2u);
  EXPECT_EQ(split(g, g.full_mask()), std::vector<EdgeMask>{g.full_mask()});
  EXPECT_THROW(split(g, EdgeMask(7)), ContractViolation);
}

TEST(Split, MatchesConnectedComponents) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 10000; ++i) {
    const auto g = fixtures::random_connected(rng, {1, 30, 2, 2});
    EdgeMask m = g.empty_mask();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (rng() % 3) m.set(e);
    }
    ASSERT_EQ(split(g, m), connected_components(g, m)) << "case " << i;
  }
}

TEST(ApplyMatch, FourChain) {
  const auto g = fixtures::chain(4);
  CanonicalRegistry reg;
  DuplicateTable table(g, reg);
  const auto root = make_root_state(g, table);
  const auto &c2 = class_of_size(table, 2);
  const auto child = apply_match(
      g, table, root, match_for(c2, mask_of(g, {0, 1}), mask_of(g, {2, 3})));
  EXPECT_EQ(child.fragments, std::vector<EdgeMask>{mask_of(g, {0, 1})});
  EXPECT_EQ(child.S, 1u);
  EXPECT_EQ(child.m, 2u);
  EXPECT_EQ(child.ceiling, c2.sorted_index);
  EXPECT_EQ(g.edge_count() - 1 - child.S, 2u);
}

TEST(ApplyMatch, EightChainDoublingPath) {
  const auto g = fixtures::chain(8);
  CanonicalRegistry reg;
  DuplicateTable table(g, reg);
  auto state = make_root_state(g, table);
  EXPECT_EQ(state.m, 4u);
  state = apply_match(g, table, state,
                      match_for(class_of_size(table, 4), mask_of(g, {0, 1, 2, 3}),
                                mask_of(g, {4, 5, 6, 7})));
  state = apply_match(g, table, state,
                      match_for(class_of_size(table, 2), mask_of(g, {0, 1}),
                                mask_of(g, {2, 3})));
  EXPECT_EQ(state.S, 4u);
  EXPECT_EQ(g.edge_count() - 1 - state.S, 3u);
}

TEST(ApplyMatch, AcrossTwoMolecules) {
  const MolecularGraph parts[] = {fixtures::chain(3), fixtures::chain(3)};
  const auto g = disjoint_union(parts);
  CanonicalRegistry reg;
  DuplicateTable table(g, reg);
  const auto root = make_root_state(g, table);
  ASSERT_EQ(root.fragments.size(), 2u);
  const auto child = apply_match(
      g, table, root,
      match_for(class_of_size(table, 3), mask_of(g, {0, 1, 2}), mask_of(g, {3, 4, 5})));
  EXPECT_EQ(child.fragments, std::vector<EdgeMask>{mask_of(g, {0, 1, 2})});
  EXPECT_EQ(child.S, 2u);
}

TEST(ApplyMatch, ConservesEdges) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 300; ++i) {
    const auto g = fixtures::random_connected(rng, {4, 14, 2, 2});
    CanonicalRegistry reg;
    DuplicateTable table(g, reg);
    auto state = make_root_state(g, table);
    for (;;) {
      const auto ms = enumerate_matchings(table, state.fragments, state.ceiling);
      if (ms.empty()) break;
      const Match m = ms[rng() % ms.size()];
      const auto k = table.by_sorted_index(m.sorted_index).size;
      const auto next = apply_match(g, table, state, m);
      EXPECT_EQ(next.live_edges() + k, state.live_edges());
      EXPECT_EQ(next.S, state.S + k - 1);
      EdgeMask seen = g.empty_mask();
      for (const auto &f : next.fragments) {
        EXPECT_FALSE(f.intersects(seen));
        EXPECT_EQ(split(g, f).size(), 1u);
        seen |= f;
      }
      state = next;
    }
  }
}

TEST(ApplyMatch, RejectsOccurrenceOutsideFragments) {
  const auto g = fixtures::chain(4);
  CanonicalRegistry reg;
  DuplicateTable table(g, reg);
  AssemblyState state = make_root_state(g, table);
  state.fragments = {mask_of(g, {0, 1}), mask_of(g, {3})};
  const auto &c2 = class_of_size(table, 2);
  EXPECT_THROW(apply_match(g, table, state,
                           match_for(c2, mask_of(g, {0, 1}), mask_of(g, {2, 3}))),
               ContractViolation);
}

TEST(HashState, IgnoresOrderOfLaterFragments) {
  const auto g = fixtures::chain(9);
  AssemblyState a, b;
  a.has_last = b.has_last = true;
  a.fragments = {mask_of(g, {0}), mask_of(g, {2, 3}), mask_of(g, {5, 6})};
  b.fragments = {mask_of(g, {0}), mask_of(g, {5, 6}), mask_of(g, {2, 3})};
  EXPECT_EQ(hash_state(a), hash_state(b));
  b.fragments = {mask_of(g, {2, 3}), mask_of(g, {0}), mask_of(g, {5, 6})};
  EXPECT_NE(hash_state(a), hash_state(b));
  a.S = 7;
  a.m = 3;
  b = a;
  b.S = 1;
  EXPECT_EQ(hash_state(a), hash_state(b));
}

TEST(HashState, SensitiveToSingleBitChanges) {
  std::mt19937_64 rng(31);
  const auto g = fixtures::chain(200);
  std::unordered_set<StateKey> seen;
  for (int i = 0; i < 20000; ++i) {
    AssemblyState s;
    s.has_last = true;
    EdgeMask f = g.empty_mask();
    for (int j = 0; j < 10; ++j) f.set(rng() % 200);
    s.fragments = {f};
    const auto key = hash_state(s);
    const auto bit = rng() % 200;
    if (f.test(bit)) f.reset(bit); else f.set(bit);
    AssemblyState t = s;
    t.fragments = {f};
    EXPECT_NE(hash_state(t), key);
    seen.insert(key);
  }
  EXPECT_GT(seen.size(), 19990u);
}

}  // namespace
}  // namespace asmidx
