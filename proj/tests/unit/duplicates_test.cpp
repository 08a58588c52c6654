#include <gtest/gtest.h>

#include <filesystem>

#include "asmidx/chem_io.hpp"
#include "asmidx/duplicates.hpp"
#include "asmidx/fixtures.hpp"

namespace asmidx {
namespace {

EdgeMask mask_of(const MolecularGraph &g, std::initializer_list<EdgeId> edges) {
  EdgeMask m = g.empty_mask();
  for (EdgeId e : edges) m.set(e);
  return m;
}

MolecularGraph benzoic_acid() {
  return read_molecules(std::filesystem::path(ASMIDX_DATA_DIR)
                        / "kekule/drugs/benzoic_acid.mol")
      .at(0)
      .graph;
}

TEST(PruneUniqueBonds, DropsTheSingleCarbonylBond) {
  const auto g = benzoic_acid();
  const auto keep = prune_unique_bonds(g);
  // C=O and C-O each appear once; the ring bonds and the ring-carboxyl bond
  // share the C-C signatures.
  EXPECT_EQ(keep.count(), 7u);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const bool hetero = g.atom_label(g.bond(e).a).str() == "O"
                        || g.atom_label(g.bond(e).b).str() == "O";
    EXPECT_EQ(keep.test(e), !hetero);
  }
}

TEST(PruneUniqueBonds, IdenticalChainUnchanged) {
  const auto g = fixtures::chain(3);
  EXPECT_EQ(prune_unique_bonds(g), g.full_mask());
  MolecularGraph one = fixtures::chain(1);
  EXPECT_TRUE(prune_unique_bonds(one).none());
}

TEST(MatchingValidity, DisjointOnly) {
  const auto g = fixtures::chain(4);
  EXPECT_TRUE(matching_validity(mask_of(g, {0, 1}), mask_of(g, {2, 3})));
  EXPECT_FALSE(matching_validity(mask_of(g, {0, 1}), mask_of(g, {1, 2})));
  EXPECT_FALSE(matching_validity(mask_of(g, {0, 1}), mask_of(g, {0, 1})));
}

TEST(EnumerateDuplicates, Pentane) {
  const auto g = fixtures::chain(4);
  CanonicalRegistry reg;
  const auto found = enumerate_duplicates(g, g.full_mask(), reg);
  ASSERT_EQ(found.classes.size(), 1u);
  const auto &cls = found.classes[0];
  EXPECT_EQ(cls.size, 2u);
  ASSERT_EQ(cls.pairs.size(), 1u);
  const auto [a, b] = cls.pairs[0];
  EXPECT_EQ(cls.occurrences[a], mask_of(g, {0, 1}));
  EXPECT_EQ(cls.occurrences[b], mask_of(g, {2, 3}));
  EXPECT_EQ(found.coverage, g.full_mask());
}

TEST(EnumerateDuplicates, BenzeneStopsAtThreeEdges) {
  const auto g = fixtures::ring(6);
  CanonicalRegistry reg;
  const auto found = enumerate_duplicates(g, g.full_mask(), reg);
  std::size_t largest = 0;
  for (const auto &c : found.classes) {
    largest = std::max(largest, c.size);
    for (const auto &[a, b] : c.pairs) {
      EXPECT_FALSE(c.occurrences[a].intersects(c.occurrences[b]));
    }
  }
  EXPECT_EQ(largest, 3u);
}

TEST(EnumerateDuplicates, EmptyCandidates) {
  const auto g = fixtures::chain(1);
  CanonicalRegistry reg;
  EXPECT_TRUE(enumerate_duplicates(g, g.empty_mask(), reg).classes.empty());
}

TEST(SortDuplicates, LargerClassesFirst) {
  const auto g = fixtures::chain(12);
  CanonicalRegistry reg;
  DuplicateTable table(g, reg);
  const auto classes = table.classes();
  ASSERT_FALSE(classes.empty());
  for (std::size_t p = 1; p < classes.size(); ++p) {
    EXPECT_GE(classes[p - 1].size, classes[p].size);
  }
  for (std::size_t p = 0; p < classes.size(); ++p) {
    EXPECT_EQ(table.position_of(classes[p].sorted_index), p);
  }
  EXPECT_EQ(classes.back().sorted_index, 0u);
  EXPECT_EQ(table.max_size(), 6u);
}

TEST(SortDuplicates, FewerContainedClassesFirstAmongEqualSize) {
  // Mixed bond labels give several classes of each size.
  const auto g = fixtures::chain_from_bits(12, 0b100100100100);
  CanonicalRegistry reg;
  DuplicateDag dag;
  auto sorted = sort_duplicates(
      enumerate_duplicates(g, prune_unique_bonds(g), reg).classes, g, &dag);
  for (std::size_t p = 1; p < sorted.size(); ++p) {
    if (sorted[p - 1].size == sorted[p].size) {
      EXPECT_LE(sorted[p - 1].contained_count, sorted[p].contained_count);
    }
  }
  for (const auto &[lo, hi] : dag.arcs) {
    EXPECT_EQ(sorted[lo].size + 1, sorted[hi].size);
  }
}

TEST(SortDuplicates, ContainedCountIsAncestorCount) {
  const auto g = fixtures::chain(8);
  CanonicalRegistry reg;
  auto sorted = sort_duplicates(
      enumerate_duplicates(g, g.full_mask(), reg).classes, g);
  // Paths of 2, 3 and 4 edges: each contains all shorter ones.
  ASSERT_EQ(sorted.size(), 3u);
  EXPECT_EQ(sorted[0].size, 4u);
  EXPECT_EQ(sorted[0].contained_count, 2u);
  EXPECT_EQ(sorted[2].contained_count, 0u);
}

TEST(FilterBySortedIndex, KeepsAtOrBelowCeiling) {
  const std::vector<Match> ms{{3, 0, 1}, {5, 0, 1}, {7, 0, 1}};
  EXPECT_EQ(filter_by_sorted_index(ms, 5).size(), 2u);
  EXPECT_EQ(filter_by_sorted_index(ms, std::nullopt).size(), 3u);
  EXPECT_TRUE(filter_by_sorted_index(ms, 2).empty());
}

TEST(EnumerateMatchings, RespectsFragmentsAndCeiling) {
  const auto g = fixtures::chain(8);
  CanonicalRegistry reg;
  DuplicateTable table(g, reg);
  const std::vector<EdgeMask> whole{g.full_mask()};
  const auto all = enumerate_matchings(table, whole, std::nullopt);
  ASSERT_FALSE(all.empty());
  EXPECT_EQ(table.by_sorted_index(all.front().sorted_index).size, 4u);

  const std::uint32_t smallest = table.classes().back().sorted_index;
  for (const auto &m : enumerate_matchings(table, whole, smallest)) {
    EXPECT_EQ(m.sorted_index, smallest);
  }
  // Cut in the middle: no 4-path fits twice any more.
  const std::vector<EdgeMask> halves{mask_of(g, {0, 1, 2}), mask_of(g, {4, 5, 6, 7})};
  for (const auto &m : enumerate_matchings(table, halves, std::nullopt)) {
    EXPECT_LT(table.by_sorted_index(m.sorted_index).size, 4u);
  }
  EXPECT_THROW(enumerate_matchings(table, whole, 99), ContractViolation);
}

}  // namespace
}  // namespace asmidx
