#include <gtest/gtest.h>

#include <filesystem>

#include "asmidx/chem_io.hpp"
#include "asmidx/fixtures.hpp"
#include "asmidx/oracle.hpp"
#include "asmidx/search.hpp"

namespace asmidx {
namespace {

std::uint32_t bound(std::vector<std::uint32_t> sizes, std::uint32_t m,
                    BoundMode mode = BoundMode::conditional_chain) {
  return upper_bound_future_S(sizes, m, mode);
}

TEST(UpperBound, FormulaValues) {
  EXPECT_EQ(bound({8}, 8), 4u);
  EXPECT_EQ(bound({8}, 2), 3u);
  EXPECT_EQ(bound({4, 4}, 4), 4u);
  EXPECT_EQ(bound({1, 1, 1}, 5), 0u);
  EXPECT_EQ(bound({9}, 1), 0u);
}

TEST(UpperBound, FloorFormIsLooser) {
  for (std::uint32_t l = 2; l <= 24; ++l) {
    for (std::uint32_t m = 2; m <= l; ++m) {
      EXPECT_GE(bound({l}, m, BoundMode::conditional_chain_floor), bound({l}, m));
    }
  }
}

TEST(UpperBound, ExactChainTermNeverLooser) {
  for (std::uint32_t l = 2; l <= 40; ++l) {
    for (std::uint32_t m = 2; m <= l; ++m) {
      const std::uint32_t sizes[] = {l};
      EXPECT_LE(upper_bound_future_S(sizes, m, BoundMode::conditional_chain, true),
                bound({l}, m));
    }
  }
}

TEST(CeilLog2, SmallValues) {
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(9), 4u);
  EXPECT_EQ(ceil_log2(16), 4u);
}

TEST(ShouldPrune, AgainstBestS) {
  // Eight identical bonds end with best S = 4; a state holding S = 4 and
  // nothing left to remove cannot beat it.
  AssemblySearch search(fixtures::chain(8));
  search.run();
  ASSERT_EQ(search.best_S(), 4u);
  AssemblyState s = search.root();
  s.S = 4;
  s.fragments.clear();
  EXPECT_TRUE(search.should_prune(s));
}

TEST(ShouldPrune, KeepsStateThatCanImprove) {
  const auto g = fixtures::chain(8);
  SearchConfig cfg;
  AssemblySearch search(g, cfg);
  AssemblyState s = search.root();
  EXPECT_EQ(search.state_bound(s), 4u);
  EXPECT_FALSE(search.should_prune(s));
}

TEST(ShouldPrune, TrivialLogFloor) {
  SearchConfig cfg;
  cfg.bound.mode = BoundMode::trivial_log;
  AssemblySearch search(fixtures::chain(9), cfg);
  search.run();
  // Index 4 = ceil(log2 9) reached, so every state is pruned.
  EXPECT_TRUE(search.should_prune(search.root()));
}

TEST(Search, SmallCases) {
  EXPECT_EQ(run_search(fixtures::chain(1)).index, 0u);
  EXPECT_EQ(run_search(fixtures::chain(2)).index, 1u);
  EXPECT_EQ(run_search(fixtures::chain(4)).index, 2u);
  EXPECT_EQ(run_search(fixtures::chain(8)).index, 3u);
  EXPECT_EQ(run_search(fixtures::ring(6)).index, 3u);
  const auto empty = run_search(MolecularGraph{});
  EXPECT_EQ(empty.index, 0u);
  EXPECT_EQ(empty.note, "empty graph");
}

TEST(Search, JointCountsPoolJoins) {
  // Two copies of one bond are both building blocks.
  const MolecularGraph bonds[] = {fixtures::chain(1), fixtures::chain(1)};
  EXPECT_EQ(run_search(std::span<const MolecularGraph>(bonds)).index, 0u);
  // Two 2-chains: one join builds both.
  const MolecularGraph pairs[] = {fixtures::chain(2), fixtures::chain(2)};
  EXPECT_EQ(run_search(std::span<const MolecularGraph>(pairs)).index, 1u);
  // A 2-chain and a 4-chain share the doubling step.
  const MolecularGraph mixed[] = {fixtures::chain(2), fixtures::chain(4)};
  EXPECT_EQ(run_search(std::span<const MolecularGraph>(mixed)).index, 2u);
}

TEST(Search, BenzoicAcid) {
  const auto g = read_molecules(std::filesystem::path(ASMIDX_DATA_DIR)
                                / "kekule/drugs/benzoic_acid.mol")
                     .at(0)
                     .graph;
  const auto r = run_search(g);
  EXPECT_EQ(r.index, 6u);
  EXPECT_EQ(r.duplicate_sum, 2u);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.trace.back().index, 6u);
}

TEST(Search, TraceIsMonotone) {
  const auto r = run_search(fixtures::chain(23));
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.front().index, 22u);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_LT(r.trace[i].index, r.trace[i - 1].index);
    EXPECT_GE(r.trace[i].seconds, r.trace[i - 1].seconds);
  }
  EXPECT_EQ(r.trace.back().index, r.index);
  EXPECT_EQ(run_search(fixtures::chain(1)).trace.size(), 1u);
}

TEST(Search, ChainsFollowAdditionChains) {
  for (std::uint32_t n = 1; n <= 20; ++n) {
    EXPECT_EQ(run_search(fixtures::chain(n)).index,
              oracle::shortest_addition_chain(n))
        << "chain " << n;
  }
}

TEST(Search, OptionsDoNotChangeTheAnswer) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 60; ++i) {
    const auto g = fixtures::random_connected(rng, {4, 12, 2, 2});
    const auto reference = run_search(g).index;
    SearchConfig masks;
    masks.canonical_states = false;
    SearchConfig strict;
    strict.bound.rule = PruneRule::strict;
    SearchConfig floor;
    floor.bound.mode = BoundMode::conditional_chain_floor;
    floor.bound.exact_chain_term = true;
    SearchConfig plain;
    plain.bound.refine_by_matches = false;
    plain.largest_first = false;
    for (const auto *cfg : {&masks, &strict, &floor, &plain}) {
      EXPECT_EQ(run_search(g, *cfg).index, reference) << "molecule " << i;
    }
  }
}

TEST(Search, BudgetGivesCertifiedBracket) {
  const auto g = fixtures::chain(25);
  SearchConfig cfg;
  cfg.max_states = 3;
  const auto r = run_search(g, cfg);
  EXPECT_FALSE(r.exact);
  EXPECT_EQ(r.note, "state table cap reached");
  EXPECT_LE(r.lower_bound, 6u);
  EXPECT_GE(r.index, 6u);
}

TEST(Search, BestMatchesReplay) {
  const auto g = fixtures::chain(12);
  AssemblySearch search(g);
  const auto r = search.run();
  std::uint32_t sum = 0;
  for (const auto &rm : r.removals) sum += rm.size - 1;
  EXPECT_EQ(sum, r.duplicate_sum);
  EXPECT_EQ(search.best_matches().size(), r.removals.size());
}

}  // namespace
}  // namespace asmidx
