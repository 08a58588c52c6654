#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "asmidx/chem_io.hpp"
#include "asmidx/fixtures.hpp"
#include "asmidx/isomorphism.hpp"
#include "asmidx/pathway.hpp"

namespace asmidx {
namespace {

struct Built {
  SearchResult result;
  FragmentationTrace trace;
  std::vector<JoinStep> steps;
};

Built build(const MolecularGraph &g) {
  AssemblySearch search(g);
  Built b;
  b.result = search.run();
  b.trace = trace_parents(search);
  b.steps = generate_pathway(g, b.trace);
  return b;
}

std::size_t parts(const MolecularGraph &g) {
  return connected_components(g, g.full_mask()).size();
}

// The last step of each connected part rebuilds that part.
void expect_rebuilds(const MolecularGraph &g, const std::vector<JoinStep> &steps) {
  EdgeMask built = g.empty_mask();
  for (const auto &s : steps) {
    EXPECT_FALSE(s.left.intersects(s.right));
    EXPECT_EQ(s.left | s.right, s.result);
    EXPECT_FALSE(s.shared.empty());
    built |= s.result;
  }
  for (const auto &part : connected_components(g, g.full_mask())) {
    if (part.count() < 2) continue;
    const bool found = std::any_of(steps.begin(), steps.end(), [&](const JoinStep &s) {
      return graphs_isomorphic(subgraph_view(g, s.result), subgraph_view(g, part));
    });
    EXPECT_TRUE(found);
  }
}

TEST(Trace, FourChain) {
  const auto b = build(fixtures::chain(4));
  ASSERT_EQ(b.trace.removals.size(), 1u);
  EXPECT_EQ(b.trace.removals[0].size, 2u);
  ASSERT_EQ(b.trace.remnants.size(), 1u);
  EXPECT_EQ(b.trace.remnants[0].count(), 2u);
}

TEST(Trace, NoDuplicates) {
  MolecularGraph g;
  for (const char *a : {"C", "N", "O"}) g.add_atom(Label(a));
  g.add_bond(0, 1, Label("1"));
  g.add_bond(1, 2, Label("2"));
  const auto b = build(g);
  EXPECT_TRUE(b.trace.removals.empty());
  EXPECT_EQ(b.trace.remnants, std::vector<EdgeMask>{g.full_mask()});
  EXPECT_EQ(b.steps.size(), 1u);
}

TEST(Trace, BenzoicAcidDuplicateSum) {
  const auto g = read_molecules(std::filesystem::path(ASMIDX_DATA_DIR)
                                / "kekule/drugs/benzoic_acid.mol")
                     .at(0)
                     .graph;
  const auto b = build(g);
  EXPECT_EQ(b.trace.duplicate_sum(), 2u);
  EXPECT_EQ(b.steps.size(), 6u);
  expect_rebuilds(g, b.steps);
  const auto space = build_assembly_space(g, b.steps);
  EXPECT_EQ(space.joined_nodes(), 6u);
}

TEST(Pathway, StepCountMatchesIndex) {
  std::mt19937_64 rng(47);
  for (int i = 0; i < 150; ++i) {
    const auto g = fixtures::random_connected(rng, {2, 14, 2, 2});
    const auto b = build(g);
    EXPECT_EQ(b.steps.size(), g.edge_count() - parts(g) - b.result.duplicate_sum)
        << "molecule " << i;
    EXPECT_EQ(b.steps.size(), b.result.index);
    expect_rebuilds(g, b.steps);
  }
}

TEST(Pathway, JointInputKeepsSeparateRoots) {
  const MolecularGraph mols[] = {fixtures::chain(4), fixtures::chain(2),
                                 fixtures::ring(5, "N", "1")};
  const auto g = disjoint_union(mols);
  const auto b = build(g);
  EXPECT_EQ(b.steps.size(), b.result.index);
  expect_rebuilds(g, b.steps);
}

TEST(AssemblySpace, EightChainDoubles) {
  const auto g = fixtures::chain(8);
  const auto b = build(g);
  const auto space = build_assembly_space(g, b.steps);
  EXPECT_EQ(space.joined_nodes(), 3u);
  std::vector<std::size_t> sizes;
  for (const auto &n : space.nodes) sizes.push_back(n.edges);
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 4, 8}));
  // Every join of a doubling path uses one fragment twice.
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> arcs;
  for (const auto &a : space.arcs) ++arcs[a];
  for (const auto &[arc, n] : arcs) EXPECT_EQ(n, 2);
}

TEST(AssemblySpace, EmptyStepsGiveBuildingBlocks) {
  const auto g = fixtures::chain_from_bits(3, 0b010);
  const auto space = build_assembly_space(g, {});
  EXPECT_EQ(space.joined_nodes(), 0u);
  EXPECT_EQ(space.nodes.size(), 2u);
  for (const auto &n : space.nodes) EXPECT_TRUE(n.building_block);
}

}  // namespace
}  // namespace asmidx
