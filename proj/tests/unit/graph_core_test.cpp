#include <gtest/gtest.h>

#include <random>

#include "asmidx/fixtures.hpp"
#include "asmidx/isomorphism.hpp"
#include "asmidx/molecular_graph.hpp"

namespace asmidx {
namespace {

EdgeMask mask_of(const MolecularGraph &g, std::initializer_list<EdgeId> edges) {
  EdgeMask m = g.empty_mask();
  for (EdgeId e : edges) m.set(e);
  return m;
}

TEST(Label, PacksUpToEightBytes) {
  EXPECT_EQ(Label("Cl").str(), "Cl");
  EXPECT_LT(Label("C"), Label("Cl"));
  EXPECT_LT(Label("1"), Label("2"));
  EXPECT_THROW(Label(""), std::invalid_argument);
  EXPECT_THROW(Label("toolonglabel"), std::invalid_argument);
  EXPECT_THROW(Label("a b"), std::invalid_argument);
  EXPECT_TRUE(is_hydrogen(Label("H")));
  EXPECT_TRUE(is_hydrogen(Label("D")));
  EXPECT_FALSE(is_hydrogen(Label("He")));
}

TEST(EdgeMask, BasicBitOperations) {
  EdgeMask a(10), b(10);
  a.set(1);
  a.set(3);
  b.set(3);
  EXPECT_EQ(a.count(), 2u);
  EXPECT_TRUE(a.intersects(b));
  EXPECT_TRUE(b.is_subset_of(a));
  EXPECT_EQ((a ^ b).count(), 1u);
  EXPECT_EQ(a.first(), 1u);
  EXPECT_EQ(EdgeMask(10).first(), 10u);
  EXPECT_THROW(a.set(10), ContractViolation);
  EXPECT_THROW((void)a.intersects(EdgeMask(11)), ContractViolation);
}

TEST(EdgeMask, OrderIsLexicographicFromEdgeZero) {
  EdgeMask with0(4), with1(4);
  with0.set(0);
  with1.set(1);
  EXPECT_LT(with1, with0);
  EXPECT_FALSE(with0 < with0);
}

TEST(EdgeMask, WorksAcrossWordBoundaries) {
  EdgeMask m(200);
  m.set(63);
  m.set(64);
  m.set(199);
  std::vector<EdgeId> seen;
  m.for_each([&](EdgeId e) { seen.push_back(e); });
  EXPECT_EQ(seen, (std::vector<EdgeId>{63, 64, 199}));
  EXPECT_EQ(EdgeMask::full(200).count(), 200u);
}

TEST(MolecularGraph, RejectsBadBonds) {
  MolecularGraph g;
  const auto a = g.add_atom(Label("C"));
  const auto b = g.add_atom(Label("O"));
  g.add_bond(a, b, Label("1"));
  EXPECT_THROW(g.add_bond(a, a, Label("1")), ContractViolation);
  EXPECT_THROW(g.add_bond(b, a, Label("2")), ContractViolation);
  EXPECT_THROW(g.add_bond(a, 7, Label("1")), ContractViolation);
  EXPECT_THROW(g.add_atom(Label("H")), ContractViolation);
  EXPECT_EQ(g.find_bond(b, a), 0);
  EXPECT_EQ(g.find_bond(a, a), -1);
}

TEST(MolecularGraph, DisjointUnionShiftsIds) {
  const MolecularGraph parts[] = {fixtures::chain(2), fixtures::chain(3)};
  const auto u = disjoint_union(parts);
  EXPECT_EQ(u.vertex_count(), 7u);
  EXPECT_EQ(u.edge_count(), 5u);
  EXPECT_EQ(u.bond(2).a, 3u);
  EXPECT_EQ(connected_components(u, u.full_mask()).size(), 2u);
}

TEST(SubgraphView, MiddleOfPentaneIsAPath) {
  const auto g = fixtures::chain(4);
  const auto view = subgraph_view(g, mask_of(g, {1, 2}));
  EXPECT_EQ(view.vertex_count(), 3u);
  EXPECT_EQ(view.edge_count(), 2u);
  EXPECT_EQ(mask_of_view(g, view), mask_of(g, {1, 2}));
}

TEST(SubgraphView, EmptyAndFullMasks) {
  const auto ring = fixtures::ring(6);
  EXPECT_EQ(subgraph_view(ring, ring.empty_mask()).vertex_count(), 0u);
  const auto whole = subgraph_view(ring, ring.full_mask());
  EXPECT_EQ(whole.vertex_count(), 6u);
  const auto again = fixtures::ring(6);
  EXPECT_TRUE(graphs_isomorphic(whole, subgraph_view(again, again.full_mask())));
}

TEST(ConnectedComponents, SplitsAtMissingEdge) {
  const auto g = fixtures::chain(4);
  const auto parts = connected_components(g, mask_of(g, {0, 1, 3}));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].count() + parts[1].count(), 3u);
  EXPECT_TRUE(std::is_sorted(parts.begin(), parts.end()));
  EXPECT_EQ(connected_components(g, g.full_mask()).size(), 1u);
  EXPECT_TRUE(connected_components(g, g.empty_mask()).empty());
}

TEST(ConnectedComponents, PartitionRandomMasks) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto g = fixtures::random_connected(rng, {5, 30, 2, 2});
    EdgeMask m = g.empty_mask();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (rng() & 1) m.set(e);
    }
    EdgeMask seen = g.empty_mask();
    for (const auto &part : connected_components(g, m)) {
      EXPECT_FALSE(part.intersects(seen));
      EXPECT_TRUE(is_connected_and_acyclic(g, part).connected);
      seen |= part;
    }
    EXPECT_EQ(seen, m);
  }
}

TEST(Connectivity, RingPathAndForest) {
  const auto ring = fixtures::ring(6);
  const auto r = is_connected_and_acyclic(ring, ring.full_mask());
  EXPECT_TRUE(r.connected);
  EXPECT_FALSE(r.acyclic);

  const auto path = fixtures::chain(3);
  const auto p = is_connected_and_acyclic(path, path.full_mask());
  EXPECT_TRUE(p.connected);
  EXPECT_TRUE(p.acyclic);

  const auto f = is_connected_and_acyclic(path, mask_of(path, {0, 2}));
  EXPECT_FALSE(f.connected);
  EXPECT_TRUE(f.acyclic);
}

}  // namespace
}  // namespace asmidx
