#include "asmidx/fixtures.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace asmidx::fixtures {
namespace {

constexpr std::array<const char *, 6> kAtoms{"C", "N", "O", "S", "P", "Cl"};
constexpr std::array<const char *, 4> kBonds{"1", "2", "3", "4"};

std::size_t pick(std::mt19937_64 &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

MolecularGraph chain(std::size_t n) { return chain_from_bits(n, 0); }

MolecularGraph chain_from_bits(std::size_t n, std::uint64_t pattern) {
  MolecularGraph g;
  const Label c{"C"}, single{"1"}, dbl{"2"};
  VertexId prev = g.add_atom(c);
  for (std::size_t i = 0; i < n; ++i) {
    const VertexId next = g.add_atom(c);
    g.add_bond(prev, next, (pattern >> i & 1) ? dbl : single);
    prev = next;
  }
  return g;
}

MolecularGraph ring(std::size_t n, const std::string &atom,
                    const std::string &bond) {
  MolecularGraph g;
  const Label a{atom}, b{bond};
  for (std::size_t i = 0; i < n; ++i) g.add_atom(a);
  for (std::size_t i = 0; i < n; ++i) {
    g.add_bond(static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % n), b);
  }
  return g;
}

MolecularGraph random_connected(std::mt19937_64 &rng, const RandomSpec &spec) {
  const std::size_t edges = pick(rng, spec.min_edges, spec.max_edges);
  // Fewest vertices that can hold `edges` simple bonds.
  std::size_t min_v = 2;
  while (min_v * (min_v - 1) / 2 < edges) ++min_v;
  const std::size_t v = pick(rng, min_v, edges + 1);

  MolecularGraph g;
  const std::size_t atom_types = std::clamp<std::size_t>(spec.atom_types, 1, kAtoms.size());
  const std::size_t bond_types = std::clamp<std::size_t>(spec.bond_types, 1, kBonds.size());
  for (std::size_t i = 0; i < v; ++i) {
    g.add_atom(Label{kAtoms[pick(rng, 0, atom_types - 1)]});
  }
  auto bond_label = [&] { return Label{kBonds[pick(rng, 0, bond_types - 1)]}; };
  for (std::size_t i = 1; i < v; ++i) {
    g.add_bond(static_cast<VertexId>(pick(rng, 0, i - 1)),
               static_cast<VertexId>(i), bond_label());
  }
  while (g.edge_count() < edges) {
    const auto a = static_cast<VertexId>(pick(rng, 0, v - 1));
    const auto b = static_cast<VertexId>(pick(rng, 0, v - 1));
    if (a == b || g.find_bond(a, b) >= 0) continue;
    g.add_bond(a, b, bond_label());
  }
  return g;
}

MolecularGraph permuted(const MolecularGraph &graph, std::mt19937_64 &rng) {
  std::vector<VertexId> vperm(graph.vertex_count());
  std::iota(vperm.begin(), vperm.end(), 0U);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::vector<Label> atoms(graph.vertex_count(), Label{"C"});
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    atoms[vperm[v]] = graph.atom_label(v);
  }
  std::vector<EdgeId> eorder(graph.edge_count());
  std::iota(eorder.begin(), eorder.end(), 0U);
  std::shuffle(eorder.begin(), eorder.end(), rng);

  MolecularGraph out;
  for (Label l : atoms) out.add_atom(l);
  for (EdgeId e : eorder) {
    const Bond &bd = graph.bond(e);
    VertexId a = vperm[bd.a], b = vperm[bd.b];
    if (rng() & 1) std::swap(a, b);
    out.add_bond(a, b, bd.label);
  }
  return out;
}

}  // namespace asmidx::fixtures
