#pragma once

#include <cstdint>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "asmidx/edge_mask.hpp"
#include "asmidx/label.hpp"

namespace asmidx {

using VertexId = std::uint32_t;

struct Bond {
  VertexId a = 0;
  VertexId b = 0;
  Label label;
};

struct Incidence {
  VertexId neighbor = 0;
  EdgeId edge = 0;
};

/// Labelled simple graph of a molecule (or a disjoint union of molecules).
///
/// Vertices are heavy atoms; hydrogens are rejected by add_atom and must be
/// stripped by the reader. Edge ids are dense, assigned in insertion order
/// and stable for the lifetime of the graph.
class MolecularGraph {
 public:
  VertexId add_atom(Label label);

  /// Throws ContractViolation on self-loops, repeated vertex pairs, unknown
  /// vertices, or more than kMaxEdges bonds.
  EdgeId add_bond(VertexId a, VertexId b, Label label);

  std::size_t vertex_count() const noexcept { return atoms_.size(); }
  std::size_t edge_count() const noexcept { return bonds_.size(); }

  Label atom_label(VertexId v) const { return atoms_.at(v); }
  const Bond &bond(EdgeId e) const { return bonds_.at(e); }
  std::span<const Bond> bonds() const noexcept { return bonds_; }
  std::span<const Label> atoms() const noexcept { return atoms_; }
  std::span<const Incidence> incident(VertexId v) const {
    return adjacency_.at(v);
  }

  /// Edge id joining a and b, or -1.
  std::int64_t find_bond(VertexId a, VertexId b) const;

  EdgeMask empty_mask() const { return EdgeMask(edge_count()); }
  EdgeMask full_mask() const { return EdgeMask::full(edge_count()); }

  /// Vertex ids of `other` are shifted by the current vertex count and its
  /// edge ids by the current edge count.
  void append_disjoint(const MolecularGraph &other);

 private:
  std::vector<Label> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Incidence>> adjacency_;
};

MolecularGraph disjoint_union(std::span<const MolecularGraph> graphs);

/// Standalone labelled graph, typically the part of a root graph selected by
/// an edge mask. Vertices are numbered 0..n-1; `source_vertex` and
/// `Edge::source` map back to the root graph when the view came from one.
struct FragmentView {
  struct Edge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    Label label;
    EdgeId source = 0;
  };

  std::vector<Label> atoms;
  std::vector<VertexId> source_vertex;
  std::vector<Edge> edges;
  // CSR adjacency: incidences of vertex v are
  // adjacency[offsets[v] .. offsets[v + 1]), `edge` indexes `edges`.
  std::vector<std::uint32_t> offsets;
  std::vector<Incidence> adjacency;

  std::size_t vertex_count() const noexcept { return atoms.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  std::span<const Incidence> incident(std::uint32_t v) const {
    return {adjacency.data() + offsets[v], adjacency.data() + offsets[v + 1]};
  }
  std::size_t degree(std::uint32_t v) const {
    return offsets[v + 1] - offsets[v];
  }

  /// Rebuilds `offsets`/`adjacency` from `edges`.
  void build_adjacency();
};

/// Builds a view from explicit vertex labels and (a, b, label) edges.
FragmentView make_view(std::vector<Label> atoms,
                       std::span<const std::tuple<std::uint32_t, std::uint32_t,
                                                  Label>> edges);

/// Vertices incident to set edges (ascending root id) and those edges only.
FragmentView subgraph_view(const MolecularGraph &graph, const EdgeMask &mask);

/// Rebuilds the root-graph mask of a view produced by subgraph_view.
EdgeMask mask_of_view(const MolecularGraph &graph, const FragmentView &view);

/// Connected components of the selected edges, sorted by the mask order.
std::vector<EdgeMask> connected_components(const MolecularGraph &graph,
                                           const EdgeMask &mask);

struct Connectivity {
  bool connected = false;  // exactly one component; false for an empty mask
  bool acyclic = true;
};

Connectivity is_connected_and_acyclic(const MolecularGraph &graph,
                                      const EdgeMask &mask);
Connectivity is_connected_and_acyclic(const FragmentView &view);

/// Vertices of the root graph touched by the mask.
std::vector<VertexId> vertices_of(const MolecularGraph &graph,
                                  const EdgeMask &mask);

}  // namespace asmidx
