#include "asmidx/molecular_graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace asmidx {

VertexId MolecularGraph::add_atom(Label label) {
  if (label.empty()) throw ContractViolation("atom label is empty");
  if (is_hydrogen(label)) {
    throw ContractViolation("hydrogen atoms must be stripped before insertion");
  }
  atoms_.push_back(label);
  adjacency_.emplace_back();
  return static_cast<VertexId>(atoms_.size() - 1);
}

EdgeId MolecularGraph::add_bond(VertexId a, VertexId b, Label label) {
  if (a >= atoms_.size() || b >= atoms_.size()) {
    throw ContractViolation("bond references unknown vertex");
  }
  if (a == b) {
    throw ContractViolation("self-loop on vertex " + std::to_string(a));
  }
  if (find_bond(a, b) >= 0) {
    throw ContractViolation("duplicate bond between vertices "
                            + std::to_string(a) + " and " + std::to_string(b));
  }
  if (bonds_.size() >= kMaxEdges) {
    throw ContractViolation("more than " + std::to_string(kMaxEdges)
                            + " bonds");
  }
  if (label.empty()) throw ContractViolation("bond label is empty");
  const auto id = static_cast<EdgeId>(bonds_.size());
  bonds_.push_back({a, b, label});
  adjacency_[a].push_back({b, id});
  adjacency_[b].push_back({a, id});
  return id;
}

std::int64_t MolecularGraph::find_bond(VertexId a, VertexId b) const {
  if (a >= adjacency_.size()) return -1;
  for (const auto &inc : adjacency_[a]) {
    if (inc.neighbor == b) return inc.edge;
  }
  return -1;
}

void MolecularGraph::append_disjoint(const MolecularGraph &other) {
  const auto shift = static_cast<VertexId>(atoms_.size());
  for (Label l : other.atoms_) add_atom(l);
  for (const Bond &bd : other.bonds_) {
    add_bond(bd.a + shift, bd.b + shift, bd.label);
  }
}

MolecularGraph disjoint_union(std::span<const MolecularGraph> graphs) {
  MolecularGraph out;
  for (const auto &g : graphs) out.append_disjoint(g);
  return out;
}

void FragmentView::build_adjacency() {
  offsets.assign(atoms.size() + 1, 0);
  for (const Edge &e : edges) {
    ++offsets[e.a + 1];
    ++offsets[e.b + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  adjacency.assign(edges.size() * 2, {});
  std::vector<std::uint32_t> fill(offsets.begin(), offsets.end() - 1);
  for (std::uint32_t i = 0; i < edges.size(); ++i) {
    const Edge &e = edges[i];
    adjacency[fill[e.a]++] = {e.b, i};
    adjacency[fill[e.b]++] = {e.a, i};
  }
}

FragmentView make_view(
    std::vector<Label> atoms,
    std::span<const std::tuple<std::uint32_t, std::uint32_t, Label>> edges) {
  FragmentView view;
  view.atoms = std::move(atoms);
  view.source_vertex.resize(view.atoms.size());
  std::iota(view.source_vertex.begin(), view.source_vertex.end(), 0U);
  EdgeId next = 0;
  for (const auto &[a, b, label] : edges) {
    if (a >= view.atoms.size() || b >= view.atoms.size() || a == b) {
      throw ContractViolation("invalid view edge");
    }
    view.edges.push_back({a, b, label, next++});
  }
  view.build_adjacency();
  return view;
}

FragmentView subgraph_view(const MolecularGraph &graph, const EdgeMask &mask) {
  if (mask.width() != graph.edge_count()) {
    throw ContractViolation("mask width " + std::to_string(mask.width())
                            + " does not match graph edge count "
                            + std::to_string(graph.edge_count()));
  }
  FragmentView view;
  const auto verts = vertices_of(graph, mask);
  view.source_vertex = verts;
  view.atoms.reserve(verts.size());
  for (VertexId v : verts) view.atoms.push_back(graph.atom_label(v));

  auto local = [&](VertexId v) {
    return static_cast<std::uint32_t>(
        std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  view.edges.reserve(mask.count());
  mask.for_each([&](EdgeId e) {
    const Bond &bd = graph.bond(e);
    view.edges.push_back({local(bd.a), local(bd.b), bd.label, e});
  });
  view.build_adjacency();
  return view;
}

EdgeMask mask_of_view(const MolecularGraph &graph, const FragmentView &view) {
  EdgeMask m = graph.empty_mask();
  for (const auto &e : view.edges) m.set(e.source);
  return m;
}

std::vector<VertexId> vertices_of(const MolecularGraph &graph,
                                  const EdgeMask &mask) {
  std::vector<VertexId> verts;
  verts.reserve(mask.count() * 2);
  mask.for_each([&](EdgeId e) {
    const Bond &bd = graph.bond(e);
    verts.push_back(bd.a);
    verts.push_back(bd.b);
  });
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  return verts;
}

std::vector<EdgeMask> connected_components(const MolecularGraph &graph,
                                           const EdgeMask &mask) {
  if (mask.width() != graph.edge_count()) {
    throw ContractViolation("mask width does not match graph edge count");
  }
  std::vector<EdgeMask> out;
  EdgeMask remaining = mask;
  std::vector<VertexId> frontier;
  while (remaining.any()) {
    EdgeMask comp(mask.width());
    const auto seed = static_cast<EdgeId>(remaining.first());
    comp.set(seed);
    remaining.reset(seed);
    frontier.assign({graph.bond(seed).a, graph.bond(seed).b});
    while (!frontier.empty()) {
      const VertexId v = frontier.back();
      frontier.pop_back();
      for (const Incidence &inc : graph.incident(v)) {
        if (remaining.test(inc.edge)) {
          remaining.reset(inc.edge);
          comp.set(inc.edge);
          frontier.push_back(inc.neighbor);
        }
      }
    }
    out.push_back(comp);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Connectivity is_connected_and_acyclic(const MolecularGraph &graph,
                                      const EdgeMask &mask) {
  return is_connected_and_acyclic(subgraph_view(graph, mask));
}

Connectivity is_connected_and_acyclic(const FragmentView &view) {
  const std::size_t n = view.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> stack;
  std::size_t components = 0;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s] || view.degree(s) == 0) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (const auto &inc : view.incident(v)) {
        if (!seen[inc.neighbor]) {
          seen[inc.neighbor] = 1;
          stack.push_back(inc.neighbor);
        }
      }
    }
  }
  std::size_t touched = 0;
  for (std::uint32_t v = 0; v < n; ++v) touched += view.degree(v) > 0;
  Connectivity c;
  c.connected = components == 1;
  c.acyclic = view.edge_count() + components == touched;
  return c;
}

}  // namespace asmidx
