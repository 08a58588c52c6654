#include "asmidx/pathway.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace asmidx {

std::uint32_t FragmentationTrace::duplicate_sum() const noexcept {
  std::uint32_t s = 0;
  for (const auto &r : removals) s += r.size - 1;
  return s;
}

FragmentationTrace trace_parents(const MolecularGraph &graph,
                                 std::span<const Removal> removals) {
  FragmentationTrace trace;
  trace.removals.assign(removals.begin(), removals.end());
  std::vector<EdgeMask> frags = split(graph, graph.full_mask());
  auto owner = [&](const EdgeMask &occ) {
    for (std::size_t i = 0; i < frags.size(); ++i) {
      if (occ.is_subset_of(frags[i])) return i;
    }
    throw ContractViolation("removal does not fit the replayed fragments");
  };
  for (const Removal &r : removals) {
    const std::size_t a = owner(r.kept);
    const std::size_t b = owner(r.deleted);
    std::vector<EdgeMask> next{r.kept};
    for (std::size_t i = 0; i < frags.size(); ++i) {
      if (i != a && i != b) next.push_back(frags[i]);
    }
    const EdgeMask rest_a = a == b ? frags[a] ^ r.kept ^ r.deleted
                                   : frags[a] ^ r.kept;
    for (auto &p : split(graph, rest_a)) next.push_back(p);
    if (a != b) {
      for (auto &p : split(graph, frags[b] ^ r.deleted)) next.push_back(p);
    }
    frags = std::move(next);
  }
  std::sort(frags.begin(), frags.end());
  trace.remnants = std::move(frags);
  return trace;
}

FragmentationTrace trace_parents(const AssemblySearch &search) {
  std::vector<Removal> removals;
  for (const Match &m : search.best_matches()) {
    const auto &cls = search.duplicates().by_sorted_index(m.sorted_index);
    removals.push_back({m.sorted_index, static_cast<std::uint32_t>(cls.size),
                        cls.occurrences[m.kept], cls.occurrences[m.deleted]});
  }
  return trace_parents(search.graph(), removals);
}

namespace {

std::vector<VertexId> shared_vertices(const MolecularGraph &g,
                                      const EdgeMask &a, const EdgeMask &b) {
  const auto va = vertices_of(g, a);
  const auto vb = vertices_of(g, b);
  std::vector<VertexId> out;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                        std::back_inserter(out));
  return out;
}

class PieceBag {
 public:
  PieceBag(const MolecularGraph &g, std::vector<JoinStep> &steps)
      : g_(g), steps_(steps) {}

  void add(const EdgeMask &m) { pieces_.push_back(m); }
  bool contains(const EdgeMask &m) const {
    return std::find(pieces_.begin(), pieces_.end(), m) != pieces_.end();
  }

  /// Joins touching pieces that lie inside `region` until none touch.
  /// Returns the number of pieces left inside the region.
  std::size_t join_within(const EdgeMask &region) {
    for (;;) {
      std::vector<std::size_t> inside;
      for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (pieces_[i].is_subset_of(region)) inside.push_back(i);
      }
      bool joined = false;
      for (std::size_t x = 0; x < inside.size() && !joined; ++x) {
        for (std::size_t y = x + 1; y < inside.size() && !joined; ++y) {
          const EdgeMask &a = pieces_[inside[x]];
          const EdgeMask &b = pieces_[inside[y]];
          auto shared = shared_vertices(g_, a, b);
          if (shared.empty()) continue;
          JoinStep step{a, b, a | b, std::move(shared)};
          pieces_[inside[x]] = step.result;
          pieces_.erase(pieces_.begin()
                        + static_cast<std::ptrdiff_t>(inside[y]));
          steps_.push_back(std::move(step));
          joined = true;
        }
      }
      if (!joined) return inside.size();
    }
  }

  /// Builds a connected multi-bond piece from its single bonds.
  void build_from_bonds(const EdgeMask &target) {
    EdgeMask built(target.width());
    const auto seed = static_cast<EdgeId>(target.first());
    built.set(seed);
    while (built != target) {
      bool grew = false;
      target.for_each([&](EdgeId e) {
        if (grew || built.test(e)) return;
        EdgeMask bond(target.width());
        bond.set(e);
        auto shared = shared_vertices(g_, built, bond);
        if (shared.empty()) return;
        steps_.push_back({built, bond, built | bond, std::move(shared)});
        built.set(e);
        grew = true;
      });
      if (!grew) throw std::runtime_error("remnant fragment is disconnected");
    }
    pieces_.push_back(target);
  }

  const std::vector<EdgeMask> &pieces() const { return pieces_; }

 private:
  const MolecularGraph &g_;
  std::vector<JoinStep> &steps_;
  std::vector<EdgeMask> pieces_;
};

}  // namespace

std::vector<JoinStep> generate_pathway(const MolecularGraph &graph,
                                       const FragmentationTrace &trace) {
  std::vector<JoinStep> steps;
  PieceBag bag(graph, steps);
  for (const auto &r : trace.remnants) {
    if (r.count() == 1) {
      bag.add(r);
    } else {
      bag.build_from_bonds(r);
    }
  }
  // Removal order is non-increasing in size, so walking it backwards builds
  // smaller duplicates before the larger ones that contain them.
  for (auto it = trace.removals.rbegin(); it != trace.removals.rend(); ++it) {
    if (!bag.contains(it->kept)) {
      if (bag.join_within(it->kept) != 1 || !bag.contains(it->kept)) {
        throw std::runtime_error("pieces cannot realize duplicate "
                                 + it->kept.to_string());
      }
    }
    bag.add(it->deleted);
  }
  bag.join_within(graph.full_mask());
  return steps;
}

std::size_t AssemblySpace::joined_nodes() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      nodes.begin(), nodes.end(), [](const Node &n) { return !n.building_block; }));
}

AssemblySpace build_assembly_space(const MolecularGraph &graph,
                                   std::span<const JoinStep> steps) {
  AssemblySpace space;
  std::map<std::string, std::uint32_t> blocks;
  std::unordered_map<EdgeMask, std::uint32_t> node_of;

  auto block_node = [&](EdgeId e) {
    const Bond &bd = graph.bond(e);
    std::string a = graph.atom_label(bd.a).str();
    std::string b = graph.atom_label(bd.b).str();
    if (b < a) std::swap(a, b);
    const std::string label = a + "-" + bd.label.str() + "-" + b;
    auto [it, fresh] = blocks.try_emplace(label, 0);
    if (fresh) {
      it->second = static_cast<std::uint32_t>(space.nodes.size());
      space.nodes.push_back({1, true, label});
    }
    return it->second;
  };
  // Pieces that were never produced by a join are copies of an earlier
  // result with the same shape; find that result by isomorphism.
  auto node_for = [&](const EdgeMask &m) -> std::uint32_t {
    if (m.count() == 1) return block_node(static_cast<EdgeId>(m.first()));
    if (auto it = node_of.find(m); it != node_of.end()) return it->second;
    const FragmentView view = subgraph_view(graph, m);
    for (const auto &[known, id] : node_of) {
      if (known.count() == m.count()
          && graphs_isomorphic(subgraph_view(graph, known), view)) {
        node_of.emplace(m, id);
        return id;
      }
    }
    throw std::runtime_error("join input " + m.to_string()
                             + " was never assembled");
  };

  for (EdgeId e = 0; e < graph.edge_count(); ++e) block_node(e);
  for (const JoinStep &s : steps) {
    const auto l = node_for(s.left);
    const auto r = node_for(s.right);
    const auto id = static_cast<std::uint32_t>(space.nodes.size());
    space.nodes.push_back({s.result.count(), false,
                           std::to_string(s.result.count())});
    node_of[s.result] = id;
    space.arcs.emplace_back(l, id);
    space.arcs.emplace_back(r, id);
  }
  return space;
}

}  // namespace asmidx
