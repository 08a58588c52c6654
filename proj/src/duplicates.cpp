#include "asmidx/duplicates.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace asmidx {
namespace {

struct BondSignature {
  Label lo, hi, bond;
  friend auto operator<=>(const BondSignature &,
                          const BondSignature &) = default;
};

BondSignature signature_of(const MolecularGraph &g, EdgeId e) {
  const Bond &bd = g.bond(e);
  Label x = g.atom_label(bd.a), y = g.atom_label(bd.b);
  if (y < x) std::swap(x, y);
  return {x, y, bd.label};
}

bool connected_edges(const MolecularGraph &g, const EdgeMask &mask) {
  if (mask.none()) return false;
  EdgeMask reached(mask.width());
  const auto seed = static_cast<EdgeId>(mask.first());
  reached.set(seed);
  std::vector<VertexId> frontier{g.bond(seed).a, g.bond(seed).b};
  while (!frontier.empty()) {
    const VertexId v = frontier.back();
    frontier.pop_back();
    for (const auto &inc : g.incident(v)) {
      if (mask.test(inc.edge) && !reached.test(inc.edge)) {
        reached.set(inc.edge);
        frontier.push_back(inc.neighbor);
      }
    }
  }
  return reached == mask;
}

// Occurrences of one key at one size, in discovery order.
using Groups = std::map<CanonicalKey, std::vector<EdgeMask>>;

}  // namespace

EdgeMask prune_unique_bonds(const MolecularGraph &graph) {
  std::map<BondSignature, std::size_t> counts;
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    ++counts[signature_of(graph, e)];
  }
  EdgeMask keep = graph.empty_mask();
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    if (counts[signature_of(graph, e)] >= 2) keep.set(e);
  }
  return keep;
}

bool matching_validity(const EdgeMask &a, const EdgeMask &b) {
  return !a.intersects(b);
}

Enumeration enumerate_duplicates(const MolecularGraph &graph,
                                 const EdgeMask &candidates,
                                 CanonicalRegistry &registry) {
  Enumeration out;
  out.coverage = graph.empty_mask();
  const std::size_t max_size = candidates.count() / 2;
  if (max_size < 1) return out;

  Groups level;
  candidates.for_each([&](EdgeId e) {
    EdgeMask m = graph.empty_mask();
    m.set(e);
    level[registry.key_for(subgraph_view(graph, m))].push_back(m);
  });

  for (std::size_t size = 1; !level.empty(); ++size) {
    std::vector<EdgeMask> growable;
    for (auto &[key, occs] : level) {
      std::vector<char> paired(occs.size(), 0);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
      for (std::uint32_t i = 0; i < occs.size(); ++i) {
        for (std::uint32_t j = i + 1; j < occs.size(); ++j) {
          if (matching_validity(occs[i], occs[j])) {
            pairs.emplace_back(i, j);
            paired[i] = paired[j] = 1;
          }
        }
      }
      if (pairs.empty()) continue;

      std::vector<std::uint32_t> remap(occs.size(), 0);
      std::vector<EdgeMask> kept;
      for (std::uint32_t i = 0; i < occs.size(); ++i) {
        if (!paired[i]) continue;
        remap[i] = static_cast<std::uint32_t>(kept.size());
        kept.push_back(occs[i]);
      }
      for (auto &[a, b] : pairs) {
        a = remap[a];
        b = remap[b];
      }
      growable.insert(growable.end(), kept.begin(), kept.end());
      if (size >= 2) {
        for (const auto &m : kept) out.coverage |= m;
        DuplicateClass cls;
        cls.key = key;
        cls.size = size;
        cls.occurrences = std::move(kept);
        cls.pairs = std::move(pairs);
        out.classes.push_back(std::move(cls));
      }
    }
    if (size + 1 > max_size) break;

    Groups next;
    std::unordered_set<EdgeMask> seen;
    for (const EdgeMask &g : growable) {
      g.for_each([&](EdgeId e) {
        const Bond &bd = graph.bond(e);
        for (VertexId v : {bd.a, bd.b}) {
          for (const auto &inc : graph.incident(v)) {
            if (!candidates.test(inc.edge) || g.test(inc.edge)) continue;
            EdgeMask w = g;
            w.set(inc.edge);
            if (!seen.insert(w).second) continue;
            next[registry.key_for(subgraph_view(graph, w))].push_back(w);
          }
        }
      });
    }
    level = std::move(next);
  }
  return out;
}

std::vector<DuplicateClass> sort_duplicates(std::vector<DuplicateClass> classes,
                                            const MolecularGraph &graph,
                                            DuplicateDag *dag) {
  const std::size_t n = classes.size();
  // Order by size first so covering arcs always point forward.
  std::vector<std::uint32_t> by_size(n);
  for (std::uint32_t i = 0; i < n; ++i) by_size[i] = i;
  std::stable_sort(by_size.begin(), by_size.end(), [&](auto a, auto b) {
    return classes[a].size < classes[b].size;
  });

  std::unordered_map<EdgeMask, std::uint32_t> owner;
  for (std::uint32_t c = 0; c < n; ++c) {
    for (const auto &occ : classes[c].occurrences) owner.emplace(occ, c);
  }

  // Covering arcs: drop one edge from an occurrence and look the connected
  // remainder up among the occurrences one size smaller.
  std::vector<std::vector<std::uint32_t>> parents(n);
  for (std::uint32_t c = 0; c < n; ++c) {
    if (classes[c].size < 3) continue;
    std::vector<std::uint32_t> found;
    for (const auto &occ : classes[c].occurrences) {
      occ.for_each([&](EdgeId e) {
        EdgeMask rest = occ;
        rest.reset(e);
        auto it = owner.find(rest);
        if (it != owner.end() && it->second != c) {
          found.push_back(it->second);
        } else if (it == owner.end() && connected_edges(graph, rest)) {
          // Every connected part of a paired occurrence is itself paired,
          // so this cannot happen for a complete enumeration.
          throw ContractViolation("incomplete duplicate enumeration");
        }
      });
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    parents[c] = std::move(found);
  }

  // contained_count = number of strict ancestors in the covering DAG.
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> below(
      n, std::vector<std::uint64_t>(words, 0));
  for (auto c : by_size) {
    for (auto p : parents[c]) {
      below[c][p / 64] |= std::uint64_t{1} << (p % 64);
      for (std::size_t w = 0; w < words; ++w) below[c][w] |= below[p][w];
    }
  }
  for (std::uint32_t c = 0; c < n; ++c) {
    std::size_t count = 0;
    for (auto w : below[c]) count += static_cast<std::size_t>(std::popcount(w));
    classes[c].contained_count = count;
  }

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    const auto &x = classes[a], &y = classes[b];
    if (x.size != y.size) return x.size > y.size;
    if (x.contained_count != y.contained_count) {
      return x.contained_count < y.contained_count;
    }
    return x.key < y.key;
  });
  std::vector<std::uint32_t> position(n);
  for (std::uint32_t p = 0; p < n; ++p) position[order[p]] = p;

  if (dag != nullptr) {
    dag->arcs.clear();
    for (std::uint32_t c = 0; c < n; ++c) {
      for (auto p : parents[c]) dag->arcs.emplace_back(position[p], position[c]);
    }
    std::sort(dag->arcs.begin(), dag->arcs.end());
  }

  std::vector<DuplicateClass> sorted;
  sorted.reserve(n);
  for (std::uint32_t p = 0; p < n; ++p) {
    sorted.push_back(std::move(classes[order[p]]));
    sorted.back().sorted_index = static_cast<std::uint32_t>(n - 1 - p);
  }
  return sorted;
}

DuplicateTable::DuplicateTable(const MolecularGraph &graph,
                               CanonicalRegistry &registry) {
  candidates_ = prune_unique_bonds(graph);
  auto found = enumerate_duplicates(graph, candidates_, registry);
  coverage_ = found.coverage;
  classes_ = sort_duplicates(std::move(found.classes), graph, &dag_);
}

std::size_t DuplicateTable::match_count() const noexcept {
  std::size_t n = 0;
  for (const auto &c : classes_) n += c.pairs.size();
  return n;
}

void enumerate_matchings(const DuplicateTable &table,
                         std::span<const EdgeMask> fragments,
                         std::optional<std::uint32_t> ceiling,
                         MatchScratch &scratch, std::vector<Match> &out) {
  out.clear();
  const auto classes = table.classes();
  if (classes.empty() || fragments.empty()) return;
  const std::size_t width = fragments.front().width();
  auto &owner = scratch.fragment_of_edge;
  owner.assign(width, -1);
  for (std::size_t f = 0; f < fragments.size(); ++f) {
    fragments[f].for_each(
        [&](EdgeId e) { owner[e] = static_cast<std::int32_t>(f); });
  }

  std::size_t start = 0;
  if (ceiling) {
    if (*ceiling >= classes.size()) {
      throw ContractViolation("ceiling beyond the duplicate table");
    }
    start = table.position_of(*ceiling);
  }
  auto &valid = scratch.valid;
  for (std::size_t p = start; p < classes.size(); ++p) {
    const DuplicateClass &cls = classes[p];
    valid.assign(cls.occurrences.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < cls.occurrences.size(); ++i) {
      const EdgeMask &occ = cls.occurrences[i];
      const auto f = owner[occ.first()];
      if (f >= 0 && occ.is_subset_of(fragments[static_cast<std::size_t>(f)])) {
        valid[i] = 1;
        any = true;
      }
    }
    if (!any) continue;
    for (const auto &[a, b] : cls.pairs) {
      if (valid[a] && valid[b]) out.push_back({cls.sorted_index, a, b});
    }
  }
}

std::vector<Match> enumerate_matchings(const DuplicateTable &table,
                                       std::span<const EdgeMask> fragments,
                                       std::optional<std::uint32_t> ceiling) {
  MatchScratch scratch;
  std::vector<Match> out;
  enumerate_matchings(table, fragments, ceiling, scratch, out);
  return out;
}

std::vector<Match> filter_by_sorted_index(std::vector<Match> matches,
                                          std::optional<std::uint32_t> ceiling) {
  if (!ceiling) return matches;
  std::erase_if(matches,
                [&](const Match &m) { return m.sorted_index > *ceiling; });
  return matches;
}

}  // namespace asmidx
