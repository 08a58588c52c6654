#include "asmidx/fragmentation.hpp"

#include <algorithm>
#include <numeric>

namespace asmidx {

std::size_t AssemblyState::live_edges() const noexcept {
  std::size_t n = 0;
  for (const auto &f : fragments) n += f.count();
  return n;
}

DisjointSet::DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0U);
}

std::uint32_t DisjointSet::find(std::uint32_t x) {
  std::uint32_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const auto next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool DisjointSet::unite(std::uint32_t a, std::uint32_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  return true;
}

void DisjointSet::compress() {
  for (std::uint32_t i = 0; i < parent_.size(); ++i) find(i);
}

std::vector<EdgeMask> split(const MolecularGraph &graph, const EdgeMask &mask) {
  if (mask.width() != graph.edge_count()) {
    throw ContractViolation("mask width does not match graph edge count");
  }
  DisjointSet sets(graph.vertex_count());
  mask.for_each([&](EdgeId e) {
    const Bond &bd = graph.bond(e);
    sets.unite(bd.a, bd.b);
  });
  sets.compress();

  std::vector<std::int32_t> slot(graph.vertex_count(), -1);
  std::vector<EdgeMask> parts;
  mask.for_each([&](EdgeId e) {
    const auto root = sets.find(graph.bond(e).a);
    if (slot[root] < 0) {
      slot[root] = static_cast<std::int32_t>(parts.size());
      parts.emplace_back(mask.width());
    }
    parts[static_cast<std::size_t>(slot[root])].set(e);
  });
  std::sort(parts.begin(), parts.end());
  return parts;
}

AssemblyState make_root_state(const MolecularGraph &graph,
                              const DuplicateTable &table) {
  AssemblyState root;
  root.fragments = split(graph, table.coverage());
  root.m = static_cast<std::uint32_t>(table.max_size());
  return root;
}

namespace {

std::size_t owning_fragment(const AssemblyState &state, const EdgeMask &occ) {
  for (std::size_t i = 0; i < state.fragments.size(); ++i) {
    if (occ.is_subset_of(state.fragments[i])) return i;
  }
  throw ContractViolation("occurrence " + occ.to_string()
                          + " is not inside a single fragment");
}

}  // namespace

AssemblyState apply_match(const MolecularGraph &graph,
                          const DuplicateTable &table,
                          const AssemblyState &state, const Match &match) {
  const DuplicateClass &cls = table.by_sorted_index(match.sorted_index);
  const EdgeMask &kept = cls.occurrences.at(match.kept);
  const EdgeMask &deleted = cls.occurrences.at(match.deleted);
  if (kept.intersects(deleted)) {
    throw ContractViolation("match occurrences overlap");
  }
  const std::size_t a = owning_fragment(state, kept);
  const std::size_t b = owning_fragment(state, deleted);

  AssemblyState next;
  next.fragments.reserve(state.fragments.size() + 4);
  next.fragments.push_back(kept);
  for (std::size_t i = 0; i < state.fragments.size(); ++i) {
    if (i != a && i != b) next.fragments.push_back(state.fragments[i]);
  }
  auto add_parts = [&](const EdgeMask &rest) {
    if (rest.none()) return;
    for (auto &p : split(graph, rest)) next.fragments.push_back(p);
  };
  if (a == b) {
    add_parts(state.fragments[a] ^ kept ^ deleted);
  } else {
    add_parts(state.fragments[a] ^ kept);
    add_parts(state.fragments[b] ^ deleted);
  }
  std::sort(next.fragments.begin() + 1, next.fragments.end());

  next.has_last = true;
  next.S = state.S + static_cast<std::uint32_t>(cls.size) - 1;
  next.m = static_cast<std::uint32_t>(cls.size);
  next.ceiling = match.sorted_index;
  return next;
}

StateKey hash_state(const AssemblyState &state) {
  constexpr std::uint64_t kSeedHi = 0x243f6a8885a308d3ULL;
  constexpr std::uint64_t kSeedLo = 0x13198a2e03707344ULL;
  StateKey key{kSeedHi, kSeedLo};
  auto absorb = [&](const EdgeMask &m) {
    key.hi = EdgeMask::mix(key.hi ^ m.hash(kSeedHi));
    key.lo = EdgeMask::mix(key.lo + m.hash(kSeedLo));
  };

  std::span<const EdgeMask> rest = state.fragments;
  if (state.has_last && !rest.empty()) {
    absorb(rest.front());
    rest = rest.subspan(1);
  } else {
    key.hi = EdgeMask::mix(key.hi ^ 0xa5a5a5a5a5a5a5a5ULL);
  }
  if (std::is_sorted(rest.begin(), rest.end())) {
    for (const auto &m : rest) absorb(m);
  } else {
    std::vector<EdgeMask> sorted(rest.begin(), rest.end());
    std::sort(sorted.begin(), sorted.end());
    for (const auto &m : sorted) absorb(m);
  }
  key.lo = EdgeMask::mix(key.lo ^ rest.size());
  return key;
}

}  // namespace asmidx
