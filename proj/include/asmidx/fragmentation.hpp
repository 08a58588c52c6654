#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "asmidx/duplicates.hpp"
#include "asmidx/edge_mask.hpp"
#include "asmidx/molecular_graph.hpp"

namespace asmidx {

/// 128-bit digest of an assembly state's fragment list.
struct StateKey {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend bool operator==(const StateKey &, const StateKey &) = default;
  friend auto operator<=>(const StateKey &, const StateKey &) = default;
};

struct AssemblyState {
  // When has_last is set, fragments[0] is the kept occurrence of the most
  // recently removed duplicate. The rest are sorted by the mask comparator.
  std::vector<EdgeMask> fragments;
  bool has_last = false;
  std::uint32_t S = 0;
  std::optional<std::uint32_t> ceiling;  // none at the root
  std::uint32_t m = 0;
  std::optional<StateKey> parent;

  std::size_t live_edges() const noexcept;
};

/// Union-find over vertex ids with union by rank and path compression.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n);

  std::uint32_t find(std::uint32_t x);
  /// Returns false when both were already in one set.
  bool unite(std::uint32_t a, std::uint32_t b);
  /// Points every element straight at its root.
  void compress();
  std::size_t size() const noexcept { return parent_.size(); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

/// Connected parts of `mask`, built by inserting its edges into a
/// disjoint set and splitting by root. Sorted by the mask comparator.
std::vector<EdgeMask> split(const MolecularGraph &graph, const EdgeMask &mask);

/// Root state: the connected parts of the bonds that take part in some
/// duplicate, m = largest duplicate size, no ceiling.
AssemblyState make_root_state(const MolecularGraph &graph,
                              const DuplicateTable &table);

/// Removes the deleted occurrence of `match`, extracts the kept occurrence as
/// the new first fragment and re-splits the fragments it was cut from.
AssemblyState apply_match(const MolecularGraph &graph,
                          const DuplicateTable &table,
                          const AssemblyState &state, const Match &match);

/// Digest over (first fragment, sorted remaining fragments). S, m and the
/// ceiling are not part of the key.
StateKey hash_state(const AssemblyState &state);

}  // namespace asmidx

template <>
struct std::hash<asmidx::StateKey> {
  std::size_t operator()(const asmidx::StateKey &k) const noexcept {
    return static_cast<std::size_t>(k.lo ^ (k.hi * 0x9e3779b97f4a7c15ULL));
  }
};
