#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "asmidx/molecular_graph.hpp"
#include "asmidx/search.hpp"

namespace asmidx {

/// Removals replayed on the complete input graph, plus what is left.
struct FragmentationTrace {
  std::vector<Removal> removals;   // fragmentation order
  std::vector<EdgeMask> remnants;  // terminal fragments, all bonds included

  std::uint32_t duplicate_sum() const noexcept;
};

/// Replays the best removal path of a finished search on the untrimmed graph.
FragmentationTrace trace_parents(const AssemblySearch &search);
FragmentationTrace trace_parents(const MolecularGraph &graph,
                                 std::span<const Removal> removals);

struct JoinStep {
  EdgeMask left;
  EdgeMask right;
  EdgeMask result;
  std::vector<VertexId> shared;  // identified vertices, input-graph ids
};

/// Join steps consistent with the trace: remnants are built from single
/// bonds first, then duplicates are built in ascending size with their
/// replications reused, and the pieces are finally joined along shared
/// vertices until no two pieces touch. Throws std::runtime_error when the
/// trace cannot be realized.
std::vector<JoinStep> generate_pathway(const MolecularGraph &graph,
                                       const FragmentationTrace &trace);

struct AssemblySpace {
  struct Node {
    std::size_t edges = 0;
    bool building_block = false;
    std::string label;
  };
  std::vector<Node> nodes;
  // (from, to); repeated pairs stand for a fragment used twice in one join.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;

  std::size_t joined_nodes() const noexcept;
};

/// One node per join result, one per distinct bond type used; each join
/// contributes one arc from each input to the result.
AssemblySpace build_assembly_space(const MolecularGraph &graph,
                                   std::span<const JoinStep> steps);

}  // namespace asmidx
