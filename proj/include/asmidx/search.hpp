#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "asmidx/duplicates.hpp"
#include "asmidx/fragmentation.hpp"
#include "asmidx/molecular_graph.hpp"

namespace asmidx {

enum class BoundMode {
  conditional_chain,        // ceiling form
  conditional_chain_floor,  // floor form, looser
  trivial_log,              // only the ceil(log2 N) floor on the index
};

enum class PruneRule {
  non_strict,  // prune when the state cannot strictly improve best S
  strict,      // prune only when it cannot even tie
};

struct BoundConfig {
  BoundMode mode = BoundMode::conditional_chain;
  PruneRule rule = PruneRule::non_strict;
  // Use the exact shortest addition chain length of x in place of
  // ceil(log2 x).
  bool exact_chain_term = false;
  // After a state's matches are known, bound again using only the edges
  // those matches touch (see AssemblySearch::matched_bound).
  bool refine_by_matches = true;
};

/// max over x in 2..m of sum_i (L_i - ceil(L_i / x)) - ceil(log2 x), and 0
/// when m < 2 or no fragment has two edges. The floor mode uses floor(L_i/x).
std::uint32_t upper_bound_future_S(std::span<const std::uint32_t> sizes,
                                   std::uint32_t m,
                                   BoundMode mode = BoundMode::conditional_chain,
                                   bool exact_chain_term = false);

/// ceil(log2 n) for n >= 1.
std::uint32_t ceil_log2(std::uint64_t n);

struct TracePoint {
  double seconds = 0;
  std::uint32_t index = 0;
};

struct SearchConfig {
  BoundConfig bound;
  bool use_bound = true;      // false disables every bound-based prune
  bool largest_first = true;  // pop the largest duplicate's child first
  // Merge states whose fragments are isomorphic class by class.
  bool canonical_states = true;
  std::optional<double> time_budget;        // seconds
  std::optional<std::size_t> max_states;    // state table entries
  // Approximate bytes held by the state table, fragment cache and stack.
  std::optional<std::size_t> memory_budget;
  std::function<void(const TracePoint &)> on_improvement;
};

/// One removed duplicate: `kept` stays as a standalone fragment, `deleted`
/// is the replicated location whose edges leave the graph.
struct Removal {
  std::uint32_t sorted_index = 0;
  std::uint32_t size = 0;
  EdgeMask kept;
  EdgeMask deleted;
};

struct SearchResult {
  std::uint32_t index = 0;        // assembly index, upper bound if !exact
  std::uint32_t lower_bound = 0;  // equals index when exact
  bool exact = true;
  std::size_t bond_count = 0;
  std::uint32_t duplicate_sum = 0;
  std::size_t duplicate_classes = 0;
  std::size_t states_explored = 0;
  std::size_t pruned_by_bound = 0;
  std::size_t pruned_by_table = 0;
  std::size_t peak_table_entries = 0;
  std::size_t memory_bytes = 0;
  double seconds = 0;
  std::string note;
  std::vector<Removal> removals;  // in fragmentation order
  std::vector<TracePoint> trace;
};

class AssemblySearch {
 public:
  explicit AssemblySearch(const MolecularGraph &graph, SearchConfig config = {});

  SearchResult run();

  const MolecularGraph &graph() const noexcept { return graph_; }
  const DuplicateTable &duplicates() const noexcept { return table_; }
  const AssemblyState &root() const noexcept { return root_; }
  std::uint32_t best_S() const noexcept { return best_S_; }

  /// Table key of a state: the ceiling plus the sorted isomorphism class ids
  /// of its fragments with two or more edges, or the mask digest when
  /// canonical_states is off.
  StateKey key_of(const AssemblyState &state);
  /// Largest S recorded for a key, if any.
  std::optional<std::uint32_t> recorded_S(const StateKey &key) const;

  /// Bound test for one state against the current best S.
  bool should_prune(const AssemblyState &state) const;
  std::uint32_t state_bound(const AssemblyState &state) const;
  /// Upper bound on the S still to gain once the state's matches are known:
  /// the chain bound over the pieces those matches cover, capped by one
  /// join per distinct piece shape.
  std::uint32_t matched_bound(const AssemblyState &state,
                              std::span<const Match> matches) const;
  /// Bound test once the state's matches are enumerated.
  bool should_prune_matched(const AssemblyState &state,
                            std::span<const Match> matches) const;

  /// Matches from the root to the best state found, in fragmentation order.
  const std::vector<Match> &best_matches() const noexcept {
    return best_path_;
  }

 private:
  struct Frame {
    AssemblyState state;
    std::vector<Match> path;
  };

  double elapsed() const;
  std::uint32_t index_for(std::uint32_t S) const;
  void improve(std::uint32_t S, const std::vector<Match> &path);
  std::uint32_t fragment_class(const EdgeMask &fragment);

  MolecularGraph graph_;
  SearchConfig config_;
  CanonicalRegistry registry_;
  DuplicateTable table_;
  AssemblyState root_;
  absl::flat_hash_map<StateKey, std::uint32_t, std::hash<StateKey>> entries_;
  absl::flat_hash_map<EdgeMask, std::uint32_t, std::hash<EdgeMask>>
      fragment_ids_;
  std::unordered_map<CanonicalKey, std::uint32_t> class_ids_;
  std::vector<std::uint32_t> id_scratch_;
  std::vector<std::uint64_t> bond_type_hash_;  // per edge, by bond signature
  std::vector<Match> best_path_;
  std::uint32_t best_S_ = 0;
  std::uint32_t parts_ = 1;        // connected parts of the input
  std::uint32_t log_floor_S_ = 0;  // best S at which the log floor is met
  std::chrono::steady_clock::time_point start_;
  std::vector<TracePoint> trace_;
};

SearchResult run_search(const MolecularGraph &graph,
                        const SearchConfig &config = {});

/// Joint assembly of several molecules: the search runs on their disjoint
/// union. The index is the number of joins in the shared pool, N - c - S for
/// c connected parts, so it is c - 1 below N - 1 - S.
SearchResult run_search(std::span<const MolecularGraph> graphs,
                        const SearchConfig &config = {});

}  // namespace asmidx
