#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "asmidx/edge_mask.hpp"
#include "asmidx/isomorphism.hpp"
#include "asmidx/molecular_graph.hpp"

namespace asmidx {

/// One isomorphism class of duplicatable subgraphs.
struct DuplicateClass {
  CanonicalKey key;
  std::size_t size = 0;                 // edges per occurrence, >= 2
  std::vector<EdgeMask> occurrences;    // connected, distinct, each in a pair
  // Edge-disjoint occurrence pairs (first < second).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::size_t contained_count = 0;      // classes that are subgraphs of this
  std::uint32_t sorted_index = 0;
};

/// Containment arcs between classes, by position in the processing order:
/// (smaller, larger) where an occurrence of `smaller` is a subset of an
/// occurrence of `larger`. Only covering arcs (size difference one) are kept;
/// containment is their transitive closure.
struct DuplicateDag {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
};

/// One removal candidate: keep occurrence `kept` of the class with
/// `sorted_index`, delete occurrence `deleted`.
struct Match {
  std::uint32_t sorted_index = 0;
  std::uint32_t kept = 0;
  std::uint32_t deleted = 0;

  friend bool operator==(const Match &, const Match &) = default;
};

/// Bonds whose (atom label pair, bond label) signature occurs at least twice.
EdgeMask prune_unique_bonds(const MolecularGraph &graph);

/// True iff the two masks share no edge.
bool matching_validity(const EdgeMask &a, const EdgeMask &b);

struct Enumeration {
  std::vector<DuplicateClass> classes;  // unsorted, size >= 2
  EdgeMask coverage;                    // union of all class occurrences
};

/// Grows connected subgraphs edge by edge from the candidate bonds, grouping
/// by canonical key. Only occurrences that take part in an edge-disjoint pair
/// are grown further, and growth stops at floor(|candidates| / 2) edges.
Enumeration enumerate_duplicates(const MolecularGraph &graph,
                                 const EdgeMask &candidates,
                                 CanonicalRegistry &registry);

/// Orders classes by size (descending), then by contained_count (ascending),
/// then by key bytes. sorted_index counts from the end of that order, so the
/// last class has index 0 and "sorted_index <= ceiling" selects the classes
/// at or after the ceiling's position: never larger than the ceiling class.
std::vector<DuplicateClass> sort_duplicates(std::vector<DuplicateClass> classes,
                                            const MolecularGraph &graph,
                                            DuplicateDag *dag = nullptr);

/// Enumeration and sorting for one root graph, computed once and shared by
/// every assembly state of that computation.
class DuplicateTable {
 public:
  DuplicateTable() = default;
  DuplicateTable(const MolecularGraph &graph, CanonicalRegistry &registry);

  std::span<const DuplicateClass> classes() const noexcept { return classes_; }
  const DuplicateClass &by_sorted_index(std::uint32_t index) const {
    return classes_.at(position_of(index));
  }
  std::size_t position_of(std::uint32_t sorted_index) const {
    return classes_.size() - 1 - sorted_index;
  }
  const DuplicateDag &dag() const noexcept { return dag_; }
  const EdgeMask &candidates() const noexcept { return candidates_; }
  const EdgeMask &coverage() const noexcept { return coverage_; }
  std::size_t max_size() const noexcept {
    return classes_.empty() ? 0 : classes_.front().size;
  }
  std::size_t match_count() const noexcept;

 private:
  std::vector<DuplicateClass> classes_;
  DuplicateDag dag_;
  EdgeMask candidates_;
  EdgeMask coverage_;
};

/// Reusable buffers for enumerate_matchings.
struct MatchScratch {
  std::vector<std::int32_t> fragment_of_edge;
  std::vector<char> valid;
};

/// Every match of a class with sorted_index <= ceiling (all classes when no
/// ceiling) whose two occurrences each lie inside a single fragment. Output
/// follows the processing order: largest classes first.
std::vector<Match> enumerate_matchings(const DuplicateTable &table,
                                       std::span<const EdgeMask> fragments,
                                       std::optional<std::uint32_t> ceiling);
void enumerate_matchings(const DuplicateTable &table,
                         std::span<const EdgeMask> fragments,
                         std::optional<std::uint32_t> ceiling,
                         MatchScratch &scratch, std::vector<Match> &out);

std::vector<Match> filter_by_sorted_index(std::vector<Match> matches,
                                          std::optional<std::uint32_t> ceiling);

}  // namespace asmidx
