#include "asmidx/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <map>

namespace asmidx {
namespace {

constexpr std::uint32_t kChainTableSize = kMaxEdges + 1;

bool extend_chain(std::vector<std::uint32_t> &chain, std::uint32_t target,
                  std::uint32_t depth) {
  const std::uint32_t last = chain.back();
  if (last == target) return true;
  if (depth == 0) return false;
  if ((static_cast<std::uint64_t>(last) << depth) < target) return false;
  for (std::size_t i = chain.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j-- > 0;) {
      const std::uint32_t next = chain[i] + chain[j];
      if (next <= last) break;
      if (next > target) continue;
      chain.push_back(next);
      if (extend_chain(chain, target, depth - 1)) return true;
      chain.pop_back();
    }
  }
  return false;
}

const std::array<std::uint32_t, kChainTableSize> &chain_lengths() {
  static const auto table = [] {
    std::array<std::uint32_t, kChainTableSize> t{};
    for (std::uint32_t n = 2; n < kChainTableSize; ++n) {
      std::vector<std::uint32_t> chain{1};
      std::uint32_t depth = ceil_log2(n);
      while (!extend_chain(chain, n, depth)) {
        chain.assign({1});
        ++depth;
      }
      t[n] = depth;
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint32_t ceil_log2(std::uint64_t n) {
  if (n <= 1) return 0;
  return static_cast<std::uint32_t>(std::bit_width(n - 1));
}

std::uint32_t upper_bound_future_S(std::span<const std::uint32_t> sizes,
                                   std::uint32_t m, BoundMode mode,
                                   bool exact_chain_term) {
  if (m < 2) return 0;
  if (std::none_of(sizes.begin(), sizes.end(),
                   [](std::uint32_t l) { return l >= 2; })) {
    return 0;
  }
  const auto &chains = chain_lengths();
  std::int64_t best = 0;
  for (std::uint32_t x = 2; x <= m; ++x) {
    std::int64_t b = 0;
    for (auto l : sizes) {
      const std::uint32_t parts =
          mode == BoundMode::conditional_chain_floor ? l / x : (l + x - 1) / x;
      b += static_cast<std::int64_t>(l) - parts;
    }
    const std::uint32_t reach = exact_chain_term && x < kChainTableSize
                                    ? chains[x]
                                    : ceil_log2(x);
    b -= reach;
    best = std::max(best, b);
  }
  return static_cast<std::uint32_t>(best);
}

AssemblySearch::AssemblySearch(const MolecularGraph &graph, SearchConfig config)
    : graph_(graph), config_(std::move(config)) {
  start_ = std::chrono::steady_clock::now();
  table_ = DuplicateTable(graph_, registry_);
  root_ = make_root_state(graph_, table_);
  std::map<std::array<std::uint64_t, 3>, std::uint64_t> bond_types;
  for (EdgeId e = 0; e < graph_.edge_count(); ++e) {
    const Bond &bd = graph_.bond(e);
    auto x = graph_.atom_label(bd.a).packed(), y = graph_.atom_label(bd.b).packed();
    if (y < x) std::swap(x, y);
    auto [it, fresh] = bond_types.try_emplace({x, y, bd.label.packed()},
                                              bond_types.size() + 1);
    bond_type_hash_.push_back(EdgeMask::mix(it->second * 0x9e3779b97f4a7c15ULL));
  }
  const std::size_t n = graph_.edge_count();
  if (n > 0) {
    const auto parts = connected_components(graph_, graph_.full_mask());
    std::size_t largest = 0;
    for (const auto &p : parts) largest = std::max(largest, p.count());
    parts_ = static_cast<std::uint32_t>(parts.size());
    log_floor_S_ = static_cast<std::uint32_t>(n - parts_ - ceil_log2(largest));
  }
}

std::uint32_t AssemblySearch::index_for(std::uint32_t S) const {
  const std::size_t n = graph_.edge_count();
  return n == 0 ? 0 : static_cast<std::uint32_t>(n - parts_ - S);
}

double AssemblySearch::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now()
                                       - start_)
      .count();
}

std::optional<std::uint32_t> AssemblySearch::recorded_S(
    const StateKey &key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t AssemblySearch::fragment_class(const EdgeMask &fragment) {
  auto [it, inserted] = fragment_ids_.try_emplace(fragment, 0);
  if (inserted) {
    auto key = registry_.key_for(subgraph_view(graph_, fragment));
    auto [cit, fresh] = class_ids_.try_emplace(
        std::move(key), static_cast<std::uint32_t>(class_ids_.size()));
    it->second = cit->second;
  }
  return it->second;
}

StateKey AssemblySearch::key_of(const AssemblyState &state) {
  if (!config_.canonical_states) return hash_state(state);
  id_scratch_.clear();
  for (const auto &f : state.fragments) {
    if (f.count() >= 2) id_scratch_.push_back(fragment_class(f));
  }
  std::sort(id_scratch_.begin(), id_scratch_.end());
  StateKey key{0x452821e638d01377ULL, 0xbe5466cf34e90c6cULL};
  auto absorb = [&](std::uint64_t x) {
    key.hi = EdgeMask::mix(key.hi ^ x);
    key.lo = EdgeMask::mix(key.lo + (x * 0x9e3779b97f4a7c15ULL + 1));
  };
  absorb(state.ceiling ? *state.ceiling + 1ULL : 0ULL);
  for (auto id : id_scratch_) absorb(id);
  absorb(id_scratch_.size());
  return key;
}

std::uint32_t AssemblySearch::state_bound(const AssemblyState &state) const {
  std::vector<std::uint32_t> sizes;
  sizes.reserve(state.fragments.size());
  for (const auto &f : state.fragments) {
    sizes.push_back(static_cast<std::uint32_t>(f.count()));
  }
  return upper_bound_future_S(sizes, state.m, config_.bound.mode,
                              config_.bound.exact_chain_term);
}

bool AssemblySearch::should_prune(const AssemblyState &state) const {
  if (!config_.use_bound || graph_.edge_count() == 0) return false;
  const bool strict = config_.bound.rule == PruneRule::strict;
  const bool at_floor =
      strict ? best_S_ > log_floor_S_ : best_S_ >= log_floor_S_;
  if (at_floor) return true;
  if (config_.bound.mode == BoundMode::trivial_log) return false;
  const std::uint32_t reach = state.S + state_bound(state);
  return strict ? reach < best_S_ : reach <= best_S_;
}

std::uint32_t AssemblySearch::matched_bound(
    const AssemblyState &state, std::span<const Match> matches) const {
  if (matches.empty()) return 0;
  // Later removals only use pairs that are already matchable here, so the
  // future stays inside the connected pieces of the edges these matches
  // touch. Pieces can be no larger than the largest class in play.
  EdgeMask usable = graph_.empty_mask();
  std::uint32_t m = 0;
  for (const Match &match : matches) {
    const auto &cls = table_.by_sorted_index(match.sorted_index);
    m = std::max(m, static_cast<std::uint32_t>(cls.size));
    usable |= cls.occurrences[match.kept];
    usable |= cls.occurrences[match.deleted];
  }
  std::vector<std::uint32_t> sizes;
  std::vector<std::uint64_t> shapes;
  std::uint32_t joinable = 0;
  for (const auto &f : state.fragments) {
    EdgeMask live = f;
    live &= usable;
    if (live.none()) continue;
    for (const auto &piece : split(graph_, live)) {
      const auto size = static_cast<std::uint32_t>(piece.count());
      sizes.push_back(size);
      if (size < 2) continue;
      joinable += size - 1;
      std::uint64_t shape = 0;
      piece.for_each([&](EdgeId e) { shape += bond_type_hash_[e]; });
      shapes.push_back(shape);
    }
  }
  // Each piece of a distinct shape needs a join of its own.
  std::sort(shapes.begin(), shapes.end());
  const auto distinct = static_cast<std::uint32_t>(
      std::unique(shapes.begin(), shapes.end()) - shapes.begin());
  const std::uint32_t chain = upper_bound_future_S(
      sizes, m, config_.bound.mode, config_.bound.exact_chain_term);
  return std::min(chain, joinable - distinct);
}

bool AssemblySearch::should_prune_matched(
    const AssemblyState &state, std::span<const Match> matches) const {
  if (!config_.use_bound || !config_.bound.refine_by_matches) return false;
  if (config_.bound.mode == BoundMode::trivial_log) return false;
  if (matches.empty()) return false;
  const std::uint32_t reach = state.S + matched_bound(state, matches);
  return config_.bound.rule == PruneRule::strict ? reach < best_S_
                                                 : reach <= best_S_;
}

void AssemblySearch::improve(std::uint32_t S,
                             const std::vector<Match> &path) {
  best_S_ = S;
  best_path_ = path;
  TracePoint p{elapsed(), index_for(S)};
  trace_.push_back(p);
  if (config_.on_improvement) config_.on_improvement(p);
}

SearchResult AssemblySearch::run() {
  SearchResult result;
  const std::size_t n = graph_.edge_count();
  result.bond_count = n;
  result.duplicate_classes = table_.classes().size();
  if (n == 0) {
    result.note = "empty graph";
    result.trace.push_back({elapsed(), 0});
    result.seconds = elapsed();
    return result;
  }

  entries_.clear();
  entries_[key_of(root_)] = 0;
  best_S_ = 0;
  trace_.clear();
  improve(0, {});

  std::vector<Frame> stack;
  stack.push_back({root_, {}});
  MatchScratch scratch;
  std::vector<Match> matches;
  std::vector<Frame> children;
  std::size_t peak_stack_masks = 0;
  std::size_t stack_masks = root_.fragments.size();
  std::size_t stack_matches = 0;
  bool out_of_budget = false;
  auto live_bytes = [&] {
    return entries_.capacity() * (sizeof(StateKey) + sizeof(std::uint32_t) + 1)
           + fragment_ids_.size() * (sizeof(EdgeMask) + 16)
           + stack.capacity() * sizeof(Frame) + stack_masks * sizeof(EdgeMask)
           + stack_matches * sizeof(Match);
  };

  while (!stack.empty()) {
    if ((result.states_explored & 0x3ff) == 0) {
      if (config_.time_budget && elapsed() > *config_.time_budget) {
        out_of_budget = true;
        result.note = "time budget exhausted";
        break;
      }
      if (config_.memory_budget && live_bytes() > *config_.memory_budget) {
        out_of_budget = true;
        result.note = "memory budget exhausted";
        break;
      }
    }
    if (config_.max_states && entries_.size() >= *config_.max_states) {
      out_of_budget = true;
      result.note = "state table cap reached";
      break;
    }
    Frame frame = std::move(stack.back());
    stack.pop_back();
    const AssemblyState &state = frame.state;
    stack_masks -= state.fragments.size();
    stack_matches -= frame.path.size();
    ++result.states_explored;

    // A better route to the same state was recorded after this was pushed.
    if (auto seen = recorded_S(key_of(state)); seen && *seen > state.S) {
      ++result.pruned_by_table;
      continue;
    }
    if (should_prune(state)) {
      ++result.pruned_by_bound;
      continue;
    }

    enumerate_matchings(table_, state.fragments, state.ceiling, scratch,
                        matches);
    if (should_prune_matched(state, matches)) {
      ++result.pruned_by_bound;
      continue;
    }
    children.clear();
    for (const Match &match : matches) {
      AssemblyState child = apply_match(graph_, table_, state, match);
      auto [it, inserted] = entries_.try_emplace(key_of(child), child.S);
      if (!inserted) {
        if (it->second >= child.S) {
          ++result.pruned_by_table;
          continue;
        }
        it->second = child.S;
      }
      std::vector<Match> path = frame.path;
      path.push_back(match);
      if (child.S > best_S_) improve(child.S, path);
      if (should_prune(child)) {
        ++result.pruned_by_bound;
        continue;
      }
      children.push_back({std::move(child), std::move(path)});
    }
    result.peak_table_entries =
        std::max(result.peak_table_entries, entries_.size());

    // Matches come largest class first; push so that one pops first.
    if (config_.largest_first) {
      for (auto it = children.rbegin(); it != children.rend(); ++it) {
        stack_masks += it->state.fragments.size();
        stack_matches += it->path.size();
        stack.push_back(std::move(*it));
      }
    } else {
      for (auto &c : children) {
        stack_masks += c.state.fragments.size();
        stack_matches += c.path.size();
        stack.push_back(std::move(c));
      }
    }
    peak_stack_masks = std::max(peak_stack_masks, stack_masks);
  }

  AssemblyState walk = root_;
  for (const Match &m : best_path_) {
    const auto &cls = table_.by_sorted_index(m.sorted_index);
    result.removals.push_back({m.sorted_index,
                               static_cast<std::uint32_t>(cls.size),
                               cls.occurrences[m.kept],
                               cls.occurrences[m.deleted]});
    walk = apply_match(graph_, table_, walk, m);
  }
  if (walk.S != best_S_) {
    throw ContractViolation("best path does not replay to the best S");
  }

  result.duplicate_sum = best_S_;
  result.index = index_for(best_S_);
  result.exact = !out_of_budget;
  result.lower_bound = result.index;
  if (out_of_budget) {
    std::uint32_t reach = best_S_;
    for (const auto &f : stack) {
      if (auto seen = recorded_S(key_of(f.state)); seen && *seen > f.state.S) {
        continue;
      }
      reach = std::max(reach, f.state.S + state_bound(f.state));
    }
    reach = std::min<std::uint32_t>(reach, log_floor_S_);
    result.lower_bound = index_for(reach);
  }
  result.peak_table_entries =
      std::max(result.peak_table_entries, entries_.size());
  result.memory_bytes =
      result.peak_table_entries * (sizeof(StateKey) + sizeof(std::uint32_t) + 12)
      + fragment_ids_.size() * (sizeof(EdgeMask) + 8)
      + peak_stack_masks * sizeof(EdgeMask);
  result.trace = trace_;
  result.seconds = elapsed();
  return result;
}

SearchResult run_search(const MolecularGraph &graph,
                        const SearchConfig &config) {
  AssemblySearch search(graph, config);
  return search.run();
}

SearchResult run_search(std::span<const MolecularGraph> graphs,
                        const SearchConfig &config) {
  const MolecularGraph joint = disjoint_union(graphs);
  return run_search(joint, config);
}

}  // namespace asmidx
