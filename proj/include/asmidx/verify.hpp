#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "asmidx/search.hpp"

namespace asmidx {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  double seconds = 0;

  bool passed() const noexcept { return failures == 0 && cases > 0; }
};

struct VerifyOptions {
  BoundConfig bound;
  std::uint64_t seed = 20240611;
  std::size_t random_molecules = 200;
  std::size_t longest_chain = 25;
};

SuiteResult verify_chain_equivalence(const VerifyOptions &options);
SuiteResult verify_oracle_chains(const VerifyOptions &options);
SuiteResult verify_oracle_random(const VerifyOptions &options);
SuiteResult verify_single_chain_bound(const VerifyOptions &options);
SuiteResult verify_joint_chain_bound(const VerifyOptions &options);
SuiteResult verify_pruning_differential(const VerifyOptions &options);
SuiteResult verify_state_bounds(const VerifyOptions &options);

std::vector<SuiteResult> run_verify_suites(const VerifyOptions &options);

/// Largest duplicate sum reachable from `state` by any sequence of
/// removals, with no pruning and no state table.
std::uint32_t exhaustive_future_S(const AssemblySearch &search,
                                  const AssemblyState &state);

}  // namespace asmidx
