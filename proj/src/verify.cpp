#include "asmidx/verify.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "asmidx/fixtures.hpp"
#include "asmidx/oracle.hpp"

namespace asmidx {
namespace {

class Suite {
 public:
  explicit Suite(std::string name) : start_(std::chrono::steady_clock::now()) {
    result_.name = std::move(name);
  }

  void check(bool ok, const std::function<std::string()> &describe) {
    ++result_.cases;
    if (!ok) {
      if (result_.failures == 0) result_.first_failure = describe();
      ++result_.failures;
    }
  }

  SuiteResult finish() {
    result_.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    return result_;
  }

 private:
  SuiteResult result_;
  std::chrono::steady_clock::time_point start_;
};

SearchConfig config_for(const VerifyOptions &o) {
  SearchConfig c;
  c.bound = o.bound;
  return c;
}

std::string show(std::uint32_t engine, std::uint32_t expected) {
  std::ostringstream s;
  s << "engine " << engine << ", expected " << expected;
  return s.str();
}

}  // namespace

std::uint32_t exhaustive_future_S(const AssemblySearch &search,
                                  const AssemblyState &state) {
  std::uint32_t best = 0;
  for (const Match &m : enumerate_matchings(search.duplicates(), state.fragments,
                                            state.ceiling)) {
    const AssemblyState child =
        apply_match(search.graph(), search.duplicates(), state, m);
    const std::uint32_t gain = child.S - state.S;
    best = std::max(best, gain + exhaustive_future_S(search, child));
  }
  return best;
}

SuiteResult verify_chain_equivalence(const VerifyOptions &o) {
  Suite suite("chain_addition_equivalence");
  for (std::size_t n = 1; n <= o.longest_chain; ++n) {
    const auto expected =
        oracle::shortest_addition_chain(static_cast<std::uint32_t>(n));
    const auto got = run_search(fixtures::chain(n), config_for(o)).index;
    suite.check(got == expected, [&] {
      return "chain " + std::to_string(n) + ": " + show(got, expected);
    });
  }
  return suite.finish();
}

SuiteResult verify_oracle_chains(const VerifyOptions &o) {
  Suite suite("oracle_chains");
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const auto g = fixtures::chain_from_bits(n, bits);
      const auto expected = oracle::brute_force_index(g);
      const auto got = run_search(g, config_for(o)).index;
      suite.check(got == expected, [&] {
        return "chain " + std::to_string(n) + " pattern "
               + std::to_string(bits) + ": " + show(got, expected);
      });
    }
  }
  return suite.finish();
}

SuiteResult verify_oracle_random(const VerifyOptions &o) {
  Suite suite("oracle_random_molecules");
  std::mt19937_64 rng(o.seed);
  for (std::size_t i = 0; i < o.random_molecules; ++i) {
    const auto g = fixtures::random_connected(rng, {1, 8, 2, 2});
    const auto expected = oracle::brute_force_index(g);
    const auto got = run_search(g, config_for(o)).index;
    suite.check(got == expected, [&] {
      return "random molecule " + std::to_string(i) + ": " + show(got, expected);
    });
  }
  return suite.finish();
}

SuiteResult verify_single_chain_bound(const VerifyOptions &) {
  Suite suite("single_chain_bound");
  for (std::uint32_t l = 2; l <= 24; ++l) {
    for (std::uint32_t m = 2; m <= l; ++m) {
      const auto len = oracle::conditional_chain_length(l, m);
      const auto bound = (l + m - 1) / m + ceil_log2(m) - 1;
      suite.check(len >= bound, [&] {
        return "l=" + std::to_string(l) + " m=" + std::to_string(m) + ": "
               + show(len, bound);
      });
    }
  }
  return suite.finish();
}

SuiteResult verify_joint_chain_bound(const VerifyOptions &) {
  Suite suite("joint_chain_bound");
  std::vector<std::uint32_t> ls;
  std::function<void(std::uint32_t, std::uint32_t)> each =
      [&](std::uint32_t from, std::uint32_t budget) {
        if (!ls.empty()) {
          const std::uint32_t top = *std::max_element(ls.begin(), ls.end());
          for (std::uint32_t m = 2; m <= std::max<std::uint32_t>(top, 2); ++m) {
            const auto len = oracle::joint_conditional_chain_length(ls, m);
            std::uint32_t bound = ceil_log2(m) - 1;
            for (auto l : ls) bound += (l + m - 1) / m;
            suite.check(len >= bound, [&] {
              std::string s = "{";
              for (auto l : ls) s += std::to_string(l) + " ";
              return s + "} m=" + std::to_string(m) + ": " + show(len, bound);
            });
          }
        }
        if (ls.size() == 3) return;
        for (std::uint32_t l = from; l <= budget; ++l) {
          ls.push_back(l);
          each(l, budget - l);
          ls.pop_back();
        }
      };
  each(1, 18);
  return suite.finish();
}

SuiteResult verify_pruning_differential(const VerifyOptions &o) {
  Suite suite("pruning_differential");
  std::mt19937_64 rng(o.seed + 1);
  for (std::size_t i = 0; i < o.random_molecules; ++i) {
    const auto g = fixtures::random_connected(rng, {1, 8, 2, 2});
    SearchConfig open = config_for(o);
    open.use_bound = false;
    const auto reference = run_search(g, open).index;
    const auto pruned = run_search(g, config_for(o)).index;
    suite.check(reference == pruned, [&] {
      return "molecule " + std::to_string(i) + ": " + show(pruned, reference);
    });
  }
  return suite.finish();
}

SuiteResult verify_state_bounds(const VerifyOptions &o) {
  Suite suite("state_bound_soundness");
  std::mt19937_64 rng(o.seed + 2);
  std::size_t checked = 0;
  while (checked < 10000) {
    // Every third case is a joint input of two or three molecules.
    std::vector<MolecularGraph> parts;
    const std::size_t count = checked % 3 == 2 ? 2 + rng() % 2 : 1;
    for (std::size_t i = 0; i < count; ++i) {
      parts.push_back(fixtures::random_connected(
          rng, count == 1 ? fixtures::RandomSpec{4, 8, 2, 2}
                          : fixtures::RandomSpec{2, 4, 2, 2}));
    }
    const auto g = disjoint_union(parts);
    AssemblySearch search(g, config_for(o));
    // Random descent, checking every state on the way.
    AssemblyState state = search.root();
    for (;;) {
      const auto future = exhaustive_future_S(search, state);
      const auto matches = enumerate_matchings(search.duplicates(),
                                               state.fragments, state.ceiling);
      const auto bound = search.state_bound(state);
      const auto refined = search.matched_bound(state, matches);
      ++checked;
      suite.check(future <= bound && future <= refined, [&] {
        return "state with S=" + std::to_string(state.S) + ": future "
               + std::to_string(future) + " exceeds bound "
               + std::to_string(std::min(bound, refined));
      });
      if (matches.empty()) break;
      std::uniform_int_distribution<std::size_t> d(0, matches.size() - 1);
      state = apply_match(g, search.duplicates(), state, matches[d(rng)]);
    }
  }
  return suite.finish();
}

std::vector<SuiteResult> run_verify_suites(const VerifyOptions &o) {
  return {verify_single_chain_bound(o),   verify_joint_chain_bound(o),
          verify_state_bounds(o),         verify_chain_equivalence(o),
          verify_oracle_chains(o),        verify_oracle_random(o),
          verify_pruning_differential(o)};
}

}  // namespace asmidx
