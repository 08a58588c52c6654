#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asmidx/chem_io.hpp"
#include "asmidx/pathway.hpp"
#include "asmidx/search.hpp"

namespace asmidx {

struct RunOptions {
  SearchConfig search;
  bool pathway = false;
};

struct Computation {
  ResultReport report;
  SearchResult search;
  FragmentationTrace trace;
  std::vector<JoinStep> steps;  // filled when pathway output is requested
  AssemblySpace space;
};

Computation compute(const MolecularGraph &graph, const std::string &name,
                    const RunOptions &options = {});

/// Stable hex digest of a record's edge-list serialization.
std::string record_hash(const MoleculeRecord &record);

struct BatchConfig {
  std::filesystem::path out_dir;
  std::size_t workers = 1;
  RunOptions run;
  // Stop after this many new computations (simulates an interrupted run).
  std::optional<std::size_t> stop_after;
  // Cross-check records with at most this many bonds against the oracle.
  std::optional<std::size_t> oracle_max_edges;
};

struct BatchOutcome {
  std::size_t computed = 0;
  std::size_t skipped = 0;  // already present in results.jsonl
  std::size_t failed = 0;
  std::size_t oracle_checked = 0;
  std::size_t oracle_mismatches = 0;
  std::vector<std::string> errors;
};

/// Writes <out>/results.jsonl (one report per record, record order) and
/// <out>/summary.csv (aggregates per bond count). Records whose hash is
/// already in results.jsonl are not recomputed.
BatchOutcome run_batch(std::span<const MoleculeRecord> records,
                       const BatchConfig &config);

}  // namespace asmidx
