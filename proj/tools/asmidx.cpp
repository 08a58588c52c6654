// asmidx: assembly index of molecules from the command line.
//
//   asmidx index [--joint] [--pathway] [--dot FILE] [--trace] FILES...
//   asmidx batch --out DIR [--workers N] FILE.sdf
//   asmidx verify [--bound chain|chain-floor|log]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "asmidx/chem_io.hpp"
#include "asmidx/driver.hpp"
#include "asmidx/verify.hpp"

namespace {

struct Flags {
  std::vector<std::string> inputs;
  bool joint = false;
  bool pathway = false;
  bool trace = false;
  std::string dot;
  std::optional<double> timeout;
  std::optional<std::size_t> max_states;
  std::optional<std::size_t> memory_mb;
  std::string bound = "chain";
  bool strict = false;
  bool exact_chain_term = false;
  std::size_t workers = 1;
  std::string out;
  std::optional<std::size_t> oracle_edges;
  std::optional<std::size_t> stop_after;
};

asmidx::SearchConfig search_config(const Flags &f) {
  asmidx::SearchConfig c;
  if (f.bound == "chain-floor") {
    c.bound.mode = asmidx::BoundMode::conditional_chain_floor;
  } else if (f.bound == "log") {
    c.bound.mode = asmidx::BoundMode::trivial_log;
  }
  c.bound.rule = f.strict ? asmidx::PruneRule::strict
                          : asmidx::PruneRule::non_strict;
  c.bound.exact_chain_term = f.exact_chain_term;
  c.time_budget = f.timeout;
  c.max_states = f.max_states;
  if (f.memory_mb) c.memory_budget = *f.memory_mb << 20;
  if (f.trace) {
    c.on_improvement = [](const asmidx::TracePoint &p) {
      std::cerr << p.seconds << "\t" << p.index << "\n";
    };
  }
  return c;
}

void configure_logging() {
  const char *level = std::getenv("ASMIDX_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level)
                          : spdlog::level::warn);
  spdlog::set_pattern("[%l] %v");
}

int cmd_index(const Flags &f) {
  asmidx::RunOptions options;
  options.search = search_config(f);
  options.pathway = f.pathway || !f.dot.empty();

  std::vector<asmidx::MoleculeRecord> records;
  for (const auto &path : f.inputs) {
    std::vector<asmidx::SdfDiagnostic> diags;
    auto recs = asmidx::read_molecules(path, &diags);
    for (const auto &d : diags) {
      spdlog::warn("{}: record {} skipped: {}", path, d.record + 1, d.message);
    }
    for (auto &r : recs) {
      for (const auto &w : r.warnings) spdlog::info("{}: {}", r.name, w);
      records.push_back(std::move(r));
    }
  }

  std::vector<asmidx::Computation> runs;
  if (f.joint) {
    std::vector<asmidx::MolecularGraph> graphs;
    for (const auto &r : records) graphs.push_back(r.graph);
    spdlog::info("joint run over {} molecules", graphs.size());
    runs.push_back(asmidx::compute(asmidx::disjoint_union(graphs), "joint",
                                   options));
  } else {
    for (const auto &r : records) {
      spdlog::info("{}: {} atoms, {} bonds", r.name, r.graph.vertex_count(),
                   r.graph.edge_count());
      runs.push_back(asmidx::compute(r.graph, r.name, options));
    }
  }
  for (const auto &c : runs) {
    std::cout << asmidx::write_report_json(c.report) << "\n";
  }
  if (!f.dot.empty()) {
    if (runs.size() != 1) {
      throw std::runtime_error("--dot needs exactly one result");
    }
    std::ofstream(f.dot) << asmidx::write_assembly_dot(runs.front().space);
  }
  return 0;
}

int cmd_batch(const Flags &f) {
  if (f.out.empty()) throw std::runtime_error("batch needs --out");
  std::vector<asmidx::MoleculeRecord> records;
  for (const auto &path : f.inputs) {
    std::vector<asmidx::SdfDiagnostic> diags;
    auto recs = asmidx::read_molecules(path, &diags);
    for (const auto &d : diags) {
      spdlog::warn("{}: record {} skipped: {}", path, d.record + 1, d.message);
    }
    for (auto &r : recs) records.push_back(std::move(r));
  }
  asmidx::BatchConfig config;
  config.out_dir = f.out;
  config.workers = f.workers;
  config.run.search = search_config(f);
  config.run.search.on_improvement = nullptr;
  config.oracle_max_edges = f.oracle_edges;
  config.stop_after = f.stop_after;
  const auto outcome = asmidx::run_batch(records, config);
  for (const auto &e : outcome.errors) spdlog::error("{}", e);
  std::cout << "computed " << outcome.computed << ", skipped "
            << outcome.skipped << ", failed " << outcome.failed;
  if (config.oracle_max_edges) {
    std::cout << ", oracle checked " << outcome.oracle_checked
              << ", mismatches " << outcome.oracle_mismatches;
  }
  std::cout << "\n";
  return outcome.oracle_mismatches == 0 ? 0 : 1;
}

int cmd_verify(const Flags &f) {
  asmidx::VerifyOptions options;
  options.bound = search_config(f).bound;
  bool ok = true;
  for (const auto &s : asmidx::run_verify_suites(options)) {
    std::cout << (s.passed() ? "PASS " : "FAIL ") << s.name << ": "
              << s.cases - s.failures << "/" << s.cases << " cases, "
              << s.seconds << " s";
    if (!s.passed()) std::cout << " (" << s.first_failure << ")";
    std::cout << "\n";
    ok = ok && s.passed();
  }
  return ok ? 0 : 1;
}

void add_search_flags(CLI::App *cmd, Flags &f) {
  cmd->add_option("--timeout", f.timeout, "Wall-clock budget in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-states", f.max_states, "State table entry cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--memory", f.memory_mb, "Approximate search memory cap in MiB")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--bound", f.bound, "Branch-and-bound mode")
      ->check(CLI::IsMember({"chain", "chain-floor", "log"}));
  cmd->add_flag("--strict", f.strict, "Keep states that can only tie");
  cmd->add_flag("--exact-chain-term", f.exact_chain_term,
                "Use exact addition chain lengths inside the bound");
}

}  // namespace

int main(int argc, char **argv) {
  configure_logging();
  CLI::App app{"Exact assembly index of molecular graphs"};
  app.require_subcommand(1);
  Flags f;

  auto *index = app.add_subcommand("index", "Assembly index of molecule files");
  index->add_option("files", f.inputs, ".mol, .sdf or .mgf files")
      ->required()
      ->check(CLI::ExistingFile);
  index->add_flag("--joint", f.joint, "One joint index for all molecules");
  index->add_flag("--pathway", f.pathway, "Include join steps in the report");
  index->add_option("--dot", f.dot, "Write the assembly space as DOT");
  index->add_flag("--trace", f.trace,
                  "Print <seconds>\\t<index> to stderr on each improvement");
  add_search_flags(index, f);

  auto *batch = app.add_subcommand("batch", "Resumable run over an SDF corpus");
  batch->add_option("files", f.inputs)->required()->check(CLI::ExistingFile);
  batch->add_option("--out", f.out, "Output directory")->required();
  batch->add_option("--workers", f.workers)->check(CLI::PositiveNumber);
  batch->add_option("--oracle-check", f.oracle_edges,
                    "Cross-check records up to this many bonds");
  batch->add_option("--stop-after", f.stop_after,
                    "Stop after this many new records");
  add_search_flags(batch, f);

  auto *verify = app.add_subcommand("verify", "Oracle and bound suites");
  verify->add_option("--bound", f.bound)
      ->check(CLI::IsMember({"chain", "chain-floor", "log"}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*index) return cmd_index(f);
    if (*batch) return cmd_batch(f);
    return cmd_verify(f);
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return 2;
  }
}
