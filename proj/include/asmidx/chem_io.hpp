#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asmidx/errors.hpp"
#include "asmidx/molecular_graph.hpp"
#include "asmidx/pathway.hpp"

namespace asmidx {

struct MoleculeRecord {
  std::string name;
  MolecularGraph graph;
  std::string source;        // file path or "<memory>"
  std::size_t record = 0;    // 0-based position inside the source
  std::vector<std::string> warnings;
};

/// MDL molfile, V2000 connection table. Hydrogens (H, D, T) and their bonds
/// are dropped; bond type codes become bond labels as written.
MoleculeRecord parse_molfile(std::string_view text);

struct SdfDiagnostic {
  std::size_t record = 0;  // 0-based
  std::string message;
};

struct SdfResult {
  std::vector<MoleculeRecord> records;
  std::vector<SdfDiagnostic> diagnostics;  // skipped records
  std::vector<std::string> warnings;
};

/// Records separated by "$$$$" lines. Malformed records are skipped and
/// reported; a missing final separator is accepted.
SdfResult parse_sdf(std::string_view text);

/// Edge-list format:
///   mgf 1
///   name <text>            (optional)
///   atom <id> <label>
///   bond <id-a> <id-b> <label>
/// Blank lines and lines starting with '#' are ignored.
MoleculeRecord parse_edgelist(std::string_view text);
std::string write_edgelist(const MoleculeRecord &record);

/// Reads every record of a .mol, .sdf or .mgf file. Throws ParseError on
/// unreadable input or an unknown extension. SDF diagnostics are appended
/// to `diagnostics` when given.
std::vector<MoleculeRecord> read_molecules(
    const std::filesystem::path &path,
    std::vector<SdfDiagnostic> *diagnostics = nullptr);

struct ReportStep {
  std::vector<EdgeId> left;
  std::vector<EdgeId> right;
  std::vector<VertexId> shared;
  std::size_t result_edges = 0;
};

struct ResultReport {
  std::string name;
  std::uint32_t assembly_index = 0;
  std::size_t bond_count = 0;
  std::uint32_t duplicate_sum = 0;
  std::size_t states_explored = 0;
  double wall_time = 0;
  std::size_t peak_state_table_entries = 0;
  std::size_t memory_bytes = 0;
  bool exact = true;
  std::uint32_t lower_bound = 0;
  std::string note;
  std::string record_hash;
  std::optional<std::vector<ReportStep>> pathway;
};

inline constexpr std::string_view kReportSchema = "asmidx-report/1";

/// Single-line JSON with keys in sorted order.
std::string write_report_json(const ResultReport &report);
ResultReport read_report_json(std::string_view line);

/// Graphviz digraph; a fragment used twice in one join appears as two
/// parallel arcs. Throws ContractViolation when the space has a cycle.
std::string write_assembly_dot(const AssemblySpace &space);

}  // namespace asmidx
