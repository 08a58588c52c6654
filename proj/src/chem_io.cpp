#include "asmidx/chem_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace asmidx {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<long> to_long(std::string_view s) {
  s = trim(s);
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return v;
}

bool looks_numeric(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+';
  });
}

bool looks_symbol(std::string_view s) {
  if (s.empty() || s.size() > 8) return false;
  const char c = s.front();
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '*';
}

// Fixed-width field, or nullopt when the line is too short.
std::optional<std::string_view> column(std::string_view line, std::size_t at,
                                       std::size_t width) {
  if (line.size() < at + width) return std::nullopt;
  return line.substr(at, width);
}

std::optional<long> field_long(std::string_view line, std::size_t at,
                              std::size_t width) {
  auto f = column(line, at, width);
  return f ? to_long(*f) : std::nullopt;
}

struct AtomRow {
  std::string symbol;
  long mass_diff = 0;
  long charge = 0;
};

AtomRow parse_atom_row(std::string_view line, std::size_t line_no) {
  AtomRow row;
  const auto t = tokens(line);
  if (t.size() < 4 || !looks_numeric(t[0]) || !looks_numeric(t[1])
      || !looks_numeric(t[2]) || !looks_symbol(t[3])) {
    throw ParseError("expected an atom row", line_no);
  }
  if (auto sym = column(line, 31, 3); sym && looks_symbol(trim(*sym))) {
    row.symbol = std::string(trim(*sym));
  } else {
    row.symbol = std::string(t[3]);
  }
  if (auto md = column(line, 34, 2)) row.mass_diff = to_long(*md).value_or(0);
  if (auto ch = column(line, 36, 3)) row.charge = to_long(*ch).value_or(0);
  return row;
}

struct BondRow {
  long a = 0, b = 0;
  std::string type;
};

BondRow parse_bond_row(std::string_view line, std::size_t line_no) {
  BondRow row;
  auto a = field_long(line, 0, 3);
  auto b = field_long(line, 3, 3);
  auto t = field_long(line, 6, 3);
  if (!a || !b || !t) {
    const auto tk = tokens(line);
    if (tk.size() < 3) throw ParseError("expected a bond row", line_no);
    a = to_long(tk[0]);
    b = to_long(tk[1]);
    t = to_long(tk[2]);
    if (!a || !b || !t) throw ParseError("expected a bond row", line_no);
  }
  row.a = *a;
  row.b = *b;
  row.type = std::to_string(*t);
  return row;
}

MoleculeRecord parse_molfile_lines(std::span<const std::string_view> lines,
                                   std::size_t first_line) {
  auto where = [&](std::size_t i) { return first_line + i + 1; };
  if (lines.size() < 4) throw ParseError("missing counts line", where(lines.size()));
  MoleculeRecord rec;
  rec.name = std::string(trim(lines[0]));
  const std::string_view counts = lines[3];
  if (counts.find("V3000") != std::string_view::npos) {
    throw ParseError("V3000 connection tables are not supported", where(3));
  }
  auto na = field_long(counts, 0, 3);
  auto nb = field_long(counts, 3, 3);
  if (!na || !nb) {
    const auto t = tokens(counts);
    if (t.size() >= 2) {
      na = to_long(t[0]);
      nb = to_long(t[1]);
    }
  }
  if (!na || !nb || *na < 0 || *nb < 0) {
    throw ParseError("malformed counts line", where(3));
  }
  const auto atoms = static_cast<std::size_t>(*na);
  const auto bonds = static_cast<std::size_t>(*nb);
  if (lines.size() < 4 + atoms + bonds) {
    throw ParseError("counts line declares " + std::to_string(atoms)
                         + " atoms and " + std::to_string(bonds)
                         + " bonds but the table is shorter",
                     where(lines.size() - 1));
  }

  std::vector<std::int64_t> vertex(atoms, -1);
  bool charged = false, isotopes = false;
  for (std::size_t i = 0; i < atoms; ++i) {
    const AtomRow row = parse_atom_row(lines[4 + i], where(4 + i));
    charged |= row.charge != 0;
    isotopes |= row.mass_diff != 0;
    const Label label{row.symbol};
    if (!is_hydrogen(label)) vertex[i] = rec.graph.add_atom(label);
  }
  for (std::size_t i = 0; i < bonds; ++i) {
    const std::size_t idx = 4 + atoms + i;
    const BondRow row = parse_bond_row(lines[idx], where(idx));
    if (row.a < 1 || row.b < 1 || static_cast<std::size_t>(row.a) > atoms
        || static_cast<std::size_t>(row.b) > atoms) {
      throw ParseError("bond references a missing atom", where(idx));
    }
    const auto va = vertex[static_cast<std::size_t>(row.a - 1)];
    const auto vb = vertex[static_cast<std::size_t>(row.b - 1)];
    if (va < 0 || vb < 0) continue;
    try {
      rec.graph.add_bond(static_cast<VertexId>(va), static_cast<VertexId>(vb),
                         Label{row.type});
    } catch (const ContractViolation &e) {
      throw ParseError(e.what(), where(idx));
    }
  }
  for (std::size_t i = 4 + atoms + bonds; i < lines.size(); ++i) {
    const auto l = lines[i];
    if (l.starts_with("M  CHG")) charged = true;
    if (l.starts_with("M  ISO")) isotopes = true;
    if (l.starts_with("M  END")) break;
  }
  if (charged) rec.warnings.push_back("formal charges ignored");
  if (isotopes) rec.warnings.push_back("isotope information ignored");
  return rec;
}

}  // namespace

MoleculeRecord parse_molfile(std::string_view text) {
  const auto lines = split_lines(text);
  MoleculeRecord rec = parse_molfile_lines(lines, 0);
  if (rec.name.empty()) rec.name = "record-1";
  rec.source = "<memory>";
  return rec;
}

SdfResult parse_sdf(std::string_view text) {
  SdfResult out;
  const auto lines = split_lines(text);
  std::size_t start = 0;
  std::size_t index = 0;
  auto flush = [&](std::size_t end) {
    std::span<const std::string_view> chunk(lines.data() + start, end - start);
    const bool blank = std::all_of(chunk.begin(), chunk.end(), [](auto l) {
      return trim(l).empty();
    });
    if (!blank) {
      try {
        MoleculeRecord rec = parse_molfile_lines(chunk, start);
        if (rec.name.empty()) rec.name = "record-" + std::to_string(index + 1);
        rec.record = index;
        rec.source = "<memory>";
        out.records.push_back(std::move(rec));
      } catch (const std::exception &e) {
        out.diagnostics.push_back({index, e.what()});
      }
      ++index;
    }
    start = end + 1;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]) == "$$$$") flush(i);
  }
  if (start < lines.size()) flush(lines.size());
  if (index == 0) out.warnings.push_back("no records in input");
  return out;
}

MoleculeRecord parse_edgelist(std::string_view text) {
  MoleculeRecord rec;
  rec.source = "<memory>";
  const auto lines = split_lines(text);
  bool header = false;
  std::map<long, std::int64_t> vertex;  // file id -> graph id, -1 = hydrogen
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto t = tokens(line);
    if (!header) {
      if (t.size() != 2 || t[0] != "mgf" || t[1] != "1") {
        throw ParseError("expected header 'mgf 1'", line_no);
      }
      header = true;
      continue;
    }
    if (t[0] == "name") {
      rec.name = std::string(trim(line.substr(4)));
    } else if (t[0] == "atom") {
      if (t.size() != 3) throw ParseError("atom needs <id> <label>", line_no);
      const auto id = to_long(t[1]);
      if (!id || *id < 0) throw ParseError("bad atom id", line_no);
      if (vertex.count(*id)) {
        throw ParseError("atom " + std::to_string(*id) + " declared twice",
                         line_no);
      }
      Label label{t[2]};
      vertex[*id] = is_hydrogen(label) ? -1 : rec.graph.add_atom(label);
    } else if (t[0] == "bond") {
      if (t.size() != 4) {
        throw ParseError("bond needs <id-a> <id-b> <label>", line_no);
      }
      const auto a = to_long(t[1]), b = to_long(t[2]);
      if (!a || !b) throw ParseError("bad bond endpoint", line_no);
      if (*a == *b) {
        throw ParseError("self-loop on atom " + std::to_string(*a), line_no);
      }
      auto ia = vertex.find(*a), ib = vertex.find(*b);
      if (ia == vertex.end() || ib == vertex.end()) {
        throw ParseError("bond references an undeclared atom", line_no);
      }
      if (ia->second < 0 || ib->second < 0) continue;
      const auto va = static_cast<VertexId>(ia->second);
      const auto vb = static_cast<VertexId>(ib->second);
      if (rec.graph.find_bond(va, vb) >= 0) {
        throw ParseError("duplicate bond between atoms " + std::to_string(*a)
                             + " and " + std::to_string(*b),
                         line_no);
      }
      try {
        rec.graph.add_bond(va, vb, Label{t[3]});
      } catch (const ContractViolation &e) {
        throw ParseError(e.what(), line_no);
      }
    } else {
      throw ParseError("unknown directive '" + std::string(t[0]) + "'",
                       line_no);
    }
  }
  if (!header) throw ParseError("missing header 'mgf 1'", 0);
  if (rec.name.empty()) rec.name = "record-1";
  return rec;
}

std::string write_edgelist(const MoleculeRecord &record) {
  std::ostringstream out;
  out << "mgf 1\n";
  if (!record.name.empty()) out << "name " << record.name << "\n";
  const auto &g = record.graph;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out << "atom " << v << " " << g.atom_label(v).str() << "\n";
  }
  for (const Bond &bd : g.bonds()) {
    out << "bond " << bd.a << " " << bd.b << " " << bd.label.str() << "\n";
  }
  return out.str();
}

std::vector<MoleculeRecord> read_molecules(
    const std::filesystem::path &path,
    std::vector<SdfDiagnostic> *diagnostics) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string(), 0);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  auto prefix = [&](const std::exception &e) {
    return ParseError(path.string() + ": " + e.what(), 0);
  };
  std::vector<MoleculeRecord> out;
  if (ext == ".mol" || ext == ".mdl") {
    try {
      out.push_back(parse_molfile(text));
    } catch (const ParseError &e) {
      throw prefix(e);
    }
    if (out.back().name.empty() || out.back().name == "record-1") {
      out.back().name = path.stem().string();
    }
  } else if (ext == ".sdf" || ext == ".sd") {
    SdfResult r = parse_sdf(text);
    if (diagnostics != nullptr) {
      diagnostics->insert(diagnostics->end(), r.diagnostics.begin(),
                          r.diagnostics.end());
    }
    out = std::move(r.records);
  } else if (ext == ".mgf") {
    try {
      out.push_back(parse_edgelist(text));
    } catch (const ParseError &e) {
      throw prefix(e);
    }
    if (out.back().name == "record-1") out.back().name = path.stem().string();
  } else {
    throw ParseError("unknown file extension '" + ext + "' for "
                         + path.string(),
                     0);
  }
  for (auto &r : out) r.source = path.string();
  return out;
}

std::string write_report_json(const ResultReport &report) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["name"] = report.name;
  j["assembly_index"] = report.assembly_index;
  j["bond_count"] = report.bond_count;
  j["duplicate_sum"] = report.duplicate_sum;
  j["states_explored"] = report.states_explored;
  j["wall_time"] = report.wall_time;
  j["peak_state_table_entries"] = report.peak_state_table_entries;
  j["memory_bytes"] = report.memory_bytes;
  j["exact"] = report.exact;
  j["lower_bound"] = report.lower_bound;
  if (!report.note.empty()) j["note"] = report.note;
  if (!report.record_hash.empty()) j["record_hash"] = report.record_hash;
  if (report.pathway) {
    auto steps = nlohmann::json::array();
    for (const auto &s : *report.pathway) {
      steps.push_back({{"left", s.left},
                       {"right", s.right},
                       {"shared", s.shared},
                       {"result_edges", s.result_edges}});
    }
    j["pathway"] = std::move(steps);
  }
  return j.dump();
}

ResultReport read_report_json(std::string_view line) {
  const auto j = nlohmann::json::parse(line);
  if (j.value("schema", "") != kReportSchema) {
    throw ParseError("unsupported report schema", 0);
  }
  ResultReport r;
  r.name = j.at("name").get<std::string>();
  r.assembly_index = j.at("assembly_index").get<std::uint32_t>();
  r.bond_count = j.at("bond_count").get<std::size_t>();
  r.duplicate_sum = j.at("duplicate_sum").get<std::uint32_t>();
  r.states_explored = j.at("states_explored").get<std::size_t>();
  r.wall_time = j.at("wall_time").get<double>();
  r.peak_state_table_entries = j.at("peak_state_table_entries").get<std::size_t>();
  r.memory_bytes = j.at("memory_bytes").get<std::size_t>();
  r.exact = j.at("exact").get<bool>();
  r.lower_bound = j.at("lower_bound").get<std::uint32_t>();
  r.note = j.value("note", "");
  r.record_hash = j.value("record_hash", "");
  if (j.contains("pathway")) {
    std::vector<ReportStep> steps;
    for (const auto &s : j["pathway"]) {
      steps.push_back({s.at("left").get<std::vector<EdgeId>>(),
                       s.at("right").get<std::vector<EdgeId>>(),
                       s.at("shared").get<std::vector<VertexId>>(),
                       s.at("result_edges").get<std::size_t>()});
    }
    r.pathway = std::move(steps);
  }
  return r;
}

std::string write_assembly_dot(const AssemblySpace &space) {
  const std::size_t n = space.nodes.size();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::uint32_t>> out(n);
  for (const auto &[a, b] : space.arcs) {
    if (a >= n || b >= n) throw ContractViolation("arc to unknown node");
    out[a].push_back(b);
    ++indegree[b];
  }
  std::vector<std::uint32_t> ready;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto v = ready.back();
    ready.pop_back();
    ++visited;
    for (auto w : out[v]) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  if (visited != n) throw ContractViolation("assembly space has a cycle");

  std::ostringstream dot;
  dot << "digraph assembly {\n  rankdir=BT;\n";
  for (std::size_t v = 0; v < n; ++v) {
    const auto &node = space.nodes[v];
    dot << "  n" << v << " [label=\"" << node.edges << "\"";
    if (node.building_block) {
      dot << ", shape=box, tooltip=\"" << node.label << "\"";
    }
    dot << "];\n";
  }
  for (const auto &[a, b] : space.arcs) {
    dot << "  n" << a << " -> n" << b << ";\n";
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace asmidx
