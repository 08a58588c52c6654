#include "asmidx/driver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "asmidx/oracle.hpp"

namespace asmidx {

Computation compute(const MolecularGraph &graph, const std::string &name,
                    const RunOptions &options) {
  Computation c;
  AssemblySearch search(graph, options.search);
  c.search = search.run();
  c.trace = trace_parents(search);

  ResultReport &r = c.report;
  r.name = name;
  r.assembly_index = c.search.index;
  r.bond_count = c.search.bond_count;
  r.duplicate_sum = c.search.duplicate_sum;
  r.states_explored = c.search.states_explored;
  r.wall_time = c.search.seconds;
  r.peak_state_table_entries = c.search.peak_table_entries;
  r.memory_bytes = c.search.memory_bytes;
  r.exact = c.search.exact;
  r.lower_bound = c.search.lower_bound;
  r.note = c.search.note;

  if (options.pathway) {
    c.steps = generate_pathway(graph, c.trace);
    c.space = build_assembly_space(graph, c.steps);
    std::vector<ReportStep> steps;
    for (const auto &s : c.steps) {
      steps.push_back({s.left.edges(), s.right.edges(), s.shared,
                       s.result.count()});
    }
    r.pathway = std::move(steps);
  }
  return c;
}

std::string record_hash(const MoleculeRecord &record) {
  const std::string text = write_edgelist(record);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct Row {
  std::size_t bonds = 0;
  std::uint32_t index = 0;
  double seconds = 0;
  std::size_t memory = 0;
};

void write_summary(const std::filesystem::path &path,
                   const std::vector<Row> &rows) {
  std::map<std::size_t, std::vector<Row>> groups;
  for (const auto &r : rows) groups[r.bonds].push_back(r);
  std::ofstream out(path);
  out << "bond_count,molecules,mean_seconds,max_seconds,mean_memory_bytes,"
         "max_memory_bytes,min_index,mean_index,max_index\n";
  for (const auto &[bonds, g] : groups) {
    double secs = 0, max_secs = 0, mem = 0, idx = 0;
    std::size_t max_mem = 0;
    std::uint32_t lo = g.front().index, hi = g.front().index;
    for (const auto &r : g) {
      secs += r.seconds;
      max_secs = std::max(max_secs, r.seconds);
      mem += static_cast<double>(r.memory);
      max_mem = std::max(max_mem, r.memory);
      idx += r.index;
      lo = std::min(lo, r.index);
      hi = std::max(hi, r.index);
    }
    const double n = static_cast<double>(g.size());
    out << bonds << "," << g.size() << "," << secs / n << "," << max_secs
        << "," << mem / n << "," << max_mem << "," << lo << "," << idx / n
        << "," << hi << "\n";
  }
}

}  // namespace

BatchOutcome run_batch(std::span<const MoleculeRecord> records,
                       const BatchConfig &config) {
  namespace fs = std::filesystem;
  BatchOutcome outcome;
  fs::create_directories(config.out_dir);
  const fs::path results = config.out_dir / "results.jsonl";

  // Earlier lines, keyed by record hash.
  std::map<std::string, std::string> done;
  if (std::ifstream in(results); in) {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        done[j.at("record_hash").get<std::string>()] = line;
      } catch (const std::exception &) {
        // A torn final line from an interrupted run is recomputed.
      }
    }
  }

  std::vector<std::string> hashes(records.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < records.size(); ++i) {
    hashes[i] = record_hash(records[i]);
    if (done.count(hashes[i])) {
      ++outcome.skipped;
    } else {
      todo.push_back(i);
    }
  }
  if (config.stop_after && todo.size() > *config.stop_after) {
    todo.resize(*config.stop_after);
  }

  std::mutex writer;
  std::ofstream append(results, std::ios::app);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= todo.size()) return;
      const MoleculeRecord &rec = records[todo[t]];
      std::string line;
      std::optional<std::uint32_t> oracle_value;
      std::string error;
      std::uint32_t index = 0;
      try {
        Computation c = compute(rec.graph, rec.name, config.run);
        c.report.record_hash = hashes[todo[t]];
        index = c.report.assembly_index;
        auto j = nlohmann::json::parse(write_report_json(c.report));
        if (config.oracle_max_edges
            && rec.graph.edge_count() <= *config.oracle_max_edges) {
          oracle_value = oracle::brute_force_index(rec.graph,
                                                   *config.oracle_max_edges);
          j["oracle_index"] = *oracle_value;
        }
        line = j.dump();
      } catch (const std::exception &e) {
        error = rec.name + ": " + e.what();
      }
      std::lock_guard lock(writer);
      if (!error.empty()) {
        ++outcome.failed;
        outcome.errors.push_back(error);
        continue;
      }
      ++outcome.computed;
      if (oracle_value) {
        ++outcome.oracle_checked;
        if (*oracle_value != index) ++outcome.oracle_mismatches;
      }
      append << line << "\n";
      append.flush();
      done[hashes[todo[t]]] = line;
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, config.workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto &t : pool) t.join();
  append.close();

  // Rewrite in record order so the file does not depend on worker timing.
  std::vector<Row> rows;
  std::ofstream ordered(results, std::ios::trunc);
  std::set<std::string> written;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto it = done.find(hashes[i]);
    if (it == done.end() || !written.insert(hashes[i]).second) continue;
    ordered << it->second << "\n";
    const auto j = nlohmann::json::parse(it->second);
    rows.push_back({j.at("bond_count").get<std::size_t>(),
                    j.at("assembly_index").get<std::uint32_t>(),
                    j.at("wall_time").get<double>(),
                    j.at("memory_bytes").get<std::size_t>()});
  }
  write_summary(config.out_dir / "summary.csv", rows);
  return outcome;
}

}  // namespace asmidx
