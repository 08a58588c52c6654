#include "asmidx/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace asmidx::oracle {
namespace {

using Subset = std::uint32_t;

struct SmallGraph {
  std::vector<std::uint64_t> atom;                     // packed labels
  std::vector<std::vector<std::pair<int, std::uint64_t>>> adj;  // nbr, bond
  std::size_t edges = 0;
};

struct Host {
  const MolecularGraph &g;

  bool touches(EdgeId e, EdgeId f) const {
    const Bond &x = g.bond(e), &y = g.bond(f);
    return x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b;
  }

  // Edges of `within` reachable from the lowest edge of `within`.
  Subset closure(Subset within) const {
    Subset reached = within & (~within + 1);
    for (bool grew = true; grew;) {
      grew = false;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!(within >> e & 1) || (reached >> e & 1)) continue;
        for (EdgeId f = 0; f < g.edge_count(); ++f) {
          if ((reached >> f & 1) && touches(e, f)) {
            reached |= Subset{1} << e;
            grew = true;
            break;
          }
        }
      }
    }
    return reached;
  }

  bool connected(Subset s) const { return s != 0 && closure(s) == s; }

  SmallGraph extract(Subset s) const {
    SmallGraph out;
    std::map<VertexId, int> local;
    auto id = [&](VertexId v) {
      auto [it, fresh] = local.try_emplace(v, static_cast<int>(local.size()));
      if (fresh) {
        out.atom.push_back(g.atom_label(v).packed());
        out.adj.emplace_back();
      }
      return it->second;
    };
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!(s >> e & 1)) continue;
      const Bond &bd = g.bond(e);
      const int a = id(bd.a), b = id(bd.b);
      out.adj[a].push_back({b, bd.label.packed()});
      out.adj[b].push_back({a, bd.label.packed()});
      ++out.edges;
    }
    return out;
  }
};

SmallGraph whole(const MolecularGraph &g) {
  SmallGraph out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    out.atom.push_back(g.atom_label(v).packed());
    out.adj.emplace_back();
  }
  for (const Bond &bd : g.bonds()) {
    out.adj[bd.a].push_back({static_cast<int>(bd.b), bd.label.packed()});
    out.adj[bd.b].push_back({static_cast<int>(bd.a), bd.label.packed()});
    ++out.edges;
  }
  return out;
}

std::uint64_t bond_between(const SmallGraph &g, int a, int b) {
  for (const auto &[n, l] : g.adj[a]) {
    if (n == b) return l;
  }
  return 0;
}

// Tries every injective assignment in vertex order, checking labels and
// bonds against the already assigned vertices.
bool isomorphic(const SmallGraph &x, const SmallGraph &y) {
  const std::size_t n = x.atom.size();
  if (n != y.atom.size() || x.edges != y.edges) return false;
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || x.atom[i] != y.atom[j]) continue;
      if (x.adj[i].size() != y.adj[j].size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) {
        ok = bond_between(x, static_cast<int>(i), static_cast<int>(k))
             == bond_between(y, static_cast<int>(j), map[k]);
      }
      if (!ok) continue;
      map[i] = static_cast<int>(j);
      used[j] = 1;
      if (place(i + 1)) return true;
      used[j] = 0;
    }
    map[i] = -1;
    return false;
  };
  return place(0);
}

std::string profile(const SmallGraph &g) {
  std::vector<std::pair<std::uint64_t, std::size_t>> p;
  for (std::size_t v = 0; v < g.atom.size(); ++v) {
    p.push_back({g.atom[v], g.adj[v].size()});
  }
  std::sort(p.begin(), p.end());
  std::string s = std::to_string(g.edges) + ":";
  for (auto [l, d] : p) s += std::to_string(l) + "/" + std::to_string(d) + ",";
  return s;
}

struct PoolProblem {
  std::vector<std::size_t> size;                         // edges per class
  std::vector<std::vector<std::pair<int, int>>> splits;  // part classes
  std::vector<int> targets;
};

class PoolSearch {
 public:
  explicit PoolSearch(const PoolProblem &p) : p_(p) {}

  std::uint32_t solve() {
    std::set<int> need;
    for (int t : p_.targets) {
      if (p_.size[t] >= 2) need.insert(t);
    }
    if (need.empty()) return 0;
    for (std::uint32_t depth = static_cast<std::uint32_t>(need.size());;
         ++depth) {
      seen_.clear();
      std::set<int> pool = need;
      if (dfs(pool, need, depth)) return depth;
    }
  }

 private:
  bool dfs(std::set<int> &pool, std::set<int> &open, std::uint32_t depth) {
    if (open.empty()) return true;
    std::string memo;
    for (int c : pool) memo += std::to_string(c) + (open.count(c) ? "*" : ",");
    if (!seen_.insert(memo).second) return false;

    int pick = *open.begin();
    for (int c : open) {
      if (p_.size[c] > p_.size[pick]) pick = c;
    }
    open.erase(pick);
    for (const auto &[x, y] : p_.splits[pick]) {
      std::vector<int> added;
      for (int part : {x, y}) {
        if (p_.size[part] >= 2 && !pool.count(part)) {
          pool.insert(part);
          open.insert(part);
          added.push_back(part);
        }
      }
      if (pool.size() <= depth && dfs(pool, open, depth)) return true;
      for (int a : added) {
        pool.erase(a);
        open.erase(a);
      }
    }
    open.insert(pick);
    return false;
  }

  const PoolProblem &p_;
  std::unordered_set<std::string> seen_;
};

}  // namespace

bool permutation_isomorphic(const MolecularGraph &a, const MolecularGraph &b) {
  return isomorphic(whole(a), whole(b));
}

std::uint32_t brute_force_index(const MolecularGraph &graph,
                                std::size_t max_edges) {
  const std::size_t n = graph.edge_count();
  if (n > max_edges || n > 20) {
    throw std::invalid_argument("brute force refused: " + std::to_string(n)
                                + " bonds exceeds " + std::to_string(max_edges));
  }
  if (n == 0) return 0;
  Host host{graph};

  std::vector<Subset> subsets;
  for (Subset s = 1; s < (Subset{1} << n); ++s) {
    if (host.connected(s)) subsets.push_back(s);
  }

  PoolProblem problem;
  std::map<std::string, std::vector<int>> by_profile;
  std::vector<SmallGraph> reps;
  std::map<Subset, int> class_of;
  for (Subset s : subsets) {
    SmallGraph sg = host.extract(s);
    auto &bucket = by_profile[profile(sg)];
    int cls = -1;
    for (int c : bucket) {
      if (isomorphic(reps[c], sg)) {
        cls = c;
        break;
      }
    }
    if (cls < 0) {
      cls = static_cast<int>(reps.size());
      bucket.push_back(cls);
      reps.push_back(std::move(sg));
      problem.size.push_back(static_cast<std::size_t>(std::popcount(s)));
      problem.splits.emplace_back();
    }
    class_of[s] = cls;
  }

  std::vector<std::set<std::pair<int, int>>> splits(reps.size());
  for (Subset s : subsets) {
    if (std::popcount(s) < 2) continue;
    // Every split into two connected halves, each counted once.
    for (Subset part = (s - 1) & s; part > 0; part = (part - 1) & s) {
      const Subset other = s ^ part;
      if (part < other) continue;
      auto px = class_of.find(part);
      auto py = class_of.find(other);
      if (px == class_of.end() || py == class_of.end()) continue;
      splits[class_of[s]].insert(std::minmax(px->second, py->second));
    }
  }
  for (std::size_t c = 0; c < reps.size(); ++c) {
    problem.splits[c].assign(splits[c].begin(), splits[c].end());
    // Try splits with the largest part first.
    std::sort(problem.splits[c].begin(), problem.splits[c].end(),
              [&](auto a, auto b) {
                return std::max(problem.size[a.first], problem.size[a.second])
                       > std::max(problem.size[b.first], problem.size[b.second]);
              });
  }

  // Connected parts of the whole graph are the targets.
  std::vector<Subset> parts;
  for (Subset left = (Subset{1} << n) - 1; left != 0;) {
    parts.push_back(host.closure(left));
    left &= ~parts.back();
  }
  std::set<int> targets;
  for (Subset p : parts) targets.insert(class_of[p]);
  problem.targets.assign(targets.begin(), targets.end());

  PoolSearch search(problem);
  return search.solve();
}

std::uint32_t shortest_addition_chain(std::uint32_t n) {
  if (n < 1 || n > 1024) {
    throw std::invalid_argument("addition chain target out of range");
  }
  std::vector<std::uint32_t> chain{1};
  std::function<bool(std::uint32_t)> grow = [&](std::uint32_t left) -> bool {
    const std::uint32_t last = chain.back();
    if (last == n) return true;
    if (left == 0 || (static_cast<std::uint64_t>(last) << left) < n) {
      return false;
    }
    for (std::size_t i = chain.size(); i-- > 0;) {
      for (std::size_t j = i + 1; j-- > 0;) {
        const std::uint32_t next = chain[i] + chain[j];
        if (next <= last) break;
        if (next > n) continue;
        chain.push_back(next);
        if (grow(left - 1)) return true;
        chain.pop_back();
      }
    }
    return false;
  };
  for (std::uint32_t depth = 0;; ++depth) {
    chain.assign({1});
    if (grow(depth)) return depth;
  }
}

std::uint32_t conditional_chain_length(std::uint32_t l, std::uint32_t m) {
  if (m < 2 || m > l) {
    throw std::invalid_argument("conditional chain needs 2 <= m <= l");
  }
  std::vector<std::uint32_t> chain{1};
  std::function<bool(std::uint32_t, bool)> grow = [&](std::uint32_t left,
                                                      bool has_m) -> bool {
    const std::uint32_t last = chain.back();
    if (last == l && has_m) return true;
    if (left == 0) return false;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (std::size_t j = i; j < chain.size(); ++j) {
        if (chain[i] > m && chain[j] > m) continue;
        const std::uint32_t next = chain[i] + chain[j];
        if (next <= last || next > l) continue;
        chain.push_back(next);
        if (grow(left - 1, has_m || next == m)) return true;
        chain.pop_back();
      }
    }
    return false;
  };
  for (std::uint32_t depth = 0;; ++depth) {
    chain.assign({1});
    if (grow(depth, m == 1)) return depth;
  }
}

std::uint32_t joint_conditional_chain_length(std::span<const std::uint32_t> ls,
                                             std::uint32_t m) {
  if (ls.empty() || m < 2) {
    throw std::invalid_argument("joint chain needs targets and m >= 2");
  }
  const std::uint32_t top = *std::max_element(ls.begin(), ls.end());
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max() / 4;

  // Fewest additions of chain numbers to get from some chain number to v.
  auto private_costs = [&](const std::vector<std::uint32_t> &chain) {
    std::vector<std::uint32_t> cost(top + 1, kInf);
    for (auto c : chain) {
      if (c <= top) cost[c] = 0;
    }
    for (std::uint32_t v = 1; v <= top; ++v) {
      for (auto c : chain) {
        if (c < v && cost[v - c] + 1 < cost[v]) cost[v] = cost[v - c] + 1;
      }
    }
    return cost;
  };

  std::uint32_t best = kInf;
  std::vector<std::uint32_t> chain{1};
  std::function<void()> grow = [&] {
    const std::uint32_t steps = static_cast<std::uint32_t>(chain.size() - 1);
    if (steps >= best) return;
    if (chain.back() == m) {
      const auto cost = private_costs(chain);
      std::uint32_t total = steps + static_cast<std::uint32_t>(ls.size() - 1);
      for (auto l : ls) total += cost[l];
      best = std::min(best, total);
      return;
    }
    const std::uint32_t last = chain.back();
    for (std::size_t i = 0; i < chain.size(); ++i) {
      for (std::size_t j = i; j < chain.size(); ++j) {
        const std::uint32_t next = chain[i] + chain[j];
        if (next <= last || next > m) continue;
        chain.push_back(next);
        grow();
        chain.pop_back();
      }
    }
  };
  grow();
  return best;
}

}  // namespace asmidx::oracle
