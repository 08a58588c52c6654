#include "asmidx/isomorphism.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace asmidx {
namespace {

void append_label(std::string &out, Label l) {
  const std::uint64_t p = l.packed();
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((p >> shift) & 0xffU));
  }
}

void append_u32(std::string &out, std::uint32_t x) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<char>((x >> shift) & 0xffU));
  }
}

// Vertices that carry at least one edge.
std::vector<std::uint32_t> active_vertices(const FragmentView &view) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < view.vertex_count(); ++v) {
    if (view.degree(v) > 0) out.push_back(v);
  }
  return out;
}

std::vector<std::uint32_t> tree_centers(const FragmentView &view,
                                        std::span<const std::uint32_t> active) {
  std::vector<std::size_t> deg(view.vertex_count(), 0);
  std::vector<std::uint32_t> leaves;
  for (auto v : active) {
    deg[v] = view.degree(v);
    if (deg[v] <= 1) leaves.push_back(v);
  }
  std::size_t left = active.size();
  while (left > 2) {
    std::vector<std::uint32_t> next;
    left -= leaves.size();
    for (auto leaf : leaves) {
      deg[leaf] = 0;
      for (const auto &inc : view.incident(leaf)) {
        if (deg[inc.neighbor] > 0 && --deg[inc.neighbor] == 1) {
          next.push_back(inc.neighbor);
        }
      }
    }
    leaves = std::move(next);
  }
  std::sort(leaves.begin(), leaves.end());
  return leaves;
}

std::string rooted_tree_code(const FragmentView &view, std::uint32_t root) {
  const std::size_t n = view.vertex_count();
  constexpr std::uint32_t kNone = ~0U;
  std::vector<std::uint32_t> parent(n, kNone), parent_edge(n, kNone);
  std::vector<std::uint32_t> order{root};
  std::vector<std::uint32_t> depth(n, 0);
  parent[root] = root;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = order[i];
    for (const auto &inc : view.incident(v)) {
      if (parent[inc.neighbor] == kNone) {
        parent[inc.neighbor] = v;
        parent_edge[inc.neighbor] = inc.edge;
        depth[inc.neighbor] = depth[v] + 1;
        order.push_back(inc.neighbor);
      }
    }
  }

  // Children of each vertex as (bond label, child) pairs; filled in BFS order.
  std::vector<std::vector<std::pair<std::uint64_t, std::uint32_t>>> kids(n);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto c = order[i];
    kids[parent[c]].emplace_back(view.edges[parent_edge[c]].label.packed(), c);
  }

  // AHU ranking level by level, deepest first. Ranks are only compared
  // between vertices on the same level, which is all a parent ever needs.
  std::vector<std::uint32_t> rank(n, 0);
  using Signature = std::pair<std::uint64_t,
                              std::vector<std::pair<std::uint64_t,
                                                    std::uint32_t>>>;
  std::size_t end = order.size();
  while (end > 0) {
    const auto level = depth[order[end - 1]];
    std::size_t begin = end;
    while (begin > 0 && depth[order[begin - 1]] == level) --begin;

    std::vector<std::pair<Signature, std::uint32_t>> sigs;
    sigs.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      const auto v = order[i];
      Signature s;
      s.first = view.atoms[v].packed();
      for (const auto &[bond, child] : kids[v]) {
        s.second.emplace_back(bond, rank[child]);
      }
      std::sort(s.second.begin(), s.second.end());
      sigs.emplace_back(std::move(s), v);
    }
    std::sort(sigs.begin(), sigs.end());
    std::uint32_t r = 0;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
      if (i > 0 && sigs[i].first != sigs[i - 1].first) ++r;
      rank[sigs[i].second] = r;
    }
    end = begin;
  }

  for (auto &k : kids) {
    std::sort(k.begin(), k.end(), [&](const auto &x, const auto &y) {
      return std::pair(x.first, rank[x.second])
             < std::pair(y.first, rank[y.second]);
    });
  }

  // Iterative serialisation: '(' atom {bond child}* ')'.
  std::string code;
  code.reserve(order.size() * 18);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{root, 0}};
  code.push_back('(');
  append_label(code, view.atoms[root]);
  while (!stack.empty()) {
    auto &[v, next] = stack.back();
    if (next == kids[v].size()) {
      code.push_back(')');
      stack.pop_back();
      continue;
    }
    const auto [bond, child] = kids[v][next++];
    for (int shift = 56; shift >= 0; shift -= 8) {
      code.push_back(static_cast<char>((bond >> shift) & 0xffU));
    }
    code.push_back('(');
    append_label(code, view.atoms[child]);
    stack.emplace_back(child, 0);
  }
  return code;
}

std::vector<std::uint64_t> refined_colours(const FragmentView &view,
                                           int rounds) {
  const std::size_t n = view.vertex_count();
  std::vector<std::uint64_t> colour(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    colour[v] = EdgeMask::mix(view.atoms[v].packed() * 31 + view.degree(v));
  }
  std::vector<std::uint64_t> next(n);
  std::vector<std::uint64_t> around;
  for (int r = 0; r < rounds; ++r) {
    for (std::uint32_t v = 0; v < n; ++v) {
      around.clear();
      for (const auto &inc : view.incident(v)) {
        around.push_back(EdgeMask::mix(
            view.edges[inc.edge].label.packed() ^ colour[inc.neighbor]));
      }
      std::sort(around.begin(), around.end());
      std::uint64_t h = EdgeMask::mix(colour[v]);
      for (auto x : around) h = EdgeMask::mix(h ^ x);
      next[v] = h;
    }
    colour.swap(next);
  }
  return colour;
}

class Matcher {
 public:
  Matcher(const FragmentView &a, const FragmentView &b) : a_(a), b_(b) {}

  bool run() {
    const std::size_t n = a_.vertex_count();
    map_.assign(n, kUnmapped);
    used_.assign(b_.vertex_count(), 0);
    build_order();
    return extend(0);
  }

 private:
  static constexpr std::uint32_t kUnmapped = ~0U;

  // BFS order from the vertex whose (label, degree) class is rarest in `a`,
  // restarting for further components.
  void build_order() {
    const std::size_t n = a_.vertex_count();
    std::vector<std::size_t> freq(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
      for (std::uint32_t u = 0; u < n; ++u) {
        if (a_.atoms[u] == a_.atoms[v] && a_.degree(u) == a_.degree(v)) {
          ++freq[v];
        }
      }
    }
    std::vector<std::uint32_t> by_rarity(n);
    std::iota(by_rarity.begin(), by_rarity.end(), 0U);
    std::stable_sort(by_rarity.begin(), by_rarity.end(),
                     [&](auto x, auto y) {
                       if (freq[x] != freq[y]) return freq[x] < freq[y];
                       return a_.degree(x) > a_.degree(y);
                     });
    std::vector<char> placed(n, 0);
    order_.clear();
    anchor_.clear();
    anchor_label_.clear();
    for (auto s : by_rarity) {
      if (placed[s]) continue;
      placed[s] = 1;
      order_.push_back(s);
      anchor_.push_back(kUnmapped);
      anchor_label_.emplace_back();
      for (std::size_t i = order_.size() - 1; i < order_.size(); ++i) {
        const auto v = order_[i];
        for (const auto &inc : a_.incident(v)) {
          if (!placed[inc.neighbor]) {
            placed[inc.neighbor] = 1;
            order_.push_back(inc.neighbor);
            anchor_.push_back(v);
            anchor_label_.push_back(a_.edges[inc.edge].label);
          }
        }
      }
    }
  }

  bool feasible(std::uint32_t va, std::uint32_t vb) const {
    if (used_[vb] || a_.atoms[va] != b_.atoms[vb]
        || a_.degree(va) != b_.degree(vb)) {
      return false;
    }
    std::size_t mapped_a = 0;
    for (const auto &inc : a_.incident(va)) {
      const auto target = map_[inc.neighbor];
      if (target == kUnmapped) continue;
      ++mapped_a;
      bool found = false;
      for (const auto &incb : b_.incident(vb)) {
        if (incb.neighbor == target) {
          found = a_.edges[inc.edge].label == b_.edges[incb.edge].label;
          break;
        }
      }
      if (!found) return false;
    }
    std::size_t mapped_b = 0;
    for (const auto &incb : b_.incident(vb)) mapped_b += used_[incb.neighbor];
    return mapped_a == mapped_b;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size()) return true;
    const auto va = order_[depth];
    auto attempt = [&](std::uint32_t vb) {
      if (!feasible(va, vb)) return false;
      map_[va] = vb;
      used_[vb] = 1;
      if (extend(depth + 1)) return true;
      map_[va] = kUnmapped;
      used_[vb] = 0;
      return false;
    };
    if (anchor_[depth] == kUnmapped) {
      for (std::uint32_t vb = 0; vb < b_.vertex_count(); ++vb) {
        if (attempt(vb)) return true;
      }
      return false;
    }
    const auto image = map_[anchor_[depth]];
    for (const auto &incb : b_.incident(image)) {
      if (b_.edges[incb.edge].label != anchor_label_[depth]) continue;
      if (attempt(incb.neighbor)) return true;
    }
    return false;
  }

  const FragmentView &a_;
  const FragmentView &b_;
  std::vector<std::uint32_t> order_, anchor_, map_;
  std::vector<Label> anchor_label_;
  std::vector<char> used_;
};

template <class Fn>
std::vector<std::uint64_t> sorted_profile(Fn &&fn, std::size_t n) {
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string tree_canonical_code(const FragmentView &view) {
  const auto active = active_vertices(view);
  if (view.edge_count() == 0) {
    if (view.vertex_count() == 0) return {};
    if (view.vertex_count() != 1) {
      throw ContractViolation("tree code needs a connected view");
    }
    std::string code("(");
    append_label(code, view.atoms[0]);
    code.push_back(')');
    return code;
  }
  const auto conn = is_connected_and_acyclic(view);
  if (!conn.connected || !conn.acyclic
      || active.size() != view.vertex_count()) {
    throw ContractViolation("tree code needs a connected acyclic view");
  }
  const auto centers = tree_centers(view, active);
  std::string best = rooted_tree_code(view, centers.front());
  if (centers.size() == 2) {
    std::string other = rooted_tree_code(view, centers.back());
    if (other < best) best = std::move(other);
  }
  return best;
}

bool graphs_isomorphic(const FragmentView &a, const FragmentView &b) {
  if (a.vertex_count() != b.vertex_count()
      || a.edge_count() != b.edge_count()) {
    return false;
  }
  const std::size_t n = a.vertex_count();
  // (label, degree) multiset.
  std::vector<std::pair<std::uint64_t, std::size_t>> pa(n), pb(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    pa[i] = {a.atoms[i].packed(), a.degree(i)};
    pb[i] = {b.atoms[i].packed(), b.degree(i)};
  }
  std::sort(pa.begin(), pa.end());
  std::sort(pb.begin(), pb.end());
  if (pa != pb) return false;
  const auto ea = sorted_profile(
      [&](std::size_t i) { return a.edges[i].label.packed(); },
      a.edge_count());
  const auto eb = sorted_profile(
      [&](std::size_t i) { return b.edges[i].label.packed(); },
      b.edge_count());
  if (ea != eb) return false;
  if (n == 0) return true;
  auto ca = refined_colours(a, 2);
  auto cb = refined_colours(b, 2);
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return false;
  return Matcher(a, b).run();
}

std::string invariant_signature(const FragmentView &view) {
  std::string sig;
  const auto active = active_vertices(view);
  append_u32(sig, static_cast<std::uint32_t>(active.size()));
  append_u32(sig, static_cast<std::uint32_t>(view.edge_count()));
  // Cycle rank of a connected view: E - V + 1.
  append_u32(sig, static_cast<std::uint32_t>(view.edge_count() + 1
                                             - active.size()));
  auto colours = refined_colours(view, 3);
  std::vector<std::uint64_t> kept;
  kept.reserve(active.size());
  for (auto v : active) kept.push_back(colours[v]);
  std::sort(kept.begin(), kept.end());
  for (auto c : kept) {
    for (int shift = 56; shift >= 0; shift -= 8) {
      sig.push_back(static_cast<char>((c >> shift) & 0xffU));
    }
  }
  return sig;
}

CanonicalKey CanonicalRegistry::key_for(const FragmentView &view) {
  const auto conn = is_connected_and_acyclic(view);
  if (view.edge_count() > 0 && !conn.connected) {
    throw ContractViolation("canonical key needs a connected view");
  }
  if (conn.acyclic) {
    return {CanonicalKey::Kind::tree, tree_canonical_code(view)};
  }
  std::string sig = invariant_signature(view);
  auto &bucket = buckets_[sig];
  std::uint32_t id = 0;
  bool found = false;
  for (const Member &m : bucket) {
    ++iso_tests_;
    if (graphs_isomorphic(m.view, view)) {
      id = m.id;
      found = true;
      break;
    }
  }
  if (!found) {
    id = static_cast<std::uint32_t>(bucket.size());
    bucket.push_back({view, id});
    ++cyclic_count_;
  }
  append_u32(sig, id);
  return {CanonicalKey::Kind::cyclic, std::move(sig)};
}

}  // namespace asmidx
