#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "asmidx/molecular_graph.hpp"

namespace asmidx {

/// Canonical byte code of a labelled tree: rooted at its center (the smaller
/// of the two rooted codes for bicentral trees), children ordered by bond
/// label then by subtree rank. Equal codes <=> label-preserving isomorphism.
///
/// A view without edges yields the code of its single vertex (or "" when it
/// has none). Throws ContractViolation on cyclic or disconnected input.
std::string tree_canonical_code(const FragmentView &view);

/// Label-preserving (atoms and bonds) isomorphism test by backtracking over a
/// connectivity-respecting vertex order. Fast-rejects on counts, degree
/// sequences and label multisets.
bool graphs_isomorphic(const FragmentView &a, const FragmentView &b);

struct CanonicalKey {
  enum class Kind : std::uint8_t { tree, cyclic };

  Kind kind = Kind::tree;
  std::string code;

  friend bool operator==(const CanonicalKey &, const CanonicalKey &) = default;
  friend auto operator<=>(const CanonicalKey &, const CanonicalKey &) = default;
};

/// Hands out canonical keys for connected fragments. Trees get their
/// canonical code; cyclic fragments get an invariant signature plus the id of
/// the isomorphism bucket member they match, so the registry must be shared
/// by every key that will be compared. One registry per molecule
/// computation; not thread-safe.
class CanonicalRegistry {
 public:
  CanonicalKey key_for(const FragmentView &view);

  std::size_t cyclic_classes() const noexcept { return cyclic_count_; }
  std::size_t isomorphism_tests() const noexcept { return iso_tests_; }

 private:
  struct Member {
    FragmentView view;
    std::uint32_t id;
  };
  std::unordered_map<std::string, std::vector<Member>> buckets_;
  std::size_t cyclic_count_ = 0;
  std::size_t iso_tests_ = 0;
};

/// Isomorphism-invariant signature of a cyclic (or any) fragment: counts,
/// cycle rank and refined vertex colours. Equal for isomorphic views.
std::string invariant_signature(const FragmentView &view);

}  // namespace asmidx

template <>
struct std::hash<asmidx::CanonicalKey> {
  std::size_t operator()(const asmidx::CanonicalKey &k) const noexcept {
    return std::hash<std::string>{}(k.code)
           ^ static_cast<std::size_t>(k.kind);
  }
};
