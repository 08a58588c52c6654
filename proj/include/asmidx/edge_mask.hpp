#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "asmidx/errors.hpp"

namespace asmidx {

using EdgeId = std::uint32_t;

/// Largest supported root graph, in edges. Exact assembly indices are out of
/// reach long before this for anything but chains and joint sets.
inline constexpr std::size_t kMaxEdges = 256;

/// Boolean edge list over the edge index space of one root graph.
///
/// The width is the root graph's edge count and never changes; bits beyond
/// the width are always zero. Storage is inline so masks copy without
/// allocating.
class EdgeMask {
 public:
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kWords = kMaxEdges / kWordBits;

  EdgeMask() = default;

  explicit EdgeMask(std::size_t width) : width_(check_width(width)) {}

  static EdgeMask full(std::size_t width) {
    EdgeMask m(width);
    for (std::size_t i = 0; i < width; ++i) m.set(i);
    return m;
  }

  static EdgeMask from_edges(std::size_t width, std::span<const EdgeId> edges) {
    EdgeMask m(width);
    for (EdgeId e : edges) m.set(e);
    return m;
  }

  std::size_t width() const noexcept { return width_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }

  void set(std::size_t i) {
    if (i >= width_) {
      throw ContractViolation("edge " + std::to_string(i)
                              + " outside mask width "
                              + std::to_string(width_));
    }
    words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
  }

  void reset(std::size_t i) noexcept {
    words_[i / kWordBits] &= ~(std::uint64_t{1} << (i % kWordBits));
  }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool none() const noexcept {
    std::uint64_t acc = 0;
    for (auto w : words_) acc |= w;
    return acc == 0;
  }

  bool any() const noexcept { return !none(); }

  /// Lowest set edge, or width() when empty.
  std::size_t first() const noexcept {
    for (std::size_t i = 0; i < kWords; ++i) {
      if (words_[i] != 0) {
        return i * kWordBits
               + static_cast<std::size_t>(std::countr_zero(words_[i]));
      }
    }
    return width_;
  }

  bool intersects(const EdgeMask &o) const {
    check_same_width(o);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < kWords; ++i) acc |= words_[i] & o.words_[i];
    return acc != 0;
  }

  bool is_subset_of(const EdgeMask &o) const {
    check_same_width(o);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < kWords; ++i) acc |= words_[i] & ~o.words_[i];
    return acc == 0;
  }

  EdgeMask &operator&=(const EdgeMask &o) {
    check_same_width(o);
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= o.words_[i];
    return *this;
  }
  EdgeMask &operator|=(const EdgeMask &o) {
    check_same_width(o);
    for (std::size_t i = 0; i < kWords; ++i) words_[i] |= o.words_[i];
    return *this;
  }
  EdgeMask &operator^=(const EdgeMask &o) {
    check_same_width(o);
    for (std::size_t i = 0; i < kWords; ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  /// this &= ~o
  EdgeMask &subtract(const EdgeMask &o) {
    check_same_width(o);
    for (std::size_t i = 0; i < kWords; ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend EdgeMask operator&(EdgeMask a, const EdgeMask &b) { return a &= b; }
  friend EdgeMask operator|(EdgeMask a, const EdgeMask &b) { return a |= b; }
  friend EdgeMask operator^(EdgeMask a, const EdgeMask &b) { return a ^= b; }

  friend bool operator==(const EdgeMask &a, const EdgeMask &b) noexcept {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }

  /// Lexicographic on the bit array from edge 0 upward: at the first
  /// differing edge, the mask without it orders first.
  friend bool operator<(const EdgeMask &a, const EdgeMask &b) noexcept {
    if (a.width_ != b.width_) return a.width_ < b.width_;
    for (std::size_t i = 0; i < kWords; ++i) {
      const std::uint64_t diff = a.words_[i] ^ b.words_[i];
      if (diff != 0) {
        const std::uint64_t lowest = diff & (~diff + 1);
        return (b.words_[i] & lowest) != 0;
      }
    }
    return false;
  }

  template <class Fn>
  void for_each(Fn &&fn) const {
    for (std::size_t i = 0; i < kWords; ++i) {
      std::uint64_t w = words_[i];
      while (w != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        fn(static_cast<EdgeId>(i * kWordBits + bit));
        w &= w - 1;
      }
    }
  }

  std::vector<EdgeId> edges() const {
    std::vector<EdgeId> out;
    out.reserve(count());
    for_each([&](EdgeId e) { out.push_back(e); });
    return out;
  }

  std::span<const std::uint64_t, kWords> words() const noexcept {
    return words_;
  }

  std::uint64_t hash(std::uint64_t seed = 0) const noexcept {
    std::uint64_t h = mix(seed ^ width_);
    for (auto w : words_) h = mix(h ^ w);
    return h;
  }

  /// "0110..." with edge 0 first.
  std::string to_string() const {
    std::string s(width_, '0');
    for_each([&](EdgeId e) { s[e] = '1'; });
    return s;
  }

  static std::uint64_t mix(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  static std::uint16_t check_width(std::size_t width) {
    if (width > kMaxEdges) {
      throw ContractViolation("graph has " + std::to_string(width)
                              + " edges; at most "
                              + std::to_string(kMaxEdges) + " supported");
    }
    return static_cast<std::uint16_t>(width);
  }

  void check_same_width(const EdgeMask &o) const {
    if (o.width_ != width_) {
      throw ContractViolation("edge mask width mismatch: "
                              + std::to_string(width_) + " vs "
                              + std::to_string(o.width_));
    }
  }

  std::array<std::uint64_t, kWords> words_{};
  std::uint16_t width_ = 0;
};

}  // namespace asmidx

template <>
struct std::hash<asmidx::EdgeMask> {
  std::size_t operator()(const asmidx::EdgeMask &m) const noexcept {
    return m.hash();
  }
};
