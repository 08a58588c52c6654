#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace asmidx {

/// Atom or bond label, stored as up to eight bytes packed into one word.
///
/// Packing is big-endian so that comparing two labels orders them like their
/// strings. Labels are opaque: "4" and "ar" are just different bond labels.
class Label {
 public:
  static constexpr std::size_t kMaxLength = 8;

  constexpr Label() = default;

  /// Throws std::invalid_argument for empty text, text longer than
  /// kMaxLength, or text containing whitespace.
  explicit Label(std::string_view text);

  std::string str() const;
  std::uint64_t packed() const noexcept { return packed_; }
  bool empty() const noexcept { return packed_ == 0; }

  friend auto operator<=>(const Label &, const Label &) = default;

 private:
  std::uint64_t packed_ = 0;
};

/// Hydrogen isotopes are stripped at ingestion.
bool is_hydrogen(Label atom) noexcept;

}  // namespace asmidx

template <>
struct std::hash<asmidx::Label> {
  std::size_t operator()(const asmidx::Label &l) const noexcept {
    return std::hash<std::uint64_t>{}(l.packed());
  }
};
