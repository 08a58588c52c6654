#include "asmidx/label.hpp"

#include <cctype>
#include <stdexcept>

namespace asmidx {

Label::Label(std::string_view text) {
  if (text.empty() || text.size() > kMaxLength) {
    throw std::invalid_argument("label must be 1-8 characters: '"
                                + std::string(text) + "'");
  }
  for (std::size_t i = 0; i < kMaxLength; ++i) {
    std::uint64_t byte = 0;
    if (i < text.size()) {
      const auto c = static_cast<unsigned char>(text[i]);
      if (std::isspace(c) || c == 0) {
        throw std::invalid_argument("label contains whitespace: '"
                                    + std::string(text) + "'");
      }
      byte = c;
    }
    packed_ = (packed_ << 8) | byte;
  }
}

std::string Label::str() const {
  std::string out;
  for (int shift = 56; shift >= 0; shift -= 8) {
    const auto c = static_cast<char>((packed_ >> shift) & 0xffU);
    if (c == 0) break;
    out.push_back(c);
  }
  return out;
}

bool is_hydrogen(Label atom) noexcept {
  static const Label h("H"), d("D"), t("T");
  return atom == h || atom == d || atom == t;
}

}  // namespace asmidx
