#include "phinfer/alphabet.hpp"

#include <algorithm>

namespace phinfer {

bool Alphabet::is_letter(char c) noexcept {
  const auto u = static_cast<unsigned char>(c);
  return u > 0x20 && u < 0x7f && c != '#' && c != '-';
}

Alphabet::Alphabet(std::string_view letters) : letters_(letters) {
  if (letters_.empty()) throw std::invalid_argument("alphabet: empty");
  rank_.fill(-1);
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    const char c = letters_[i];
    if (!is_letter(c)) {
      throw std::invalid_argument(std::string("alphabet: bad letter '") + c + "'");
    }
    auto& slot = rank_[static_cast<unsigned char>(c)];
    if (slot >= 0) {
      throw std::invalid_argument(std::string("alphabet: duplicate letter '") + c + "'");
    }
    slot = static_cast<int>(i);
  }
}

Alphabet Alphabet::of_text(std::string_view text) {
  std::string letters(text);
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  return Alphabet(letters);
}

}  // namespace phinfer
