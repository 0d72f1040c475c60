#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phinfer {

// Ordered set of single-byte letters. The order given at construction is the
// tie-breaking order used everywhere downstream (child order, permutations).
class Alphabet {
 public:
  // Throws std::invalid_argument on empty input, duplicates, or letters that
  // are not printable non-space ASCII (`#` and `-` are reserved by PHT).
  explicit Alphabet(std::string_view letters);

  // Sorted distinct letters of `text`; throws on empty text.
  static Alphabet of_text(std::string_view text);

  [[nodiscard]] std::size_t size() const noexcept { return letters_.size(); }
  [[nodiscard]] std::string_view letters() const noexcept { return letters_; }
  [[nodiscard]] char operator[](std::size_t i) const { return letters_[i]; }
  [[nodiscard]] bool contains(char c) const noexcept { return rank(c) >= 0; }
  // Position of `c` in the alphabet order, or -1.
  [[nodiscard]] int rank(char c) const noexcept {
    return rank_[static_cast<unsigned char>(c)];
  }

  static bool is_letter(char c) noexcept;

  friend bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.letters_ == b.letters_;
  }

 private:
  std::string letters_;
  std::array<int, 256> rank_{};
};

}  // namespace phinfer
