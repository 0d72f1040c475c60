#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "phinfer/alphabet.hpp"
#include "phinfer/heap_sketch.hpp"

namespace phinfer {

// Malformed PHT input; line() is 1-based, 0 when not tied to a line.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// PHT (position heap tree) text format, version 1:
//
//   pht 1
//   flags numbered=<yes|no> labeled=<yes|no> links=<yes|no>
//   alphabet <letters>          (optional)
//   root <id>
//   edge <parent-id> <child-id> <letter|->
//   num <id> <int>
//   slink <from-id> <to-id>
//
// '#' starts a comment. An edge's parent must be declared on an earlier
// line. The flags fix which of labels, num records and slink records must
// (or must not) appear.
struct PhtDocument {
  HeapSketch sketch;
  std::optional<Alphabet> alphabet;
};

PhtDocument parse_pht(std::string_view text);
PhtDocument read_pht_file(const std::filesystem::path& path);

// Canonical rendering: records in node order, no comments.
std::string write_pht(const PhtDocument& doc);

}  // namespace phinfer
