#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "phinfer/alphabet.hpp"
#include "phinfer/heap_sketch.hpp"
#include "phinfer/inference.hpp"

namespace phinfer {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultOracleMaxLen = 10;

// Exhaustive answer set: every text of length node_count-1 over `alphabet`
// that ends with a unique letter and whose heap matches the sketch under the
// problem's equivalence (exact, label-blind, isomorphic, isomorphic with
// links). Sorted. Throws CapExceeded when the length exceeds max_len.
std::vector<std::string> brute_force_oracle(const HeapSketch& s, ProblemKind kind, const Alphabet& alphabet,
                                            std::size_t max_len = kDefaultOracleMaxLen);

}  // namespace phinfer
