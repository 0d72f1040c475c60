#pragma once

#include <vector>

#include <gmpxx.h>

namespace phinfer {

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Determinant of a square integer matrix by fraction-free (Bareiss)
// elimination with row pivoting. Every intermediate division is exact.
mpz_class bareiss_determinant(IntMatrix m);

}  // namespace phinfer
