#include <doctest.h>

#include "invariants.hpp"

using namespace phinfer::testkit;

namespace {

constexpr std::size_t kCases = 10000;

void require_clean(const SuiteResult& r) {
  INFO(r.first_failure);
  CHECK(r.cases == kCases);
  CHECK(r.failures == 0);
}

}  // namespace

TEST_CASE("suffix link descends to the previous position") { require_clean(check_link_descent(kCases, 11)); }

TEST_CASE("multiplicity equation and trace cycle") { require_clean(check_trace_residual(kCases, 12)); }

TEST_CASE("enumerated cycles pass the validator") { require_clean(check_cycle_validator(kCases, 13)); }

TEST_CASE("demoting sole priority edges changes nothing") { require_clean(check_demotion_invariance(kCases, 14)); }

TEST_CASE("renaming letters renames heap labels") { require_clean(check_alphabet_equivariance(kCases, 15)); }
