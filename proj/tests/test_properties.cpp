#include "doctest.h"

#include "properties.hpp"

using namespace wcq;

namespace {

constexpr int kCases = 1000;

void expect_clean(const props::Outcome& o) {
  INFO(o.name, ": ", o.first_failure);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("graded commutativity: a b = (-1)^{|a||b|} b a") { expect_clean(props::graded_commutativity(kCases)); }

TEST_CASE("Leibniz rule: d(ab) = d(a) b + (-1)^{|a|} a d(b)") { expect_clean(props::leibniz(kCases)); }

TEST_CASE("d squares to zero") { expect_clean(props::d_squared(kCases)); }

TEST_CASE("canonical form is idempotent under print and parse") {
  expect_clean(props::canonical_idempotence(kCases));
}

TEST_CASE("rank agrees with naive elimination") { expect_clean(props::rank_vs_naive(kCases)); }

TEST_CASE("SIMD and scalar modular rank agree") { expect_clean(props::simd_vs_scalar(kCases)); }
