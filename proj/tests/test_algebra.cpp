#include "doctest.h"
#include "wcq/algebra.hpp"

using namespace wcq;

namespace {

Algebra mukai() {
  return build_algebra(1, {{"x1", {1}, 0}, {"x2", {1}, 0}, {"y1", {-1}, 0}, {"y2", {-1}, 0}, {"e", {0}, -1}},
                       {{"e", "x1*y1 + x2*y2"}});
}

Algebra two_odd() {
  return build_algebra(1, {{"x1", {1}, 0}, {"x2", {1}, 0}, {"y1", {-1}, 0}, {"y2", {-1}, 0}, {"e1", {0}, -1},
                           {"e2", {0}, -1}},
                       {{"e1", "x1*y1"}, {"e2", "x2*y2"}});
}

}  // namespace

TEST_CASE("mukai presentation is valid") {
  Algebra a = mukai();
  CHECK(a.size() == 5);
  CHECK(apply_differential(a.gen("e")).str() == "x1*y1 + x2*y2");
  CHECK(apply_differential(a.gen("x1")).is_zero());
}

TEST_CASE("empty presentation is the coefficient field") {
  Algebra k = build_algebra(1, {}, {});
  CHECK(k.size() == 0);
  CHECK(k.one().str() == "1");
}

TEST_CASE("weight mismatch in a differential is rejected") {
  try {
    build_algebra(1, {{"x1", {1}, 0}, {"y1", {-1}, 0}, {"e", {1}, -1}}, {{"e", "x1*y1"}});
    FAIL("expected DegreeMismatch");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DegreeMismatch);
  }
}

TEST_CASE("construction errors") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([] { build_algebra(1, {{"x", {1}, 0}, {"x", {2}, 0}}, {}); }) == ErrorCode::DuplicateName);
  CHECK(code_of([] { build_algebra(1, {{"x", {0}, 0}}, {}); }) == ErrorCode::ZeroWeightBaseVariable);
  CHECK(code_of([] {
          build_algebra(1, {{"x", {1}, 0}, {"e", {1}, -1}, {"t", {1}, -2}}, {{"e", "x"}, {"t", "e"}});
        }) == ErrorCode::DifferentialNotSquareZero);
  CHECK(code_of([] { build_algebra(1, {{"x", {1}, 0}, {"e", {1}, -1}}, {{"e", "x"}}, {"e"}); }) ==
        ErrorCode::OddVariableInverted);
}

TEST_CASE("multiplication signs") {
  Algebra a = two_odd();
  Element e1 = a.gen("e1"), e2 = a.gen("e2");
  CHECK((e1 * e1).is_zero());
  CHECK((e1 * e2 + e2 * e1).is_zero());
  Element x1 = a.gen("x1"), y1 = a.gen("y1");
  CHECK(((x1 + y1) * (x1 - y1)).str() == a.parse("x1^2 - y1^2").str());
}

TEST_CASE("leibniz on a product of odd generators") {
  Algebra a = two_odd();
  Element lhs = apply_differential(a.gen("e1") * a.gen("e2"));
  Element rhs = a.parse("x1*y1*e2") - a.parse("x2*y2*e1");
  CHECK(lhs == rhs);
}

TEST_CASE("localization") {
  Algebra a = two_odd();
  Algebra b = localize(a, {"x1"});
  CHECK(b.var(b.index("x1")).inverted);
  CHECK(b.parse("x1^-2*y1").terms().size() == 1);
  CHECK(localize(a, {}).same(a));
  CHECK_THROWS_AS(localize(a, {"e1"}), Error);
}

TEST_CASE("algebra mismatch") {
  Algebra a = mukai(), b = mukai();
  CHECK_THROWS_AS(a.gen("e") * b.gen("e"), Error);
}

TEST_CASE("budget weights follow the differential") {
  Algebra a = mukai();
  CHECK(a.var(a.index("x1")).budget_weight == 1);
  CHECK(a.var(a.index("e")).budget_weight == 2);
}

TEST_CASE("algebra map chain check") {
  Algebra a = mukai();
  AlgebraMap id{a, a, {}, identity_degree_matrix(1)};
  for (std::size_t i = 0; i < a.size(); ++i) id.images.push_back(a.gen(i));
  CHECK(id.is_chain_map());
  id.images[4] = a.zero();
  std::string why;
  CHECK_FALSE(id.is_chain_map(&why));
  CHECK(why.find("e") != std::string::npos);
}
