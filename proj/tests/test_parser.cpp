#include "doctest.h"
#include "wcq/parser.hpp"

using namespace wcq;

namespace {
Algebra ring() {
  return build_algebra(1, {{"x1", {1}, 0}, {"x2", {1}, 0}, {"y1", {-1}, 0}, {"e", {0}, -1}}, {}, {"x1"});
}
}  // namespace

TEST_CASE("rational coefficients and exponents") {
  Algebra a = ring();
  Element p = a.parse(" 3/6*x1^2*y1 - 2 * x2 + 4/2 ");
  CHECK(p.str() == "2 - 2*x2 + 1/2*x1^2*y1");
  CHECK(a.parse("x1^-1*x1").str() == "1");
  CHECK(a.parse("(x1 + x2)*(x1 - x2)").str() == a.parse("x1^2 - x2^2").str());
  CHECK(a.parse("e*e").is_zero());
}

TEST_CASE("trailing operator reports its offset") {
  Algebra a = ring();
  try {
    a.parse("x1*");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("parse errors") {
  Algebra a = ring();
  auto code = [&](const char* s) {
    try {
      a.parse(s);
    } catch (const Error& e) {
      return std::make_pair(e.code(), e.offset());
    }
    return std::make_pair(ErrorCode::InvalidArgument, std::size_t{0});
  };
  CHECK(code("x1 + q").first == ErrorCode::UnknownVariable);
  CHECK(code("x1 + q").second == 5);
  CHECK(code("x2^-1").first == ErrorCode::InvalidExponent);
  CHECK(code("1/0").first == ErrorCode::SyntaxError);
  CHECK(code("").first == ErrorCode::SyntaxError);
  CHECK(code("x1 x2").first == ErrorCode::SyntaxError);
  CHECK(code("x1 x2").second == 3);
}

TEST_CASE("printing round trips") {
  Algebra a = ring();
  for (const char* s : {"x1*y1 + x2^3", "-1/3*e*x2 + 7", "x1^-3*y1^2 - x2"}) {
    Element p = a.parse(s);
    CHECK(a.parse(p.str()) == p);
  }
}
