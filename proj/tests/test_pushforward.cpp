#include "doctest.h"

#include <algorithm>

#include "wcq/datasets.hpp"
#include "wcq/pushforward.hpp"

using namespace wcq;

namespace {

TruncationBox small_box() { return TruncationBox::standard(1, 6, -3, -3, 3); }

bool has_note(const Check& c, const std::string& s) {
  return std::any_of(c.notes.begin(), c.notes.end(), [&](const std::string& n) { return n.find(s) != std::string::npos; });
}

std::size_t table_dim(const HilbertTable& t, int degree, int hdeg) {
  for (const auto& e : t.entries)
    if (e.degree == Multidegree{degree} && e.hdeg == hdeg) return e.dim;
  return 0;
}

}  // namespace

TEST_CASE("reversing the grading negates weights and keeps d") {
  Algebra r = reverse_grading(mukai_algebra(1));
  CHECK(r.var(r.index("x1")).weight == Multidegree{-1});
  CHECK(r.var(r.index("y1")).weight == Multidegree{1});
  CHECK(r.element(r.differential(r.index("e"))).str() == "x1*y1");
}

TEST_CASE("Mukai Cech cover has terms {x1}, {x2}, {x1,x2}") {
  CechComplex c = cech_complex(mukai_algebra(2), Chamber::Plus, 0);
  REQUIRE(c.length() == 2);
  REQUIRE(c.subsets.size() == 3);
  CHECK(c.subsets[0] == std::vector<std::size_t>{0});
  CHECK(c.subsets[1] == std::vector<std::size_t>{1});
  CHECK(c.subsets[2] == std::vector<std::size_t>{0, 1});
  CHECK(c.terms[2].var(c.inverted[0]).inverted);
  CHECK(c.terms[2].var(c.inverted[1]).inverted);
  CHECK_FALSE(c.terms[0].var(c.inverted[1]).inverted);
}

TEST_CASE("a single positive variable gives a one-term cover") {
  CechComplex c = cech_complex(mukai_algebra(1), Chamber::Plus, 0);
  CHECK(c.length() == 1);
  CHECK(c.terms.size() == 1);
  SliceComplex row = c.row(0, 0, 6);
  CHECK(row.budgets.size() == 1);
  CHECK(row.diffs.empty());
}

TEST_CASE("the Cech row and total complexes square to zero") {
  CechComplex c = cech_complex(mukai_algebra(2), Chamber::Plus, -1);
  for (int n = -2; n <= 2; ++n) {
    CHECK_NOTHROW(c.row(n, 0, 6).check());
    CHECK_NOTHROW(c.row(n, -1, 6).check());
    CHECK_NOTHROW(c.total(n, -3, 6).check());
  }
}

TEST_CASE("no positive variables raises EmptySide") {
  Algebra r = build_algebra(1, {{"y", {-1}, 0}}, {});
  CHECK_THROWS_AS(cech_complex(r, Chamber::Plus, 0), Error);
  try {
    cech_complex(r, Chamber::Plus, 0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySide);
  }
  CHECK_NOTHROW(cech_complex(r, Chamber::Minus, 0));
}

TEST_CASE("Mukai window image at i = 0 matches R") {
  WindowImageReport w = window_image(mukai_algebra(2), 0, small_box());
  CHECK(w.in_window);
  CHECK(w.hypothesis_ok);
  CHECK(w.match);
  CHECK(w.check.verdict == Verdict::Pass);
}

TEST_CASE("Mukai window image at i = -1 matches R on both sides") {
  for (Chamber side : {Chamber::Plus, Chamber::Minus}) {
    WindowImageReport w = window_image(mukai_algebra(2), side == Chamber::Plus ? -1 : 1, small_box(), side);
    CHECK(w.in_window);
    CHECK(w.match);
  }
}

TEST_CASE("Mukai at i = -2 has top Cech classes") {
  WindowImageReport w = window_image(mukai_algebra(2), -2, small_box());
  CHECK_FALSE(w.in_window);
  CHECK_FALSE(w.match);
  CHECK(w.check.verdict == Verdict::Info);
  CHECK(has_note(w.check, "H^1"));
  CHECK(has_note(w.check, "top class x1^-1*x2^-1"));
}

TEST_CASE("twopoints: dimension 2 in every degree n >= 0 at i = 0") {
  WindowImageReport w = window_image(twopoints_algebra(), 0, small_box());
  CHECK_FALSE(w.hypothesis_ok);
  for (int n = 0; n <= 3; ++n) CHECK(table_dim(w.check.tables[1], n, 0) == 2);
  for (int n = -3; n < 0; ++n) CHECK(table_dim(w.check.tables[1], n, 0) == 0);
  CHECK(has_note(w.check, "{x1,x2} is acyclic"));
  CHECK_FALSE(w.match);
  CHECK(w.check.verdict == Verdict::Info);
}

TEST_CASE("Mukai membership covers i in {-1, 0} on both sides") {
  for (Chamber side : {Chamber::Plus, Chamber::Minus}) {
    WindowSummary s = window_membership(mukai_algebra(2), side, small_box());
    CHECK(s.range.size() == 2);
    CHECK(s.check.verdict == Verdict::Pass);
    CHECK(s.images.size() == 2);
  }
}

TEST_CASE("twopoints membership flags the generator degree") {
  WindowSummary s = window_membership(twopoints_algebra(), Chamber::Plus, small_box());
  CHECK(s.check.verdict == Verdict::HypothesisViolation);
}

TEST_CASE("mu+ = 0 gives a degenerate window") {
  Algebra r = build_algebra(1, {{"y", {-1}, 0}}, {});
  WindowSummary s = window_membership(r, Chamber::Plus, small_box());
  CHECK(s.range.empty());
  CHECK(has_note(s.check, "degenerate"));
}
