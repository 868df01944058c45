#include "doctest.h"

#include <algorithm>

#include "wcq/datasets.hpp"
#include "wcq/wallcross.hpp"

using namespace wcq;

namespace {

TruncationBox box(int budget = 8) { return TruncationBox::standard(1, budget, -4, -4, 4); }

const ChartKernel& chart(const std::vector<ChartKernel>& cs, const std::string& label) {
  auto it = std::find_if(cs.begin(), cs.end(), [&](const ChartKernel& c) { return c.label == label; });
  REQUIRE(it != cs.end());
  return *it;
}

bool has_note(const Check& c, const std::string& s) {
  return std::any_of(c.notes.begin(), c.notes.end(), [&](const std::string& n) { return n.find(s) != std::string::npos; });
}

// Monomials x2^a z1^b u^c of total degree <= n avoiding u*z1 and u*x2.
std::size_t h0_oracle(int n) {
  std::size_t k = 0;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b)
      for (int c = 0; a + b + c <= n; ++c) k += c == 0 || (a == 0 && b == 0);
  return k;
}

std::size_t h1_oracle(int n) { return n < 0 ? 0 : static_cast<std::size_t>((n + 1) * (n + 2) / 2); }

}  // namespace

TEST_CASE("charts pair every positive with every negative variable") {
  auto cs = restrict_kernel(mukai_algebra(2));
  CHECK(cs.size() == 4);
  const ChartKernel& c = chart(cs, "(x1, y2)");
  CHECK(c.algebra.var(c.xa).inverted);
  CHECK(c.algebra.var(c.xa).pinned);
  CHECK(c.algebra.var(c.zb).name == "z2");
  CHECK_FALSE(c.algebra.var(c.q.u).pinned);
}

TEST_CASE("missing sides raise chart errors") {
  auto code = [](const Algebra& r) {
    try {
      restrict_kernel(r);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code(build_algebra(1, {{"x", {1}, 0}}, {})) == ErrorCode::NoNegativeChart);
  CHECK(code(build_algebra(1, {{"y", {-1}, 0}}, {})) == ErrorCode::NoPositiveChart);
}

TEST_CASE("two-homology chart (x1, y2)") {
  Algebra r = two_homology_algebra();
  auto cs = restrict_kernel(r);
  ChartHomology h = chart_homology(r, chart(cs, "(x1, y2)"), box());
  CHECK(h.check.verdict == Verdict::Pass);
  CHECK(has_note(h.check, "nonzero rows: 0, -1"));
  CHECK(has_note(h.check, "generator budget 3"));
  for (const auto& rep : h.reports) {
    CHECK(rep.graded);
    CHECK(rep.at(0) == h0_oracle(8));
    CHECK(rep.at(-1) == h1_oracle(5));
    CHECK(rep.at(-2) == 0);
  }
}

TEST_CASE("two-homology chart tables at a smaller budget") {
  Algebra r = two_homology_algebra();
  auto cs = restrict_kernel(r);
  ChartHomology h = chart_homology(r, chart(cs, "(x1, y2)"), box(5));
  for (const auto& rep : h.reports) {
    CHECK(rep.at(0) == h0_oracle(5));
    CHECK(rep.at(-1) == h1_oracle(2));
  }
}

TEST_CASE("Mukai charts have no H^-1") {
  Algebra r = mukai_algebra(2);
  for (const auto& c : restrict_kernel(r)) {
    ChartHomology h = chart_homology(r, c, box(6));
    CHECK(h.check.verdict == Verdict::Pass);
    for (const auto& rep : h.reports) {
      CHECK(rep.at(-1) == 0);
      CHECK(rep.certified(-1));
    }
  }
}

TEST_CASE("chart homology of R = T is the localized ring") {
  Algebra r = affine_base_algebra();
  auto cs = restrict_kernel(r);
  REQUIRE(cs.size() == 1);
  ChartHomology h = chart_homology(r, cs[0], box(4));
  CHECK(has_note(h.check, "nonzero rows: 0"));
  // k[x^+-, z^+-, u] with x, z pinned: one monomial u^c per budget c.
  for (const auto& rep : h.reports) CHECK(rep.at(0) == 5);
}

TEST_CASE("Mukai fiber comparison is an isomorphism on all four charts") {
  FiberComparison f = fiber_comparison(mukai_algebra(2), box(6));
  CHECK(f.check.verdict == Verdict::Pass);
  CHECK(f.invariants == std::vector<std::string>{"x1*y1", "x1*y2", "x2*y1", "x2*y2", "e"});
  REQUIRE(f.charts.size() == 4);
  for (const auto& c : f.charts) {
    CHECK(c.iso_case);
    CHECK(c.check.verdict == Verdict::Pass);
  }
}

TEST_CASE("weights (2, -1) give module generators 1, u") {
  Algebra r = build_algebra(1, {{"x", {2}, 0}, {"y", {-1}, 0}}, {});
  FiberComparison f = fiber_comparison(r, box());
  CHECK(f.check.verdict == Verdict::Pass);
  CHECK(f.invariants == std::vector<std::string>{"x*y^2"});
  REQUIRE(f.certificates.size() == 1);
  CHECK(f.certificates[0] == "x: u^2 = f(x^-1 (x) x), module generators 1, u");
  CHECK_FALSE(f.charts[0].iso_case);
}

TEST_CASE("fiber comparison of k is degenerate and twopoints is rejected") {
  FiberComparison k = fiber_comparison(build_algebra(1, {}, {}), box());
  CHECK(k.check.verdict == Verdict::Info);
  try {
    fiber_comparison(twopoints_algebra(), box());
    FAIL("expected a hypothesis violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolation);
  }
}

TEST_CASE("Mukai pipeline for l = 1") {
  for (const auto& c : mukai_verify(1, TruncationBox::standard(1, 6, -3, -3, 3))) {
    INFO(c.name);
    CHECK(c.passed());
  }
}

TEST_CASE("Mukai pipeline rejects l = 0") { CHECK_THROWS_AS(mukai_verify(0, box()), Error); }
