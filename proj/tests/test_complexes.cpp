#include "doctest.h"
#include "wcq/complexes.hpp"

using namespace wcq;

namespace {

SliceComplex koszul_xy(int budget) {
  Algebra a = build_algebra(1, {{"x1", {1}, 0}, {"y1", {-1}, 0}, {"t", {0}, -1}}, {{"t", "x1*y1"}});
  SliceFamily fam(a, {{0}}, -2, 0, budget);
  CompletenessOracle oracle(a);
  return algebra_slice_complex(fam, {0}, -1, &oracle);
}

SliceComplex point(std::size_t dim) {
  SliceComplex c;
  c.degree = {0};
  c.lo = 0;
  c.report_lo = 0;
  c.budgets = {std::vector<int>(dim, 0)};
  c.complete = {true};
  return c;
}

}  // namespace

TEST_CASE("koszul complex of a regular element") {
  HomologyReport r = homology_dims(koszul_xy(6));
  CHECK(r.graded);
  CHECK(r.at(0) == 1);
  CHECK(r.at(-1) == 0);
  CHECK(r.certified(0));
  CHECK(r.certified(-1));
}

TEST_CASE("zero complex") {
  HomologyReport r = homology_dims(point(0));
  CHECK(r.all_zero());
}

TEST_CASE("identity is a quasi-isomorphism") {
  SliceComplex c = koszul_xy(6);
  SliceChainMap id;
  for (int h = c.lo; h <= c.hi(); ++h) id.push_back(ExactMatrix::identity(c.dim(h)));
  CHECK(compare_quasi_iso(c, c, id).verdict == Verdict::Pass);
}

TEST_CASE("multiplication by x in internal degree 0 is not a quasi-isomorphism") {
  SliceComplex src = point(0), dst = point(1);
  SliceChainMap f{ExactMatrix(1, 0)};
  QuasiIsoResult r = compare_quasi_iso(src, dst, f);
  CHECK(r.verdict == Verdict::Fail);
  CHECK(r.cone_homology.at(0) == 1);
}

TEST_CASE("non-chain maps are rejected") {
  SliceComplex c = koszul_xy(4);
  SliceChainMap zero;
  for (int h = c.lo; h <= c.hi(); ++h) zero.push_back(ExactMatrix(c.dim(h), c.dim(h)));
  zero.back() = ExactMatrix::identity(c.dim(0));
  CHECK_THROWS_AS(cone(c, c, zero), Error);
}

TEST_CASE("shift moves homology indices") {
  SliceComplex c = koszul_xy(6);
  HomologyReport a = homology_dims(c), b = homology_dims(c.shifted(3));
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].dim == b.entries[i].dim);
    CHECK(a.entries[i].hdeg + 3 == b.entries[i].hdeg);
  }
}

TEST_CASE("euler characteristic matches basis dimensions in a complete slice") {
  Algebra a = build_algebra(1, {{"x", {1}, 0}, {"y", {2}, 0}, {"s", {2}, -1}, {"t", {3}, -1}},
                            {{"s", "x^2"}, {"t", "x*y"}});
  SliceFamily fam(a, {{5}}, -2, 0, 20);
  SliceComplex c = algebra_slice_complex(fam, {5}, -2);
  HomologyReport r = homology_dims(c);
  long chi_h = 0, chi_b = 0;
  for (int h = -2; h <= 0; ++h) {
    chi_h += (h % 2 == 0 ? 1 : -1) * static_cast<long>(r.at(h));
    chi_b += (h % 2 == 0 ? 1 : -1) * static_cast<long>(c.dim(h));
  }
  CHECK(chi_h == chi_b);
}

TEST_CASE("non-complex rejected") {
  SliceComplex c;
  c.degree = {0};
  c.lo = 0;
  c.report_lo = 0;
  c.budgets = {{0}, {0}, {0}};
  c.complete = {true, true, true};
  c.diffs = {ExactMatrix::identity(1), ExactMatrix::identity(1)};
  CHECK_THROWS_AS(homology_dims(c), Error);
}
