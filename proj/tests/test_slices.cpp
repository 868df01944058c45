#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "wcq/slices.hpp"

using namespace wcq;

namespace {

std::set<Exponents> brute_force(const Algebra& a, const Multidegree& d, int h, int budget) {
  std::set<Exponents> out;
  Exponents e(a.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == a.size()) {
      if (a.budget(e) <= budget && a.degree(e) == d && a.hdeg(e) == h) out.insert(e);
      return;
    }
    const Variable& v = a.var(k);
    int lo = v.inverted ? -budget : 0;
    int hi = v.odd ? 1 : budget;
    if (v.pinned) {
      lo = v.inverted ? -3 * budget : 0;
      hi = 3 * budget;
    }
    for (int x = lo; x <= hi; ++x) {
      e[k] = x;
      rec(k + 1);
    }
    e[k] = 0;
  };
  rec(0);
  return out;
}

}  // namespace

TEST_CASE("enumeration examples") {
  Algebra a = build_algebra(1, {{"x1", {1}, 0}, {"x2", {1}, 0}}, {});
  auto b = enumerate_basis(a, {3}, 0, TruncationBox::standard(1, 3));
  CHECK(b.size() == 4);
  auto unit = enumerate_basis(a, {0}, 0, TruncationBox::standard(1, 0));
  CHECK(unit.size() == 1);
  CHECK(unit.find(Exponents{0, 0}) == 0);

  Algebra xy = build_algebra(1, {{"x", {1}, 0}, {"y", {-1}, 0}}, {});
  auto s = enumerate_basis(xy, {0}, 0, TruncationBox::standard(1, 4));
  REQUIRE(s.size() == 3);
  CHECK(s.monomials[0] == Exponents{0, 0});
  CHECK(s.monomials[1] == Exponents{1, 1});
  CHECK(s.monomials[2] == Exponents{2, 2});
}

TEST_CASE("enumeration is exhaustive against brute force") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    AlgebraBuilder b(1);
    int n = 2 + rng() % 3;
    for (int i = 0; i < n; ++i) {
      int w = static_cast<int>(rng() % 5) - 2;
      if (w == 0) w = 1;
      b.add({"x" + std::to_string(i), {w}, 0}, rng() % 4 == 0);
    }
    b.add({"e", {static_cast<int>(rng() % 3) - 1}, -1});
    Algebra a = b.build();
    int budget = 2 + rng() % 3;
    for (int d = -3; d <= 3; ++d)
      for (int h = -1; h <= 0; ++h) {
        auto basis = enumerate_basis(a, {d}, h, TruncationBox::standard(1, budget));
        std::set<Exponents> got(basis.monomials.begin(), basis.monomials.end());
        CHECK(got == brute_force(a, {d}, h, budget));
      }
  }
}

TEST_CASE("pinned variables are solved from the multidegree") {
  AlgebraBuilder b(2);
  b.add({"x", {1, 0}, 0});
  b.add({"z", {0, -1}, 0});
  b.add({"u", {-1, 1}, 0}, false, true);
  Algebra q = b.build();
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      auto basis = enumerate_basis(q, {i, j}, 0, TruncationBox::standard(2, 5));
      std::set<Exponents> got(basis.monomials.begin(), basis.monomials.end());
      CHECK(got == brute_force(q, {i, j}, 0, 5));
    }
  CHECK(enumerate_basis(q, {-1, 1}, 0, TruncationBox::standard(2, 0)).size() == 1);
}

TEST_CASE("multiplication slice with a boundary column") {
  Algebra a = build_algebra(1, {{"x1", {1}, 0}, {"y1", {-1}, 0}}, {});
  auto s = enumerate_basis(a, {0}, 0, TruncationBox::standard(1, 4));
  SliceMap m = linear_map_slice(a.parse("x1*y1"), s, s);
  CHECK(m.matrix.dense() == std::vector<std::vector<Rational>>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  CHECK(m.boundary == std::vector<bool>{false, false, true});
  SliceMap z = linear_map_slice(a.zero(), s, s);
  CHECK(z.matrix.is_zero());
  CHECK_THROWS_AS(linear_map_slice(a.parse("x1"), s, s), Error);
}

TEST_CASE("composite multiplication equals the product of slice matrices") {
  Algebra a = build_algebra(1, {{"x", {1}, 0}, {"y", {-1}, 0}, {"w", {2}, 0}}, {});
  TruncationBox box = TruncationBox::standard(1, 7);
  auto s0 = enumerate_basis(a, {0}, 0, box), s1 = enumerate_basis(a, {1}, 0, box),
       s3 = enumerate_basis(a, {3}, 0, box);
  SliceMap f = linear_map_slice(a.parse("x + w*y"), s0, s1);
  SliceMap g = linear_map_slice(a.parse("w - x^2"), s1, s3);
  SliceMap gf = linear_map_slice(a.parse("(w - x^2)*(x + w*y)"), s0, s3);
  ExactMatrix prod = g.matrix * f.matrix;
  for (std::size_t c = 0; c < s0.size(); ++c) {
    if (gf.boundary[c] || f.boundary[c]) continue;
    bool touches_flag = false;
    for (const auto& [r, v] : f.matrix.column(c)) touches_flag |= static_cast<bool>(g.boundary[r]);
    if (touches_flag) continue;
    for (std::size_t r = 0; r < s3.size(); ++r) CHECK(prod.at(r, c) == gf.matrix.at(r, c));
  }
}

TEST_CASE("koszul differential rank equals the principal ideal slice") {
  Algebra a = build_algebra(1, {{"x", {1}, 0}, {"y", {-1}, 0}, {"t", {0}, -1}}, {{"t", "x*y"}});
  TruncationBox box = TruncationBox::standard(1, 8);
  auto src = enumerate_basis(a, {0}, -1, box), dst = enumerate_basis(a, {0}, 0, box);
  SliceMap d = differential_slice(src, dst);
  std::size_t ideal = 0;
  for (const auto& m : dst.monomials) ideal += (m[0] >= 1 && m[1] >= 1) ? 1 : 0;
  CHECK(rank(d.matrix) == ideal);
}

TEST_CASE("box helpers") {
  TruncationBox b = TruncationBox::standard(2, 8, -4, -1, 1);
  CHECK(b.degrees().size() == 9);
  CHECK(b.contains({1, -1}));
  CHECK_FALSE(b.contains({2, 0}));
  CHECK_THROWS_AS(b.validate(3), Error);
}
