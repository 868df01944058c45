#include <random>

#include "doctest.h"
#include "wcq/linalg.hpp"

using namespace wcq;

namespace {

std::size_t naive_rank(std::vector<std::vector<Rational>> a) {
  std::size_t r = 0;
  for (std::size_t c = 0; !a.empty() && c < a[0].size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = 0; k < a[0].size(); ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(ExactMatrix::identity(3)) == 3);
  CHECK(rank(ExactMatrix(4, 5)) == 0);
  CHECK(rank(ExactMatrix::from_dense({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(ExactMatrix::from_dense({{Rational(1, 2), Rational(1, 3)}, {Rational(3, 2), 1}})) == 1);
}

TEST_CASE("large entries fall back to bignum elimination") {
  mpz_class big("123456789012345678901234567890");
  ExactMatrix m = ExactMatrix::from_dense({{Rational(big), 1, 2}, {3, Rational(big), 5}, {Rational(big) + 3, Rational(big) + 1, 7}});
  CHECK(rank_exact(m) == naive_rank(m.dense()));
}

TEST_CASE("exact and modular ranks agree with a naive oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30;
    std::vector<std::vector<Rational>> d(r, std::vector<Rational>(c, 0));
    std::size_t k = 1 + rng() % 5;
    std::vector<std::vector<Rational>> basis(k, std::vector<Rational>(c, 0));
    for (auto& row : basis)
      for (auto& x : row)
        if (rng() % 3 == 0) x = Rational(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4);
    for (auto& row : d)
      for (auto& b : basis) {
        Rational f(static_cast<long>(rng() % 7) - 3);
        for (std::size_t j = 0; j < c; ++j) row[j] += f * b[j];
      }
    ExactMatrix m = ExactMatrix::from_dense(d);
    std::size_t want = naive_rank(d);
    CHECK(rank_exact(m) == want);
    CHECK(rank(m) == want);
    CHECK(rank_modular(m) <= want);
  }
}

TEST_CASE("nullspace vectors are in the kernel") {
  ExactMatrix m = ExactMatrix::from_dense({{1, 2, 3}, {2, 4, 6}});
  auto ns = nullspace(m);
  CHECK(ns.size() == 2);
  for (const auto& v : ns)
    for (std::size_t r = 0; r < 2; ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < 3; ++c) s += m.at(r, c) * v[c];
      CHECK(s == 0);
    }
}

TEST_CASE("products and selections") {
  ExactMatrix a = ExactMatrix::from_dense({{1, 2}, {0, 1}});
  ExactMatrix b = ExactMatrix::from_dense({{1, -2}, {0, 1}});
  CHECK(a * b == ExactMatrix::identity(2));
  CHECK(a.select_columns({false, true}).dense() == std::vector<std::vector<Rational>>{{2}, {1}});
  CHECK(a.select_rows({false, true}).dense() == std::vector<std::vector<Rational>>{{0, 1}});
}
