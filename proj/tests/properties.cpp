#include "properties.hpp"

#include <random>

#include "wcq/kernels.hpp"
#include "wcq/linalg.hpp"

namespace wcq::props {

namespace {

// Base x1, x2 (weight 1), y1, y2 (weight -1); odd e1, e2 with d e_j = f_j;
// even w of hdeg -2 with d w = f2 e1 - f1 e2. x1 is sometimes inverted.
struct RandomCdga {
  Algebra alg;
  bool laurent = false;
};

class Gen {
 public:
  explicit Gen(std::uint32_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational coefficient() {
    int n = uniform(-5, 5);
    if (n == 0) n = 1;
    Rational q(n, uniform(1, 3));
    q.canonicalize();
    return q;
  }

  // Monomial in the base variables of the given weight.
  Exponents base_monomial(int weight, bool laurent) {
    for (;;) {
      Exponents e(7, 0);
      e[0] = uniform(laurent ? -2 : 0, 2);
      e[1] = uniform(0, 2);
      int y = e[0] + e[1] - weight;
      if (y < 0 || y > 4) continue;
      e[2] = uniform(0, y);
      e[3] = y - e[2];
      return e;
    }
  }

  Terms base_poly(int weight, bool laurent) {
    Terms t;
    int n = uniform(1, 3);
    for (int i = 0; i < n; ++i) add_term(t, base_monomial(weight, laurent), coefficient());
    return t;
  }

  RandomCdga cdga() {
    RandomCdga r;
    r.laurent = uniform(0, 1) == 1;
    int w1 = uniform(-1, 1), w2 = uniform(-1, 1);
    AlgebraBuilder b(1);
    b.add({"x1", {1}, 0}, r.laurent);
    b.add({"x2", {1}, 0});
    b.add({"y1", {-1}, 0});
    b.add({"y2", {-1}, 0});
    b.add({"e1", {w1}, -1});
    b.add({"e2", {w2}, -1});
    b.add({"w", {w1 + w2}, -2});
    Algebra draft = b.draft();
    Element f1(draft, base_poly(w1, r.laurent));
    Element f2(draft, base_poly(w2, r.laurent));
    b.set_differential("e1", f1);
    b.set_differential("e2", f2);
    b.set_differential("w", f2 * draft.gen("e1") - f1 * draft.gen("e2"));
    r.alg = b.build();
    return r;
  }

  // Sum of monomials sharing homological degree h in [-3, 0].
  Element element(const RandomCdga& r, int h) {
    Terms t;
    int n = uniform(1, 4);
    for (int i = 0; i < n; ++i) {
      int c = uniform(0, -h / 2);
      int odd = -h - 2 * c;
      if (odd > 2) {
        --i;
        continue;
      }
      Exponents e = base_monomial(uniform(-2, 2), r.laurent);
      e[6] = c;
      if (odd == 1) e[4 + uniform(0, 1)] = 1;
      if (odd == 2) e[4] = e[5] = 1;
      add_term(t, e, coefficient());
    }
    return Element(r.alg, t);
  }

 private:
  std::mt19937 rng_;
};

std::size_t naive_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Outcome graded_commutativity(int cases) {
  Outcome o{"graded commutativity", cases, 0, ""};
  Gen g(11);
  for (int i = 0; i < cases; ++i) {
    RandomCdga r = g.cdga();
    int ha = g.uniform(-3, 0), hb = g.uniform(-3, 0);
    Element a = g.element(r, ha), b = g.element(r, hb);
    Rational sign = (ha * hb) % 2 ? -1 : 1;
    bool ok = a * b == sign * (b * a);
    if (ha % 2) ok = ok && (a * a).is_zero();
    if (!ok && o.failures++ == 0) o.first_failure = a.str() + " | " + b.str();
  }
  return o;
}

Outcome leibniz(int cases) {
  Outcome o{"Leibniz", cases, 0, ""};
  Gen g(23);
  for (int i = 0; i < cases; ++i) {
    RandomCdga r = g.cdga();
    int ha = g.uniform(-3, 0);
    Element a = g.element(r, ha), b = g.element(r, g.uniform(-3, 0));
    Rational sign = ha % 2 ? -1 : 1;
    if (apply_differential(a * b) != apply_differential(a) * b + sign * (a * apply_differential(b)) &&
        o.failures++ == 0)
      o.first_failure = a.str() + " | " + b.str();
  }
  return o;
}

Outcome d_squared(int cases) {
  Outcome o{"d^2 = 0", cases, 0, ""};
  Gen g(37);
  for (int i = 0; i < cases; ++i) {
    RandomCdga r = g.cdga();
    Element a = g.element(r, g.uniform(-3, 0)) + g.element(r, g.uniform(-3, 0));
    if (!apply_differential(apply_differential(a)).is_zero() && o.failures++ == 0) o.first_failure = a.str();
  }
  return o;
}

Outcome canonical_idempotence(int cases) {
  Outcome o{"canonical form idempotence", cases, 0, ""};
  Gen g(41);
  for (int i = 0; i < cases; ++i) {
    RandomCdga r = g.cdga();
    Element a = g.element(r, g.uniform(-3, 0)) - g.element(r, g.uniform(-3, 0));
    std::string s = a.str();
    Element b = r.alg.parse(s);
    if ((b != a || b.str() != s) && o.failures++ == 0) o.first_failure = s + " -> " + b.str();
  }
  return o;
}

Outcome rank_vs_naive(int cases) {
  Outcome o{"rank vs naive elimination", cases, 0, ""};
  std::mt19937 rng(53);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int i = 0; i < cases; ++i) {
    std::size_t rows = uni(1, 12), cols = uni(1, 12);
    std::vector<std::vector<Rational>> d(rows, std::vector<Rational>(cols, 0));
    if (uni(0, 1)) {
      // Product of thin factors: rank at most k.
      int k = uni(0, 4);
      std::vector<std::vector<int>> a(rows, std::vector<int>(k)), b(k, std::vector<int>(cols));
      for (auto& row : a)
        for (auto& v : row) v = uni(-3, 3);
      for (auto& row : b)
        for (auto& v : row) v = uni(-3, 3);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
          for (int j = 0; j < k; ++j) d[r][c] += a[r][j] * b[j][c];
    } else {
      for (auto& row : d)
        for (auto& v : row)
          if (uni(0, 2) == 0) {
            v = Rational(uni(-9, 9), uni(1, 4));
            v.canonicalize();
          }
    }
    ExactMatrix m = ExactMatrix::from_dense(d);
    std::size_t expect = naive_rank(d);
    if ((rank(m) != expect || rank_exact(m) != expect || rank_modular(m) > expect) && o.failures++ == 0)
      o.first_failure = std::to_string(rows) + "x" + std::to_string(cols) + " case " + std::to_string(i);
  }
  return o;
}

Outcome simd_vs_scalar(int cases) {
  Outcome o{"SIMD vs scalar modular rank", cases, 0, ""};
  const kernels::ModKernel* avx = kernels::avx2_kernel();
  if (!avx) {
    o.cases = 0;
    return o;
  }
  std::mt19937 rng(67);
  for (int i = 0; i < cases; ++i) {
    std::size_t rows = 1 + rng() % 20, cols = 1 + rng() % 20;
    std::vector<double> m(rows * cols);
    for (auto& v : m) v = rng() % 4 == 0 ? static_cast<double>(rng() % 67108859u) : 0.0;
    std::vector<double> m2 = m;
    if (kernels::rank_mod_p(m, rows, cols, kernels::scalar_kernel()) != kernels::rank_mod_p(m2, rows, cols, *avx) &&
        o.failures++ == 0)
      o.first_failure = "case " + std::to_string(i);
  }
  return o;
}

std::vector<Outcome> all(int cases) {
  return {graded_commutativity(cases), leibniz(cases), d_squared(cases), canonical_idempotence(cases),
          rank_vs_naive(cases), simd_vs_scalar(cases)};
}

}  // namespace wcq::props
