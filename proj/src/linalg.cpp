#include "wcq/linalg.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "wcq/kernels.hpp"

namespace wcq {

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), dirty_(cols, false) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.add(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  ExactMatrix m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < nc; ++c)
      if (rows[r][c] != 0) m.add(r, c, rows[r][c]);
  return m;
}

void ExactMatrix::add(std::size_t r, std::size_t c, const Rational& v) {
  if (v == 0) return;
  cols_.at(c).emplace_back(static_cast<std::uint32_t>(r), v);
  dirty_[c] = true;
}

void ExactMatrix::tidy(std::size_t c) const {
  if (!dirty_[c]) return;
  Column& col = cols_[c];
  std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  Column out;
  for (auto& e : col) {
    if (!out.empty() && out.back().first == e.first)
      out.back().second += e.second;
    else
      out.push_back(std::move(e));
    if (out.back().second == 0) out.pop_back();
  }
  col = std::move(out);
  dirty_[c] = false;
}

const ExactMatrix::Column& ExactMatrix::column(std::size_t c) const {
  tidy(c);
  return cols_[c];
}

Rational ExactMatrix::at(std::size_t r, std::size_t c) const {
  for (const auto& [i, v] : column(c))
    if (i == r) return v;
  return 0;
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < cols(); ++c) n += column(c).size();
  return n;
}

bool ExactMatrix::is_zero() const { return nonzeros() == 0; }

ExactMatrix ExactMatrix::select_columns(const std::vector<bool>& keep) const {
  std::size_t n = std::count(keep.begin(), keep.end(), true);
  ExactMatrix m(rows_, n);
  std::size_t k = 0;
  for (std::size_t c = 0; c < cols(); ++c) {
    if (!keep[c]) continue;
    m.cols_[k] = column(c);
    ++k;
  }
  return m;
}

ExactMatrix ExactMatrix::select_rows(const std::vector<bool>& keep) const {
  std::vector<std::uint32_t> remap(rows_, 0);
  std::uint32_t n = 0;
  for (std::size_t r = 0; r < rows_; ++r)
    if (keep[r]) remap[r] = n++;
  ExactMatrix m(n, cols());
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : column(c))
      if (keep[r]) m.cols_[c].emplace_back(remap[r], v);
  return m;
}

std::vector<std::vector<Rational>> ExactMatrix::dense() const {
  std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols(), 0));
  for (std::size_t c = 0; c < cols(); ++c)
    for (const auto& [r, v] : column(c)) d[r][c] = v;
  return d;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DegreeIncompatible, "matrix dimensions do not compose");
  ExactMatrix m(a.rows(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    std::map<std::uint32_t, Rational> acc;
    for (const auto& [k, v] : b.column(c))
      for (const auto& [r, w] : a.column(k)) acc[r] += v * w;
    for (auto& [r, v] : acc)
      if (v != 0) m.add(r, c, v);
  }
  return m;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (a.column(c) != b.column(c)) return false;
  return true;
}

namespace {

struct Overflow {};

struct Checked {
  using T = long long;
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T gcd(T a, T b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
      T t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static T from(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Overflow{};
    long v = z.get_si();
    if (v == std::numeric_limits<long>::min()) throw Overflow{};
    return v;
  }
  static bool is_zero(T a) { return a == 0; }
  static bool negative(T a) { return a < 0; }
};

struct Big {
  using T = mpz_class;
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T gcd(const T& a, const T& b) {
    T g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static T from(const mpz_class& z) { return z; }
  static bool is_zero(const T& a) { return a == 0; }
  static bool negative(const T& a) { return a < 0; }
};

using IntVector = std::vector<std::pair<std::uint32_t, mpz_class>>;

std::vector<IntVector> integer_columns(const ExactMatrix& m) {
  std::vector<IntVector> out;
  out.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto& col = m.column(c);
    if (col.empty()) continue;
    mpz_class l = 1;
    for (const auto& [r, v] : col) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    IntVector iv;
    mpz_class g = 0;
    for (const auto& [r, v] : col) {
      mpz_class x = v.get_num() * (l / v.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      iv.emplace_back(r, x);
    }
    for (auto& [r, x] : iv) x /= g;
    out.push_back(std::move(iv));
  }
  std::stable_sort(out.begin(), out.end(), [](const IntVector& a, const IntVector& b) {
    if (a[0].first != b[0].first) return a[0].first < b[0].first;
    return a.size() < b.size();
  });
  return out;
}

template <class Ops>
std::size_t echelon_rank(const std::vector<IntVector>& input) {
  using T = typename Ops::T;
  using Vec = std::vector<std::pair<std::uint32_t, T>>;
  std::map<std::uint32_t, Vec> pivots;
  Vec v, w;
  for (const auto& col : input) {
    v.clear();
    for (const auto& [r, x] : col) v.emplace_back(r, Ops::from(x));
    while (!v.empty()) {
      auto it = pivots.find(v[0].first);
      if (it == pivots.end()) {
        pivots.emplace(v[0].first, v);
        break;
      }
      const Vec& p = it->second;
      T a = p[0].second, b = v[0].second;
      w.clear();
      std::size_t i = 1, j = 1;
      T g = 0;
      while (i < v.size() || j < p.size()) {
        std::uint32_t ri = i < v.size() ? v[i].first : UINT32_MAX;
        std::uint32_t rj = j < p.size() ? p[j].first : UINT32_MAX;
        T val;
        std::uint32_t r;
        if (ri < rj) {
          r = ri;
          val = Ops::mul(a, v[i].second);
          ++i;
        } else if (rj < ri) {
          r = rj;
          val = Ops::sub(T(0), Ops::mul(b, p[j].second));
          ++j;
        } else {
          r = ri;
          val = Ops::sub(Ops::mul(a, v[i].second), Ops::mul(b, p[j].second));
          ++i;
          ++j;
        }
        if (!Ops::is_zero(val)) {
          g = Ops::gcd(g, val);
          w.emplace_back(r, std::move(val));
        }
      }
      if (!Ops::is_zero(g) && !(g == T(1)))
        for (auto& e : w) e.second /= g;
      std::swap(v, w);
    }
  }
  return pivots.size();
}

}  // namespace

std::size_t rank_exact(const ExactMatrix& m) {
  auto cols = integer_columns(m);
  if (cols.empty()) return 0;
  try {
    return echelon_rank<Checked>(cols);
  } catch (const Overflow&) {
    return echelon_rank<Big>(cols);
  }
}

std::size_t rank_modular(const ExactMatrix& m) {
  auto cols = integer_columns(m);
  std::size_t nr = m.rows(), nc = cols.size();
  if (nr == 0 || nc == 0) return 0;
  std::vector<double> dense(nr * nc, 0.0);
  mpz_class p(static_cast<long>(kernels::kPrime)), red;
  for (std::size_t c = 0; c < nc; ++c)
    for (const auto& [r, x] : cols[c]) {
      mpz_mod(red.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
      dense[r * nc + c] = static_cast<double>(red.get_si());
    }
  return kernels::rank_mod_p(dense, nr, nc, kernels::active_kernel());
}

std::size_t rank(const ExactMatrix& m) {
  std::size_t nnz = m.nonzeros();
  if (nnz == 0) return 0;
  std::size_t full = std::min(m.rows(), m.cols());
  std::size_t cells = m.rows() * m.cols();
  if (full >= 16 && cells <= (std::size_t{1} << 20) && nnz * 8 >= full) {
    if (rank_modular(m) == full) return full;
  }
  return rank_exact(m);
}

std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Rational>> nullspace(const ExactMatrix& m) {
  auto a = m.dense();
  std::size_t cols = m.cols();
  std::vector<std::vector<Rational>> basis;
  if (a.empty()) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::vector<Rational> v(cols, 0);
      v[c] = 1;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  auto piv = rref(a);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : piv) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace wcq
