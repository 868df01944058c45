#include "wcq/slices.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

namespace wcq {

std::size_t ExponentsHash::operator()(const std::vector<int>& e) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ e.size();
  for (int v : e) h = (h ^ static_cast<std::size_t>(v + 0x51ed27)) * 0x100000001b3ULL;
  return h;
}

TruncationBox TruncationBox::standard(int arity, int budget, int hmin, int lo, int hi) {
  TruncationBox b;
  b.budget = budget;
  b.hmin = hmin;
  b.degree_range.assign(arity, {lo, hi});
  return b;
}

TruncationBox TruncationBox::with_arity(int arity) const {
  TruncationBox b = *this;
  std::pair<int, int> r = degree_range.empty() ? std::pair<int, int>{-4, 4} : degree_range.front();
  b.degree_range.assign(arity, r);
  return b;
}

void TruncationBox::validate(int arity) const {
  if (budget < 0) throw Error(ErrorCode::ValidationError, "budget E must be nonnegative");
  if (hmin > 0) throw Error(ErrorCode::ValidationError, "hmin must be <= 0");
  if (static_cast<int>(degree_range.size()) != arity)
    throw Error(ErrorCode::ValidationError, "degree range has the wrong number of coordinates");
  for (auto [lo, hi] : degree_range)
    if (lo > hi) throw Error(ErrorCode::ValidationError, "empty degree interval");
}

bool TruncationBox::contains(const Multidegree& d) const {
  if (d.size() != degree_range.size()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < degree_range[i].first || d[i] > degree_range[i].second) return false;
  return true;
}

std::vector<Multidegree> TruncationBox::degrees() const {
  std::vector<Multidegree> out;
  Multidegree cur;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == degree_range.size()) {
      out.push_back(cur);
      return;
    }
    for (int v = degree_range[k].first; v <= degree_range[k].second; ++v) {
      cur.push_back(v);
      rec(k + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int SliceBasis::find(const Exponents& e) const {
  auto it = index.find(e);
  return it == index.end() ? -1 : it->second;
}

void SliceBasis::push(Exponents e) {
  budgets.push_back(algebra.budget(e));
  index.emplace(e, static_cast<int>(monomials.size()));
  monomials.push_back(std::move(e));
}

namespace {

class Enumerator {
 public:
  using Emit = std::function<void(const Exponents&, std::size_t target)>;

  Enumerator(const Algebra& alg, const std::vector<Multidegree>& targets, int hlo, int hhi, int budget)
      : alg_(alg), targets_(targets), hlo_(hlo), hhi_(hhi), budget_(budget), g_(alg.arity()) {
    for (std::size_t i = 0; i < alg.size(); ++i) (alg.var(i).pinned ? pinned_ : free_).push_back(i);
    for (std::size_t t = 0; t < targets.size(); ++t) lookup_.emplace(targets[t], t);
    if (!pinned_.empty()) setup_solver();
  }

  void run(const Emit& emit) {
    emit_ = &emit;
    exps_.assign(alg_.size(), 0);
    deg_.assign(g_, 0);
    dfs(0, budget_, 0);
  }

 private:
  void setup_solver() {
    std::size_t k = pinned_.size();
    std::vector<int> pick;
    std::function<bool(std::size_t)> choose = [&](std::size_t start) -> bool {
      if (pick.size() == k) return try_rows(pick);
      for (std::size_t r = start; r < static_cast<std::size_t>(g_); ++r) {
        pick.push_back(static_cast<int>(r));
        if (choose(r + 1)) return true;
        pick.pop_back();
      }
      return false;
    };
    if (!choose(0)) throw Error(ErrorCode::ValidationError, "pinned weights are not independent");
  }

  bool try_rows(const std::vector<int>& rows) {
    std::size_t k = rows.size();
    std::vector<std::vector<Rational>> a(k, std::vector<Rational>(2 * k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] = alg_.var(pinned_[j]).weight[rows[i]];
      a[i][k + i] = 1;
    }
    Rational det = 1;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = c;
      while (p < k && a[p][c] == 0) ++p;
      if (p == k) return false;
      if (p != c) {
        std::swap(a[p], a[c]);
        det = -det;
      }
      det *= a[c][c];
      Rational inv = 1 / a[c][c];
      for (auto& x : a[c]) x *= inv;
      for (std::size_t r = 0; r < k; ++r) {
        if (r == c || a[r][c] == 0) continue;
        Rational f = a[r][c];
        for (std::size_t j = 0; j < 2 * k; ++j) a[r][j] -= f * a[c][j];
      }
    }
    rows_ = rows;
    det_ = det.get_num().get_si();
    if (det_ < 0) det_ = -det_;
    adj_.assign(k, std::vector<long long>(k, 0));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        Rational v = a[i][k + j] * Rational(static_cast<long>(det_));
        adj_[i][j] = v.get_num().get_si();
      }
    return true;
  }

  void leaf(int h) {
    if (h > hhi_) return;
    if (pinned_.empty()) {
      auto it = lookup_.find(deg_);
      if (it != lookup_.end()) (*emit_)(exps_, it->second);
      return;
    }
    std::size_t k = pinned_.size();
    std::vector<long long> sol(k);
    for (std::size_t t = 0; t < targets_.size(); ++t) {
      const Multidegree& tg = targets_[t];
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        long long acc = 0;
        for (std::size_t j = 0; j < k; ++j) acc += adj_[i][j] * (tg[rows_[j]] - deg_[rows_[j]]);
        if (acc % det_ != 0) ok = false;
        sol[i] = acc / det_;
        if (ok && sol[i] < 0 && !alg_.var(pinned_[i]).inverted) ok = false;
      }
      if (!ok) continue;
      for (int c = 0; c < g_ && ok; ++c) {
        long long acc = deg_[c];
        for (std::size_t i = 0; i < k; ++i) acc += sol[i] * alg_.var(pinned_[i]).weight[c];
        if (acc != tg[c]) ok = false;
      }
      if (!ok) continue;
      for (std::size_t i = 0; i < k; ++i) exps_[pinned_[i]] = static_cast<int>(sol[i]);
      (*emit_)(exps_, t);
      for (std::size_t i = 0; i < k; ++i) exps_[pinned_[i]] = 0;
    }
  }

  void dfs(std::size_t k, int rem, int h) {
    if (k == free_.size()) {
      leaf(h);
      return;
    }
    std::size_t vi = free_[k];
    const Variable& v = alg_.var(vi);
    int beta = std::max(1, v.budget_weight);
    int cap = rem / beta;
    int lo = v.inverted ? -cap : 0;
    int hi = v.odd ? std::min(cap, 1) : cap;
    for (int e = lo; e <= hi; ++e) {
      int nh = h + v.hdeg * e;
      if (nh < hlo_) break;
      exps_[vi] = e;
      for (int c = 0; c < g_; ++c) deg_[c] += v.weight[c] * e;
      dfs(k + 1, rem - beta * std::abs(e), nh);
      for (int c = 0; c < g_; ++c) deg_[c] -= v.weight[c] * e;
    }
    exps_[vi] = 0;
  }

  const Algebra& alg_;
  const std::vector<Multidegree>& targets_;
  int hlo_, hhi_, budget_, g_;
  std::vector<std::size_t> free_, pinned_;
  std::unordered_map<Multidegree, std::size_t, ExponentsHash> lookup_;
  std::vector<int> rows_;
  std::vector<std::vector<long long>> adj_;
  long long det_ = 1;
  const Emit* emit_ = nullptr;
  Exponents exps_;
  Multidegree deg_;
};

void finish(SliceBasis& b) {
  std::vector<std::size_t> order(b.monomials.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  MonomialOrder less;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return less(b.monomials[x], b.monomials[y]); });
  std::vector<Exponents> mons;
  mons.reserve(order.size());
  for (auto i : order) mons.push_back(std::move(b.monomials[i]));
  b.monomials.clear();
  b.budgets.clear();
  b.index.clear();
  for (auto& m : mons) b.push(std::move(m));
}

}  // namespace

SliceBasis enumerate_basis(const Algebra& alg, const Multidegree& degree, int hdeg, const TruncationBox& box) {
  SliceFamily fam(alg, {degree}, hdeg, hdeg, box.budget);
  return fam.get(degree, hdeg);
}

SliceFamily::SliceFamily(Algebra alg, std::vector<Multidegree> targets, int hlo, int hhi, int budget)
    : alg_(std::move(alg)), targets_(std::move(targets)), hlo_(hlo), hhi_(hhi), budget_(budget) {
  for (const auto& t : targets_)
    if (static_cast<int>(t.size()) != alg_.arity())
      throw Error(ErrorCode::DegreeIncompatible, "multidegree arity does not match the algebra");
  for (const auto& t : targets_)
    for (int h = hlo_; h <= hhi_; ++h) {
      SliceBasis& b = slices_[{t, h}];
      b.algebra = alg_;
      b.degree = t;
      b.hdeg = h;
      b.budget_limit = budget_;
    }
  Enumerator en(alg_, targets_, hlo_, hhi_, budget_);
  en.run([&](const Exponents& e, std::size_t t) {
    SliceBasis& b = slices_[{targets_[t], alg_.hdeg(e)}];
    b.budgets.push_back(0);
    b.monomials.push_back(e);
  });
  for (auto& [k, b] : slices_) finish(b);
  empty_.algebra = alg_;
  empty_.budget_limit = budget_;
}

const SliceBasis& SliceFamily::get(const Multidegree& degree, int hdeg) const {
  auto it = slices_.find({degree, hdeg});
  if (it == slices_.end()) return empty_;
  return it->second;
}

CompletenessOracle::CompletenessOracle(const Algebra& alg) {
  int g = alg.arity();
  for (const auto& v : alg.variables())
    if (v.inverted && !v.pinned) return;
  std::vector<int> lam(g + 1, -3);
  while (true) {
    bool ok = true;
    for (const auto& v : alg.variables()) {
      int val = lam[g] * v.hdeg;
      for (int c = 0; c < g; ++c) val += lam[c] * v.weight[c];
      if (v.pinned) {
        if (v.inverted ? val != 0 : val < 0) ok = false;
      } else if (val < v.budget_weight) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) functionals_.push_back(lam);
    int k = 0;
    while (k <= g && lam[k] == 3) lam[k++] = -3;
    if (k > g) break;
    ++lam[k];
  }
}

std::optional<int> CompletenessOracle::bound(const Multidegree& degree, int hdeg) const {
  std::optional<int> best;
  for (const auto& lam : functionals_) {
    int val = lam.back() * hdeg;
    for (std::size_t c = 0; c < degree.size(); ++c) val += lam[c] * degree[c];
    if (!best || val < *best) best = val;
  }
  return best;
}

bool CompletenessOracle::complete(const Multidegree& degree, int hdeg, int level) const {
  auto b = bound(degree, hdeg);
  return b && *b <= level;
}

bool SliceMap::any_boundary() const { return std::find(boundary.begin(), boundary.end(), true) != boundary.end(); }

namespace {

template <class ImageFn>
SliceMap build_map(const SliceBasis& source, const SliceBasis& target, ImageFn image) {
  SliceMap out{ExactMatrix(target.size(), source.size()), std::vector<bool>(source.size(), false)};
  const Algebra& ta = target.algebra;
  for (std::size_t c = 0; c < source.size(); ++c) {
    Terms img = image(source.monomials[c]);
    for (const auto& [e, v] : img) {
      int r = target.find(e);
      if (r >= 0) {
        out.matrix.add(r, c, v);
        continue;
      }
      if (ta.degree(e) != target.degree || ta.hdeg(e) != target.hdeg)
        throw Error(ErrorCode::DegreeIncompatible, "image term " + ta.monomial_string(e) + " leaves the target slice");
      if (ta.budget(e) > target.budget_limit) {
        out.boundary[c] = true;
        continue;
      }
      throw Error(ErrorCode::DegreeIncompatible, "image term " + ta.monomial_string(e) + " missing from target basis");
    }
  }
  return out;
}

}  // namespace

SliceMap linear_map_slice(const Element& multiplier, const SliceBasis& source, const SliceBasis& target) {
  const Algebra& alg = source.algebra;
  if (!multiplier.algebra().same(alg) || !target.algebra.same(alg))
    throw Error(ErrorCode::AlgebraMismatch, "multiplication slices must share one algebra");
  if (!multiplier.is_zero()) {
    auto d = multiplier.degree();
    auto h = multiplier.hdeg();
    if (!d || !h) throw Error(ErrorCode::DegreeIncompatible, "multiplier is not homogeneous");
    Multidegree want = source.degree;
    for (std::size_t i = 0; i < want.size(); ++i) want[i] += (*d)[i];
    if (want != target.degree || source.hdeg + *h != target.hdeg)
      throw Error(ErrorCode::DegreeIncompatible, "multiplier degree does not match source and target slices");
  }
  return build_map(source, target, [&](const Exponents& m) {
    Terms one;
    one.emplace(m, Rational(1));
    return alg.mul_terms(multiplier.terms(), one);
  });
}

SliceMap differential_slice(const SliceBasis& source, const SliceBasis& target) {
  const Algebra& alg = source.algebra;
  if (target.degree != source.degree || target.hdeg != source.hdeg + 1)
    throw Error(ErrorCode::DegreeIncompatible, "differential target must be the next homological slice");
  return build_map(source, target, [&](const Exponents& m) { return alg.d_monomial(m); });
}

SliceMap algebra_map_slice(const AlgebraMap& map, const SliceBasis& source, const SliceBasis& target) {
  if (map.map_degree(source.degree) != target.degree || source.hdeg != target.hdeg)
    throw Error(ErrorCode::DegreeIncompatible, "algebra map sends the source slice elsewhere");
  return build_map(source, target, [&](const Exponents& m) { return map.apply_monomial(m); });
}

std::string degree_string(const Multidegree& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

}  // namespace wcq
