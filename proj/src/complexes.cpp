#include "wcq/complexes.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace wcq {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::HypothesisViolation: return "hypothesis-violation";
    case Verdict::Info: return "info";
  }
  return "?";
}

static int severity(Verdict v) {
  switch (v) {
    case Verdict::Pass: return 0;
    case Verdict::Info: return 1;
    case Verdict::Inconclusive: return 2;
    case Verdict::HypothesisViolation: return 3;
    case Verdict::Fail: return 4;
  }
  return 4;
}

Verdict combine(Verdict a, Verdict b) { return severity(a) >= severity(b) ? a : b; }

std::size_t SliceComplex::dim(int h) const {
  if (h < lo || h > hi()) return 0;
  return budgets[h - lo].size();
}

bool SliceComplex::graded() const {
  for (std::size_t k = 0; k < diffs.size(); ++k)
    for (std::size_t c = 0; c < diffs[k].cols(); ++c)
      for (const auto& [r, v] : diffs[k].column(c))
        if (budgets[k + 1][r] != budgets[k][c]) return false;
  return true;
}

void SliceComplex::check() const {
  for (std::size_t k = 0; k + 1 < diffs.size(); ++k) {
    ExactMatrix dd = diffs[k + 1] * diffs[k];
    if (!dd.is_zero())
      throw Error(ErrorCode::NotAComplex, "d o d != 0 at degree " + std::to_string(lo + static_cast<int>(k)));
  }
}

SliceComplex SliceComplex::shifted(int k) const {
  SliceComplex s = *this;
  s.lo += k;
  s.report_lo += k;
  return s;
}

int budget_margin(const Algebra& alg) {
  int margin = 0;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    const Terms& d = alg.differential(i);
    if (d.empty()) continue;
    int lo = -1, inv = 0;
    for (const auto& [e, c] : d) {
      int b = alg.budget(e);
      lo = lo < 0 ? b : std::min(lo, b);
      int ib = 0;
      for (std::size_t k = 0; k < e.size(); ++k)
        if (alg.var(k).inverted) ib += alg.var(k).budget_weight * std::abs(e[k]);
      inv = std::max(inv, ib);
    }
    margin = std::max(margin, alg.var(i).budget_weight - lo + 2 * inv);
  }
  return margin;
}

SliceComplex algebra_slice_complex(const SliceFamily& fam, const Multidegree& degree, int report_lo,
                                   const CompletenessOracle* oracle) {
  SliceComplex c;
  c.degree = degree;
  c.lo = fam.hlo();
  c.report_lo = report_lo;
  c.budget = fam.budget();
  c.margin = budget_margin(fam.algebra());
  for (int h = fam.hlo(); h <= fam.hhi(); ++h) {
    const SliceBasis& b = fam.get(degree, h);
    c.budgets.push_back(b.budgets);
    c.complete.push_back(oracle && oracle->complete(degree, h, fam.budget()));
  }
  for (int h = fam.hlo(); h < fam.hhi(); ++h) {
    SliceMap m = differential_slice(fam.get(degree, h), fam.get(degree, h + 1));
    c.diffs.push_back(std::move(m.matrix));
  }
  return c;
}

namespace {

std::size_t rank_levels(const ExactMatrix& m, const std::vector<int>& colb, int level, bool graded) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  if (!graded) {
    std::vector<bool> keep(colb.size());
    for (std::size_t i = 0; i < colb.size(); ++i) keep[i] = colb[i] <= level;
    return rank(m.select_columns(keep));
  }
  std::map<int, std::vector<bool>> groups;
  for (std::size_t i = 0; i < colb.size(); ++i) {
    if (colb[i] > level) continue;
    auto& g = groups[colb[i]];
    if (g.empty()) g.assign(colb.size(), false);
    g[i] = true;
  }
  std::size_t r = 0;
  for (auto& [w, keep] : groups) r += rank(m.select_columns(keep));
  return r;
}

}  // namespace

HomologyReport homology_dims(const SliceComplex& c, std::optional<int> level) {
  c.check();
  HomologyReport rep;
  rep.degree = c.degree;
  rep.graded = c.graded();
  int n = level ? *level : (rep.graded ? c.budget : c.budget - c.margin);
  rep.level = n;
  for (int h = c.report_lo; h <= c.hi(); ++h) {
    int k = h - c.lo;
    const auto& b = c.budgets[k];
    std::size_t in_band = std::count_if(b.begin(), b.end(), [&](int x) { return x <= n; });
    std::size_t z = in_band;
    if (k < static_cast<int>(c.diffs.size())) z -= rank_levels(c.diffs[k], b, n, rep.graded);
    std::size_t bd = 0;
    if (k > 0) {
      const ExactMatrix& prev = c.diffs[k - 1];
      if (rep.graded) {
        bd = rank_levels(prev, c.budgets[k - 1], n, true);
      } else {
        std::vector<bool> high(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) high[i] = b[i] > n;
        bd = rank(prev) - rank(prev.select_rows(high));
      }
    }
    HomologyEntry e;
    e.hdeg = h;
    e.dim = z - bd;
    bool below_complete = k == 0 ? true : static_cast<bool>(c.complete[k - 1]);
    e.certified = rep.graded || e.dim == 0 || (below_complete && c.complete[k]);
    rep.entries.push_back(e);
  }
  return rep;
}

std::size_t HomologyReport::at(int h) const {
  for (const auto& e : entries)
    if (e.hdeg == h) return e.dim;
  return 0;
}

bool HomologyReport::certified(int h) const {
  for (const auto& e : entries)
    if (e.hdeg == h) return e.certified;
  return false;
}

bool HomologyReport::all_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const HomologyEntry& e) { return e.dim == 0; });
}

bool HomologyReport::any_certified_nonzero() const {
  return std::any_of(entries.begin(), entries.end(), [](const HomologyEntry& e) { return e.dim && e.certified; });
}

bool commutes(const SliceComplex& c, const SliceComplex& d, const SliceChainMap& f, std::string* why) {
  if (c.lo != d.lo || c.hi() != d.hi() || f.size() != c.budgets.size()) {
    if (why) *why = "complexes are not aligned";
    return false;
  }
  for (std::size_t k = 0; k + 1 < f.size(); ++k) {
    if (!(f[k + 1] * c.diffs[k] == d.diffs[k] * f[k])) {
      if (why) *why = "f d != d f at degree " + std::to_string(c.lo + static_cast<int>(k));
      return false;
    }
  }
  return true;
}

SliceComplex cone(const SliceComplex& c, const SliceComplex& d, const SliceChainMap& f) {
  std::string why;
  if (!commutes(c, d, f, &why)) throw Error(ErrorCode::NotChainMap, why);
  SliceComplex out;
  out.degree = d.degree;
  out.lo = c.lo - 1;
  out.report_lo = std::max(c.report_lo, d.report_lo);
  out.budget = std::max(c.budget, d.budget);
  out.margin = std::max(c.margin, d.margin);
  int hi = c.hi();
  auto csize = [&](int h) { return c.dim(h); };
  for (int k = out.lo; k <= hi; ++k) {
    std::vector<int> b;
    if (k + 1 <= hi) b = c.budgets[k + 1 - c.lo];
    if (k >= d.lo) b.insert(b.end(), d.budgets[k - d.lo].begin(), d.budgets[k - d.lo].end());
    out.budgets.push_back(std::move(b));
    bool comp = true;
    if (k + 1 <= hi) comp = comp && c.complete[k + 1 - c.lo];
    if (k >= d.lo) comp = comp && d.complete[k - d.lo];
    out.complete.push_back(comp);
  }
  for (int k = out.lo; k < hi; ++k) {
    std::size_t cs = csize(k + 1), ct = csize(k + 2);
    std::size_t ds = d.dim(k), dt = d.dim(k + 1);
    ExactMatrix m(ct + dt, cs + ds);
    if (k + 1 < hi) {
      const ExactMatrix& dc = c.diffs[k + 1 - c.lo];
      for (std::size_t col = 0; col < cs; ++col)
        for (const auto& [r, v] : dc.column(col)) m.add(r, col, -v);
    }
    const ExactMatrix& fk = f[k + 1 - c.lo];
    for (std::size_t col = 0; col < cs; ++col)
      for (const auto& [r, v] : fk.column(col)) m.add(ct + r, col, v);
    if (k >= d.lo) {
      const ExactMatrix& dd = d.diffs[k - d.lo];
      for (std::size_t col = 0; col < ds; ++col)
        for (const auto& [r, v] : dd.column(col)) m.add(ct + r, cs + col, v);
    }
    out.diffs.push_back(std::move(m));
  }
  return out;
}

QuasiIsoResult compare_quasi_iso(const SliceComplex& c, const SliceComplex& d, const SliceChainMap& f) {
  QuasiIsoResult res;
  SliceComplex k = cone(c, d, f);
  res.cone_homology = homology_dims(k);
  if (res.cone_homology.all_zero())
    res.verdict = Verdict::Pass;
  else if (res.cone_homology.any_certified_nonzero())
    res.verdict = Verdict::Fail;
  else
    res.verdict = Verdict::Inconclusive;
  return res;
}

SliceChainMap algebra_chain_map(const AlgebraMap& map, const SliceFamily& source, const Multidegree& sdeg,
                                const SliceFamily& target, bool* boundary) {
  SliceChainMap f;
  Multidegree tdeg = map.map_degree(sdeg);
  for (int h = source.hlo(); h <= source.hhi(); ++h) {
    SliceMap m = algebra_map_slice(map, source.get(sdeg, h), target.get(tdeg, h));
    if (boundary && m.any_boundary()) *boundary = true;
    f.push_back(std::move(m.matrix));
  }
  return f;
}

}  // namespace wcq
