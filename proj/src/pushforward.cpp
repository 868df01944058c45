#include "wcq/pushforward.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "wcq/windows.hpp"

namespace wcq {

const char* chamber_name(Chamber c) { return c == Chamber::Plus ? "plus" : "minus"; }

Algebra reverse_grading(const Algebra& r) {
  AlgebraBuilder b(r.arity());
  b.set_label(r.label() + "^rev");
  for (const auto& v : r.variables()) {
    Multidegree w = v.weight;
    for (int& x : w) x = -x;
    b.add({v.name, w, v.hdeg}, v.inverted, v.pinned);
  }
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!r.differential(i).empty()) b.set_differential(r.var(i).name, r.element(r.differential(i)).str());
  return b.build();
}

CechComplex cech_complex(const Algebra& r, Chamber side, int twist) {
  CechComplex c;
  c.side = side;
  c.twist = twist;
  c.q = build_q(side == Chamber::Plus ? r : reverse_grading(r));
  BaseSplit split = split_base(c.q.base);
  if (split.positive.empty())
    throw Error(ErrorCode::EmptySide, std::string("no variables of positive weight on the ") + chamber_name(side) +
                                          " side of " + r.label());
  for (std::size_t v : split.positive) c.inverted.push_back(*c.q.image_of(v));
  std::size_t l = c.inverted.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << l); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < l; ++k)
      if (mask >> k & 1) s.push_back(k);
    c.subsets.push_back(s);
  }
  std::stable_sort(c.subsets.begin(), c.subsets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  for (const auto& s : c.subsets) {
    std::set<std::string> names;
    for (std::size_t k : s) names.insert(c.q.algebra.var(c.inverted[k]).name);
    c.terms.push_back(c.q.algebra.localize(names));
  }
  return c;
}

namespace {

// Position of subset `s` with element k added, and the sign of the insertion.
struct Face {
  std::size_t target;
  int sign;
};

std::vector<std::vector<std::pair<std::size_t, Face>>> faces(const CechComplex& c) {
  std::map<std::vector<std::size_t>, std::size_t> pos;
  for (std::size_t i = 0; i < c.subsets.size(); ++i) pos[c.subsets[i]] = i;
  std::vector<std::vector<std::pair<std::size_t, Face>>> out(c.subsets.size());
  for (std::size_t i = 0; i < c.subsets.size(); ++i) {
    const auto& s = c.subsets[i];
    for (std::size_t k = 0; k < c.length(); ++k) {
      if (std::find(s.begin(), s.end(), k) != s.end()) continue;
      auto t = s;
      t.insert(std::upper_bound(t.begin(), t.end(), k), k);
      int p = static_cast<int>(std::find(t.begin(), t.end(), k) - t.begin());
      out[i].push_back({k, {pos.at(t), p % 2 ? -1 : 1}});
    }
  }
  return out;
}

// Inclusion of one localization into a larger one.
void add_restriction(ExactMatrix& m, std::size_t roff, std::size_t coff, const SliceBasis& from, const SliceBasis& to,
                     int sign) {
  for (std::size_t j = 0; j < from.size(); ++j) {
    int r = to.find(from.monomials[j]);
    if (r < 0) throw Error(ErrorCode::NotAComplex, "restriction leaves the truncation box");
    m.add(roff + static_cast<std::size_t>(r), coff + j, Rational(sign));
  }
}

}  // namespace

int CechComplex::margin() const {
  int m = 0;
  for (const auto& t : terms) m = std::max(m, budget_margin(t));
  return m;
}

SliceComplex CechComplex::row(int n, int b, int budget) const {
  Multidegree deg{twist, n};
  std::vector<SliceFamily> fams;
  for (const auto& t : terms) fams.emplace_back(t, std::vector<Multidegree>{deg}, b, b, budget);
  auto fc = faces(*this);
  SliceComplex c;
  c.degree = deg;
  c.lo = 0;
  c.report_lo = 0;
  c.budget = budget;
  std::size_t l = length();
  std::vector<std::vector<std::size_t>> offset(l + 1);
  c.budgets.assign(l, {});
  std::vector<std::size_t> where(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::size_t k = subsets[i].size() - 1;
    where[i] = c.budgets[k].size();
    const SliceBasis& s = fams[i].get(deg, b);
    c.budgets[k].insert(c.budgets[k].end(), s.budgets.begin(), s.budgets.end());
  }
  c.complete.assign(l, false);
  for (std::size_t k = 0; k + 1 < l; ++k) c.diffs.emplace_back(c.budgets[k + 1].size(), c.budgets[k].size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    std::size_t k = subsets[i].size() - 1;
    for (const auto& [a, f] : fc[i])
      add_restriction(c.diffs[k], where[f.target], where[i], fams[i].get(deg, b), fams[f.target].get(deg, b), f.sign);
  }
  return c;
}

SliceComplex CechComplex::total(int n, int hmin, int budget) const {
  Multidegree deg{twist, n};
  int l = static_cast<int>(length());
  int blo = hmin - l;
  std::vector<SliceFamily> fams;
  for (const auto& t : terms) fams.emplace_back(t, std::vector<Multidegree>{deg}, blo, 0, budget);
  auto fc = faces(*this);
  SliceComplex c;
  c.degree = deg;
  c.lo = hmin - 1;
  c.report_lo = hmin;
  c.budget = budget;
  c.margin = margin();
  int thi = l - 1;
  std::size_t count = static_cast<std::size_t>(thi - c.lo + 1);
  c.budgets.assign(count, {});
  c.complete.assign(count, false);
  // offset of the (subset, b) block inside its total degree
  std::map<std::pair<std::size_t, int>, std::size_t> where;
  for (int t = c.lo; t <= thi; ++t) {
    auto& bud = c.budgets[t - c.lo];
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      int b = t - static_cast<int>(subsets[i].size()) + 1;
      if (b < blo || b > 0) continue;
      where[{i, b}] = bud.size();
      const SliceBasis& s = fams[i].get(deg, b);
      bud.insert(bud.end(), s.budgets.begin(), s.budgets.end());
    }
  }
  for (int t = c.lo; t < thi; ++t) {
    ExactMatrix m(c.budgets[t + 1 - c.lo].size(), c.budgets[t - c.lo].size());
    for (std::size_t i = 0; i < subsets.size(); ++i) {
      int cs = static_cast<int>(subsets[i].size());
      int b = t - cs + 1;
      if (b < blo || b > 0) continue;
      std::size_t col = where.at({i, b});
      const SliceBasis& src = fams[i].get(deg, b);
      for (const auto& [a, f] : fc[i])
        add_restriction(m, where.at({f.target, b}), col, src, fams[f.target].get(deg, b), f.sign);
      if (b + 1 <= 0) {
        SliceMap dq = differential_slice(src, fams[i].get(deg, b + 1));
        std::size_t row = where.at({i, b + 1});
        Rational sign = (cs - 1) % 2 ? -1 : 1;
        for (std::size_t j = 0; j < dq.matrix.cols(); ++j)
          for (const auto& [r, v] : dq.matrix.column(j)) m.add(row + r, col + j, sign * v);
      }
    }
    c.diffs.push_back(std::move(m));
  }
  return c;
}

namespace {

struct PlusImage {
  bool in_window = false;
  bool hypothesis_ok = false;
  bool match = true;
  Check check;
};

std::string subset_name(const CechComplex& c, std::size_t i) {
  std::string s = "{";
  for (std::size_t k = 0; k < c.subsets[i].size(); ++k)
    s += (k ? "," : "") + c.q.algebra.var(c.inverted[c.subsets[i][k]]).name;
  return s + "}";
}

// A monomial of the top term with every inverted exponent negative.
std::string top_sample(const CechComplex& c, const SliceBasis& top) {
  for (const auto& e : top.monomials) {
    bool all = true;
    for (std::size_t v : c.inverted) all = all && e[v] < 0;
    if (all) return top.algebra.monomial_string(e);
  }
  return "";
}

PlusImage plus_image(const Algebra& r, int twist, const TruncationBox& box, const std::vector<int>& ns,
                     Chamber side) {
  PlusImage out;
  WeightSummary mu = compute_mu(r);
  BaseSplit split = split_base(r);
  bool gens_ok = true;
  for (std::size_t g : split.generators) gens_ok = gens_ok && r.var(g).weight[0] <= 0;
  out.in_window = twist > -mu.mu_plus && twist <= 0;
  out.hypothesis_ok = gens_ok && out.in_window;

  CechComplex cech = cech_complex(r, Chamber::Plus, twist);
  Check& ch = out.check;
  int l = static_cast<int>(cech.length());
  int sign = side == Chamber::Plus ? 1 : -1;
  int shown = sign * twist;

  // The term inverting every chart variable.
  const Algebra& full = cech.terms.back();
  bool full_acyclic = true;

  HilbertTable rows{"cech", {}}, totals{"total", {}}, expected{"expected", {}};
  std::vector<int> rdeg;
  for (int n : ns) rdeg.push_back(n + twist);
  std::vector<Multidegree> rdegs;
  for (int d : rdeg) rdegs.push_back({d});
  SliceFamily rfam(r, rdegs, box.hmin - 1, 0, box.budget);

  struct PerN {
    std::vector<std::string> notes;
    std::vector<TableEntry> rows, totals, expected;
    bool match = true;
    bool acyclic = true;
  };
  std::vector<PerN> per(ns.size());
  int headroom = cech.margin();
  parallel_for(ns.size(), [&](std::size_t idx) {
    PerN& pn = per[idx];
    int n = ns[idx];
    Multidegree shown_deg{sign * n};
    Multidegree rd{rdeg[idx]};
    for (int b = box.hmin; b <= 0; ++b) {
      HomologyReport h = homology_dims(cech.row(n, b, box.budget));
      std::size_t rdim = 0;
      for (int bb : rfam.get(rd, b).budgets) rdim += bb <= box.budget;
      if (h.at(0) || rdim) pn.expected.push_back({shown_deg, b, rdim, true});
      for (const auto& e : h.entries)
        if (e.dim) pn.rows.push_back({{sign * n, b}, e.hdeg, e.dim, e.certified});
      for (int k = 1; k < l; ++k)
        if (h.at(k)) {
          pn.match = false;
          std::string msg = "n=" + std::to_string(shown_deg[0]) + " b=" + std::to_string(b) + ": H^" +
                            std::to_string(k) + " = " + std::to_string(h.at(k));
          if (k == l - 1) {
            SliceFamily tf(cech.terms.back(), {{twist, n}}, b, b, box.budget);
            std::string s = top_sample(cech, tf.get({twist, n}, b));
            if (!s.empty()) msg += ", top class " + s;
          }
          pn.notes.push_back(msg);
        }
      if (h.at(0) != rdim) {
        pn.match = false;
        pn.notes.push_back("n=" + std::to_string(shown_deg[0]) + " b=" + std::to_string(b) + ": H^0 = " +
                           std::to_string(h.at(0)) + ", R has " + std::to_string(rdim));
      }
    }
    // Classes of budget <= E, with room for the chains that bound them.
    HomologyReport th = homology_dims(cech.total(n, box.hmin, box.budget + headroom), box.budget);
    HomologyReport rh = homology_dims(algebra_slice_complex(rfam, rd, box.hmin));
    for (const auto& e : th.entries) {
      if (e.dim) pn.totals.push_back({shown_deg, e.hdeg, e.dim, e.certified});
      std::size_t want = e.hdeg <= 0 ? rh.at(e.hdeg) : 0;
      if (e.dim != want) {
        pn.match = false;
        pn.notes.push_back("n=" + std::to_string(shown_deg[0]) + ": total H^" + std::to_string(e.hdeg) + " = " +
                           std::to_string(e.dim) + ", R gives " + std::to_string(want));
      }
    }
    SliceFamily ff(full, {{twist, n}}, box.hmin - 1, 0, box.budget + headroom);
    pn.acyclic = homology_dims(algebra_slice_complex(ff, {twist, n}, box.hmin), box.budget).all_zero();
  });
  for (auto& pn : per) {
    for (auto& s : pn.notes) ch.note(std::move(s));
    rows.entries.insert(rows.entries.end(), pn.rows.begin(), pn.rows.end());
    totals.entries.insert(totals.entries.end(), pn.totals.begin(), pn.totals.end());
    expected.entries.insert(expected.entries.end(), pn.expected.begin(), pn.expected.end());
    out.match = out.match && pn.match;
    full_acyclic = full_acyclic && pn.acyclic;
  }
  if (l > 1 && full_acyclic) ch.note("term " + subset_name(cech, cech.subsets.size() - 1) + " is acyclic");
  ch.tables = {rows, totals, expected};
  ch.note("twist " + std::to_string(shown) + (out.in_window ? " inside" : " outside") + " the window");
  if (!gens_ok) ch.note("a generator has weight of the wrong sign");
  if (out.match) {
    ch.note("pushforward matches R(" + std::to_string(shown) + ")");
  } else if (out.hypothesis_ok) {
    ch.merge(Verdict::Fail);
  } else {
    ch.merge(Verdict::Info);
  }
  return out;
}

std::vector<int> degree_span(const TruncationBox& box) {
  std::vector<int> out;
  auto [lo, hi] = box.degree_range.empty() ? std::pair<int, int>{-4, 4} : box.degree_range[0];
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

}  // namespace

WindowImageReport window_image(const Algebra& r, int twist, const TruncationBox& box, Chamber side) {
  WindowImageReport rep;
  rep.twist = twist;
  rep.side = side;
  std::vector<int> ns = degree_span(box);
  PlusImage img;
  if (side == Chamber::Plus) {
    img = plus_image(r, twist, box, ns, side);
  } else {
    std::vector<int> rev;
    for (auto it = ns.rbegin(); it != ns.rend(); ++it) rev.push_back(-*it);
    img = plus_image(reverse_grading(r), -twist, box, rev, side);
  }
  rep.in_window = img.in_window;
  rep.hypothesis_ok = img.hypothesis_ok;
  rep.match = img.match;
  rep.check = std::move(img.check);
  rep.check.name = std::string("window image ") + chamber_name(side) + " i=" + std::to_string(twist);
  return rep;
}

WindowSummary window_membership(const Algebra& r, Chamber side, const TruncationBox& box) {
  WindowSummary s;
  s.side = side;
  s.check.name = std::string("window membership ") + chamber_name(side);
  WeightSummary mu = compute_mu(r);
  if (side == Chamber::Plus)
    for (int i = -mu.mu_plus + 1; i <= 0; ++i) s.range.push_back(i);
  else
    for (int i = 0; i < -mu.mu_minus; ++i) s.range.push_back(i);
  Check weights = check_generator_weights(r, side == Chamber::Plus ? WeightMode::Plus : WeightMode::Minus);
  for (auto& n : weights.notes) s.check.note(n);
  s.check.merge(weights.verdict);
  if (s.range.empty()) {
    s.check.note("degenerate window: the range is empty");
    s.check.merge(Verdict::Info);
    return s;
  }
  std::ostringstream os;
  os << "range";
  for (int i : s.range) os << ' ' << i;
  s.check.note(os.str());
  for (int i : s.range) {
    WindowImageReport w = window_image(r, i, box, side);
    s.check.note("i=" + std::to_string(i) + (w.match ? ": match" : ": mismatch"));
    if (!w.match) s.check.merge(w.hypothesis_ok ? Verdict::Fail : Verdict::Info);
    s.images.push_back(std::move(w));
  }
  return s;
}

}  // namespace wcq
