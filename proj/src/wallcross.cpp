#include "wcq/wallcross.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "wcq/datasets.hpp"
#include "wcq/pushforward.hpp"
#include "wcq/resolutions.hpp"
#include "wcq/windows.hpp"

namespace wcq {

std::vector<ChartKernel> restrict_kernel(const Algebra& r) {
  BaseSplit sp = split_base(r);
  if (sp.positive.empty()) throw Error(ErrorCode::NoPositiveChart, r.label() + " has no variable of positive weight");
  if (sp.negative.empty()) throw Error(ErrorCode::NoNegativeChart, r.label() + " has no variable of negative weight");
  KernelAlgebra q = build_q(r);
  std::vector<ChartKernel> out;
  for (std::size_t x : sp.positive)
    for (std::size_t y : sp.negative) {
      ChartKernel c;
      c.x = x;
      c.y = y;
      c.xa = *q.image_of(x);
      c.zb = *q.image_of(y);
      c.label = "(" + r.var(x).name + ", " + r.var(y).name + ")";
      std::set<std::string> units{q.algebra.var(c.xa).name, q.algebra.var(c.zb).name};
      c.algebra = q.algebra.localize(units).with_pinned(units).relabel("Q" + c.label);
      c.q = q;
      out.push_back(std::move(c));
    }
  return out;
}

namespace {

struct Tables {
  std::vector<Multidegree> degrees;
  std::vector<HomologyReport> reports;
};

// Homology of every box slice at level E, computed with room for the chains
// that bound classes of budget <= E.
Tables band_homology(const Algebra& alg, const TruncationBox& kb) {
  Tables t;
  t.degrees = kb.degrees();
  int headroom = budget_margin(alg);
  SliceFamily fam(alg, t.degrees, kb.hmin - 1, 0, kb.budget + headroom);
  t.reports.resize(t.degrees.size());
  parallel_for(t.degrees.size(), [&](std::size_t i) {
    t.reports[i] = homology_dims(algebra_slice_complex(fam, t.degrees[i], kb.hmin), kb.budget);
  });
  return t;
}

bool single_terms(const std::vector<Element>& rel) {
  return std::all_of(rel.begin(), rel.end(), [](const Element& e) { return e.size() == 1; });
}

// m lies in the monomial ideal of g iff m / g has no negative exponent on a
// variable that is not a unit.
bool divides(const Algebra& a, const Exponents& g, const Exponents& m) {
  for (std::size_t k = 0; k < m.size(); ++k)
    if (!a.var(k).inverted && m[k] < g[k]) return false;
  return true;
}

std::size_t count_band(const SliceBasis& b, int level, const std::function<bool(const Exponents&)>& keep) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < b.size(); ++i) n += b.budgets[i] <= level && keep(b.monomials[i]);
  return n;
}

// H^0 of the chart ring modulo the differentials of the hdeg -1 generators,
// without going through the chart differential.
std::size_t quotient_dim(const Algebra& a, const std::vector<Element>& rel, const std::vector<int>& rel_budget,
                         const Multidegree& deg, int level, int limit) {
  TruncationBox big;
  big.budget = limit;
  big.hmin = 0;
  SliceBasis target = enumerate_basis(a, deg, 0, big);
  if (single_terms(rel)) {
    return count_band(target, level, [&](const Exponents& m) {
      for (const auto& r : rel)
        if (divides(a, r.terms().begin()->first, m)) return false;
      return true;
    });
  }
  SliceComplex c;
  c.degree = deg;
  c.lo = -1;
  c.report_lo = 0;
  c.budget = limit;
  c.margin = limit - level;
  c.budgets.assign(2, {});
  c.budgets[1] = target.budgets;
  c.complete.assign(2, false);
  ExactMatrix m(target.size(), 0);
  std::vector<ExactMatrix> blocks;
  for (std::size_t k = 0; k < rel.size(); ++k) {
    Multidegree sd = deg;
    Multidegree rd = *rel[k].degree();
    for (std::size_t j = 0; j < sd.size(); ++j) sd[j] -= rd[j];
    TruncationBox sb = big;
    sb.budget = limit - rel_budget[k];
    SliceBasis src = enumerate_basis(a, sd, 0, sb);
    for (int b : src.budgets) c.budgets[0].push_back(b + rel_budget[k]);
    blocks.push_back(linear_map_slice(rel[k], src, target).matrix);
  }
  ExactMatrix all(target.size(), c.budgets[0].size());
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (const auto& [r, v] : b.column(j)) all.add(r, off + j, v);
    off += b.cols();
  }
  c.diffs.push_back(std::move(all));
  return homology_dims(c, level).at(0);
}

}  // namespace

ChartHomology chart_homology(const Algebra& r, const ChartKernel& chart, const TruncationBox& box) {
  (void)r;
  ChartHomology out;
  out.label = chart.label;
  Check& c = out.check;
  c.name = "chart homology " + chart.label;
  const Algebra& a = chart.algebra;
  TruncationBox kb = kernel_box(box);
  Tables t = band_homology(a, kb);
  out.reports = t.reports;

  HilbertTable tab{"chart " + chart.label, {}};
  std::set<int> rows;
  for (const auto& h : t.reports) {
    add_report(tab, h);
    for (const auto& e : h.entries)
      if (e.dim) rows.insert(e.hdeg);
  }
  std::string rs;
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) rs += (rs.empty() ? "" : ", ") + std::to_string(*it);
  c.note("nonzero rows: " + (rs.empty() ? std::string("none") : rs));

  std::vector<Element> rel;
  std::vector<int> rel_budget;
  for (std::size_t v = 0; v < a.size(); ++v)
    if (a.var(v).hdeg == -1) {
      rel.push_back(a.element(a.differential(v)));
      rel_budget.push_back(a.var(v).budget_weight);
    }
  int limit = kb.budget + budget_margin(a);

  HilbertTable h0{"fiber-product carrier", {}}, h1{"u = 0 carrier", {}};
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < t.degrees.size(); ++i) {
    const HomologyReport& h = t.reports[i];
    if (!h.certified(0)) {
      ++skipped;
      continue;
    }
    std::size_t want = quotient_dim(a, rel, rel_budget, t.degrees[i], kb.budget, limit);
    if (want) h0.entries.push_back({t.degrees[i], 0, want, true});
    if (want != h.at(0)) c.fail("H^0 at " + degree_string(t.degrees[i]) + " is " + std::to_string(h.at(0)) +
                                ", carrier gives " + std::to_string(want));
  }
  c.note("H^0 compared with k[chart]/(d e) on certified slices" +
         (skipped ? ", " + std::to_string(skipped) + " uncertified skipped" : std::string()));

  // H^-1 against k[chart]/(u), shifted by the budget of the lowest class.
  std::optional<std::size_t> seed;
  for (std::size_t i = 0; i < t.degrees.size() && !seed; ++i)
    if (t.reports[i].at(-1) && t.reports[i].graded) seed = i;
  if (seed) {
    TruncationBox one = kb;
    int shift = 0;
    for (int n = 0; n <= kb.budget; ++n) {
      SliceFamily fam(a, {t.degrees[*seed]}, -2, 0, n + budget_margin(a));
      if (homology_dims(algebra_slice_complex(fam, t.degrees[*seed], -1), n).at(-1)) {
        shift = n;
        break;
      }
    }
    TruncationBox big;
    big.budget = kb.budget;
    big.hmin = 0;
    for (std::size_t i = 0; i < t.degrees.size(); ++i) {
      const HomologyReport& h = t.reports[i];
      if (!h.certified(-1)) continue;
      SliceBasis b = enumerate_basis(a, t.degrees[i], 0, big);
      std::size_t want = count_band(b, kb.budget - shift, [&](const Exponents& m) { return m[chart.q.u] == 0; });
      if (want) h1.entries.push_back({t.degrees[i], -1, want, true});
      if (want != h.at(-1))
        c.fail("H^-1 at " + degree_string(t.degrees[i]) + " is " + std::to_string(h.at(-1)) + ", u = 0 carrier gives " +
               std::to_string(want));
    }
    c.note("H^-1 compared with k[chart]/(u), generator budget " + std::to_string(shift));
  }
  c.tables = {tab, h0};
  if (!h1.entries.empty()) c.tables.push_back(h1);
  return out;
}

namespace {

std::vector<Exponents> minimal_invariants(const Algebra& r, int budget) {
  std::vector<std::size_t> vars;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.var(i).hdeg == 0) vars.push_back(i);
  std::vector<Exponents> inv;
  Exponents e(r.size(), 0);
  std::function<void(std::size_t, int, int)> walk = [&](std::size_t k, int left, int deg) {
    if (k == vars.size()) {
      if (deg == 0 && left < budget) inv.push_back(e);
      return;
    }
    for (int p = 0; p <= left; ++p) {
      e[vars[k]] = p;
      walk(k + 1, left - p, deg + p * r.var(vars[k]).weight[0]);
    }
    e[vars[k]] = 0;
  };
  walk(0, budget, 0);
  auto total = [](const Exponents& x) {
    int s = 0;
    for (int v : x) s += v;
    return s;
  };
  std::sort(inv.begin(), inv.end(), [&](const Exponents& a, const Exponents& b) {
    return total(a) != total(b) ? total(a) < total(b) : MonomialOrder()(a, b);
  });
  std::vector<Exponents> gens;
  for (const auto& m : inv) {
    bool reducible = std::any_of(gens.begin(), gens.end(), [&](const Exponents& g) {
      for (std::size_t k = 0; k < m.size(); ++k)
        if (g[k] > m[k]) return false;
      return true;
    });
    if (!reducible) gens.push_back(m);
  }
  return gens;
}

ChartComparison compare_iso(const Algebra& r, const ChartKernel& ch, const TruncationBox& box) {
  ChartComparison out;
  out.label = ch.label;
  out.iso_case = true;
  Check& c = out.check;
  c.name = "fiber comparison " + ch.label;
  const Algebra& qa = ch.algebra;
  const KernelAlgebra& q = ch.q;

  AlgebraBuilder b(2);
  b.set_label("carrier" + ch.label);
  std::vector<std::size_t> of_base(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Variable& v = r.var(i);
    int w = v.weight[0];
    bool unit = i == ch.x || i == ch.y;
    Multidegree d = v.hdeg == 0 && w > 0 ? Multidegree{w, 0} : Multidegree{0, v.hdeg == 0 ? w : 0};
    of_base[i] = b.add({v.name, d, v.hdeg}, unit, unit);
  }
  std::size_t xp = b.add({r.var(ch.x).name + ".2", {0, r.var(ch.x).weight[0]}, 0});
  Algebra draft = b.draft();

  auto images_g = [&](const Algebra& target) {
    std::vector<Element> img;
    for (std::size_t v = 0; v < qa.size(); ++v) {
      if (q.roles[v] == Role::U) {
        Exponents e(target.size(), 0);
        e[of_base[ch.x]] = -1;
        e[xp] = 1;
        img.push_back(target.monomial(e));
      } else if (q.roles[v] == Role::G) {
        throw Error(ErrorCode::HypothesisViolation, "generator " + qa.var(v).name + " has nonzero weight");
      } else {
        img.push_back(target.gen(of_base[*q.origin[v]]));
      }
    }
    return img;
  };
  AlgebraMap g0{qa, draft, images_g(draft), identity_degree_matrix(2)};
  for (std::size_t v = 0; v < qa.size(); ++v)
    if (q.roles[v] == Role::E) b.set_differential(qa.var(v).name, g0.apply(qa.element(qa.differential(v))));
  Algebra carrier = b.build();
  AlgebraMap g{qa, carrier, images_g(carrier), identity_degree_matrix(2)};

  std::vector<Element> fimg;
  for (std::size_t i = 0; i < r.size(); ++i) fimg.push_back(qa.gen(*q.image_of(i)));
  fimg.push_back(qa.gen(q.u) * qa.gen(ch.xa));
  AlgebraMap f{carrier, qa, fimg, identity_degree_matrix(2)};

  std::string why;
  if (!f.is_chain_map(&why)) c.fail("f is not a chain map: " + why);
  if (!g.is_chain_map(&why)) c.fail("inverse is not a chain map: " + why);
  for (std::size_t v = 0; v < qa.size(); ++v)
    if (!(f.apply(g.apply(qa.gen(v))) == qa.gen(v))) c.fail("f(g(" + qa.var(v).name + ")) differs");
  for (std::size_t v = 0; v < carrier.size(); ++v)
    if (!(g.apply(f.apply(carrier.gen(v))) == carrier.gen(v))) c.fail("g(f(" + carrier.var(v).name + ")) differs");
  c.note("inverse u -> " + g.apply(qa.gen(q.u)).str());
  if (!c.passed()) return out;

  TruncationBox kb = kernel_box(box);
  Tables tq = band_homology(qa, kb);
  Tables tc = band_homology(carrier, kb);
  HilbertTable tab{"carrier " + ch.label, {}};
  for (std::size_t i = 0; i < tq.degrees.size(); ++i) {
    add_report(tab, tc.reports[i]);
    for (int h = kb.hmin; h <= 0; ++h)
      if (tq.reports[i].at(h) != tc.reports[i].at(h))
        c.fail("tables differ at " + degree_string(tq.degrees[i]) + " hdeg " + std::to_string(h));
  }
  // f is budget-preserving, so the band of the carrier maps into the band of Q.
  SliceFamily fc(carrier, tq.degrees, kb.hmin, 0, kb.budget);
  SliceFamily fq(qa, tq.degrees, kb.hmin, 0, kb.budget);
  std::vector<std::string> bad(tq.degrees.size());
  parallel_for(tq.degrees.size(), [&](std::size_t i) {
    for (int h = kb.hmin; h <= 0; ++h) {
      const SliceBasis& src = fc.get(tq.degrees[i], h);
      SliceMap m = algebra_map_slice(f, src, fq.get(tq.degrees[i], h));
      if (m.any_boundary() || rank(m.matrix) != src.size()) {
        bad[i] = degree_string(tq.degrees[i]) + " hdeg " + std::to_string(h);
        return;
      }
    }
  });
  for (const auto& s : bad)
    if (!s.empty()) c.fail("f is not injective at " + s);
  c.note("carrier " + carrier.describe());
  c.tables.push_back(std::move(tab));
  return out;
}

}  // namespace

FiberComparison fiber_comparison(const Algebra& r, const TruncationBox& box) {
  FiberComparison out;
  Check& c = out.check;
  c.name = "fiber comparison";
  Check gens = check_generator_weights(r, WeightMode::Wallcross);
  if (gens.verdict != Verdict::Pass) {
    std::string why = "fiber comparison needs degree-0 generators";
    for (const auto& n : gens.notes) why += "; " + n;
    throw Error(ErrorCode::HypothesisViolation, why);
  }
  BaseSplit sp = split_base(r);
  if (sp.positive.empty() || sp.negative.empty()) {
    c.merge(Verdict::Info);
    c.note("degenerate: no chart on one side, the comparison is trivial");
    return out;
  }
  KernelAlgebra q = build_q(r);
  out.invariant_budget = box.budget;
  for (const auto& m : minimal_invariants(r, box.budget)) {
    out.invariants.push_back(r.monomial_string(m));
    if (!(q.p.apply(r.monomial(m)) == q.s.apply(r.monomial(m))))
      c.fail("p and s differ on the invariant " + out.invariants.back());
  }
  for (std::size_t g : sp.generators) {
    out.invariants.push_back(r.var(g).name);
    if (!(q.p.apply(r.gen(g)) == q.s.apply(r.gen(g)))) c.fail("p and s differ on " + r.var(g).name);
  }
  std::string inv;
  for (const auto& s : out.invariants) inv += (inv.empty() ? "" : ", ") + s;
  c.note("R(0) generators up to exponent sum " + std::to_string(box.budget) + ": " + inv);

  for (std::size_t x : sp.positive) {
    const std::string& name = r.var(x).name;
    Algebra qx = q.algebra.localize({q.algebra.var(*q.image_of(x)).name});
    int a = r.var(x).weight[0];
    Exponents e(qx.size(), 0);
    e[*q.image_of(x)] = -1;
    Element lhs = qx.monomial(e) * qx.element(q.s.apply(r.gen(x)).terms());
    Exponents ue(qx.size(), 0);
    ue[q.u] = a;
    std::string gens_s = "1";
    for (int k = 1; k < a; ++k) gens_s += k == 1 ? ", u" : ", u^" + std::to_string(k);
    std::string cert = name + ": " + qx.monomial(ue).str() + " = f(" + name + "^-1 (x) " + name + "), module generators " + gens_s;
    if (!(lhs == qx.monomial(ue))) c.fail("finiteness witness fails on " + name + ": got " + lhs.str());
    out.certificates.push_back(cert);
    c.note(cert);
  }

  bool iso = std::all_of(sp.positive.begin(), sp.positive.end(), [&](std::size_t i) { return r.var(i).weight[0] == 1; }) &&
             std::all_of(sp.negative.begin(), sp.negative.end(), [&](std::size_t i) { return r.var(i).weight[0] == -1; });
  for (const auto& ch : restrict_kernel(r)) {
    ChartComparison cc;
    if (iso) {
      cc = compare_iso(r, ch, box);
    } else {
      cc.label = ch.label;
      cc.check.name = "fiber comparison " + ch.label;
      cc.check.note("finite; weights are not all +-1, no isomorphism claimed");
    }
    c.merge(cc.check.verdict);
    c.note(ch.label + ": " + (iso ? (cc.check.passed() ? "isomorphism verified" : "isomorphism fails") : "finite"));
    out.charts.push_back(std::move(cc));
  }
  return out;
}

std::vector<Check> mukai_verify(int l, const TruncationBox& box) {
  Algebra r = mukai_algebra(l);
  std::vector<Check> out;
  for (Chamber side : {Chamber::Plus, Chamber::Minus}) out.push_back(window_membership(r, side, box).check);
  Check p = check_property_p(r, box);
  p.name = "property P";
  out.push_back(std::move(p));
  FiberComparison fc = fiber_comparison(r, box);
  out.push_back(fc.check);
  for (const auto& ch : restrict_kernel(r)) {
    ChartHomology h = chart_homology(r, ch, box);
    for (const auto& rep : h.reports)
      for (const auto& e : rep.entries)
        if (e.hdeg != 0 && e.dim && e.certified)
          h.check.fail("H^" + std::to_string(e.hdeg) + " = " + std::to_string(e.dim) + " at " + degree_string(rep.degree));
    out.push_back(std::move(h.check));
  }
  return out;
}

}  // namespace wcq
