#include "wcq/resolutions.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace wcq {

namespace {

std::string fresh(std::string want, std::set<std::string>& taken) {
  while (taken.count(want)) want += "_";
  taken.insert(want);
  return want;
}

std::set<std::string> names_of(const Algebra& a) {
  std::set<std::string> s;
  for (const auto& v : a.variables()) s.insert(v.name);
  return s;
}

// Builder holding a copy of `a` (variables and differentials).
AlgebraBuilder copy_of(const Algebra& a) {
  AlgebraBuilder b(a.arity());
  b.set_label(a.label());
  for (const auto& v : a.variables()) b.add({v.name, v.weight, v.hdeg}, v.inverted, v.pinned);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a.differential(i).empty()) b.set_differential(a.var(i).name, a.element(a.differential(i)));
  return b;
}

Element u_power(const Algebra& a, std::size_t u, int k) {
  Exponents e(a.size(), 0);
  e[u] = k;
  return a.monomial(e);
}

Element scaled_integral(const Algebra& a, const Terms& t) {
  mpz_class l = 1, g = 0;
  for (const auto& [e, c] : t) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  Terms out;
  for (const auto& [e, c] : t) {
    Rational v = c * l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_num_mpz_t());
    out.emplace(e, v);
  }
  if (g > 1)
    for (auto& [e, c] : out) c /= g;
  if (!out.empty() && out.begin()->second < 0)
    for (auto& [e, c] : out) c = -c;
  return a.element(std::move(out));
}

}  // namespace

SliceComplex KoszulComplex::slice(int degree, int hmin, int budget, const CompletenessOracle* oracle) const {
  Multidegree d(algebra.arity(), 0);
  d[0] = degree + twist;
  SliceFamily fam(algebra, {d}, hmin - 1, 0, budget);
  SliceComplex c = algebra_slice_complex(fam, d, hmin, oracle);
  c.degree[0] = degree;
  return c;
}

KoszulComplex koszul_complex(const Algebra& alg, const std::vector<Element>& sequence, int twist) {
  for (const auto& s : sequence) {
    if (!s.algebra().same(alg)) throw Error(ErrorCode::AlgebraMismatch, "sequence element from another algebra");
    if (s.is_zero() || !s.homogeneous() || *s.hdeg() != 0)
      throw Error(ErrorCode::NonHomogeneousSequence, "Koszul sequence element " + s.str() + " is not homogeneous of hdeg 0");
  }
  AlgebraBuilder b = copy_of(alg);
  std::set<std::string> taken = names_of(alg);
  KoszulComplex k;
  k.twist = twist;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    Multidegree w = *sequence[i].degree();
    names.push_back(fresh("e" + std::to_string(i + 1), taken));
    k.exterior.push_back(b.add({names.back(), w, -1}));
    k.top_twist -= w[0];
  }
  for (std::size_t i = 0; i < sequence.size(); ++i) b.set_differential(names[i], sequence[i]);
  b.set_label("Koszul(" + alg.label() + ")");
  k.algebra = b.build();
  return k;
}

std::string ResolutionPresentation::listing() const {
  std::ostringstream os;
  for (auto i : adjoined) {
    const Variable& v = algebra.var(i);
    os << v.name << " weight " << degree_string(v.weight) << " hdeg " << v.hdeg << " d = "
       << algebra.element(algebra.differential(i)).str() << "\n";
  }
  return os.str();
}

namespace {

struct ClassSearch {
  int level = 0;
  int degree = 0;
  std::vector<Element> cycles;
};

// Homology classes of `alg` in hdeg h, internal degree n, on one budget level
// (or on the whole band when the differential does not preserve budgets).
std::vector<ClassSearch> find_classes(const Algebra& alg, const SliceFamily& fam, int n, int h) {
  Multidegree d{n};
  const SliceBasis& src = fam.get(d, h);
  const SliceBasis& below = fam.get(d, h - 1);
  const SliceBasis& above = fam.get(d, h + 1);
  std::vector<ClassSearch> out;
  if (!src.size()) return out;
  ExactMatrix dh = differential_slice(src, above).matrix;
  ExactMatrix dl = differential_slice(below, src).matrix;
  bool graded = true;
  auto check = [&](const ExactMatrix& m, const SliceBasis& s, const SliceBasis& t) {
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (const auto& [r, v] : m.column(c))
        if (s.budgets[c] != t.budgets[r]) graded = false;
  };
  check(dh, src, above);
  check(dl, below, src);
  std::set<int> levels;
  if (graded)
    levels.insert(src.budgets.begin(), src.budgets.end());
  else
    levels.insert(fam.budget());
  for (int lv : levels) {
    auto in_level = [&](int b) { return graded ? b == lv : true; };
    std::vector<bool> keep(src.size());
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < src.size(); ++i)
      if ((keep[i] = in_level(src.budgets[i]))) cols.push_back(i);
    std::vector<bool> keep_below(below.size());
    for (std::size_t i = 0; i < below.size(); ++i) keep_below[i] = in_level(below.budgets[i]);
    ExactMatrix z = dh.select_columns(keep);
    auto kernel = nullspace(z);
    if (kernel.empty()) continue;
    ExactMatrix img = dl.select_columns(keep_below).select_rows(keep);
    std::vector<std::vector<Rational>> span;
    for (std::size_t c = 0; c < img.cols(); ++c) {
      std::vector<Rational> v(cols.size(), 0);
      for (const auto& [r, x] : img.column(c)) v[r] = x;
      span.push_back(std::move(v));
    }
    auto rank_of = [&](const std::vector<std::vector<Rational>>& rows) {
      if (rows.empty()) return std::size_t{0};
      auto a = rows;
      return rref(a).size();
    };
    std::size_t r = rank_of(span);
    ClassSearch cs{lv, n, {}};
    for (auto& k : kernel) {
      span.push_back(k);
      std::size_t r2 = rank_of(span);
      if (r2 == r) {
        span.pop_back();
        continue;
      }
      r = r2;
      Terms t;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (k[j] != 0) t.emplace(src.monomials[cols[j]], k[j]);
      cs.cycles.push_back(scaled_integral(alg, t));
    }
    if (!cs.cycles.empty()) out.push_back(std::move(cs));
  }
  return out;
}

}  // namespace

ResolutionPresentation koszul_tate(const Algebra& t, const std::vector<Element>& ideal, int hmin,
                                   const TruncationBox& box) {
  if (t.arity() != 1) throw Error(ErrorCode::InvalidArgument, "Koszul-Tate expects an arity-1 base");
  for (const auto& g : ideal)
    if (!g.algebra().same(t) || g.is_zero() || !g.homogeneous() || *g.hdeg() != 0)
      throw Error(ErrorCode::NonHomogeneousIdeal, "ideal generator " + g.str() + " is not homogeneous in T");
  KoszulComplex k = koszul_complex(t, ideal);
  ResolutionPresentation res;
  res.algebra = k.algebra.relabel("KT(" + t.label() + ")");
  res.adjoined = k.exterior;
  res.band = box.with_arity(1);
  res.band.hmin = hmin;
  auto degrees = res.band.degrees();
  std::set<std::string> taken = names_of(res.algebra);
  int counter = 0;
  for (int h = -1; h > hmin; --h) {
    while (true) {
      SliceFamily fam(res.algebra, degrees, h - 1, h + 1, box.budget);
      std::vector<std::vector<ClassSearch>> found(degrees.size());
      parallel_for(degrees.size(), [&](std::size_t i) { found[i] = find_classes(res.algebra, fam, degrees[i][0], h); });
      const ClassSearch* best = nullptr;
      for (const auto& f : found)
        for (const auto& cs : f)
          if (!best || cs.level < best->level || (cs.level == best->level && cs.degree < best->degree)) best = &cs;
      if (!best) break;
      AlgebraBuilder b = copy_of(res.algebra);
      std::vector<std::string> names;
      for (const auto& z : best->cycles) {
        names.push_back(fresh("xi" + std::to_string(++counter), taken));
        b.add({names.back(), {best->degree}, h - 1});
      }
      Algebra draft = b.draft();
      for (std::size_t i = 0; i < names.size(); ++i) {
        b.set_differential(names[i], best->cycles[i]);
        res.log.push_back("hdeg " + std::to_string(h - 1) + ": adjoined " + names[i] + " in degree " +
                          std::to_string(best->degree) + " (budget " + std::to_string(best->level) + ") killing " +
                          best->cycles[i].str());
      }
      res.algebra = b.build();
      for (const auto& n : names) res.adjoined.push_back(res.algebra.index(n));
    }
  }
  return res;
}

KResolution resolution_K(const KernelAlgebra& q) {
  if (q.delta || !q.eta) throw Error(ErrorCode::InvalidArgument, "resolution K resolves Q, not Delta");
  const Algebra& r = q.base;
  for (const auto& v : r.variables())
    if (v.inverted) throw Error(ErrorCode::NonPolynomialBase, "unsupported base: '" + v.name + "' is inverted");
  BaseSplit sp = split_base(r);
  for (auto i : sp.generators)
    for (const auto& [e, c] : r.differential(i))
      for (auto j : sp.generators)
        if (e[j] != 0)
          throw Error(ErrorCode::NonPolynomialBase,
                      "unsupported base: d(" + r.var(i).name + ") must lie in the polynomial ring T");

  KResolution k;
  k.q = q;
  AlgebraBuilder b(2);
  b.set_label("K(" + r.label() + ")");
  std::set<std::string> taken;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Variable& v = r.var(i);
    k.copy1.push_back(b.add({fresh(v.name + ".1", taken), {v.weight[0], 0}, v.hdeg}));
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Variable& v = r.var(i);
    k.copy2.push_back(b.add({fresh(v.name + ".2", taken), {0, v.weight[0]}, v.hdeg}));
  }
  k.u = b.add({fresh("u", taken), {-1, 1}, 0}, false, true);
  std::vector<std::size_t> kappa(r.size()), lambda(r.size()), mu(r.size()), nu(r.size());
  for (auto i : sp.positive) {
    kappa[i] = b.add({fresh("kappa." + r.var(i).name, taken), {0, r.var(i).weight[0]}, -1});
    ++k.kappa;
  }
  for (auto i : sp.generators)
    if (r.var(i).weight[0] >= 0) {
      lambda[i] = b.add({fresh("lambda." + r.var(i).name, taken), {0, r.var(i).weight[0]}, r.var(i).hdeg - 1});
      ++k.lambda;
    }
  for (auto i : sp.negative) {
    mu[i] = b.add({fresh("mu." + r.var(i).name, taken), {r.var(i).weight[0], 0}, -1});
    ++k.mu;
  }
  for (auto i : sp.generators)
    if (r.var(i).weight[0] < 0) {
      nu[i] = b.add({fresh("nu." + r.var(i).name, taken), {r.var(i).weight[0], 0}, r.var(i).hdeg - 1});
      ++k.nu;
    }

  Algebra dr = b.draft();
  AlgebraMap c1{r, dr, {}, {{1}, {0}}}, c2{r, dr, {}, {{0}, {1}}};
  for (std::size_t i = 0; i < r.size(); ++i) {
    c1.images.push_back(dr.gen(k.copy1[i]));
    c2.images.push_back(dr.gen(k.copy2[i]));
  }
  for (auto i : sp.generators) {
    Element d = r.element(r.differential(i));
    b.set_differential(dr.var(k.copy1[i]).name, c1.apply(d));
    b.set_differential(dr.var(k.copy2[i]).name, c2.apply(d));
  }
  auto wt = [&](std::size_t i) { return r.var(i).weight[0]; };
  auto up = [&](int n) { return u_power(dr, k.u, n); };
  for (auto i : sp.positive)
    b.set_differential(dr.var(kappa[i]).name, dr.gen(k.copy2[i]) - up(wt(i)) * dr.gen(k.copy1[i]));
  for (auto i : sp.negative)
    b.set_differential(dr.var(mu[i]).name, dr.gen(k.copy1[i]) - up(-wt(i)) * dr.gen(k.copy2[i]));

  // For m = x^alpha y^beta: telescoping homotopies H_x, H_y with
  // d H_x = X2 - u^A X1 and d H_y = Y1 - u^B Y2.
  auto homotopies = [&](const Exponents& m, Element& hx, Element& hy, Element& x1, Element& x2, Element& y1,
                        Element& y2) {
    std::vector<std::size_t> xs, ys;
    for (auto i : sp.positive)
      for (int n = 0; n < m[i]; ++n) xs.push_back(i);
    for (auto i : sp.negative)
      for (int n = 0; n < m[i]; ++n) ys.push_back(i);
    hx = dr.zero();
    hy = dr.zero();
    x1 = x2 = y1 = y2 = dr.one();
    for (std::size_t a = 0; a < xs.size(); ++a) {
      Element term = dr.gen(kappa[xs[a]]);
      for (std::size_t j = 0; j < a; ++j) term = up(wt(xs[j])) * dr.gen(k.copy1[xs[j]]) * term;
      for (std::size_t j = a + 1; j < xs.size(); ++j) term = term * dr.gen(k.copy2[xs[j]]);
      hx += term;
      x1 = x1 * dr.gen(k.copy1[xs[a]]);
      x2 = x2 * dr.gen(k.copy2[xs[a]]);
    }
    for (std::size_t a = 0; a < ys.size(); ++a) {
      Element term = dr.gen(mu[ys[a]]);
      for (std::size_t j = 0; j < a; ++j) term = up(-wt(ys[j])) * dr.gen(k.copy2[ys[j]]) * term;
      for (std::size_t j = a + 1; j < ys.size(); ++j) term = term * dr.gen(k.copy1[ys[j]]);
      hy += term;
      y1 = y1 * dr.gen(k.copy1[ys[a]]);
      y2 = y2 * dr.gen(k.copy2[ys[a]]);
    }
  };
  for (auto i : sp.generators) {
    int w = wt(i);
    Element g = dr.zero();
    for (const auto& [m, c] : r.differential(i)) {
      Element hx, hy, x1, x2, y1, y2;
      homotopies(m, hx, hy, x1, x2, y1, y2);
      if (w >= 0)
        g += c * (hx * y2 - up(w) * x1 * hy);
      else
        g += c * (x1 * hy - up(-w) * hx * y2);
    }
    if (w >= 0)
      b.set_differential(dr.var(lambda[i]).name, dr.gen(k.copy2[i]) - up(w) * dr.gen(k.copy1[i]) - g);
    else
      b.set_differential(dr.var(nu[i]).name, dr.gen(k.copy1[i]) - up(-w) * dr.gen(k.copy2[i]) - g);
  }
  k.algebra = b.build();

  const Algebra& qa = q.algebra;
  AlgebraMap aug{k.algebra, qa, std::vector<Element>(k.algebra.size(), qa.zero()), identity_degree_matrix(2)};
  for (std::size_t i = 0; i < r.size(); ++i) {
    aug.images[k.copy1[i]] = q.p.images[i];
    aug.images[k.copy2[i]] = q.s.images[i];
  }
  aug.images[k.u] = qa.gen(q.u);
  std::string why;
  if (!aug.is_chain_map(&why)) throw Error(ErrorCode::NotChainMap, "augmentation K -> Q: " + why);
  k.augmentation = std::move(aug);
  return k;
}

namespace {

void quasi_iso_sweep(Check& c, const AlgebraMap& f, const std::vector<Multidegree>& sdegs, int hmin, int budget,
                     const std::string& label) {
  std::vector<Multidegree> tdegs;
  for (const auto& d : sdegs) tdegs.push_back(f.map_degree(d));
  SliceFamily src(f.source, sdegs, hmin - 1, 0, budget);
  SliceFamily tgt(f.target, tdegs, hmin - 1, 0, budget);
  CompletenessOracle os(f.source), ot(f.target);
  std::vector<QuasiIsoResult> res(sdegs.size());
  std::vector<HomologyReport> th(sdegs.size());
  std::vector<char> boundary(sdegs.size(), 0);
  parallel_for(sdegs.size(), [&](std::size_t i) {
    SliceComplex a = algebra_slice_complex(src, sdegs[i], hmin, &os);
    SliceComplex b = algebra_slice_complex(tgt, tdegs[i], hmin, &ot);
    bool bd = false;
    SliceChainMap m = algebra_chain_map(f, src, sdegs[i], tgt, &bd);
    boundary[i] = bd;
    res[i] = compare_quasi_iso(a, b, m);
    th[i] = homology_dims(b);
  });
  HilbertTable cone{label + ": cone homology", {}}, target{label + ": target homology", {}};
  std::size_t pass = 0, fail = 0, open = 0;
  for (std::size_t i = 0; i < sdegs.size(); ++i) {
    Verdict v = res[i].verdict;
    if (boundary[i] && v == Verdict::Fail) v = Verdict::Inconclusive;
    c.merge(v);
    (v == Verdict::Pass ? pass : v == Verdict::Fail ? fail : open)++;
    add_report(cone, res[i].cone_homology);
    add_report(target, th[i]);
    if (v == Verdict::Fail && fail <= 3) c.note("not a quasi-isomorphism on slice " + degree_string(sdegs[i]));
  }
  c.note(label + ": " + std::to_string(pass) + " slices quasi-iso, " + std::to_string(fail) + " failed, " +
         std::to_string(open) + " inconclusive");
  c.tables.push_back(std::move(target));
  c.tables.push_back(std::move(cone));
}

}  // namespace

Check verify_resolution_K(const KResolution& k, const TruncationBox& box) {
  Check c;
  c.name = "resolution-K";
  c.note("adjoined " + std::to_string(k.kappa) + " kappa, " + std::to_string(k.lambda) + " lambda, " +
         std::to_string(k.mu) + " mu, " + std::to_string(k.nu) + " nu");
  quasi_iso_sweep(c, k.augmentation, box.with_arity(2).degrees(), box.hmin, box.budget, "K -> Q");
  return c;
}

Check check_property_p(const Algebra& r, const TruncationBox& box) {
  for (const auto& v : r.variables())
    if (v.inverted) throw Error(ErrorCode::NonPolynomialBase, "unsupported base: '" + v.name + "' is inverted");
  KernelAlgebra q = build_q(r);
  KResolution k = resolution_K(q);
  const Algebra& ka = k.algebra;
  const Algebra& qa = q.algebra;

  AlgebraBuilder b(3);
  b.set_label("(K (x)_p Q)");
  std::set<std::string> taken;
  std::vector<std::optional<std::size_t>> from_k(ka.size());
  std::vector<std::size_t> from_q(qa.size());
  std::set<std::size_t> second(k.copy2.begin(), k.copy2.end());
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (second.count(i)) continue;
    const Variable& v = ka.var(i);
    from_k[i] = b.add({fresh(v.name, taken), {v.weight[0], v.weight[1], 0}, v.hdeg}, false, v.pinned);
  }
  for (std::size_t j = 0; j < qa.size(); ++j) {
    const Variable& v = qa.var(j);
    std::string name = j == q.u ? "v" : v.name;
    from_q[j] = b.add({fresh(name, taken), {0, v.weight[0], v.weight[1]}, v.hdeg}, false, v.pinned);
  }
  Algebra dr = b.draft();
  AlgebraMap iota{qa, dr, {}, {{0, 0}, {1, 0}, {0, 1}}};
  for (std::size_t j = 0; j < qa.size(); ++j) iota.images.push_back(dr.gen(from_q[j]));
  AlgebraMap tau{ka, dr, {}, {{1, 0}, {0, 1}, {0, 0}}};
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (from_k[i]) {
      tau.images.push_back(dr.gen(*from_k[i]));
      continue;
    }
    std::size_t base = std::find(k.copy2.begin(), k.copy2.end(), i) - k.copy2.begin();
    tau.images.push_back(iota.apply(q.p.images[base]));
  }
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (from_k[i] && !ka.differential(i).empty())
      b.set_differential(dr.var(*from_k[i]).name, tau.apply(ka.element(ka.differential(i))));
  for (std::size_t j = 0; j < qa.size(); ++j)
    if (!qa.differential(j).empty())
      b.set_differential(dr.var(from_q[j]).name, iota.apply(qa.element(qa.differential(j))));
  Algebra carrier = b.build();

  // rho: K-side through the augmentation, Q-side through eta then s, u_Delta -> 1.
  const AlgebraMap& eta = *q.eta;
  const Algebra& da = eta.target;
  AlgebraMap psi{da, qa, {}, {{0, 0}, {1, 1}}};
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (i < q.base.size())
      psi.images.push_back(q.s.images[i]);
    else
      psi.images.push_back(qa.one());
  }
  AlgebraMap rho{carrier, qa, std::vector<Element>(carrier.size(), qa.zero()), {{1, 0, 0}, {0, 1, 1}}};
  for (std::size_t i = 0; i < ka.size(); ++i)
    if (from_k[i]) rho.images[*from_k[i]] = k.augmentation.images[i];
  for (std::size_t j = 0; j < qa.size(); ++j) rho.images[from_q[j]] = psi.apply(eta.images[j]);

  Check c;
  c.name = "property-P";
  std::string why;
  if (!rho.is_chain_map(&why)) {
    c.fail("rho is not a dg map: " + why);
    return c;
  }
  std::string simple = "k[";
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.var(i).weight[0] > 0 || (r.var(i).hdeg < 0 && r.var(i).weight[0] >= 0)) simple += ka.var(k.copy1[i]).name + ", ";
  for (std::size_t j = 0; j < qa.size(); ++j)
    if (q.roles[j] == Role::Z || q.roles[j] == Role::G) simple += qa.var(j).name + ", ";
  simple += "uv]";
  c.note("carrier " + carrier.describe() + " with tri-degrees, middle degree 0; expected simplification " + simple);
  c.note("witness: rho(u*v) = " + rho.apply(carrier.gen(*from_k[k.u]) * carrier.gen(from_q[q.u])).str());
  std::vector<Multidegree> sdegs;
  auto range = box.with_arity(1).degree_range[0];
  for (int a = range.first; a <= range.second; ++a)
    for (int g = range.first; g <= range.second; ++g) sdegs.push_back({a, 0, g});
  quasi_iso_sweep(c, rho, sdegs, box.hmin, box.budget, "rho: (K (x)_p Q)_0 -> Q");
  return c;
}

}  // namespace wcq
