#include "wcq/qkernel.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "wcq/complexes.hpp"

namespace wcq {

BaseSplit split_base(const Algebra& r) {
  if (r.arity() != 1) throw Error(ErrorCode::InvalidArgument, "base algebra must have grading arity 1");
  BaseSplit sp;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Variable& v = r.var(i);
    if (v.hdeg < 0)
      sp.generators.push_back(i);
    else if (v.weight[0] > 0)
      sp.positive.push_back(i);
    else
      sp.negative.push_back(i);
  }
  return sp;
}

std::optional<std::size_t> KernelAlgebra::image_of(std::size_t base_var) const {
  for (std::size_t i = 0; i < origin.size(); ++i)
    if (origin[i] && *origin[i] == base_var) return i;
  return std::nullopt;
}

const char* side_name(Side s) { return s == Side::P ? "p" : "s"; }

namespace {

std::string fresh(std::string want, std::set<std::string>& taken) {
  while (taken.count(want)) want += "_";
  taken.insert(want);
  return want;
}

std::string swap_initial(const std::string& name, char from, char to) {
  if (!name.empty() && name[0] == from) return std::string(1, to) + name.substr(1);
  return std::string(1, to) + "_" + name;
}

std::set<std::string> names_of(const Algebra& a) {
  std::set<std::string> s;
  for (const auto& v : a.variables()) s.insert(v.name);
  return s;
}

Element u_power(const Algebra& a, std::size_t u, int k) {
  Exponents e(a.size(), 0);
  e[u] = k;
  return a.monomial(e);
}

AlgebraMap rehome(const AlgebraMap& m, const Algebra& target) {
  AlgebraMap out{m.source, target, {}, m.degree_matrix};
  for (const auto& img : m.images) out.images.push_back(target.element(img.terms()));
  return out;
}

void require_chain_map(const AlgebraMap& m, const char* what) {
  std::string why;
  if (!m.is_chain_map(&why)) throw Error(ErrorCode::NotChainMap, std::string(what) + ": " + why);
}

Element inverse_monomial(const Element& m) {
  if (m.size() != 1) throw Error(ErrorCode::InvalidArgument, "only monomials can be inverted");
  const auto& [e, c] = *m.terms().begin();
  Exponents inv(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] != 0 && !m.algebra().var(k).inverted)
      throw Error(ErrorCode::InvalidExponent, m.algebra().var(k).name + " is not inverted");
    inv[k] = -e[k];
  }
  return m.algebra().monomial(inv, Rational(1) / c);
}

// Square, full-rank slice matrices of `map` on every slice of the box.
void compare_slices(Check& c, const AlgebraMap& map, const std::vector<Multidegree>& sdegs, int hmin, int budget,
                    const std::string& label) {
  std::vector<Multidegree> tdegs;
  for (const auto& d : sdegs) tdegs.push_back(map.map_degree(d));
  SliceFamily src(map.source, sdegs, hmin, 0, budget);
  SliceFamily tgt(map.target, tdegs, hmin, 0, budget);
  HilbertTable table{label, {}};
  std::size_t slices = 0, bad = 0;
  for (const auto& d : sdegs) {
    Multidegree td = map.map_degree(d);
    for (int h = hmin; h <= 0; ++h) {
      const SliceBasis& a = src.get(d, h);
      const SliceBasis& b = tgt.get(td, h);
      ++slices;
      bool ok = a.size() == b.size();
      if (ok && a.size()) {
        SliceMap m = algebra_map_slice(map, a, b);
        ok = !m.any_boundary() && rank(m.matrix) == a.size();
      }
      if (a.size() || b.size()) table.entries.push_back({d, h, a.size(), true});
      if (!ok) {
        if (bad++ < 3)
          c.note("slice " + degree_string(d) + " h=" + std::to_string(h) + ": dims " + std::to_string(a.size()) +
                 " vs " + std::to_string(b.size()) + " or map not bijective");
        c.merge(Verdict::Fail);
      }
    }
  }
  c.note(label + ": " + std::to_string(slices) + " slices compared, " + std::to_string(bad) + " mismatches");
  c.tables.push_back(std::move(table));
}

std::vector<Multidegree> box_degrees(const TruncationBox& box, int arity) { return box.with_arity(arity).degrees(); }

}  // namespace

TruncationBox kernel_box(const TruncationBox& box) { return box.with_arity(2); }

KernelAlgebra build_delta(const Algebra& r) {
  BaseSplit sp = split_base(r);
  std::set<std::string> taken = names_of(r);
  AlgebraBuilder b(2);
  b.set_label("Delta(" + r.label() + ")");
  KernelAlgebra k;
  k.base = r;
  k.delta = true;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Variable& v = r.var(i);
    b.add({v.name, {v.weight[0], 0}, v.hdeg}, v.inverted);
    k.origin.push_back(i);
    if (v.hdeg < 0)
      k.roles.push_back(v.weight[0] >= 0 ? Role::E : Role::G);
    else
      k.roles.push_back(v.weight[0] > 0 ? Role::X : Role::Z);
  }
  k.u = b.add({fresh("u", taken), {-1, 1}, 0}, true, true);
  k.roles.push_back(Role::U);
  k.origin.push_back(std::nullopt);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r.differential(i).empty()) continue;
    Terms t;
    for (const auto& [e, c] : r.differential(i)) {
      Exponents ee = e;
      ee.push_back(0);
      t.emplace(std::move(ee), c);
    }
    b.set_differential(r.var(i).name, b.draft().element(std::move(t)));
  }
  k.algebra = b.build();
  const Algebra& a = k.algebra;
  k.p = AlgebraMap{r, a, {}, {{1}, {0}}};
  k.s = AlgebraMap{r, a, {}, {{0}, {1}}};
  for (std::size_t i = 0; i < r.size(); ++i) {
    k.p.images.push_back(a.gen(i));
    k.s.images.push_back(a.gen(i) * u_power(a, k.u, r.var(i).weight[0]));
  }
  require_chain_map(k.p, "pi");
  require_chain_map(k.s, "sigma");
  return k;
}

KernelAlgebra build_q(const Algebra& r) {
  BaseSplit sp = split_base(r);
  for (const auto& v : r.variables())
    if (v.inverted) throw Error(ErrorCode::NonPolynomialBase, "Q is built for polynomial bases; '" + v.name + "' is inverted");
  std::set<std::string> taken = names_of(r);
  AlgebraBuilder b(2);
  b.set_label("Q(" + r.label() + ")");
  KernelAlgebra k;
  k.base = r;
  std::vector<std::size_t> at(r.size());
  auto push = [&](std::size_t i, Role role, VariableDecl decl, bool pinned = false) {
    std::size_t idx = b.add(std::move(decl), false, pinned);
    k.roles.push_back(role);
    if (role == Role::U) {
      k.origin.push_back(std::nullopt);
    } else {
      k.origin.push_back(i);
      at[i] = idx;
    }
    return idx;
  };
  for (auto i : sp.positive) push(i, Role::X, {r.var(i).name, {r.var(i).weight[0], 0}, 0});
  for (auto i : sp.negative)
    push(i, Role::Z, {fresh(swap_initial(r.var(i).name, 'y', 'z'), taken), {0, r.var(i).weight[0]}, 0});
  k.u = push(0, Role::U, {fresh("u", taken), {-1, 1}, 0}, true);
  for (auto i : sp.generators) {
    const Variable& v = r.var(i);
    int w = v.weight[0];
    if (w >= 0)
      push(i, Role::E, {v.name, {w, 0}, v.hdeg});
    else
      push(i, Role::G, {fresh(swap_initial(v.name, 'f', 'g'), taken), {0, w}, v.hdeg});
  }

  Algebra dr = b.draft();
  AlgebraMap p{r, dr, {}, {{1}, {0}}}, s{r, dr, {}, {{0}, {1}}};
  for (std::size_t i = 0; i < r.size(); ++i) {
    const Variable& v = r.var(i);
    int w = v.weight[0];
    Element g = dr.gen(at[i]);
    bool first = v.hdeg == 0 ? w > 0 : w >= 0;
    if (first) {
      p.images.push_back(g);
      s.images.push_back(u_power(dr, k.u, w) * g);
    } else {
      p.images.push_back(u_power(dr, k.u, -w) * g);
      s.images.push_back(g);
    }
  }
  for (auto i : sp.generators) {
    const Element d = r.element(r.differential(i));
    if (!d.is_zero() && !d.homogeneous())
      throw Error(ErrorCode::NonHomogeneousDifferential, "d(" + r.var(i).name + ") is not homogeneous");
    Element img = k.roles[at[i]] == Role::E ? p.apply(d) : s.apply(d);
    b.set_differential(dr.var(at[i]).name, img);
  }
  k.algebra = b.build();
  k.p = rehome(p, k.algebra);
  k.s = rehome(s, k.algebra);
  require_chain_map(k.p, "p");
  require_chain_map(k.s, "s");

  KernelAlgebra delta = build_delta(r);
  const Algebra& da = delta.algebra;
  AlgebraMap eta{k.algebra, da, {}, identity_degree_matrix(2)};
  for (std::size_t j = 0; j < k.algebra.size(); ++j) {
    if (k.roles[j] == Role::U) {
      eta.images.push_back(da.gen(delta.u));
      continue;
    }
    std::size_t i = *k.origin[j];
    int w = r.var(i).weight[0];
    Element g = da.gen(i);
    if (k.roles[j] == Role::Z || k.roles[j] == Role::G) g = u_power(da, delta.u, w) * g;
    eta.images.push_back(g);
  }
  require_chain_map(eta, "eta");
  k.eta = std::move(eta);
  return k;
}

Check check_localization_iso(const KernelAlgebra& q, const Element& t, Side side, const TruncationBox& box) {
  if (q.delta || !q.eta) throw Error(ErrorCode::InvalidArgument, "localization check needs Q, not Delta");
  const Algebra& r = q.base;
  if (!t.algebra().same(r)) throw Error(ErrorCode::AlgebraMismatch, "t must be an element of the base algebra");
  if (t.size() != 1) throw Error(ErrorCode::InvalidArgument, "t must be a single monomial of T");
  const Exponents& te = t.terms().begin()->first;
  std::set<std::string> tvars;
  for (std::size_t i = 0; i < te.size(); ++i) {
    if (te[i] == 0) continue;
    if (r.var(i).hdeg != 0 || te[i] < 0) throw Error(ErrorCode::InvalidArgument, "t must lie in T");
    tvars.insert(r.var(i).name);
  }
  int dt = (*t.degree())[0];
  if (dt == 0 || (side == Side::S) != (dt > 0))
    throw Error(ErrorCode::WrongSide, "deg t = " + std::to_string(dt) + " is incompatible with side " + side_name(side));

  Check c;
  c.name = std::string("localization-iso[") + side_name(side) + ", t=" + t.str() + "]";
  const AlgebraMap& here = side == Side::S ? q.s : q.p;
  const AlgebraMap& there = side == Side::S ? q.p : q.s;
  Element st = here.apply(t);
  std::set<std::string> inv;
  for (std::size_t k = 0; k < q.algebra.size(); ++k)
    if (st.terms().begin()->first[k] != 0) inv.insert(q.algebra.var(k).name);
  Algebra ql = q.algebra.localize(inv);
  Element stl = ql.element(st.terms());
  Element other = ql.element(there.apply(t).terms());
  Element mid = u_power(ql, q.u, std::abs(dt) - 1);
  Element witness = other * mid * inverse_monomial(stl);
  if (witness == u_power(ql, q.u, -1)) {
    std::string w = other.str();
    if (std::abs(dt) > 1) w += "*" + mid.str();
    c.note("witness: " + ql.var(q.u).name + "^-1 = " + w + "*(" + stl.str() + ")^-1");
  } else {
    c.fail("witness failed: got " + witness.str());
  }

  KernelAlgebra delta = build_delta(r);
  Algebra dl = delta.algebra.localize(tvars);
  AlgebraMap eta = rehome(*q.eta, dl);
  eta.source = ql;
  require_chain_map(eta, "localized eta");
  compare_slices(c, eta, box_degrees(box, 2), box.hmin, box.budget, "localized Q vs localized Delta");
  return c;
}

Check check_faithfulness(const KernelAlgebra& q, const TruncationBox& box) {
  if (!q.eta) throw Error(ErrorCode::InvalidArgument, "faithfulness check needs Q");
  const Algebra& r = q.base;
  BaseSplit sp = split_base(r);
  Check c;
  c.name = "faithfulness";
  if (sp.positive.empty()) {
    c.merge(Verdict::Info);
    c.note("no positive variables: X+ is empty");
    return c;
  }
  KernelAlgebra delta = build_delta(r);
  for (auto t1 : sp.positive)
    for (auto t2 : sp.positive) {
      std::size_t a = *q.image_of(t1), b = *q.image_of(t2);
      Algebra ql = q.algebra.localize({q.algebra.var(a).name, q.algebra.var(b).name, q.algebra.var(q.u).name});
      Algebra dl = delta.algebra.localize({r.var(t1).name, r.var(t2).name});
      AlgebraMap eta = rehome(*q.eta, dl);
      eta.source = ql;
      Check sub;
      compare_slices(sub, eta, box_degrees(box, 2), box.hmin, box.budget,
                     "p(" + r.var(t1).name + "), s(" + r.var(t2).name + ") inverted");
      c.merge(sub.verdict);
      for (auto& n : sub.notes) c.note(std::move(n));
    }
  return c;
}

Check check_basechange(const Algebra& r, const TruncationBox& box) {
  BaseSplit sp = split_base(r);
  for (auto i : sp.generators)
    if (r.var(i).weight[0] > 0)
      throw Error(ErrorCode::PositiveGeneratorPresent,
                  "generator " + r.var(i).name + " has positive degree " + std::to_string(r.var(i).weight[0]));
  KernelAlgebra q = build_q(r);
  Check c;
  c.name = "basechange";

  // Q(T)[h] with d(h_f) = (s_T (x) 1)(d f).
  AlgebraBuilder b(2);
  b.set_label("Q(T) (x)_T R");
  for (std::size_t j = 0; j < q.algebra.size(); ++j) {
    const Variable& v = q.algebra.var(j);
    b.add({v.name, v.weight, v.hdeg}, false, v.pinned);
  }
  Algebra dr = b.draft();
  AlgebraMap sub{r, dr, {}, {{0}, {1}}};
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::size_t j = *q.image_of(i);
    if (r.var(i).hdeg == 0)
      sub.images.push_back(dr.element(q.s.images[i].terms()));
    else
      sub.images.push_back(dr.gen(j));
  }
  for (auto i : sp.generators) b.set_differential(dr.var(*q.image_of(i)).name, sub.apply(r.element(r.differential(i))));
  Algebra bc = b.build();
  AlgebraMap phi{bc, q.algebra, {}, identity_degree_matrix(2)};
  for (std::size_t j = 0; j < bc.size(); ++j) phi.images.push_back(q.algebra.gen(j));
  std::string why;
  if (!phi.is_chain_map(&why)) {
    c.fail("q(x)1 -> q, 1(x)f -> g is not a dg map: " + why);
    return c;
  }
  c.note("q(x)1 -> q, 1(x)f_i -> g_i, 1(x)t -> s(t) is a bidegree-preserving dg map");
  compare_slices(c, phi, box_degrees(box, 2), box.hmin, box.budget, "Q(T) (x)_T R vs Q(R)");
  return c;
}

Check check_middle_invariants(const KernelAlgebra& q, const TruncationBox& box) {
  if (!q.eta) throw Error(ErrorCode::InvalidArgument, "middle invariants need Q");
  Check c;
  c.name = "middle-invariants";
  const Algebra& qa = q.algebra;
  std::vector<Multidegree> targets;
  auto range = box.with_arity(1).degree_range[0];
  for (int a = range.first; a <= range.second; ++a)
    for (int g = range.first; g <= range.second; ++g) targets.push_back({a, 0, g});

  // upper: Q (x)_pi Delta = Q[v^+-], lower: Delta (x)_p Q = Q[v^+-] with Q in the last two slots.
  for (int lower = 0; lower < 2; ++lower) {
    AlgebraBuilder b(3);
    std::set<std::string> taken = names_of(qa);
    for (std::size_t j = 0; j < qa.size(); ++j) {
      const Variable& v = qa.var(j);
      Multidegree w = lower ? Multidegree{0, v.weight[0], v.weight[1]} : Multidegree{v.weight[0], v.weight[1], 0};
      b.add({v.name, w, v.hdeg}, false, v.pinned);
    }
    std::string vname = fresh("v", taken);
    std::size_t vi = b.add({vname, lower ? Multidegree{-1, 1, 0} : Multidegree{0, -1, 1}, 0}, true, true);
    Algebra dr = b.draft();
    for (std::size_t j = 0; j < qa.size(); ++j) {
      if (qa.differential(j).empty()) continue;
      Terms t;
      for (const auto& [e, co] : qa.differential(j)) {
        Exponents ee = e;
        ee.push_back(0);
        t.emplace(std::move(ee), co);
      }
      b.set_differential(qa.var(j).name, dr.element(std::move(t)));
    }
    Algebra m = b.build();
    std::vector<std::vector<int>> mat = lower ? std::vector<std::vector<int>>{{1, 1, 0}, {0, 0, 1}}
                                              : std::vector<std::vector<int>>{{1, 0, 0}, {0, 1, 1}};
    AlgebraMap psi{m, qa, {}, mat};
    for (std::size_t j = 0; j < qa.size(); ++j) psi.images.push_back(qa.gen(j));
    psi.images.push_back(qa.one());
    std::string why;
    if (!psi.is_chain_map(&why)) {
      c.fail("collapse map is not a dg map: " + why);
      continue;
    }
    Element uv = m.gen(q.u) * m.gen(vi);
    Element image = psi.apply(uv);
    if (image == qa.gen(q.u))
      c.note(std::string(lower ? "lower" : "upper") + " witness: " + uv.str() + " -> " + image.str());
    else
      c.fail("witness " + uv.str() + " maps to " + image.str());
    std::vector<Multidegree> sdegs = targets;
    compare_slices(c, psi, sdegs, box.hmin, box.budget,
                   lower ? "(Delta (x)_p Q)_0 vs Q" : "(Q (x)_pi Delta)_0 vs Q");
  }
  return c;
}

Check check_eta_injective(const KernelAlgebra& q, const TruncationBox& box) {
  if (!q.eta) throw Error(ErrorCode::InvalidArgument, "eta exists only for Q");
  Check c;
  c.name = "eta-injective";
  auto degs = box_degrees(box, 2);
  SliceFamily src(q.eta->source, degs, box.hmin, 0, box.budget);
  SliceFamily tgt(q.eta->target, degs, box.hmin, 0, box.budget);
  std::size_t n = 0;
  for (const auto& d : degs)
    for (int h = box.hmin; h <= 0; ++h) {
      const SliceBasis& a = src.get(d, h);
      if (!a.size()) continue;
      SliceMap m = algebra_map_slice(*q.eta, a, tgt.get(d, h));
      ++n;
      if (rank(m.matrix) != a.size()) c.fail("eta not injective on " + degree_string(d) + " h=" + std::to_string(h));
    }
  c.note(std::to_string(n) + " nonempty slices checked");
  return c;
}

}  // namespace wcq
