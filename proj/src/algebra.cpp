#include "wcq/algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "wcq/parser.hpp"

namespace wcq {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DifferentialNotSquareZero: return "DifferentialNotSquareZero";
    case ErrorCode::ZeroWeightBaseVariable: return "ZeroWeightBaseVariable";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::OddVariableInverted: return "OddVariableInverted";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::DegreeIncompatible: return "DegreeIncompatible";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::NotChainMap: return "NotChainMap";
    case ErrorCode::WrongSide: return "WrongSide";
    case ErrorCode::PositiveGeneratorPresent: return "PositiveGeneratorPresent";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::NonHomogeneousSequence: return "NonHomogeneousSequence";
    case ErrorCode::NonHomogeneousIdeal: return "NonHomogeneousIdeal";
    case ErrorCode::NonHomogeneousDifferential: return "NonHomogeneousDifferential";
    case ErrorCode::NonPolynomialBase: return "NonPolynomialBase";
    case ErrorCode::RangeTooShort: return "RangeTooShort";
    case ErrorCode::NoPositiveChart: return "NoPositiveChart";
    case ErrorCode::NoNegativeChart: return "NoNegativeChart";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

Error::Error(ErrorCode code, const std::string& message, std::size_t offset)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code), offset_(offset) {}

bool MonomialOrder::operator()(const Exponents& a, const Exponents& b) const {
  long sa = 0, sb = 0;
  for (int v : a) sa += std::abs(v);
  for (int v : b) sb += std::abs(v);
  if (sa != sb) return sa < sb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void add_term(Terms& t, const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto it = t.find(e);
  if (it == t.end()) {
    t.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) t.erase(it);
}

namespace detail {

struct AlgebraData {
  int arity = 1;
  std::string label;
  std::vector<Variable> vars;
  std::vector<Terms> diff;
  std::map<std::string, std::size_t, std::less<>> index;
};

}  // namespace detail

namespace {

using detail::AlgebraData;

std::shared_ptr<const AlgebraData> empty_data(int arity) {
  auto d = std::make_shared<AlgebraData>();
  d->arity = arity;
  return d;
}

std::size_t rank_of_weights(const std::vector<Multidegree>& rows) {
  if (rows.empty()) return 0;
  std::vector<std::vector<Rational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  std::size_t rank = 0;
  std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

void compute_budget_weights(AlgebraData& d) {
  std::vector<std::size_t> order(d.vars.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d.vars[a].hdeg > d.vars[b].hdeg; });
  for (std::size_t i : order) {
    Variable& v = d.vars[i];
    if (v.pinned) {
      v.budget_weight = 0;
      continue;
    }
    int beta = 1;
    for (const auto& [e, c] : d.diff[i]) {
      int b = 0;
      for (std::size_t k = 0; k < e.size(); ++k) b += d.vars[k].budget_weight * std::abs(e[k]);
      beta = std::max(beta, b);
    }
    v.budget_weight = beta;
  }
}

void check_pinned(const AlgebraData& d) {
  std::vector<Multidegree> rows;
  for (const auto& v : d.vars) {
    if (!v.pinned) continue;
    if (v.hdeg != 0) throw Error(ErrorCode::ValidationError, "pinned variable " + v.name + " must have hdeg 0");
    rows.push_back(v.weight);
  }
  if (rank_of_weights(rows) != rows.size())
    throw Error(ErrorCode::ValidationError, "pinned variables must have independent weights");
}

}  // namespace

Algebra::Algebra() : data_(empty_data(1)) {}
Algebra::Algebra(int arity) : data_(empty_data(arity)) {}

int Algebra::arity() const { return data_->arity; }
std::size_t Algebra::size() const { return data_->vars.size(); }
const Variable& Algebra::var(std::size_t i) const { return data_->vars.at(i); }
const std::vector<Variable>& Algebra::variables() const { return data_->vars; }
const std::string& Algebra::label() const { return data_->label; }

std::optional<std::size_t> Algebra::find(std::string_view name) const {
  auto it = data_->index.find(name);
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t Algebra::index(std::string_view name) const {
  auto i = find(name);
  if (!i) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + std::string(name) + "'");
  return *i;
}

const Terms& Algebra::differential(std::size_t i) const { return data_->diff.at(i); }

bool Algebra::has_differential() const {
  for (const auto& t : data_->diff)
    if (!t.empty()) return true;
  return false;
}

Element Algebra::zero() const { return Element(*this, {}); }

Element Algebra::one() const {
  Terms t;
  t.emplace(Exponents(size(), 0), Rational(1));
  return Element(*this, std::move(t));
}

Element Algebra::gen(std::string_view name) const { return gen(index(name)); }

Element Algebra::gen(std::size_t i) const {
  Exponents e(size(), 0);
  e.at(i) = 1;
  return monomial(e);
}

Element Algebra::monomial(const Exponents& e, const Rational& c) const {
  Terms t;
  add_term(t, e, c);
  return Element(*this, std::move(t));
}

Element Algebra::element(Terms terms) const { return Element(*this, std::move(terms)); }

Element Algebra::parse(std::string_view text) const { return Element(*this, parse_terms(*this, text)); }

Multidegree Algebra::degree(const Exponents& e) const {
  Multidegree d(arity(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    const auto& w = data_->vars[i].weight;
    for (int k = 0; k < arity(); ++k) d[k] += w[k] * e[i];
  }
  return d;
}

int Algebra::hdeg(const Exponents& e) const {
  int h = 0;
  for (std::size_t i = 0; i < e.size(); ++i) h += data_->vars[i].hdeg * e[i];
  return h;
}

int Algebra::budget(const Exponents& e) const {
  int b = 0;
  for (std::size_t i = 0; i < e.size(); ++i) b += data_->vars[i].budget_weight * std::abs(e[i]);
  return b;
}

bool Algebra::odd(const Exponents& e) const { return (hdeg(e) & 1) != 0; }

int Algebra::mul_monomials(const Exponents& a, const Exponents& b, Exponents& out) const {
  const auto& vars = data_->vars;
  std::size_t n = vars.size();
  out.assign(n, 0);
  int swaps = 0;
  int b_odd_before = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int ai = i < a.size() ? a[i] : 0;
    int bi = i < b.size() ? b[i] : 0;
    if (vars[i].odd) {
      if (ai && bi) return 0;
      if (ai) swaps += b_odd_before;
      if (bi) ++b_odd_before;
    }
    out[i] = ai + bi;
  }
  return (swaps & 1) ? -1 : 1;
}

Terms Algebra::mul_terms(const Terms& a, const Terms& b) const {
  Terms out;
  Exponents e;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      int s = mul_monomials(ea, eb, e);
      if (s == 0) continue;
      Rational c = ca * cb;
      if (s < 0) c = -c;
      add_term(out, e, c);
    }
  return out;
}

Terms Algebra::d_monomial(const Exponents& m) const {
  const auto& vars = data_->vars;
  Terms out;
  int odd_before = 0;
  Exponents prefix(size(), 0), suffix, tmp, res;
  for (std::size_t i = 0; i < m.size(); ++i) {
    int ei = m[i];
    if (ei != 0 && !data_->diff[i].empty() && ei > 0) {
      prefix[i] = ei - 1;
      suffix.assign(size(), 0);
      for (std::size_t k = i + 1; k < m.size(); ++k) suffix[k] = m[k];
      for (const auto& [t, c] : data_->diff[i]) {
        int s1 = mul_monomials(prefix, t, tmp);
        if (s1 == 0) continue;
        int s2 = mul_monomials(tmp, suffix, res);
        if (s2 == 0) continue;
        Rational coeff = c * ei;
        if ((s1 * s2 < 0) != ((odd_before & 1) != 0)) coeff = -coeff;
        add_term(out, res, coeff);
      }
    }
    prefix[i] = ei;
    if (vars[i].odd && ei) ++odd_before;
  }
  return out;
}

Terms Algebra::d_terms(const Terms& t) const {
  Terms out;
  for (const auto& [e, c] : t)
    for (const auto& [e2, c2] : d_monomial(e)) add_term(out, e2, c * c2);
  return out;
}

Algebra Algebra::localize(const std::set<std::string>& names) const {
  if (names.empty()) return *this;
  auto d = std::make_shared<AlgebraData>(*data_);
  for (const auto& n : names) {
    std::size_t i = index(n);
    if (d->vars[i].hdeg != 0)
      throw Error(ErrorCode::OddVariableInverted, "cannot invert '" + n + "' of homological degree " +
                                                       std::to_string(d->vars[i].hdeg));
    d->vars[i].inverted = true;
  }
  return Algebra(std::move(d));
}

Algebra Algebra::with_pinned(const std::set<std::string>& names) const {
  auto d = std::make_shared<AlgebraData>(*data_);
  for (auto& v : d->vars) v.pinned = false;
  for (const auto& n : names) d->vars[index(n)].pinned = true;
  check_pinned(*d);
  compute_budget_weights(*d);
  return Algebra(std::move(d));
}

Algebra Algebra::relabel(const std::string& label) const {
  auto d = std::make_shared<AlgebraData>(*data_);
  d->label = label;
  return Algebra(std::move(d));
}

std::string Algebra::monomial_string(const Exponents& e) const {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += data_->vars[i].name;
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

std::string Algebra::describe() const {
  std::ostringstream os;
  os << "k[";
  for (std::size_t i = 0; i < size(); ++i) {
    const auto& v = data_->vars[i];
    if (i) os << ", ";
    os << v.name;
    if (v.inverted) os << "^+-";
  }
  os << "]";
  return os.str();
}

Element::Element(Algebra alg, Terms terms) : alg_(std::move(alg)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
}

std::optional<Multidegree> Element::degree() const {
  std::optional<Multidegree> d;
  for (const auto& [e, c] : terms_) {
    auto dd = alg_.degree(e);
    if (d && *d != dd) return std::nullopt;
    d = dd;
  }
  return d;
}

std::optional<int> Element::hdeg() const {
  std::optional<int> h;
  for (const auto& [e, c] : terms_) {
    int hh = alg_.hdeg(e);
    if (h && *h != hh) return std::nullopt;
    h = hh;
  }
  return h;
}

bool Element::homogeneous() const { return is_zero() || (degree().has_value() && hdeg().has_value()); }

std::string Element::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string mono = alg_.monomial_string(e);
    if (mono == "1")
      s += a.get_str();
    else if (a == 1)
      s += mono;
    else
      s += a.get_str() + "*" + mono;
  }
  return s;
}

Element Element::operator-() const {
  Terms t = terms_;
  for (auto& [e, c] : t) c = -c;
  return Element(alg_, std::move(t));
}

static void require_same(const Algebra& a, const Algebra& b) {
  if (!a.same(b)) throw Error(ErrorCode::AlgebraMismatch, "elements belong to different algebras");
}

Element& Element::operator+=(const Element& o) {
  require_same(alg_, o.alg_);
  for (const auto& [e, c] : o.terms_) add_term(terms_, e, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same(alg_, o.alg_);
  for (const auto& [e, c] : o.terms_) add_term(terms_, e, -c);
  return *this;
}

Element& Element::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

Element multiply(const Element& a, const Element& b) {
  require_same(a.algebra(), b.algebra());
  return Element(a.algebra(), a.algebra().mul_terms(a.terms(), b.terms()));
}

Element apply_differential(const Element& a) { return Element(a.algebra(), a.algebra().d_terms(a.terms())); }

Element power(const Element& a, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidExponent, "negative power of a general element");
  Element r = a.algebra().one();
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

AlgebraBuilder::AlgebraBuilder(int arity) : arity_(arity) {
  if (arity < 1 || arity > 3) throw Error(ErrorCode::ValidationError, "grading arity must be 1, 2 or 3");
}

std::size_t AlgebraBuilder::size() const { return vars_.size(); }

std::size_t AlgebraBuilder::add(VariableDecl decl, bool inverted, bool pinned) {
  if (!is_identifier(decl.name)) throw Error(ErrorCode::ValidationError, "invalid identifier '" + decl.name + "'");
  for (const auto& v : vars_)
    if (v.name == decl.name) throw Error(ErrorCode::DuplicateName, "variable '" + decl.name + "' declared twice");
  if (static_cast<int>(decl.weight.size()) != arity_)
    throw Error(ErrorCode::DegreeMismatch, "weight of '" + decl.name + "' has wrong length");
  if (decl.hdeg > 0) throw Error(ErrorCode::ValidationError, "homological degree of '" + decl.name + "' must be <= 0");
  bool zero_weight = std::all_of(decl.weight.begin(), decl.weight.end(), [](int w) { return w == 0; });
  if (decl.hdeg == 0 && zero_weight)
    throw Error(ErrorCode::ZeroWeightBaseVariable,
                "'" + decl.name + "' has weight 0 in homological degree 0; fold it into the coefficient ring k");
  if (inverted && decl.hdeg != 0)
    throw Error(ErrorCode::OddVariableInverted, "cannot invert '" + decl.name + "' of nonzero homological degree");
  Variable v;
  v.name = std::move(decl.name);
  v.weight = std::move(decl.weight);
  v.hdeg = decl.hdeg;
  v.odd = (decl.hdeg % 2) != 0;
  v.inverted = inverted;
  v.pinned = pinned;
  vars_.push_back(std::move(v));
  return vars_.size() - 1;
}

void AlgebraBuilder::set_differential(std::string_view name, std::string expr) {
  pending_[std::string(name)] = std::move(expr);
  assigned_.erase(std::string(name));
}

void AlgebraBuilder::set_differential(std::string_view name, const Element& value) {
  Terms t;
  for (const auto& [e, c] : value.terms()) {
    Exponents ee = e;
    ee.resize(vars_.size(), 0);
    add_term(t, ee, c);
  }
  assigned_[std::string(name)] = std::move(t);
  pending_.erase(std::string(name));
}

void AlgebraBuilder::set_label(std::string label) { label_ = std::move(label); }

Algebra AlgebraBuilder::draft() const {
  auto d = std::make_shared<AlgebraData>();
  d->arity = arity_;
  d->label = label_;
  d->vars = vars_;
  d->diff.assign(vars_.size(), Terms{});
  for (std::size_t i = 0; i < vars_.size(); ++i) d->index.emplace(vars_[i].name, i);
  return Algebra(std::move(d));
}

Algebra AlgebraBuilder::build() const {
  Algebra dr = draft();
  auto d = std::make_shared<AlgebraData>(*dr.data_);
  auto assign = [&](const std::string& name, Terms t) {
    auto it = d->index.find(name);
    if (it == d->index.end()) throw Error(ErrorCode::UnknownVariable, "differential of unknown variable '" + name + "'");
    std::size_t i = it->second;
    const Variable& v = d->vars[i];
    for (auto& [e, c] : t) {
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k] < 0 && !d->vars[k].inverted)
          throw Error(ErrorCode::InvalidExponent, "negative exponent on non-inverted variable in d(" + name + ")");
      if (dr.degree(e) != v.weight)
        throw Error(ErrorCode::DegreeMismatch, "d(" + name + ") has a term of the wrong internal weight");
      if (dr.hdeg(e) != v.hdeg + 1)
        throw Error(ErrorCode::DegreeMismatch, "d(" + name + ") has a term of the wrong homological degree");
    }
    d->diff[i] = std::move(t);
  };
  for (const auto& [name, expr] : pending_) assign(name, parse_terms(dr, expr));
  for (const auto& [name, t] : assigned_) assign(name, t);
  check_pinned(*d);
  compute_budget_weights(*d);
  Algebra alg(std::move(d));
  for (std::size_t i = 0; i < alg.size(); ++i) {
    if (!alg.d_terms(alg.differential(i)).empty())
      throw Error(ErrorCode::DifferentialNotSquareZero, "d(d(" + alg.var(i).name + ")) != 0");
  }
  return alg;
}

Algebra build_algebra(int arity, const std::vector<VariableDecl>& decls,
                      const std::map<std::string, std::string>& differential, const std::set<std::string>& inverted) {
  AlgebraBuilder b(arity);
  for (const auto& d : decls) b.add(d, inverted.count(d.name) > 0);
  for (const auto& n : inverted) {
    bool known = std::any_of(decls.begin(), decls.end(), [&](const VariableDecl& d) { return d.name == n; });
    if (!known) throw Error(ErrorCode::UnknownVariable, "cannot invert unknown variable '" + n + "'");
  }
  for (const auto& [n, e] : differential) b.set_differential(n, e);
  return b.build();
}

Algebra localize(const Algebra& alg, const std::set<std::string>& names) { return alg.localize(names); }

Terms AlgebraMap::apply_monomial(const Exponents& e) const {
  Terms acc;
  acc.emplace(Exponents(target.size(), 0), Rational(1));
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    const Terms& img = images.at(i).terms();
    if (e[i] > 0) {
      for (int k = 0; k < e[i]; ++k) acc = target.mul_terms(acc, img);
    } else {
      if (img.size() != 1)
        throw Error(ErrorCode::InvalidExponent, "inverse of a non-monomial image of " + source.var(i).name);
      const auto& [m, c] = *img.begin();
      Exponents inv(m.size());
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] != 0 && !target.var(k).inverted)
          throw Error(ErrorCode::InvalidExponent, "image of inverted " + source.var(i).name + " is not invertible");
        inv[k] = -m[k];
      }
      Terms t;
      t.emplace(inv, Rational(1) / c);
      for (int k = 0; k < -e[i]; ++k) acc = target.mul_terms(acc, t);
    }
    if (acc.empty()) break;
  }
  return acc;
}

Element AlgebraMap::apply(const Element& a) const {
  if (!a.algebra().same(source)) throw Error(ErrorCode::AlgebraMismatch, "map applied to a foreign element");
  Terms out;
  for (const auto& [e, c] : a.terms())
    for (const auto& [e2, c2] : apply_monomial(e)) add_term(out, e2, c * c2);
  return Element(target, std::move(out));
}

Multidegree AlgebraMap::map_degree(const Multidegree& d) const {
  Multidegree out(degree_matrix.size(), 0);
  for (std::size_t r = 0; r < degree_matrix.size(); ++r)
    for (std::size_t c = 0; c < d.size(); ++c) out[r] += degree_matrix[r][c] * d[c];
  return out;
}

bool AlgebraMap::is_chain_map(std::string* why) const {
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Element& img = images.at(i);
    if (!img.algebra().same(target)) {
      if (why) *why = "image of " + source.var(i).name + " lives in another algebra";
      return false;
    }
    Exponents unit(source.size(), 0);
    unit[i] = 1;
    Multidegree want = map_degree(source.degree(unit));
    for (const auto& [e, c] : img.terms()) {
      if (target.degree(e) != want || target.hdeg(e) != source.var(i).hdeg) {
        if (why) *why = "image of " + source.var(i).name + " has the wrong degree";
        return false;
      }
    }
    Element lhs = apply(source.element(source.differential(i)));
    Element rhs = apply_differential(img);
    if (!(lhs == rhs)) {
      if (why) *why = "map does not commute with d on " + source.var(i).name;
      return false;
    }
  }
  return true;
}

std::vector<std::vector<int>> identity_degree_matrix(int n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace wcq
