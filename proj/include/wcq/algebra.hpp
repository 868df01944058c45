#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wcq/error.hpp"

namespace wcq {

using Rational = mpq_class;
using Exponents = std::vector<int>;
using Multidegree = std::vector<int>;

// Graded-lex: smaller total |exponent| first, then lexicographically larger
// exponent vector first (x1 > x2 > ... in declaration order).
struct MonomialOrder {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

using Terms = std::map<Exponents, Rational, MonomialOrder>;

struct VariableDecl {
  std::string name;
  Multidegree weight;
  int hdeg = 0;
};

struct Variable {
  std::string name;
  Multidegree weight;
  int hdeg = 0;
  bool odd = false;
  bool inverted = false;
  // Pinned variables carry no budget; their exponents are solved from the
  // slice multidegree. Weights of pinned variables must be independent.
  bool pinned = false;
  int budget_weight = 1;
};

namespace detail {
struct AlgebraData;
}

class Element;

class Algebra {
 public:
  Algebra();  // the coefficient field, arity 1
  explicit Algebra(int arity);

  int arity() const;
  std::size_t size() const;
  const Variable& var(std::size_t i) const;
  const std::vector<Variable>& variables() const;
  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;
  const Terms& differential(std::size_t i) const;
  bool has_differential() const;
  const std::string& label() const;

  Element zero() const;
  Element one() const;
  Element gen(std::string_view name) const;
  Element gen(std::size_t i) const;
  Element monomial(const Exponents& e, const Rational& c = 1) const;
  Element element(Terms terms) const;
  Element parse(std::string_view text) const;

  Multidegree degree(const Exponents& e) const;
  int hdeg(const Exponents& e) const;
  int budget(const Exponents& e) const;
  bool odd(const Exponents& e) const;

  // Returns 0 if the product vanishes, otherwise the Koszul sign of a*b.
  int mul_monomials(const Exponents& a, const Exponents& b, Exponents& out) const;
  Terms mul_terms(const Terms& a, const Terms& b) const;
  Terms d_monomial(const Exponents& e) const;
  Terms d_terms(const Terms& t) const;

  Algebra localize(const std::set<std::string>& names) const;
  Algebra with_pinned(const std::set<std::string>& names) const;
  Algebra relabel(const std::string& label) const;

  bool same(const Algebra& other) const { return data_ == other.data_; }
  std::string monomial_string(const Exponents& e) const;
  std::string describe() const;

 private:
  friend class AlgebraBuilder;
  explicit Algebra(std::shared_ptr<const detail::AlgebraData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::AlgebraData> data_;
};

class Element {
 public:
  Element() = default;
  Element(Algebra alg, Terms terms);

  const Algebra& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::optional<Multidegree> degree() const;
  std::optional<int> hdeg() const;
  bool homogeneous() const;
  std::string str() const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rational& c);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Rational& c) { return a *= c; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator*(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

 private:
  Algebra alg_;
  Terms terms_;
};

Element multiply(const Element& a, const Element& b);
Element apply_differential(const Element& a);
Element power(const Element& a, int n);

void add_term(Terms& t, const Exponents& e, const Rational& c);

class AlgebraBuilder {
 public:
  explicit AlgebraBuilder(int arity = 1);

  std::size_t add(VariableDecl decl, bool inverted = false, bool pinned = false);
  void set_differential(std::string_view name, std::string expr);
  void set_differential(std::string_view name, const Element& value);
  void set_label(std::string label);
  Algebra draft() const;
  Algebra build() const;
  std::size_t size() const;

 private:
  int arity_;
  std::string label_;
  std::vector<Variable> vars_;
  std::map<std::string, std::string> pending_;
  std::map<std::string, Terms> assigned_;
};

Algebra build_algebra(int arity, const std::vector<VariableDecl>& decls,
                      const std::map<std::string, std::string>& differential,
                      const std::set<std::string>& inverted = {});

Algebra localize(const Algebra& alg, const std::set<std::string>& names);

// A homomorphism of graded algebras given on generators. The multidegree map is
// linear: target degree = degree_matrix * source degree.
struct AlgebraMap {
  Algebra source;
  Algebra target;
  std::vector<Element> images;
  std::vector<std::vector<int>> degree_matrix;

  Terms apply_monomial(const Exponents& e) const;
  Element apply(const Element& a) const;
  Multidegree map_degree(const Multidegree& d) const;
  // Checks phi(d v) = d(phi v) and degree compatibility on every generator;
  // the first offending generator is written to `why`.
  bool is_chain_map(std::string* why = nullptr) const;
};

std::vector<std::vector<int>> identity_degree_matrix(int n);

}  // namespace wcq
