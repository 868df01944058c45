#include "wcq/parser.hpp"

#include <cctype>

namespace wcq {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

class Parser {
 public:
  Parser(const Algebra& alg, std::string_view s) : alg_(alg), s_(s) {}

  Terms run() {
    skip();
    if (pos_ == s_.size()) throw Error(ErrorCode::SyntaxError, "empty expression", pos_);
    Terms t = sum();
    skip();
    if (pos_ != s_.size()) throw Error(ErrorCode::SyntaxError, "unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
    return t;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  Terms sum() {
    Terms acc;
    bool neg = false;
    if (peek('+') || peek('-')) {
      neg = s_[pos_] == '-';
      op_ = pos_++;
    }
    Terms t = product();
    for (auto& [e, c] : t) add_term(acc, e, neg ? Rational(-c) : c);
    while (peek('+') || peek('-')) {
      neg = s_[pos_] == '-';
      op_ = pos_++;
      t = product();
      for (auto& [e, c] : t) add_term(acc, e, neg ? Rational(-c) : c);
    }
    return acc;
  }

  Terms product() {
    Terms acc = factor();
    while (peek('*')) {
      op_ = pos_++;
      Terms f = factor();
      acc = alg_.mul_terms(acc, f);
    }
    return acc;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Terms factor() {
    skip();
    if (pos_ == s_.size()) throw Error(ErrorCode::SyntaxError, "operand expected after operator", op_);
    char c = s_[pos_];
    Exponents unit(alg_.size(), 0);
    Terms out;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = integer();
      mpz_class den = 1;
      skip();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        std::size_t at = pos_++;
        skip();
        if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw Error(ErrorCode::SyntaxError, "denominator expected", at);
        den = integer();
        if (den == 0) throw Error(ErrorCode::SyntaxError, "zero denominator", at);
      }
      Rational q(num, den);
      q.canonicalize();
      add_term(out, unit, q);
      return out;
    }
    if (c == '(') {
      std::size_t at = pos_++;
      Terms inner = sum();
      if (!peek(')')) throw Error(ErrorCode::SyntaxError, "missing ')'", at);
      ++pos_;
      return inner;
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = alg_.find(name);
      if (!idx) throw Error(ErrorCode::UnknownVariable, "unknown variable '" + name + "'", start);
      int exp = 1;
      if (peek('^')) {
        std::size_t at = pos_++;
        skip();
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
          neg = true;
          ++pos_;
        }
        if (pos_ == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
          throw Error(ErrorCode::SyntaxError, "exponent expected", at);
        mpz_class v = integer();
        if (!v.fits_sint_p() || v > 100000) throw Error(ErrorCode::InvalidExponent, "exponent too large", at);
        exp = static_cast<int>(v.get_si());
        if (neg) exp = -exp;
      }
      const Variable& var = alg_.var(*idx);
      if (exp < 0 && !var.inverted)
        throw Error(ErrorCode::InvalidExponent, "negative exponent on non-inverted '" + name + "'", start);
      if (var.odd && exp > 1) return out;
      unit[*idx] = exp;
      add_term(out, unit, Rational(1));
      return out;
    }
    throw Error(ErrorCode::SyntaxError, "unexpected '" + std::string(1, c) + "'", pos_);
  }

  const Algebra& alg_;
  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t op_ = 0;
};

}  // namespace

Terms parse_terms(const Algebra& alg, std::string_view text) { return Parser(alg, text).run(); }

bool is_identifier(std::string_view s) {
  if (s.empty() || !ident_start(s[0])) return false;
  for (char c : s)
    if (!ident_char(c)) return false;
  return true;
}

}  // namespace wcq
