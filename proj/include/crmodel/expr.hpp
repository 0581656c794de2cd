#pragma once

#include "poly.hpp"

#include <cctype>
#include <sstream>

namespace crmodel {

struct ParseError : std::runtime_error {
  int column;
  ParseError(const std::string& msg, int col)
      : std::runtime_error(msg + " at column " + std::to_string(col + 1)), column(col)
  {
  }
};

namespace detail {

class ExprParser {
public:
  ExprParser(const std::string& s, Universe U) : s_(s), U_(U) {}

  Poly parse()
  {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, int(pos_)); }

  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c)
  {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c)
  {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Poly expr()
  {
    Poly acc = termExpr();
    for (;;) {
      if (eat('+'))
        acc += termExpr();
      else if (eat('-'))
        acc -= termExpr();
      else
        return acc;
    }
  }

  Poly termExpr()
  {
    Poly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      }
      else if (eat('/')) {
        size_t at = pos_;
        Poly d = unary();
        if (d.size() != 1 || !d.terms().begin()->first.isConstant()) {
          pos_ = at;
          fail("division by a non-constant");
        }
        acc *= Gaussian(1) / d.terms().begin()->second;
      }
      else {
        return acc;
      }
    }
  }

  Poly unary()
  {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power()
  {
    Poly base = atom();
    if (eat('^')) {
      skip();
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("expected integer exponent");
      return base.pow(std::stoi(s_.substr(st, pos_ - st)));
    }
    return base;
  }

  std::string ident()
  {
    size_t st = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(st, pos_ - st);
  }

  int index(int limit, const std::string& name)
  {
    size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected index after '" + name + "'");
    int k = std::stoi(s_.substr(st, pos_ - st));
    if (k < 1 || k > limit) {
      pos_ = st;
      fail("variable " + name + std::to_string(k) + " outside the universe");
    }
    return k - 1;
  }

  Poly atom()
  {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(U_, Gaussian(Rational(mpz_class(s_.substr(st, pos_ - st)))));
    }
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      expect(')');
      return p;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    size_t at = pos_;
    std::string id = ident();
    if (id == "i") return Poly::constant(U_, Gaussian::I());
    if (id == "z") return Poly::z(U_, index(U_.n, id));
    if (id == "u") return Poly::u(U_, index(U_.K, id));
    if (id == "w") return Poly::w(U_, index(U_.K, id));
    if (id == "conj" || id == "Re" || id == "Im") {
      expect('(');
      size_t inner = pos_;
      Poly p = expr();
      expect(')');
      if (p.hasW()) {
        pos_ = inner;
        fail(id + "() of an expression containing w");
      }
      if (id == "conj") return p.conjugate();
      if (id == "Re") return p.rePart();
      return p.imPart();
    }
    pos_ = at;
    fail("unknown identifier '" + id + "'");
  }

  const std::string& s_;
  Universe U_;
  size_t pos_ = 0;
};

inline std::string factor(const char* name, int idx, int k, bool conj)
{
  std::string v = std::string(name) + std::to_string(idx + 1);
  if (conj) v = "conj(" + v + ")";
  if (k > 1) v += "^" + std::to_string(k);
  return v;
}

inline std::string monomialString(const Monomial& m, const Universe& U)
{
  std::string s;
  auto add = [&](const std::string& f) {
    if (!s.empty()) s += "*";
    s += f;
  };
  for (int j = 0; j < U.n; ++j)
    if (m.e[U.z(j)]) add(factor("z", j, m.e[U.z(j)], false));
  for (int j = 0; j < U.n; ++j)
    if (m.e[U.zb(j)]) add(factor("z", j, m.e[U.zb(j)], true));
  for (int b = 0; b < U.K; ++b)
    if (m.e[U.u(b)]) add(factor("u", b, m.e[U.u(b)], false));
  for (int b = 0; b < U.K; ++b)
    if (m.e[U.w(b)]) add(factor("w", b, m.e[U.w(b)], false));
  return s;
}

} // namespace detail

/// Parse an expression over z1..zn, conj(zj), u1..uK, w1..wK, i, rationals.
inline Poly parsePoly(const std::string& text, Universe U)
{
  return detail::ExprParser(text, U).parse();
}

/// Canonical text: terms in decreasing graded-lex order.  parsePoly(toString(p)) == p.
inline std::string toString(const Poly& p)
{
  const Universe& U = p.universe();
  if (p.isZero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const Monomial& m = it->first;
    Gaussian c = it->second;
    bool neg = false;
    if (c.isReal() && sgn(c.re) < 0) neg = true;
    if (sgn(c.re) == 0 && sgn(c.im) < 0) neg = true;
    if (neg) c = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono = detail::monomialString(m, U);
    if (mono.empty()) {
      out += c.str();
      continue;
    }
    if (!c.isOne()) out += c.str() + "*";
    out += mono;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p)
{
  return os << toString(p);
}

} // namespace crmodel
