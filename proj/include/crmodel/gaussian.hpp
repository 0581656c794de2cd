#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>

namespace crmodel {

using Rational = mpq_class;

inline std::string toString(const Rational& q)
{
  return q.get_str();
}

/// Exact complex number a + b*i with rational a, b.
class Gaussian {
public:
  Rational re, im;

  Gaussian() = default;
  Gaussian(long v) : re(v), im(0) {}
  Gaussian(const Rational& r) : re(r), im(0) {}
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian I() { return Gaussian(Rational(0), Rational(1)); }

  bool isZero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool isReal() const { return sgn(im) == 0; }
  bool isOne() const { return re == 1 && sgn(im) == 0; }

  Gaussian conj() const { return Gaussian(re, -im); }

  Gaussian& operator+=(const Gaussian& o)
  {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o)
  {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o)
  {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o)
  {
    Rational d = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / d;
    Rational i = (im * o.re - re * o.im) / d;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return Gaussian(-a.re, -a.im); }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }

  std::string str() const
  {
    if (sgn(im) == 0) return re.get_str();
    std::string ims = (im == 1) ? "i" : (im == -1) ? "-i" : im.get_str() + "*i";
    if (sgn(re) == 0) return ims;
    std::string s = "(" + re.get_str();
    if (sgn(im) > 0) s += "+";
    return s + ims + ")";
  }
};

inline std::ostream& operator<<(std::ostream& os, const Gaussian& g)
{
  return os << g.str();
}

} // namespace crmodel
