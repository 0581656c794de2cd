#pragma once

#include "gaussian.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crmodel {

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Variable universe: z1..zn, conj(z1)..conj(zn), u1..uK, w1..wK in one slot vector.
struct Universe {
  int n = 0;
  int K = 0;

  int slots() const { return 2 * n + 2 * K; }
  int z(int j) const { return j; }
  int zb(int j) const { return n + j; }
  int u(int b) const { return 2 * n + b; }
  int w(int b) const { return 2 * n + K + b; }

  friend bool operator==(const Universe& a, const Universe& b) { return a.n == b.n && a.K == b.K; }
  friend bool operator!=(const Universe& a, const Universe& b) { return !(a == b); }
};

enum class VarKind { Z, ZB, U, W };

struct Var {
  VarKind kind;
  int index;
  int slot(const Universe& U) const
  {
    switch (kind) {
    case VarKind::Z: return U.z(index);
    case VarKind::ZB: return U.zb(index);
    case VarKind::U: return U.u(index);
    case VarKind::W: return U.w(index);
    }
    return -1;
  }
};

/// Exponent vector laid out as [zExp | zbExp | uExp | wExp].
struct Monomial {
  std::vector<int> e;
  int deg = 0;

  Monomial() = default;
  explicit Monomial(int slots) : e(slots, 0) {}
  explicit Monomial(std::vector<int> ex) : e(std::move(ex))
  {
    for (int x : e) deg += x;
  }

  void recount()
  {
    deg = 0;
    for (int x : e) deg += x;
  }

  friend bool operator<(const Monomial& a, const Monomial& b)
  {
    if (a.deg != b.deg) return a.deg < b.deg;
    return a.e < b.e;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }

  friend Monomial operator*(const Monomial& a, const Monomial& b)
  {
    Monomial r(a.e);
    for (size_t k = 0; k < r.e.size(); ++k) r.e[k] += b.e[k];
    r.deg = a.deg + b.deg;
    return r;
  }

  bool isConstant() const { return deg == 0; }

  bool hasW(const Universe& U) const
  {
    for (int b = 0; b < U.K; ++b)
      if (e[U.w(b)]) return true;
    return false;
  }
  bool isHolomorphic(const Universe& U) const
  {
    for (int j = 0; j < U.n; ++j)
      if (e[U.zb(j)]) return false;
    for (int b = 0; b < U.K; ++b)
      if (e[U.u(b)]) return false;
    return true;
  }
  /// swaps the z and conj(z) blocks
  Monomial conj(const Universe& U) const
  {
    Monomial r(*this);
    for (int j = 0; j < U.n; ++j) std::swap(r.e[U.z(j)], r.e[U.zb(j)]);
    return r;
  }
  bool selfConjugate(const Universe& U) const
  {
    for (int j = 0; j < U.n; ++j)
      if (e[U.z(j)] != e[U.zb(j)]) return false;
    return true;
  }
  /// z^a u^d or conj(z)^a u^d (pure u included); w-free monomials only
  bool isPluriharmonic(const Universe& U) const
  {
    bool hz = false, hzb = false;
    for (int j = 0; j < U.n; ++j) {
      if (e[U.z(j)]) hz = true;
      if (e[U.zb(j)]) hzb = true;
    }
    return !(hz && hzb);
  }
};

using Weights = std::vector<int>; // one weight per slot

inline long weightOf(const Monomial& m, const Weights& wt)
{
  long s = 0;
  for (size_t k = 0; k < m.e.size(); ++k) s += long(m.e[k]) * wt[k];
  return s;
}

/// Sparse polynomial with Gaussian-rational coefficients; zero terms never stored.
class Poly {
public:
  using Terms = std::map<Monomial, Gaussian>;

  Poly() = default;
  explicit Poly(Universe U) : uni_(U) {}

  static Poly constant(Universe U, const Gaussian& c)
  {
    Poly p(U);
    if (!c.isZero()) p.terms_.emplace(Monomial(U.slots()), c);
    return p;
  }
  static Poly variable(Universe U, Var v)
  {
    Monomial m(U.slots());
    m.e[v.slot(U)] = 1;
    m.deg = 1;
    return term(U, m, Gaussian(1));
  }
  static Poly term(Universe U, const Monomial& m, const Gaussian& c)
  {
    Poly p(U);
    if (!c.isZero()) p.terms_.emplace(m, c);
    return p;
  }
  static Poly z(Universe U, int j) { return variable(U, {VarKind::Z, j}); }
  static Poly zb(Universe U, int j) { return variable(U, {VarKind::ZB, j}); }
  static Poly u(Universe U, int b) { return variable(U, {VarKind::U, b}); }
  static Poly w(Universe U, int b) { return variable(U, {VarKind::W, b}); }

  const Universe& universe() const { return uni_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Gaussian coeff(const Monomial& m) const
  {
    auto it = terms_.find(m);
    return it == terms_.end() ? Gaussian(0) : it->second;
  }

  void addTerm(const Monomial& m, const Gaussian& c)
  {
    if (c.isZero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }

  Poly& operator+=(const Poly& o)
  {
    check(o);
    for (auto& [m, c] : o.terms_) addTerm(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o)
  {
    check(o);
    for (auto& [m, c] : o.terms_) addTerm(m, -c);
    return *this;
  }
  Poly& operator*=(const Gaussian& c)
  {
    if (c.isZero()) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a)
  {
    for (auto& kv : a.terms_) kv.second = -kv.second;
    return a;
  }
  friend Poly operator*(Poly a, const Gaussian& c) { return a *= c; }
  friend Poly operator*(const Gaussian& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b) { return multiply(a, b, nullptr, 0); }
  friend bool operator==(const Poly& a, const Poly& b) { return a.uni_ == b.uni_ && a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// product keeping only terms of weight <= limit when wt is given
  static Poly multiply(const Poly& a, const Poly& b, const Weights* wt, long limit)
  {
    a.check(b);
    Poly r(a.uni_);
    if (a.isZero() || b.isZero()) return r;
    std::vector<std::pair<const Monomial*, long>> bw;
    bw.reserve(b.terms_.size());
    for (auto& kv : b.terms_) bw.emplace_back(&kv.first, wt ? weightOf(kv.first, *wt) : 0);
    for (auto& [ma, ca] : a.terms_) {
      long wa = wt ? weightOf(ma, *wt) : 0;
      size_t k = 0;
      for (auto& [mb, cb] : b.terms_) {
        long wb = bw[k++].second;
        if (wt && wa + wb > limit) continue;
        r.addTerm(ma * mb, ca * cb);
      }
    }
    return r;
  }

  Poly pow(int k) const
  {
    if (k < 0) throw std::invalid_argument("negative power");
    Poly r = constant(uni_, Gaussian(1));
    Poly base = *this;
    while (k) {
      if (k & 1) r = r * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return r;
  }

  bool hasW() const
  {
    for (auto& kv : terms_)
      if (kv.first.hasW(uni_)) return true;
    return false;
  }
  bool isHolomorphic() const
  {
    for (auto& kv : terms_)
      if (!kv.first.isHolomorphic(uni_)) return false;
    return true;
  }

  Poly conjugate() const
  {
    if (hasW()) throw std::invalid_argument("conjugate: w variables are not allowed");
    Poly r(uni_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m.conj(uni_), c.conj());
    return r;
  }
  bool isReal() const { return conjugate() == *this; }
  Poly rePart() const { return (*this + conjugate()) * Gaussian(Rational(1, 2)); }
  Poly imPart() const { return (*this - conjugate()) * Gaussian(Rational(0), Rational(-1, 2)); }

  Poly derive(Var v) const
  {
    int s = v.slot(uni_);
    if (s < 0 || s >= uni_.slots()) throw std::out_of_range("derive: unknown variable");
    Poly r(uni_);
    for (auto& [m, c] : terms_) {
      int k = m.e[s];
      if (!k) continue;
      Monomial d(m);
      d.e[s] -= 1;
      d.deg -= 1;
      r.addTerm(d, c * Gaussian(k));
    }
    return r;
  }

  /// terms whose weight satisfies pred
  Poly filter(const std::function<bool(const Monomial&)>& keep) const
  {
    Poly r(uni_);
    for (auto& [m, c] : terms_)
      if (keep(m)) r.terms_.emplace(m, c);
    return r;
  }

  /// Re-embed into a universe with the same n and possibly larger K.
  /// map[b] gives the new index of old u_b / w_b.
  Poly remap(Universe target, const std::vector<int>& map) const
  {
    if (target.n != uni_.n) throw DimensionError("remap: n differs");
    Poly r(target);
    for (auto& [m, c] : terms_) {
      Monomial t(target.slots());
      for (int j = 0; j < uni_.n; ++j) {
        t.e[target.z(j)] = m.e[uni_.z(j)];
        t.e[target.zb(j)] = m.e[uni_.zb(j)];
      }
      for (int b = 0; b < uni_.K; ++b) {
        t.e[target.u(map[b])] += m.e[uni_.u(b)];
        t.e[target.w(map[b])] += m.e[uni_.w(b)];
      }
      t.recount();
      r.addTerm(t, c);
    }
    return r;
  }
  Poly extend(Universe target) const
  {
    std::vector<int> id(uni_.K);
    for (int b = 0; b < uni_.K; ++b) id[b] = b;
    return remap(target, id);
  }

  void check(const Poly& o) const
  {
    if (uni_ != o.uni_) throw DimensionError("polynomials over different variable universes");
  }

private:
  Universe uni_;
  Terms terms_;
};

inline Poly truncateWeight(const Poly& p, const Weights& wt, long limit)
{
  return p.filter([&](const Monomial& m) { return weightOf(m, wt) <= limit; });
}

/// Replace variables by polynomials. repl[slot] empty keeps the variable.
/// With wt given, terms of weight above limit are dropped along the way.
class Substitution {
public:
  Substitution(Universe U, std::vector<std::optional<Poly>> repl, const Weights* wt = nullptr, long limit = 0)
      : U_(U), repl_(std::move(repl)), wt_(wt), limit_(limit), cache_(U.slots())
  {
  }

  Poly apply(const Poly& p)
  {
    Poly r(U_);
    for (auto& [m, c] : p.terms()) {
      Monomial keep(U_.slots());
      Poly acc = Poly::constant(U_, c);
      for (int s = 0; s < U_.slots(); ++s) {
        int k = m.e[s];
        if (!k) continue;
        if (!repl_[s]) {
          keep.e[s] = k;
          continue;
        }
        acc = mul(acc, power(s, k));
        if (acc.isZero()) break;
      }
      if (acc.isZero()) continue;
      keep.recount();
      if (keep.deg) acc = mul(acc, Poly::term(U_, keep, Gaussian(1)));
      r += acc;
    }
    return r;
  }

private:
  Poly mul(const Poly& a, const Poly& b) { return Poly::multiply(a, b, wt_, limit_); }

  const Poly& power(int s, int k)
  {
    auto& v = cache_[s];
    if (v.empty()) v.push_back(Poly::constant(U_, Gaussian(1)));
    while (int(v.size()) <= k) v.push_back(mul(v.back(), *repl_[s]));
    return v[k];
  }

  Universe U_;
  std::vector<std::optional<Poly>> repl_;
  const Weights* wt_;
  long limit_;
  std::vector<std::vector<Poly>> cache_;
};

/// h(z, w) -> h(z, u + i*Phi)
inline Poly substituteW(const Poly& h, const std::vector<Poly>& Phi, const Weights* wt = nullptr, long limit = 0)
{
  const Universe& U = h.universe();
  if (!h.isHolomorphic()) throw std::invalid_argument("substituteW: argument is not holomorphic");
  if (int(Phi.size()) != U.K) throw DimensionError("substituteW: need one form per w variable");
  std::vector<std::optional<Poly>> repl(U.slots());
  for (int b = 0; b < U.K; ++b) {
    h.check(Phi[b]);
    repl[U.w(b)] = Poly::u(U, b) + Phi[b] * Gaussian::I();
  }
  return Substitution(U, std::move(repl), wt, limit).apply(h);
}

inline Poly substituteW(const Poly& h, const std::vector<Poly>& Phi, const Weights& wt, long limit)
{
  return substituteW(h, Phi, &wt, limit);
}

} // namespace crmodel
