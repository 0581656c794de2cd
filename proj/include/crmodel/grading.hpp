#pragma once

#include "expr.hpp"
#include "linalg.hpp"

#include <numeric>
#include <set>

namespace crmodel {

/// Weights of the coordinates: one entry per z variable and per w (= u) variable.
struct WeightSystem {
  std::vector<int> z;
  std::vector<int> w;

  WeightSystem() = default;
  WeightSystem(std::vector<int> zw, std::vector<int> ww) : z(std::move(zw)), w(std::move(ww))
  {
    for (int x : z)
      if (x <= 0) throw std::invalid_argument("weights must be positive integers");
    for (int x : w)
      if (x <= 0) throw std::invalid_argument("weights must be positive integers");
  }

  Weights slots(const Universe& U) const
  {
    if (int(z.size()) != U.n || int(w.size()) != U.K) throw DimensionError("weight system does not match universe");
    Weights wt(U.slots());
    for (int j = 0; j < U.n; ++j) wt[U.z(j)] = wt[U.zb(j)] = z[j];
    for (int b = 0; b < U.K; ++b) wt[U.u(b)] = wt[U.w(b)] = w[b];
    return wt;
  }

  int muMin() const { return *std::min_element(z.begin(), z.end()); }
  int muMax() const { return *std::max_element(z.begin(), z.end()); }
  int mTop() const { return w.empty() ? 0 : *std::max_element(w.begin(), w.end()); }

  /// (weight, multiplicity) groups in increasing weight
  static std::vector<std::pair<int, int>> groups(const std::vector<int>& v)
  {
    std::map<int, int> g;
    for (int x : v) g[x]++;
    return {g.begin(), g.end()};
  }
  std::vector<std::pair<int, int>> zGroups() const { return groups(z); }
  std::vector<std::pair<int, int>> wGroups() const { return groups(w); }

  friend bool operator==(const WeightSystem& a, const WeightSystem& b) { return a.z == b.z && a.w == b.w; }
};

inline long weightOf(const Monomial& m, const WeightSystem& ws, const Universe& U)
{
  return weightOf(m, ws.slots(U));
}

/// ((m1,k1),...,(mq,kq)) with an optional (inf, d) tail
struct TypeDescriptor {
  std::vector<std::pair<int, int>> pairs;
  bool infinite = false;
  int defect = 0;

  static TypeDescriptor fromWeights(const std::vector<int>& m, int unassigned = 0)
  {
    TypeDescriptor t;
    t.pairs = WeightSystem::groups(m);
    t.infinite = unassigned > 0;
    t.defect = unassigned;
    return t;
  }

  int top() const { return pairs.empty() ? 0 : pairs.back().first; }
  int codim() const
  {
    int s = defect;
    for (auto& p : pairs) s += p.second;
    return s;
  }

  std::string str() const
  {
    std::string s = "(";
    for (size_t k = 0; k < pairs.size(); ++k) {
      if (k) s += ",";
      s += "(" + std::to_string(pairs[k].first) + "," + std::to_string(pairs[k].second) + ")";
    }
    if (infinite) s += std::string(pairs.empty() ? "" : ",") + "(inf," + std::to_string(defect) + ")";
    return s + ")";
  }

  friend bool operator==(const TypeDescriptor& a, const TypeDescriptor& b)
  {
    return a.pairs == b.pairs && a.infinite == b.infinite && a.defect == b.defect;
  }
  friend bool operator!=(const TypeDescriptor& a, const TypeDescriptor& b) { return !(a == b); }
};

inline std::map<long, Poly> gradedParts(const Poly& p, const Weights& wt)
{
  std::map<long, Poly> parts;
  for (auto& [m, c] : p.terms()) {
    long k = weightOf(m, wt);
    auto it = parts.find(k);
    if (it == parts.end()) it = parts.emplace(k, Poly(p.universe())).first;
    it->second.addTerm(m, c);
  }
  return parts;
}

inline Poly gradedPart(const Poly& p, const Weights& wt, long nu)
{
  return p.filter([&](const Monomial& m) { return weightOf(m, wt) == nu; });
}

inline Poly truncateAbove(const Poly& p, const Weights& wt, long nu)
{
  return p.filter([&](const Monomial& m) { return weightOf(m, wt) <= nu; });
}

inline Poly truncateBelow(const Poly& p, const Weights& wt, long nu)
{
  return p.filter([&](const Monomial& m) { return weightOf(m, wt) >= nu; });
}

inline std::optional<long> minWeight(const Poly& p, const Weights& wt)
{
  std::optional<long> r;
  for (auto& kv : p.terms()) {
    long k = weightOf(kv.first, wt);
    if (!r || k < *r) r = k;
  }
  return r;
}

inline std::optional<long> maxWeight(const Poly& p, const Weights& wt)
{
  std::optional<long> r;
  for (auto& kv : p.terms()) {
    long k = weightOf(kv.first, wt);
    if (!r || k > *r) r = k;
  }
  return r;
}

/// Exponent pairs (alpha, beta) of a hypersurface right-hand side F(z, conj z).
struct NewtonSupport {
  std::vector<Monomial> points; // increasing graded-lex
  std::map<Monomial, Gaussian> coeff;
  std::optional<long> value;    // set by faceByWeight

  bool empty() const { return points.empty(); }
  size_t size() const { return points.size(); }
};

inline NewtonSupport support(const Poly& F)
{
  NewtonSupport s;
  for (auto& [m, c] : F.terms()) {
    s.points.push_back(m);
    s.coeff.emplace(m, c);
  }
  return s;
}

/// sum_j mu_j (alpha_j + beta_j)
inline long faceValue(const Monomial& m, const std::vector<int>& mu, const Universe& U)
{
  long s = 0;
  for (int j = 0; j < U.n; ++j) s += long(mu[j]) * (m.e[U.z(j)] + m.e[U.zb(j)]);
  return s;
}

inline NewtonSupport faceByWeight(const NewtonSupport& s, const std::vector<int>& mu, const Universe& U)
{
  NewtonSupport f;
  for (auto& m : s.points) {
    long v = faceValue(m, mu, U);
    if (!f.value || v < *f.value) {
      f.points.clear();
      f.coeff.clear();
      f.value = v;
    }
    if (v == *f.value) {
      f.points.push_back(m);
      f.coeff.emplace(m, s.coeff.at(m));
    }
  }
  return f;
}

inline Poly polyOf(const NewtonSupport& s, const Universe& U)
{
  Poly p(U);
  for (auto& [m, c] : s.coeff) p.addTerm(m, c);
  return p;
}

// ---- real coordinates of real polynomials ----

/// part 0: real part (or the value for self-conjugate monomials), part 1: imaginary part
struct RealKey {
  Monomial m;
  int part = 0;
  friend bool operator<(const RealKey& a, const RealKey& b)
  {
    if (a.m != b.m) return a.m < b.m;
    return a.part < b.part;
  }
  friend bool operator==(const RealKey& a, const RealKey& b) { return a.m == b.m && a.part == b.part; }
};

/// coordinates of a real polynomial: one entry per conjugate pair (Re, Im) and per self-conjugate monomial
inline std::vector<std::pair<RealKey, Rational>> realCoords(const Poly& p)
{
  const Universe& U = p.universe();
  std::vector<std::pair<RealKey, Rational>> out;
  for (auto& [m, c] : p.terms()) {
    if (m.selfConjugate(U)) {
      if (sgn(c.re)) out.push_back({RealKey{m, 0}, c.re});
      continue;
    }
    Monomial mc = m.conj(U);
    if (mc < m) {
      if (sgn(c.re)) out.push_back({RealKey{m, 0}, c.re});
      if (sgn(c.im)) out.push_back({RealKey{m, 1}, c.im});
    }
    else if (p.coeff(mc).isZero()) {
      // only the small member present: the polynomial is not real; keep its data anyway
      if (sgn(c.re)) out.push_back({RealKey{mc, 0}, c.re});
      if (sgn(c.im)) out.push_back({RealKey{mc, 1}, -c.im});
    }
  }
  return out;
}

/// real polynomial having a single unit coordinate at key
inline Poly realUnit(const RealKey& k, const Universe& U)
{
  if (k.m.selfConjugate(U)) return Poly::term(U, k.m, Gaussian(1));
  Monomial mc = k.m.conj(U);
  if (k.part == 0) return Poly::term(U, k.m, Gaussian(1)) + Poly::term(U, mc, Gaussian(1));
  return Poly::term(U, k.m, Gaussian::I()) + Poly::term(U, mc, -Gaussian::I());
}

/// Assigns column indices to real keys in a fixed order.
class RealIndex {
public:
  int operator()(const RealKey& k)
  {
    auto it = idx_.find(k);
    if (it != idx_.end()) return it->second;
    int c = int(keys_.size());
    idx_.emplace(k, c);
    keys_.push_back(k);
    return c;
  }
  std::optional<int> find(const RealKey& k) const
  {
    auto it = idx_.find(k);
    if (it == idx_.end()) return std::nullopt;
    return it->second;
  }
  const RealKey& key(int c) const { return keys_[c]; }
  int size() const { return int(keys_.size()); }

  SparseRow<Rational> row(const Poly& p)
  {
    std::map<int, Rational> m;
    for (auto& [k, v] : realCoords(p)) m[(*this)(k)] += v;
    return makeRow(m);
  }
  Poly poly(const SparseRow<Rational>& r, const Universe& U) const
  {
    Poly p(U);
    for (auto& [c, v] : r) p += realUnit(keys_[c], U) * Gaussian(v);
    return p;
  }

private:
  std::map<RealKey, int> idx_;
  std::vector<RealKey> keys_;
};

/// all exponent vectors over the given slots with weighted degree exactly nu
inline void enumerateMonomials(const Universe& U, const std::vector<int>& slots, const Weights& wt, long nu,
                               const std::function<void(const Monomial&)>& emit)
{
  Monomial m(U.slots());
  std::function<void(size_t, long)> rec = [&](size_t k, long left) {
    if (k == slots.size()) {
      if (left == 0) {
        Monomial t = m;
        t.recount();
        emit(t);
      }
      return;
    }
    int s = slots[k];
    int w = wt[s];
    for (int e = 0; long(e) * w <= left; ++e) {
      m.e[s] = e;
      rec(k + 1, left - long(e) * w);
    }
    m.e[s] = 0;
  };
  if (nu >= 0) rec(0, nu);
}

} // namespace crmodel
