#pragma once

#include "normal_form.hpp"

#include <random>

namespace crmodel {

/// Vector field over (z, conj z, u): one coefficient per slot, w slots unused.
struct TangentField {
  std::vector<Poly> c;
  int weight = 0; // grade: derivation in a weight-m coordinate counts as -m

  const Universe& universe() const { return c[0].universe(); }
};

inline Var slotVar(const Universe& U, int s)
{
  if (s < U.n) return {VarKind::Z, s};
  if (s < 2 * U.n) return {VarKind::ZB, s - U.n};
  if (s < 2 * U.n + U.K) return {VarKind::U, s - 2 * U.n};
  return {VarKind::W, s - 2 * U.n - U.K};
}

inline Poly applyField(const TangentField& X, const Poly& h)
{
  const Universe& U = h.universe();
  Poly r(U);
  for (int s = 0; s < 2 * U.n + U.K; ++s)
    if (!X.c[s].isZero()) {
      Poly d = h.derive(slotVar(U, s));
      if (!d.isZero()) r += X.c[s] * d;
    }
  return r;
}

inline TangentField bracket(const TangentField& X, const TangentField& Y)
{
  TangentField Z;
  Z.weight = X.weight + Y.weight;
  for (size_t s = 0; s < X.c.size(); ++s) Z.c.push_back(applyField(X, Y.c[s]) - applyField(Y, X.c[s]));
  return Z;
}

/// A_j with (I - iN) A_j = i d_{z_j} R, N = dR/du.  Exact when N is nilpotent.
inline std::optional<std::vector<std::vector<Poly>>> crCoefficients(const std::vector<Poly>& R,
                                                                    const Weights* wt = nullptr, long limit = 0)
{
  const Universe& U = R[0].universe();
  std::vector<std::vector<Poly>> N(U.K);
  for (int b = 0; b < U.K; ++b)
    for (int g = 0; g < U.K; ++g) N[b].push_back(R[b].derive({VarKind::U, g}));
  std::vector<std::vector<Poly>> A;
  Gaussian I = Gaussian::I();
  for (int j = 0; j < U.n; ++j) {
    std::vector<Poly> base;
    for (int b = 0; b < U.K; ++b) base.push_back(R[b].derive({VarKind::Z, j}) * I);
    std::vector<Poly> a = base;
    int maxIt = wt ? int(limit) + U.K + 2 : U.K + 2;
    bool stable = false;
    for (int it = 0; it < maxIt && !stable; ++it) {
      std::vector<Poly> next = base;
      for (int b = 0; b < U.K; ++b)
        for (int g = 0; g < U.K; ++g)
          if (!N[b][g].isZero()) next[b] += Poly::multiply(N[b][g], a[g], wt, limit) * I;
      if (wt)
        for (auto& p : next) p = truncateWeight(p, *wt, limit);
      stable = next == a;
      a = std::move(next);
    }
    if (!stable) return std::nullopt;
    A.push_back(a);
  }
  return A;
}

/// L_j = d/dz_j + sum A_jb d/du_b and their conjugates, j = 1..n (complex basis of T^c).
inline std::vector<TangentField> crFields(const SurfaceSpec& Q)
{
  const Universe& U = Q.U;
  auto A = crCoefficients(Q.phi);
  if (!A) throw std::invalid_argument("model forms are not triangular in u");
  std::vector<TangentField> out;
  for (int bar = 0; bar < 2; ++bar)
    for (int j = 0; j < U.n; ++j) {
      TangentField X;
      X.c.assign(U.slots(), Poly(U));
      X.weight = Q.ws.z[j];
      X.c[bar ? U.zb(j) : U.z(j)] = Poly::constant(U, Gaussian(1));
      for (int b = 0; b < U.K; ++b) X.c[U.u(b)] = bar ? (*A)[j][b].conjugate() : (*A)[j][b];
      out.push_back(X);
    }
  return out;
}

/// (1,0) fields kill u - i*Phi, (0,1) fields kill u + i*Phi.
inline bool isCRField(const TangentField& X, const std::vector<Poly>& phi)
{
  const Universe& U = phi[0].universe();
  bool holo = true, anti = true;
  for (int j = 0; j < U.n; ++j) {
    if (!X.c[U.zb(j)].isZero()) holo = false;
    if (!X.c[U.z(j)].isZero()) anti = false;
  }
  if (!holo && !anti) return false;
  Gaussian s = holo ? -Gaussian::I() : Gaussian::I();
  for (int b = 0; b < U.K; ++b)
    if (!applyField(X, Poly::u(U, b) + phi[b] * s).isZero()) return false;
  return true;
}

namespace detail {

class FieldIndex {
public:
  SparseRow<Gaussian> row(const TangentField& X)
  {
    std::map<int, Gaussian> m;
    for (size_t s = 0; s < X.c.size(); ++s)
      for (auto& [mono, c] : X.c[s].terms()) {
        auto key = std::make_pair(int(s), mono);
        auto it = idx_.find(key);
        if (it == idx_.end()) it = idx_.emplace(key, int(idx_.size())).first;
        m[it->second] += c;
      }
    return makeRow(m);
  }

private:
  std::map<std::pair<int, Monomial>, int> idx_;
};

} // namespace detail

/// Weighted dimension jumps of the bracket filtration of T^c, evaluated at the origin.
inline TypeDescriptor geometricType(const SurfaceSpec& Q, int bound = 0)
{
  const Universe& U = Q.U;
  if (bound <= 0) bound = std::max(defaultTypeBound(Q.ws.z, U.K), Q.ws.mTop());
  auto gens = crFields(Q);
  std::map<int, std::vector<TangentField>> layer;
  detail::FieldIndex idx;
  Span<Gaussian> uspan;
  std::vector<int> jumps;
  Monomial one(U.slots());
  for (int w = 1; w <= bound && uspan.dim() < U.K; ++w) {
    Span<Gaussian> ls;
    std::vector<TangentField> basis;
    auto offer = [&](const TangentField& X) {
      if (ls.insert(idx.row(X))) basis.push_back(X);
    };
    for (auto& g : gens)
      if (g.weight == w) offer(g);
    for (auto& g : gens)
      if (g.weight < w)
        for (auto& x : layer[w - g.weight]) offer(bracket(g, x));
    for (auto& X : basis) {
      std::map<int, Gaussian> v;
      for (int b = 0; b < U.K; ++b) v[b] = X.c[U.u(b)].coeff(one);
      if (uspan.insert(makeRow(v))) jumps.push_back(w);
    }
    layer[w] = std::move(basis);
  }
  return TypeDescriptor::fromWeights(jumps, U.K - int(jumps.size()));
}

struct NondegeneracyResult {
  bool nondegenerate = false;
  int order = 0;        // order reached (maxOrder when exceeded)
  bool exceeded = false;
  int rank = 0;
};

/// Rank of the iterated (0,1)-derivatives of the (z,w)-gradients of the defining functions at a point.
inline NondegeneracyResult finiteNondegeneracyAt(const SurfaceSpec& S, int maxOrder, const SurfacePoint& pt)
{
  const Universe& U = S.U;
  const int n = U.n, K = U.K, D = n + K;
  std::vector<Poly> R = S.rhs();
  Weights ones(U.slots(), 1);
  auto A = crCoefficients(R);
  bool truncated = false;
  if (!A) {
    if (!pt.isOrigin()) throw std::invalid_argument("u-dependence is not triangular; only the origin is supported");
    A = crCoefficients(R, &ones, maxOrder + 1);
    truncated = true;
  }
  std::vector<std::vector<Poly>> Abar(n);
  for (int j = 0; j < n; ++j)
    for (int b = 0; b < K; ++b) Abar[j].push_back((*A)[j][b].conjugate());
  auto Lbar = [&](int j, const Poly& f) {
    Poly r = f.derive({VarKind::ZB, j});
    for (int b = 0; b < K; ++b)
      if (!Abar[j][b].isZero()) {
        Poly d = f.derive({VarKind::U, b});
        if (!d.isZero()) r += truncated ? Poly::multiply(Abar[j][b], d, &ones, maxOrder + 1) : Abar[j][b] * d;
      }
    return r;
  };
  std::vector<Gaussian> zv = pt.z, uv(pt.u.begin(), pt.u.end());
  Span<Gaussian> span;
  auto offer = [&](const std::vector<Poly>& vec) {
    std::map<int, Gaussian> m;
    for (int c = 0; c < D; ++c) m[c] = evaluate(vec[c], zv, uv);
    span.insert(makeRow(m));
  };
  // (vector, last index used) so that each multi-index is produced once
  std::vector<std::pair<std::vector<Poly>, int>> level;
  Gaussian half(Rational(1, 2));
  for (int b = 0; b < K; ++b) {
    std::vector<Poly> g;
    for (int j = 0; j < n; ++j) g.push_back(-R[b].derive({VarKind::Z, j}));
    for (int c = 0; c < K; ++c) {
      Poly e = -(R[b].derive({VarKind::U, c}) * half);
      if (c == b) e += Poly::constant(U, Gaussian(Rational(0), Rational(-1, 2)));
      g.push_back(e);
    }
    offer(g);
    level.push_back({g, 0});
  }
  NondegeneracyResult res;
  for (int k = 0;; ++k) {
    res.rank = span.dim();
    if (span.dim() == D) {
      res.nondegenerate = true;
      res.order = k;
      return res;
    }
    if (k == maxOrder) break;
    std::vector<std::pair<std::vector<Poly>, int>> next;
    for (auto& [vec, last] : level)
      for (int j = last; j < n; ++j) {
        std::vector<Poly> d;
        bool zero = true;
        for (auto& p : vec) {
          d.push_back(Lbar(j, p));
          if (!d.back().isZero()) zero = false;
        }
        if (zero) continue;
        offer(d);
        next.push_back({std::move(d), j});
      }
    level = std::move(next);
    if (level.empty()) {
      res.order = k + 1;
      res.exceeded = false;
      res.nondegenerate = false;
      res.rank = span.dim();
      return res;
    }
  }
  res.exceeded = true;
  res.order = maxOrder;
  return res;
}

/// Deterministic low-height rational point (a, b).
inline SurfacePoint genericPoint(const Universe& U, unsigned seed)
{
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  auto rat = [&] {
    int p = num(rng);
    if (p == 0) p = 1;
    Rational r(p, den(rng));
    r.canonicalize();
    return r;
  };
  SurfacePoint pt;
  for (int j = 0; j < U.n; ++j) pt.z.push_back(Gaussian(rat(), rat()));
  for (int b = 0; b < U.K; ++b) pt.u.push_back(rat());
  return pt;
}

inline int defaultNondegeneracyOrder(const SurfaceSpec& S) { return S.ws.mTop() + S.n(); }

/// Holomorphic nondegeneracy through finite nondegeneracy at two generic points.
inline NondegeneracyResult finiteNondegeneracyTest(const SurfaceSpec& S, int maxOrder = 0, unsigned seed = 1)
{
  if (maxOrder <= 0) maxOrder = defaultNondegeneracyOrder(S);
  auto a = finiteNondegeneracyAt(S, maxOrder, genericPoint(S.U, seed));
  if (a.nondegenerate) return a;
  auto b = finiteNondegeneracyAt(S, maxOrder, genericPoint(S.U, seed + 7919));
  if (b.nondegenerate) return b;
  a.exceeded = a.exceeded || b.exceeded;
  a.rank = std::max(a.rank, b.rank);
  return a;
}

inline SurfaceSpec monomialSurface(const std::vector<int>& alpha, const std::vector<int>& beta)
{
  int n = int(alpha.size());
  if (int(beta.size()) != n) throw DimensionError("exponent vectors differ in length");
  Universe U{n, 1};
  Monomial m(U.slots());
  for (int j = 0; j < n; ++j) {
    m.e[U.z(j)] = alpha[j];
    m.e[U.zb(j)] = beta[j];
  }
  m.recount();
  if (m.deg == 0) throw std::invalid_argument("zero exponents");
  Poly p = Poly::term(U, m, Gaussian(1));
  p = p + p.conjugate();
  return SurfaceSpec(U, WeightSystem(std::vector<int>(n, 1), {m.deg}), {p});
}

/// {v = 2Re(z^alpha conj(z)^beta)} is holomorphically degenerate for n >= 3.
inline bool isMonomialDegenerate(const std::vector<int>& alpha, const std::vector<int>& beta)
{
  if (alpha.size() >= 3) return true;
  auto r = finiteNondegeneracyTest(monomialSurface(alpha, beta));
  return !r.nondegenerate;
}

inline int minimalMonomialCount(int n)
{
  if (n < 1) throw std::invalid_argument("n must be positive");
  return (n + 1) / 2;
}

struct CriticalWeight {
  int value = 0;
  std::vector<std::pair<int, bool>> tested; // (top weight s, nondegenerate)
  int cap = 0;
};

/// Least s from which every last fully nondegenerate model surface of top weight s is holomorphically
/// nondegenerate; top weights above 2 mu_max count as nondegenerate.
inline CriticalWeight criticalWeight(const std::vector<int>& mu, int bound)
{
  int lo = 2 * *std::min_element(mu.begin(), mu.end());
  int hi = 2 * *std::max_element(mu.begin(), mu.end());
  if (bound < hi) throw std::invalid_argument("bound must be at least " + std::to_string(hi));
  CriticalWeight res;
  res.cap = std::min(bound, hi + 1);
  res.value = lo;
  std::vector<Poly> forms;
  std::vector<int> weights;
  int n = int(mu.size());
  for (int s = lo; s <= res.cap; ++s) {
    auto basis = reducedSpaceBasis(s, mu, forms, weights);
    if (basis.empty()) continue;
    Universe U{n, int(forms.size() + basis.size())};
    for (auto& f : forms) f = f.extend(U);
    for (auto& f : basis) forms.push_back(f.extend(U));
    weights.resize(forms.size(), s);
    SurfaceSpec Q(U, WeightSystem(mu, weights), forms);
    bool nd = finiteNondegeneracyTest(Q).nondegenerate;
    res.tested.push_back({s, nd});
    if (!nd) res.value = s + 1;
  }
  return res;
}

} // namespace crmodel
