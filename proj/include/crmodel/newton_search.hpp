#pragma once

#include "homogeneity.hpp"

namespace crmodel {

/// Hypersurface germ {v = F(z, conj z, u)}.
struct Germ {
  Universe U;
  Poly F;

  Germ(Poly f) : U(f.universe()), F(std::move(f))
  {
    if (U.K != 1) throw DimensionError("Newton search handles hypersurfaces only");
  }
  int n() const { return U.n; }
};

struct ProperCheck {
  bool proper = false;
  bool finiteType = false;
  NondegeneracyResult nondeg;
  std::optional<SurfaceSpec> model;
  TypeDescriptor type;
};

inline ProperCheck checkProperWeight(const Germ& g, const std::vector<int>& mu, int bound = 0)
{
  ProperCheck c;
  auto r = computeAnalyticType({g.F}, mu, bound);
  c.type = r.type;
  c.finiteType = r.finite;
  if (!r.finite) return c;
  c.model = r.surface.model();
  c.nondeg = finiteNondegeneracyTest(*c.model);
  c.proper = c.nondeg.nondegenerate;
  return c;
}

inline bool isProperWeight(const Germ& g, const std::vector<int>& mu) { return checkProperWeight(g, mu).proper; }

/// All weight vectors in [1, cap]^n with coprime entries, in lexicographic order.
inline std::vector<std::vector<int>> weightCandidates(int n, int cap)
{
  std::vector<std::vector<int>> out;
  std::vector<int> mu(n, 1);
  for (;;) {
    int g = 0;
    for (int x : mu) g = std::gcd(g, x);
    if (g == 1) out.push_back(mu);
    int k = n - 1;
    while (k >= 0 && mu[k] == cap) mu[k--] = 1;
    if (k < 0) break;
    ++mu[k];
  }
  return out;
}

inline std::optional<int> autDimension(const SurfaceSpec& Q)
{
  try {
    auto A = computeAutAlgebra(Q);
    if (!A.complete) return std::nullopt;
    return A.total();
  }
  catch (const Refusal&) {
    return std::nullopt;
  }
}

struct ProperWeight {
  std::vector<int> mu;
  SurfaceSpec model;
  TypeDescriptor type;
  std::optional<int> dimAut;
};

inline std::vector<ProperWeight> searchProperWeights(const Germ& g, int cap, bool withAut = true)
{
  std::vector<ProperWeight> out;
  for (auto& mu : weightCandidates(g.n(), cap)) {
    auto c = checkProperWeight(g, mu);
    if (!c.proper) continue;
    ProperWeight p{mu, *c.model, c.type, std::nullopt};
    if (withAut) p.dimAut = autDimension(*c.model);
    out.push_back(p);
  }
  return out;
}

// ---- faces ----

/// Conjugation classes {m, conj m} of the support, each listed once by its larger member.
inline std::vector<Monomial> supportClasses(const Poly& F)
{
  const Universe& U = F.universe();
  std::set<Monomial> cls;
  for (auto& kv : F.terms()) {
    Monomial c = kv.first.conj(U);
    cls.insert(std::max(kv.first, c));
  }
  return {cls.begin(), cls.end()};
}

inline Poly restrictToClasses(const Poly& F, const std::vector<Monomial>& classes)
{
  const Universe& U = F.universe();
  std::set<Monomial> keep;
  for (auto& m : classes) {
    keep.insert(m);
    keep.insert(m.conj(U));
  }
  return F.filter([&](const Monomial& m) { return keep.count(m) > 0; });
}

/// Positive integer weight whose minimizing face of the support is exactly the given classes.
inline std::optional<std::vector<int>> faceRealizingWeight(const Poly& F, const std::vector<Monomial>& face)
{
  const Universe& U = F.universe();
  const int n = U.n;
  auto s = [&](const Monomial& m) {
    std::vector<long> v(n);
    for (int j = 0; j < n; ++j) v[j] = m.e[U.z(j)] + m.e[U.zb(j)];
    return v;
  };
  std::set<Monomial> inFace(face.begin(), face.end());
  std::vector<long> p0 = s(face.at(0));
  std::vector<std::vector<Rational>> eqs, ineqs; // eqs: a.mu = 0; ineqs: a.mu >= 1
  for (auto& m : supportClasses(F)) {
    auto v = s(m);
    std::vector<Rational> a(n);
    for (int j = 0; j < n; ++j) a[j] = v[j] - p0[j];
    bool zero = std::all_of(a.begin(), a.end(), [](const Rational& x) { return sgn(x) == 0; });
    if (inFace.count(m)) {
      if (!zero) eqs.push_back(a);
    }
    else {
      if (zero) return std::nullopt; // same weighted degree for every weight
      ineqs.push_back(a);
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Rational> a(n, Rational(0));
    a[j] = 1;
    ineqs.push_back(a);
  }
  auto toRow = [](const std::vector<Rational>& a) {
    std::map<int, Rational> m;
    for (size_t j = 0; j < a.size(); ++j) m[int(j)] = a[j];
    return makeRow(m);
  };
  std::vector<SparseRow<Rational>> eqRows;
  for (auto& a : eqs) eqRows.push_back(toRow(a));
  RRef<Rational> E = rref(eqRows);
  int need = n - E.rank();
  auto dot = [](const std::vector<Rational>& a, const std::vector<Rational>& x) {
    Rational r = 0;
    for (size_t j = 0; j < a.size(); ++j) r += a[j] * x[j];
    return r;
  };
  // vertices: equalities plus `need` active inequalities
  std::vector<int> pick(need);
  std::function<std::optional<std::vector<Rational>>(int, int)> rec = [&](int k, int from) -> std::optional<std::vector<Rational>> {
    if (k == need) {
      std::vector<SparseRow<Rational>> rows = E.rows;
      std::vector<Rational> rhs(E.rows.size(), Rational(0));
      for (int i : pick) {
        rows.push_back(toRow(ineqs[i]));
        rhs.push_back(1);
      }
      if (rank(rows) < n) return std::nullopt;
      auto x = solve(rows, rhs, n);
      if (!x) return std::nullopt;
      for (auto& a : ineqs)
        if (dot(a, *x) < 1) return std::nullopt;
      return x;
    }
    for (int i = from; i < int(ineqs.size()); ++i) {
      pick[k] = i;
      if (auto r = rec(k + 1, i + 1)) return r;
    }
    return std::nullopt;
  };
  auto x = rec(0, 0);
  if (!x) return std::nullopt;
  mpz_class l = 1;
  for (auto& v : *x) l = lcm(l, mpz_class(v.get_den()));
  std::vector<mpz_class> iv;
  mpz_class g = 0;
  for (auto& v : *x) {
    mpz_class t = mpz_class(v.get_num()) * (l / v.get_den());
    iv.push_back(t);
    g = gcd(g, t);
  }
  std::vector<int> mu;
  for (auto& t : iv) mu.push_back(int(mpz_class(t / g).get_si()));
  return mu;
}

// ---- descending ----

struct ChainLink {
  std::vector<int> mu;
  SurfaceSpec model;
  TypeDescriptor type;
  int monomials = 0;
  std::optional<int> dimAut;
};

struct WeightChain {
  std::vector<ChainLink> links;
  std::string strategy;
  int cap = 0;
  const ChainLink& terminal() const { return links.back(); }
};

struct NotProper : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class DescendStrategy { Simplest, Tightest };

inline WeightChain descend(const Germ& g, const std::vector<int>& mu0, DescendStrategy strategy = DescendStrategy::Simplest,
                           int cap = 4)
{
  WeightChain chain;
  chain.cap = cap;
  chain.strategy = strategy == DescendStrategy::Simplest ? "simplest" : "tightest";
  auto c0 = checkProperWeight(g, mu0);
  if (!c0.proper) throw NotProper("starting weight is not proper");
  auto link = [&](const std::vector<int>& mu, const SurfaceSpec& Q, const TypeDescriptor& t) {
    ChainLink l{mu, Q, t, int(Q.phi[0].size()), std::nullopt};
    l.dimAut = autDimension(Q);
    return l;
  };
  chain.links.push_back(link(mu0, *c0.model, c0.type));
  for (;;) {
    const SurfaceSpec& cur = chain.links.back().model;
    Poly F = cur.phi[0];
    size_t curSize = F.size();
    std::optional<ChainLink> best;
    for (auto& mu : weightCandidates(cur.n(), cap)) {
      auto face = faceByWeight(support(F), mu, cur.U);
      if (face.size() >= curSize) continue;
      auto c = checkProperWeight(Germ(F), mu);
      if (!c.proper) continue;
      ChainLink l{mu, *c.model, c.type, int(c.model->phi[0].size()), std::nullopt};
      if (strategy == DescendStrategy::Tightest) l.dimAut = autDimension(l.model);
      auto key = [&](const ChainLink& x) {
        int d = x.dimAut.value_or(std::numeric_limits<int>::max());
        return strategy == DescendStrategy::Simplest ? std::make_tuple(x.monomials, 0, supportClasses(x.model.phi[0]))
                                                     : std::make_tuple(d, x.monomials, supportClasses(x.model.phi[0]));
      };
      if (!best || key(l) < key(*best)) best = l;
    }
    if (!best) break;
    if (!best->dimAut) best->dimAut = autDimension(best->model);
    chain.links.push_back(*best);
  }
  return chain;
}

// ---- ascending ----

struct AscendResult {
  bool exhausted = true;
  std::optional<SurfaceSpec> model;
  std::vector<int> mu;
  std::vector<std::vector<Monomial>> tried; // faces in the order examined
};

inline AscendResult ascend(const Poly& Fin)
{
  const Universe& U = Fin.universe();
  if (U.K != 1) throw DimensionError("Newton search handles hypersurfaces only");
  Poly F = Fin.filter([&](const Monomial& m) { return !m.isPluriharmonic(U); });
  auto classes = supportClasses(F);
  AscendResult res;
  if (classes.empty()) return res;
  int start = std::min<int>(minimalMonomialCount(U.n), int(classes.size()));

  auto evaluateFace = [&](const std::vector<Monomial>& face, std::vector<int>& mu, int& rnk) {
    auto w = faceRealizingWeight(F, face);
    if (!w) return false;
    mu = *w;
    Poly P = restrictToClasses(F, face);
    SurfaceSpec Q(U, WeightSystem(mu, {int(faceValue(face[0], mu, U))}), {P});
    auto r = finiteNondegeneracyAt(Q, defaultNondegeneracyOrder(Q), genericPoint(U, 1));
    rnk = r.rank;
    return true;
  };
  auto succeed = [&](const std::vector<Monomial>& face, const std::vector<int>& mu) {
    Poly P = restrictToClasses(F, face);
    auto t = computeAnalyticType({P}, mu);
    if (!t.finite) return false;
    auto Q = t.surface.model();
    if (!finiteNondegeneracyTest(Q).nondegenerate) return false;
    res.exhausted = false;
    res.model = Q;
    res.mu = mu;
    return true;
  };

  // starting faces of the prescribed size, lexicographic
  std::vector<int> pick(start);
  std::vector<std::vector<Monomial>> starts;
  std::function<void(int, int)> rec = [&](int k, int from) {
    if (k == start) {
      std::vector<Monomial> f;
      for (int i : pick) f.push_back(classes[i]);
      starts.push_back(f);
      return;
    }
    for (int i = from; i < int(classes.size()); ++i) {
      pick[k] = i;
      rec(k + 1, i + 1);
    }
  };
  rec(0, 0);
  for (auto face : starts) {
    std::vector<int> mu;
    int rnk = 0;
    if (!evaluateFace(face, mu, rnk)) continue;
    for (;;) {
      res.tried.push_back(face);
      if (succeed(face, mu)) return res;
      // grow by one class, preferring the largest rank of the gradient family
      std::optional<std::vector<Monomial>> best;
      std::vector<int> bestMu;
      int bestRank = -1;
      for (auto& m : classes) {
        if (std::find(face.begin(), face.end(), m) != face.end()) continue;
        auto g = face;
        g.push_back(m);
        std::sort(g.begin(), g.end());
        std::vector<int> gmu;
        int gr = 0;
        if (!evaluateFace(g, gmu, gr)) continue;
        if (gr > bestRank) {
          bestRank = gr;
          best = g;
          bestMu = gmu;
        }
      }
      if (!best) break;
      face = *best;
      mu = bestMu;
    }
  }
  return res;
}

// ---- minimal models ----

inline bool properModel(const SurfaceSpec& Q)
{
  auto t = computeAnalyticType(Q.phi, Q.ws.z);
  if (!t.finite) return false;
  return finiteNondegeneracyTest(SurfaceSpec(Q.U, Q.ws, Q.phi)).nondegenerate;
}

inline SurfaceSpec withClasses(const SurfaceSpec& Q, const std::vector<Monomial>& classes)
{
  return SurfaceSpec(Q.U, Q.ws, {restrictToClasses(Q.phi[0], classes)});
}

/// Greedy removal of conjugate monomial pairs while the surface stays of finite type and nondegenerate.
inline SurfaceSpec minimalModel(const SurfaceSpec& Q)
{
  if (Q.K() != 1) throw DimensionError("minimal models are computed for hypersurfaces");
  if (!properModel(Q)) throw std::invalid_argument("surface is not nondegenerate of finite type");
  auto cls = supportClasses(Q.phi[0]);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = cls.rbegin(); it != cls.rend(); ++it) {
      std::vector<Monomial> rest;
      for (auto& m : cls)
        if (m != *it) rest.push_back(m);
      if (rest.empty()) continue;
      if (properModel(withClasses(Q, rest))) {
        cls = rest;
        changed = true;
        break;
      }
    }
  }
  return withClasses(Q, cls);
}

/// Removing any single remaining pair breaks finite type or nondegeneracy.
inline bool isOneMinimal(const SurfaceSpec& Q)
{
  auto cls = supportClasses(Q.phi[0]);
  for (auto& m : cls) {
    std::vector<Monomial> rest;
    for (auto& x : cls)
      if (x != m) rest.push_back(x);
    if (!rest.empty() && properModel(withClasses(Q, rest))) return false;
  }
  return true;
}

} // namespace crmodel
