#pragma once

#include <crmodel/corpus.hpp>

#include <random>

namespace crmodel::testing {

/// Seeded random polynomial with small rational Gaussian coefficients.
inline Poly randomPoly(const Universe& U, std::mt19937& rng, int terms = 4, int maxExp = 2, bool withW = true)
{
  std::uniform_int_distribution<int> ex(0, maxExp), num(-4, 4), den(1, 3);
  Poly p(U);
  for (int t = 0; t < terms; ++t) {
    Monomial m(U.slots());
    for (int s = 0; s < U.slots(); ++s)
      if (withW || s < U.w(0)) m.e[s] = ex(rng) * (ex(rng) == 0);
    m.recount();
    Rational re(num(rng), den(rng)), im(num(rng), den(rng));
    re.canonicalize();
    im.canonicalize();
    p.addTerm(m, Gaussian(re, im));
  }
  return p;
}

/// Random polynomial in z and w only.
inline Poly randomHolomorphic(const Universe& U, std::mt19937& rng, int terms = 4, int maxExp = 2)
{
  return randomPoly(U, rng, terms, maxExp).filter([&](const Monomial& m) { return m.isHolomorphic(U); });
}

inline Poly randomReal(const Universe& U, std::mt19937& rng, int terms = 3, int maxExp = 2)
{
  Poly p = randomPoly(U, rng, terms, maxExp, false);
  return p + p.conjugate();
}

inline Gaussian gauss(long a, long b = 0, long d = 1)
{
  Rational re(a, d), im(b, d);
  re.canonicalize();
  im.canonicalize();
  return Gaussian(re, im);
}

inline Rational rat(long a, long d = 1)
{
  Rational r(a, d);
  r.canonicalize();
  return r;
}

inline SurfaceSpec dqSurface()
{
  Universe U{3, 1};
  return SurfaceSpec(U, WeightSystem({2, 1, 1}, {3}), {parsePoly("2*Re(z1*conj(z3) + z2*conj(z3)^2)", U)});
}

/// Forms of Q with weight below m, over the universe of those forms only.
inline std::pair<std::vector<Poly>, std::vector<int>> lowerForms(const SurfaceSpec& Q, int m)
{
  std::vector<Poly> forms;
  std::vector<int> weights;
  int L = 0;
  while (L < Q.K() && Q.ws.w[L] < m) ++L;
  Universe T{Q.n(), L};
  std::vector<int> map(Q.K());
  for (int b = 0; b < Q.K(); ++b) map[b] = b < L ? b : 0;
  for (int b = 0; b < L; ++b) {
    forms.push_back(Q.phi[b].remap(T, map));
    weights.push_back(Q.ws.w[b]);
  }
  return {forms, weights};
}

struct CorpusModel {
  CorpusEntry entry;
  SurfaceSpec model;
  GradedAlgebra aut;
};

/// Corpus entries with their reduced models and aut algebras, computed once.
inline const std::vector<CorpusModel>& corpusModels()
{
  static const std::vector<CorpusModel> cache = [] {
    std::vector<CorpusModel> out;
    for (auto& e : builtinCorpus()) {
      auto Q = e.model();
      AutOptions o;
      if (e.autBound) o.bound = e.autBound;
      out.push_back({e, Q, computeAutAlgebra(Q, o)});
    }
    return out;
  }();
  return cache;
}

} // namespace crmodel::testing
