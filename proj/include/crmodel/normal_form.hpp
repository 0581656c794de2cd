#pragma once

#include "surface.hpp"

namespace crmodel {

/// w'_b = G_b(z, w): one holomorphic polynomial per w variable.
using WMap = std::vector<Poly>;

inline WMap identityWMap(const Universe& U)
{
  WMap G;
  for (int b = 0; b < U.K; ++b) G.push_back(Poly::w(U, b));
  return G;
}

inline bool isIdentity(const WMap& G)
{
  for (size_t b = 0; b < G.size(); ++b)
    if (G[b] != Poly::w(G[b].universe(), int(b))) return false;
  return true;
}

namespace detail {

inline std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> A)
{
  size_t K = A.size();
  std::vector<std::vector<Rational>> I(K, std::vector<Rational>(K, Rational(0)));
  for (size_t k = 0; k < K; ++k) I[k][k] = 1;
  for (size_t c = 0; c < K; ++c) {
    size_t p = c;
    while (p < K && sgn(A[p][c]) == 0) ++p;
    if (p == K) throw std::runtime_error("substitution with a singular linear part");
    std::swap(A[p], A[c]);
    std::swap(I[p], I[c]);
    Rational inv = 1 / A[c][c];
    for (size_t k = 0; k < K; ++k) {
      A[c][k] *= inv;
      I[c][k] *= inv;
    }
    for (size_t r = 0; r < K; ++r) {
      if (r == c || sgn(A[r][c]) == 0) continue;
      Rational f = A[r][c];
      for (size_t k = 0; k < K; ++k) {
        A[r][k] -= f * A[c][k];
        I[r][k] -= f * I[c][k];
      }
    }
  }
  return I;
}

inline Monomial uMonomial(const Universe& U, int b)
{
  Monomial m(U.slots());
  m.e[U.u(b)] = 1;
  m.deg = 1;
  return m;
}

/// u -> w in the exponent vector
inline Monomial uToW(const Monomial& m, const Universe& U)
{
  Monomial r(m);
  for (int b = 0; b < U.K; ++b) {
    r.e[U.w(b)] += r.e[U.u(b)];
    r.e[U.u(b)] = 0;
  }
  return r;
}

} // namespace detail

/// New graph equations after the holomorphic change w' = G(z, w); terms above limit dropped.
inline std::vector<Poly> applyWMap(const std::vector<Poly>& R, const WMap& G, const Weights& wt, long limit)
{
  const Universe& U = R[0].universe();
  int K = U.K;
  std::vector<Poly> Up, Vp;
  for (int b = 0; b < K; ++b) {
    if (G[b] == Poly::w(U, b)) {
      Up.push_back(Poly::u(U, b));
      Vp.push_back(truncateWeight(R[b], wt, limit));
      continue;
    }
    Poly W = substituteW(G[b], R, wt, limit);
    Up.push_back(W.rePart());
    Vp.push_back(W.imPart());
  }
  // u' = L u + N(z, conj z, u)
  std::vector<std::vector<Rational>> L(K, std::vector<Rational>(K, Rational(0)));
  std::vector<Poly> N;
  for (int b = 0; b < K; ++b) {
    Poly rest = Up[b];
    for (int g = 0; g < K; ++g) {
      Monomial m = detail::uMonomial(U, g);
      Gaussian c = rest.coeff(m);
      if (c.isZero()) continue;
      L[b][g] = c.re;
      rest.addTerm(m, -c);
    }
    N.push_back(rest);
  }
  auto Li = detail::invert(L);
  auto combine = [&](const std::vector<Poly>& v) {
    std::vector<Poly> out;
    for (int b = 0; b < K; ++b) {
      Poly s(U);
      for (int g = 0; g < K; ++g)
        if (sgn(Li[b][g])) s += v[g] * Gaussian(Li[b][g]);
      out.push_back(s);
    }
    return out;
  };
  std::vector<Poly> uvar;
  for (int b = 0; b < K; ++b) uvar.push_back(Poly::u(U, b));
  std::vector<Poly> sol = combine(uvar);
  bool trivialN = true;
  for (auto& p : N)
    if (!p.isZero()) trivialN = false;
  for (int it = 0; !trivialN; ++it) {
    if (it > 4 * limit + 4 * K + 16) throw std::runtime_error("u-inversion did not stabilize");
    std::vector<std::optional<Poly>> repl(U.slots());
    for (int b = 0; b < K; ++b) repl[U.u(b)] = sol[b];
    Substitution S(U, repl, &wt, limit);
    std::vector<Poly> rhs;
    for (int b = 0; b < K; ++b) rhs.push_back(uvar[b] - S.apply(N[b]));
    std::vector<Poly> next = combine(rhs);
    for (auto& p : next) p = truncateWeight(p, wt, limit);
    if (next == sol) break;
    sol = std::move(next);
  }
  std::vector<std::optional<Poly>> repl(U.slots());
  for (int b = 0; b < K; ++b) repl[U.u(b)] = sol[b];
  Substitution S(U, repl, &wt, limit);
  std::vector<Poly> out;
  for (int b = 0; b < K; ++b) out.push_back(truncateWeight(S.apply(Vp[b]), wt, limit));
  return out;
}

/// G2 after G1: w'' = G2(z, G1(z, w))
inline WMap composeWMaps(const WMap& G2, const WMap& G1, const Weights* wt = nullptr, long limit = 0)
{
  const Universe& U = G1[0].universe();
  std::vector<std::optional<Poly>> repl(U.slots());
  for (int b = 0; b < U.K; ++b) repl[U.w(b)] = G1[b];
  Substitution S(U, repl, wt, limit);
  WMap out;
  for (auto& g : G2) out.push_back(S.apply(g));
  return out;
}

/// Generators Im((u + i Phi)^eps) of weight nu over the lower forms (|eps| >= 2).
struct LowerProducts {
  std::vector<Poly> gens;   // real polynomials
  std::vector<Monomial> eps; // w^eps
};

inline LowerProducts lowerProducts(const Universe& U, const std::vector<Poly>& forms, const std::vector<int>& formWeight,
                                   const std::vector<int>& lower, long nu)
{
  LowerProducts out;
  if (lower.empty()) return out;
  std::vector<int> slots;
  Weights wt(U.slots(), 1);
  for (int b : lower) {
    slots.push_back(U.w(b));
    wt[U.w(b)] = formWeight[b];
  }
  std::vector<Poly> phi;
  for (int b = 0; b < U.K; ++b) phi.push_back(std::find(lower.begin(), lower.end(), b) != lower.end() ? forms[b] : Poly(U));
  enumerateMonomials(U, slots, wt, nu, [&](const Monomial& m) {
    if (m.deg < 2) return;
    Poly g = substituteW(Poly::term(U, m, Gaussian(1)), phi).imPart();
    if (g.isZero()) return;
    out.gens.push_back(g);
    out.eps.push_back(m);
  });
  return out;
}

/// Projection of P onto span(gens) along the complement that vanishes at the canonical pivots
/// (columns in decreasing graded-lex order).  Returns coefficients c with proj = sum c_k gens_k.
inline std::optional<std::vector<Rational>> lowerProjection(const Poly& P, const LowerProducts& L)
{
  if (L.gens.empty() || P.isZero()) return std::nullopt;
  std::set<RealKey> keys;
  for (auto& g : L.gens)
    for (auto& kv : realCoords(g)) keys.insert(kv.first);
  for (auto& kv : realCoords(P)) keys.insert(kv.first);
  RealIndex idx;
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) idx(*it);
  std::vector<SparseRow<Rational>> rows;
  for (auto& g : L.gens) rows.push_back(idx.row(g));
  RRef<Rational> R = rref(rows);
  SparseRow<Rational> p = idx.row(P);
  std::map<int, Rational> proj;
  bool any = false;
  for (size_t k = 0; k < R.rows.size(); ++k) {
    Rational a = entry(p, R.pivots[k]);
    if (sgn(a) == 0) continue;
    any = true;
    for (auto& [c, v] : R.rows[k]) proj[c] += a * v;
  }
  if (!any) return std::nullopt;
  auto c = coordinates(rows, makeRow(proj));
  if (!c) throw std::logic_error("projection outside the generator span");
  return c;
}

struct ReductionResult {
  TypeDescriptor type;
  bool finite = true;
  std::vector<int> weight;        // per working equation, 0 when unassigned
  std::vector<Poly> equations;    // final equations, working order
  std::vector<WMap> steps;        // substitutions in application order, working order
  std::vector<int> order;         // order[new] = working index, assigned first by weight
  SurfaceSpec surface;            // reduced surface in the new order (only when finite)
  int bound = 0;
};

/// Reduction to conditions (I) and (II) with weight assignment; w-substitutions only.
inline ReductionResult reduceEquations(const std::vector<Poly>& eqs, const std::vector<int>& mu, int bound)
{
  if (eqs.empty()) throw std::invalid_argument("no equations");
  const Universe U = eqs[0].universe();
  const int K = U.K;
  ReductionResult res;
  res.bound = bound;
  res.weight.assign(K, 0);
  std::vector<Poly> R = eqs;

  auto weightsAt = [&](int nu) {
    Weights wt(U.slots());
    for (int j = 0; j < U.n; ++j) wt[U.z(j)] = wt[U.zb(j)] = mu[j];
    for (int b = 0; b < K; ++b) wt[U.u(b)] = wt[U.w(b)] = res.weight[b] ? res.weight[b] : nu;
    return wt;
  };
  auto apply = [&](const WMap& G, const Weights& wt) {
    if (isIdentity(G)) return;
    R = applyWMap(R, G, wt, bound);
    res.steps.push_back(G);
  };

  for (int nu = 1; nu <= bound; ++nu) {
    std::vector<int> open;
    for (int b = 0; b < K; ++b)
      if (!res.weight[b]) open.push_back(b);
    if (open.empty()) break;
    Weights wt = weightsAt(nu);
    for (auto& p : R) p = truncateWeight(p, wt, bound);

    // (a) pluriharmonic terms
    WMap G = identityWMap(U);
    for (int b : open) {
      Poly P = gradedPart(R[b], wt, nu);
      Poly H(U);
      for (auto& [m, c] : P.terms()) {
        if (!m.isPluriharmonic(U)) continue;
        bool hz = false, hzb = false;
        for (int j = 0; j < U.n; ++j) {
          hz |= m.e[U.z(j)] > 0;
          hzb |= m.e[U.zb(j)] > 0;
        }
        if (hzb) continue;
        Gaussian coef = hz ? c : c * Gaussian(Rational(1, 2));
        H.addTerm(detail::uToW(m, U), coef);
      }
      if (!H.isZero()) G[b] = G[b] - H * Gaussian(Rational(0), Rational(2));
    }
    apply(G, wt);

    // (b) components along products of lower forms
    std::vector<int> lower;
    std::vector<Poly> forms(K, Poly(U));
    std::vector<int> fw(K, 0);
    for (int b = 0; b < K; ++b)
      if (res.weight[b] && res.weight[b] < nu) {
        lower.push_back(b);
        forms[b] = gradedPart(R[b], wt, res.weight[b]);
        fw[b] = res.weight[b];
      }
    LowerProducts LP = lowerProducts(U, forms, fw, lower, nu);
    G = identityWMap(U);
    for (int b : open) {
      Poly P = gradedPart(R[b], wt, nu);
      auto c = lowerProjection(P, LP);
      if (!c) continue;
      for (size_t k = 0; k < LP.gens.size(); ++k)
        if (sgn((*c)[k])) G[b] -= Poly::term(U, LP.eps[k], Gaussian((*c)[k]));
    }
    apply(G, wt);

    // (c) independence among the weight-nu parts
    RealIndex idx;
    std::vector<SparseRow<Rational>> chosen;
    std::vector<int> chosenIdx;
    G = identityWMap(U);
    for (int b : open) {
      Poly P = gradedPart(R[b], wt, nu);
      if (P.isZero()) continue;
      SparseRow<Rational> row = idx.row(P);
      auto c = chosen.empty() ? std::nullopt : coordinates(chosen, row);
      if (!c) {
        chosen.push_back(row);
        chosenIdx.push_back(b);
        continue;
      }
      for (size_t k = 0; k < chosen.size(); ++k)
        if (sgn((*c)[k])) G[b] -= Poly::w(U, chosenIdx[k]) * Gaussian((*c)[k]);
    }
    apply(G, wt);
    for (int b : chosenIdx) res.weight[b] = nu;
  }

  int unassigned = 0;
  std::vector<int> assigned;
  for (int b = 0; b < K; ++b) {
    if (res.weight[b])
      assigned.push_back(res.weight[b]);
    else
      ++unassigned;
  }
  res.type = TypeDescriptor::fromWeights(assigned, unassigned);
  res.finite = unassigned == 0;
  Weights wt = weightsAt(bound + 1);
  for (auto& p : R) p = truncateWeight(p, wt, bound);
  res.equations = R;

  std::vector<int> order(K);
  for (int b = 0; b < K; ++b) order[b] = b;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    int wa = res.weight[a] ? res.weight[a] : bound + 1;
    int wb = res.weight[b] ? res.weight[b] : bound + 1;
    return wa < wb;
  });
  res.order = order;
  if (res.finite) {
    std::vector<int> where(K);
    for (int k = 0; k < K; ++k) where[order[k]] = k;
    std::vector<Poly> phi, pert;
    std::vector<int> m;
    for (int k = 0; k < K; ++k) {
      int b = order[k];
      Poly model = gradedPart(R[b], wt, res.weight[b]);
      phi.push_back(model.remap(U, where));
      pert.push_back((R[b] - model).remap(U, where));
      m.push_back(res.weight[b]);
    }
    res.surface = SurfaceSpec(U, WeightSystem(mu, m), phi, pert);
    res.surface.reduced = true;
  }
  return res;
}

inline int defaultTypeBound(const std::vector<int>& mu, int K)
{
  return 4 * *std::max_element(mu.begin(), mu.end()) * std::max(K, 1);
}

/// Analytic type of the germ {v = eqs} under the z-weights mu, and its reduced surface.
inline ReductionResult computeAnalyticType(const std::vector<Poly>& eqs, const std::vector<int>& mu, int bound = 0)
{
  if (bound <= 0) bound = defaultTypeBound(mu, eqs.empty() ? 1 : eqs[0].universe().K);
  return reduceEquations(eqs, mu, bound);
}

/// Reduced form of S, keeping terms up to the largest weight present.
inline ReductionResult reduce(const SurfaceSpec& S)
{
  Weights wt = S.weights();
  long top = 0;
  for (auto& p : S.rhs()) top = std::max(top, maxWeight(p, wt).value_or(0));
  return reduceEquations(S.rhs(), S.ws.z, int(std::max<long>(top, S.ws.mTop())));
}

/// Single map (in working order, then permuted to the output order) replaying all steps.
inline WMap composedReduction(const ReductionResult& r, const Weights& wt)
{
  const Universe U = r.equations[0].universe();
  WMap G = identityWMap(U);
  for (auto& s : r.steps) G = composeWMaps(s, G, &wt, r.bound);
  std::vector<int> where(U.K);
  for (int k = 0; k < U.K; ++k) where[r.order[k]] = k;
  WMap out(U.K);
  for (int b = 0; b < U.K; ++b) out[where[b]] = G[b].remap(U, where);
  return out;
}

/// Checks Im G(z, u + iR) = R'(z, conj z, Re G(z, u + iR)) up to the bound.
inline bool replayHolds(const std::vector<Poly>& R, const WMap& G, const std::vector<Poly>& Rnew, const Weights& wt,
                        long limit)
{
  const Universe& U = R[0].universe();
  std::vector<Poly> W;
  for (auto& g : G) W.push_back(substituteW(g, R, wt, limit));
  std::vector<std::optional<Poly>> repl(U.slots());
  for (int b = 0; b < U.K; ++b) repl[U.u(b)] = W[b].rePart();
  Substitution S(U, repl, &wt, limit);
  for (int b = 0; b < U.K; ++b) {
    Poly lhs = truncateWeight(W[b].imPart(), wt, limit);
    Poly rhs = truncateWeight(S.apply(Rnew[b]), wt, limit);
    if (lhs != rhs) return false;
  }
  return true;
}

struct ConditionReport {
  struct Witness {
    int form;
    std::string what;
  };
  std::vector<Witness> violationsI;
  std::vector<Witness> violationsII;
  std::vector<int> dependentForms;
  bool clean() const { return violationsI.empty() && violationsII.empty() && dependentForms.empty(); }
};

inline ConditionReport checkConditions(const SurfaceSpec& S)
{
  ConditionReport rep;
  const Universe& U = S.U;
  for (int b = 0; b < U.K; ++b)
    for (auto& [m, c] : S.phi[b].terms())
      if (m.isPluriharmonic(U)) rep.violationsI.push_back({b, toString(Poly::term(U, m, Gaussian(1)))});
  for (int b = 0; b < U.K; ++b) {
    std::vector<int> lower;
    for (int g = 0; g < U.K; ++g)
      if (S.ws.w[g] < S.ws.w[b]) lower.push_back(g);
    LowerProducts LP = lowerProducts(U, S.phi, S.ws.w, lower, S.ws.w[b]);
    auto c = lowerProjection(S.phi[b], LP);
    if (!c) continue;
    for (size_t k = 0; k < LP.gens.size(); ++k)
      if (sgn((*c)[k]))
        rep.violationsII.push_back(
            {b, (*c)[k].get_str() + "*Im(" + toString(Poly::term(U, LP.eps[k], Gaussian(1))) + ")"});
  }
  for (auto& [m, k] : S.ws.wGroups()) {
    RealIndex idx;
    Span<Rational> span;
    for (int b = 0; b < U.K; ++b)
      if (S.ws.w[b] == m && !span.insert(idx.row(S.phi[b]))) rep.dependentForms.push_back(b);
  }
  return rep;
}

/// Representatives of the weight-nu reduced space relative to the given lower forms.
inline std::vector<Poly> reducedSpaceBasis(long nu, const std::vector<int>& mu, const std::vector<Poly>& lowerForms,
                                           const std::vector<int>& lowerWeights)
{
  int n = int(mu.size());
  Universe U{n, int(lowerForms.size())};
  Weights wt(U.slots());
  for (int j = 0; j < n; ++j) wt[U.z(j)] = wt[U.zb(j)] = mu[j];
  for (int b = 0; b < U.K; ++b) wt[U.u(b)] = wt[U.w(b)] = lowerWeights[b];
  std::vector<int> slots;
  for (int j = 0; j < n; ++j) slots.push_back(U.z(j));
  for (int j = 0; j < n; ++j) slots.push_back(U.zb(j));
  for (int b = 0; b < U.K; ++b) slots.push_back(U.u(b));
  std::set<RealKey> keys;
  enumerateMonomials(U, slots, wt, nu, [&](const Monomial& m) {
    if (m.isPluriharmonic(U)) return;
    Monomial mc = m.conj(U);
    if (m.selfConjugate(U)) {
      keys.insert({m, 0});
    }
    else if (mc < m) {
      keys.insert({m, 0});
      keys.insert({m, 1});
    }
  });
  RealIndex idx;
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) idx(*it);
  std::vector<int> lower;
  for (int b = 0; b < U.K; ++b)
    if (lowerWeights[b] < nu) lower.push_back(b);
  std::vector<Poly> forms;
  for (auto& f : lowerForms) forms.push_back(f.extend(U));
  LowerProducts LP = lowerProducts(U, forms, lowerWeights, lower, nu);
  std::vector<SparseRow<Rational>> rows;
  for (auto& g : LP.gens) rows.push_back(idx.row(g));
  RRef<Rational> R = rref(rows);
  std::vector<Poly> basis;
  for (int c = 0; c < int(keys.size()); ++c)
    if (!R.isPivot(c)) basis.push_back(realUnit(idx.key(c), U));
  return basis;
}

/// Model surface whose forms are bases of the successive nonzero reduced spaces;
/// the last level keeps only its first k elements.
inline SurfaceSpec buildFullyNondegenerate(const std::vector<int>& mu, int q, int k = -1, int maxWeight = 64)
{
  if (q < 1) throw std::invalid_argument("q must be positive");
  int n = int(mu.size());
  std::vector<Poly> forms;
  std::vector<int> weights;
  int levels = 0;
  for (int s = 2 * *std::min_element(mu.begin(), mu.end()); levels < q; ++s) {
    if (s > maxWeight) throw std::runtime_error("no further nonzero reduced space below the weight cap");
    auto basis = reducedSpaceBasis(s, mu, forms, weights);
    if (basis.empty()) continue;
    ++levels;
    if (levels == q && k >= 0) {
      if (k < 1 || k > int(basis.size())) throw std::out_of_range("multiplicity outside 1..dim");
      basis.resize(k);
    }
    Universe U{n, int(forms.size() + basis.size())};
    for (auto& f : forms) f = f.extend(U);
    for (auto& f : basis) forms.push_back(f.extend(U));
    weights.resize(forms.size(), s);
  }
  Universe U{n, int(forms.size())};
  SurfaceSpec S(U, WeightSystem(mu, weights), forms);
  S.reduced = true;
  return S;
}

} // namespace crmodel
