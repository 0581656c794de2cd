#pragma once

#include "cr_geometry.hpp"

namespace crmodel {

/// Raised when a computation is mathematically refused (e.g. an automatic bound on a degenerate surface).
struct Refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// X = 2Re(f d/dz + g d/dw) with f, g holomorphic in (z, w).
struct HoloField {
  std::vector<Poly> f;
  std::vector<Poly> g;

  HoloField() = default;
  explicit HoloField(const Universe& U) : f(U.n, Poly(U)), g(U.K, Poly(U)) {}

  const Universe& universe() const { return f.empty() ? g[0].universe() : f[0].universe(); }
  bool isZero() const
  {
    for (auto& p : f)
      if (!p.isZero()) return false;
    for (auto& p : g)
      if (!p.isZero()) return false;
    return true;
  }
  /// entry k: f_k for k < n, g_{k-n} otherwise
  const Poly& at(int k) const { return k < int(f.size()) ? f[k] : g[k - f.size()]; }
  Poly& at(int k) { return k < int(f.size()) ? f[k] : g[k - f.size()]; }
  int size() const { return int(f.size() + g.size()); }

  HoloField& operator+=(const HoloField& o)
  {
    for (int k = 0; k < size(); ++k) at(k) += o.at(k);
    return *this;
  }
  HoloField& operator*=(const Gaussian& c)
  {
    for (int k = 0; k < size(); ++k) at(k) *= c;
    return *this;
  }
  friend HoloField operator+(HoloField a, const HoloField& b) { return a += b; }
  friend HoloField operator-(HoloField a, const HoloField& b)
  {
    HoloField m = b;
    m *= Gaussian(-1);
    return a += m;
  }
  friend HoloField operator*(HoloField a, const Gaussian& c) { return a *= c; }
  friend bool operator==(const HoloField& a, const HoloField& b) { return a.f == b.f && a.g == b.g; }

  std::string str() const
  {
    std::string s = "(";
    for (int k = 0; k < size(); ++k) s += (k ? "; " : "") + toString(at(k));
    return s + ")";
  }
};

/// Component index nu of a field made of a single monomial in slot k, or nullopt when mixed.
inline std::optional<int> fieldWeight(const HoloField& X, const WeightSystem& ws)
{
  const Universe& U = X.universe();
  Weights wt = ws.slots(U);
  std::optional<int> nu;
  for (int k = 0; k < X.size(); ++k) {
    int base = k < U.n ? ws.z[k] : ws.w[k - U.n];
    for (auto& kv : X.at(k).terms()) {
      int v = int(weightOf(kv.first, wt)) - base;
      if (nu && *nu != v) return std::nullopt;
      nu = v;
    }
  }
  return nu;
}

inline Poly applyHolo(const HoloField& X, const Poly& h)
{
  const Universe& U = h.universe();
  Poly r(U);
  for (int j = 0; j < U.n; ++j)
    if (!X.f[j].isZero()) r += X.f[j] * h.derive({VarKind::Z, j});
  for (int b = 0; b < U.K; ++b)
    if (!X.g[b].isZero()) r += X.g[b] * h.derive({VarKind::W, b});
  return r;
}

inline HoloField bracket(const HoloField& X, const HoloField& Y)
{
  HoloField Z(X.universe());
  for (int k = 0; k < X.size(); ++k) Z.at(k) = applyHolo(X, Y.at(k)) - applyHolo(Y, X.at(k));
  return Z;
}

/// -Im g + 2Re(d_z R . f) + d_u R . Re g at w = u + iR, per coordinate; optional weight truncation.
inline std::vector<Poly> tangencyOperator(const HoloField& X, const std::vector<Poly>& R, const Weights* wt = nullptr,
                                          long limit = 0)
{
  const Universe& U = R[0].universe();
  for (int k = 0; k < X.size(); ++k)
    if (!X.at(k).isHolomorphic()) throw std::invalid_argument("field is not holomorphic");
  std::vector<Poly> out(U.K, Poly(U));
  auto mul = [&](const Poly& a, const Poly& b) { return Poly::multiply(a, b, wt, limit); };
  for (int b = 0; b < U.K; ++b) {
    if (X.g[b].isZero()) continue;
    Poly G = substituteW(X.g[b], R, wt, limit);
    out[b] -= G.imPart();
    Poly reG = G.rePart();
    for (int c = 0; c < U.K; ++c) {
      Poly d = R[c].derive({VarKind::U, b});
      if (!d.isZero()) out[c] += mul(d, reG);
    }
  }
  for (int j = 0; j < U.n; ++j) {
    if (X.f[j].isZero()) continue;
    Poly F = substituteW(X.f[j], R, wt, limit);
    for (int c = 0; c < U.K; ++c) {
      Poly d = R[c].derive({VarKind::Z, j});
      if (!d.isZero()) out[c] += mul(d, F).rePart() * Gaussian(2);
    }
  }
  if (wt)
    for (auto& p : out) p = truncateWeight(p, *wt, limit);
  return out;
}

inline std::vector<Poly> tangencyOperator(const HoloField& X, const SurfaceSpec& Q)
{
  return tangencyOperator(X, Q.rhs());
}

inline bool isInfinitesimalAutomorphism(const HoloField& X, const SurfaceSpec& Q)
{
  for (auto& p : tangencyOperator(X, Q))
    if (!p.isZero()) return false;
  return true;
}

/// Sum mu_j z_j d/dz_j + sum m_b w_b d/dw_b
inline HoloField graduatingField(const SurfaceSpec& Q)
{
  HoloField X(Q.U);
  for (int j = 0; j < Q.n(); ++j) X.f[j] = Poly::z(Q.U, j) * Gaussian(Q.ws.z[j]);
  for (int b = 0; b < Q.K(); ++b) X.g[b] = Poly::w(Q.U, b) * Gaussian(Q.ws.w[b]);
  return X;
}

namespace detail {

struct Unknown {
  int slot; // entry of HoloField
  Monomial m;
  bool imag;
};

/// Holomorphic monomials for entry k of a component-nu field.
inline std::vector<Monomial> candidateMonomials(const Universe& U, const WeightSystem& ws, int k, int nu)
{
  int base = k < U.n ? ws.z[k] : ws.w[k - U.n];
  std::vector<Monomial> out;
  if (base + nu < 0) return out;
  Weights wt = ws.slots(U);
  std::vector<int> slots;
  for (int j = 0; j < U.n; ++j) slots.push_back(U.z(j));
  for (int b = 0; b < U.K; ++b) slots.push_back(U.w(b));
  enumerateMonomials(U, slots, wt, base + nu, [&](const Monomial& m) { out.push_back(m); });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Unknown> candidateUnknowns(const Universe& U, const WeightSystem& ws, int nu)
{
  std::vector<Unknown> out;
  for (int k = 0; k < U.n + U.K; ++k)
    for (auto& m : candidateMonomials(U, ws, k, nu)) {
      out.push_back({k, m, false});
      out.push_back({k, m, true});
    }
  return out;
}

inline HoloField unitField(const Universe& U, const Unknown& x)
{
  HoloField X(U);
  X.at(x.slot) = Poly::term(U, x.m, x.imag ? Gaussian::I() : Gaussian(1));
  return X;
}

/// Kernel of the tangency operator over the given unknowns.
/// limits[b] truncates output coordinate b (nullopt: no truncation).
inline std::vector<HoloField> tangencyKernel(const std::vector<Poly>& R, const std::vector<Unknown>& unk,
                                             const Weights* wt, const std::vector<long>& limits)
{
  const Universe& U = R[0].universe();
  long maxLimit = limits.empty() ? 0 : *std::max_element(limits.begin(), limits.end());
  std::vector<RealIndex> idx(U.K);
  std::vector<std::map<int, Rational>> cols(unk.size());
  std::vector<std::pair<int, int>> eqOf; // (coordinate, real column) -> equation id
  std::map<std::pair<int, int>, int> eqId;
  for (size_t x = 0; x < unk.size(); ++x) {
    auto img = tangencyOperator(unitField(U, unk[x]), R, wt, maxLimit);
    for (int b = 0; b < U.K; ++b) {
      Poly p = wt ? truncateWeight(img[b], *wt, limits[b]) : img[b];
      for (auto& [key, v] : realCoords(p)) {
        int c = idx[b](key);
        auto it = eqId.emplace(std::make_pair(b, c), int(eqId.size())).first;
        cols[x][it->second] += v;
      }
    }
  }
  std::vector<std::map<int, Rational>> rowsMap(eqId.size());
  for (size_t x = 0; x < unk.size(); ++x)
    for (auto& [e, v] : cols[x]) rowsMap[e][int(x)] += v;
  std::vector<SparseRow<Rational>> rows;
  for (auto& m : rowsMap) rows.push_back(makeRow(m));
  std::vector<HoloField> out;
  for (auto& vec : kernel(rows, int(unk.size()))) {
    HoloField X(U);
    for (size_t x = 0; x < unk.size(); ++x)
      if (sgn(vec[x])) X.at(unk[x].slot).addTerm(unk[x].m, unk[x].imag ? Gaussian(Rational(0), vec[x]) : Gaussian(vec[x]));
    out.push_back(X);
  }
  return out;
}

} // namespace detail

/// Basis of the weight-nu component of the automorphism algebra of a model surface.
inline std::vector<HoloField> solveComponent(const SurfaceSpec& Q, int nu)
{
  auto unk = detail::candidateUnknowns(Q.U, Q.ws, nu);
  if (unk.empty()) return {};
  return detail::tangencyKernel(Q.phi, unk, nullptr, {});
}

struct GradedAlgebra {
  std::map<int, std::vector<HoloField>> components;
  int lo = 0, hi = 0;
  std::string stopRule;
  bool complete = false; // true only when the stop rule fired

  int dim(int nu) const
  {
    auto it = components.find(nu);
    return it == components.end() ? 0 : int(it->second.size());
  }
  int total() const
  {
    int s = 0;
    for (auto& kv : components) s += int(kv.second.size());
    return s;
  }
  std::vector<int> dims(int from, int to) const
  {
    std::vector<int> v;
    for (int nu = from; nu <= to; ++nu) v.push_back(dim(nu));
    return v;
  }
};

struct AutOptions {
  std::optional<int> bound; // nullopt: automatic stop rule
  int stopWindow = 0;       // 0: m_q
  int autoCap = 0;          // 0: 8 m_q + 8
};

inline GradedAlgebra computeAutAlgebra(const SurfaceSpec& Q, const AutOptions& opt = {})
{
  if (!Q.isModel()) throw std::invalid_argument("model surface expected");
  int mq = Q.ws.mTop();
  GradedAlgebra A;
  A.lo = -mq;
  for (int nu = -mq; nu <= 0; ++nu) A.components[nu] = solveComponent(Q, nu);
  if (opt.bound) {
    for (int nu = 1; nu <= *opt.bound; ++nu) A.components[nu] = solveComponent(Q, nu);
    A.hi = std::max(0, *opt.bound);
    A.stopRule = "explicit bound " + std::to_string(*opt.bound);
    return A;
  }
  auto nd = finiteNondegeneracyTest(Q);
  if (!nd.nondegenerate)
    throw Refusal("automatic bound refused: surface not shown holomorphically nondegenerate; give an explicit bound");
  int W = opt.stopWindow > 0 ? opt.stopWindow : mq;
  int cap = opt.autoCap > 0 ? opt.autoCap : 8 * mq + 8;
  int zeros = 0, nu = 1;
  for (; nu <= cap && zeros < W; ++nu) {
    A.components[nu] = solveComponent(Q, nu);
    zeros = A.components[nu].empty() ? zeros + 1 : 0;
  }
  A.hi = nu - 1;
  A.complete = zeros >= W;
  A.stopRule = A.complete ? "stopped after " + std::to_string(W) + " consecutive zero components (window " +
                                std::to_string(W) + ")"
                          : "cap " + std::to_string(cap) + " reached before " + std::to_string(W) + " zero components";
  return A;
}

namespace detail {

/// Real linear coordinates of holomorphic fields.
class HoloIndex {
public:
  SparseRow<Rational> row(const HoloField& X)
  {
    std::map<int, Rational> m;
    for (int k = 0; k < X.size(); ++k)
      for (auto& [mono, c] : X.at(k).terms()) {
        if (sgn(c.re)) m[col(k, mono, 0)] += c.re;
        if (sgn(c.im)) m[col(k, mono, 1)] += c.im;
      }
    return makeRow(m);
  }

private:
  int col(int k, const Monomial& m, int part)
  {
    auto key = std::make_tuple(k, m, part);
    auto it = idx_.find(key);
    if (it == idx_.end()) it = idx_.emplace(key, int(idx_.size())).first;
    return it->second;
  }
  std::map<std::tuple<int, Monomial, int>, int> idx_;
};

/// values (Re, Im) of f and g at the origin
inline SparseRow<Rational> valueAtOrigin(const HoloField& X)
{
  const Universe& U = X.universe();
  Monomial one(U.slots());
  std::map<int, Rational> m;
  for (int k = 0; k < X.size(); ++k) {
    Gaussian c = X.at(k).coeff(one);
    m[2 * k] = c.re;
    m[2 * k + 1] = c.im;
  }
  return makeRow(m);
}

} // namespace detail

inline bool sameSpan(const std::vector<HoloField>& a, const std::vector<HoloField>& b)
{
  detail::HoloIndex idx;
  Span<Rational> sa, sb, all;
  for (auto& X : a) {
    auto r = idx.row(X);
    sa.insert(r);
    all.insert(r);
  }
  for (auto& X : b) {
    auto r = idx.row(X);
    sb.insert(r);
    all.insert(r);
  }
  return sa.dim() == sb.dim() && sa.dim() == all.dim();
}

inline bool inSpan(const HoloField& X, const std::vector<HoloField>& basis)
{
  detail::HoloIndex idx;
  Span<Rational> s;
  for (auto& B : basis) s.insert(idx.row(B));
  return s.contains(idx.row(X));
}

struct Splits {
  std::map<int, std::vector<HoloField>> gs, st; // negative weights
  std::vector<HoloField> g0, gplus;

  static int count(const std::map<int, std::vector<HoloField>>& m)
  {
    int s = 0;
    for (auto& kv : m) s += int(kv.second.size());
    return s;
  }
  int dimGs() const { return count(gs); }
  int dimSt() const { return count(st); }
};

/// st_ = fields of negative weight vanishing at the origin; gs = a complement spanned by basis fields.
inline Splits decompose(const GradedAlgebra& A)
{
  Splits S;
  for (auto& [nu, basis] : A.components) {
    if (nu == 0) {
      S.g0 = basis;
      continue;
    }
    if (nu > 0) {
      S.gplus.insert(S.gplus.end(), basis.begin(), basis.end());
      continue;
    }
    if (basis.empty()) continue;
    Span<Rational> val;
    std::vector<SparseRow<Rational>> rows;
    for (auto& X : basis) {
      auto v = detail::valueAtOrigin(X);
      rows.push_back(v);
      if (val.insert(v)) S.gs[nu].push_back(X);
    }
    // kernel of the evaluation map: coefficient vectors c with sum c_k value(X_k) = 0
    std::map<int, std::map<int, Rational>> eq;
    for (size_t k = 0; k < rows.size(); ++k)
      for (auto& [c, v] : rows[k]) eq[c][int(k)] = v;
    std::vector<SparseRow<Rational>> sys;
    for (auto& [c, m] : eq) sys.push_back(makeRow(m));
    for (auto& c : kernel(sys, int(basis.size()))) {
      HoloField X(basis[0].universe());
      for (size_t k = 0; k < basis.size(); ++k)
        if (sgn(c[k])) X += basis[k] * Gaussian(c[k]);
      S.st[nu].push_back(X);
    }
  }
  return S;
}

/// Finite-dimensional graded Lie algebra given by structure constants over Q.
struct GradedLieAlgebra {
  std::vector<int> weight;                                  // per basis element
  std::map<std::pair<int, int>, SparseRow<Rational>> table; // [e_i, e_j], i < j; missing = 0

  int dim() const { return int(weight.size()); }

  SparseRow<Rational> bracketBasis(int i, int j) const
  {
    if (i == j) return {};
    bool swap = i > j;
    auto it = table.find(swap ? std::make_pair(j, i) : std::make_pair(i, j));
    if (it == table.end()) return {};
    SparseRow<Rational> r = it->second;
    if (swap)
      for (auto& e : r) e.second = -e.second;
    return r;
  }
  SparseRow<Rational> bracket(const SparseRow<Rational>& x, const SparseRow<Rational>& y) const
  {
    SparseRow<Rational> r;
    for (auto& [i, a] : x)
      for (auto& [j, b] : y) {
        auto e = bracketBasis(i, j);
        if (!e.empty()) axpy(r, Rational(a * b), e);
      }
    return r;
  }
  SparseRow<Rational> unit(int i) const { return {{i, Rational(1)}}; }
};

/// Structure constants of the span of the given components (must be closed under brackets).
inline GradedLieAlgebra structureOf(const std::map<int, std::vector<HoloField>>& comps)
{
  GradedLieAlgebra L;
  std::vector<HoloField> basis;
  for (auto& [nu, b] : comps)
    for (auto& X : b) {
      basis.push_back(X);
      L.weight.push_back(nu);
    }
  detail::HoloIndex idx;
  std::vector<SparseRow<Rational>> rows;
  for (auto& X : basis) rows.push_back(idx.row(X));
  for (int i = 0; i < L.dim(); ++i)
    for (int j = i + 1; j < L.dim(); ++j) {
      HoloField Z = bracket(basis[i], basis[j]);
      if (Z.isZero()) continue;
      auto c = coordinates(rows, idx.row(Z));
      if (!c) throw std::logic_error("components not closed under the bracket");
      std::map<int, Rational> m;
      for (int k = 0; k < L.dim(); ++k)
        if (sgn((*c)[k])) m[k] = (*c)[k];
      L.table[{i, j}] = makeRow(m);
    }
  return L;
}

struct FundamentalReport {
  bool fundamental = false;
  bool nondegenerate = false;
  int generated = 0;
  int total = 0;
};

/// fundamental: the components of weights -mu generate; nondegenerate: no nonzero element of those
/// components commutes with all of them.
inline FundamentalReport checkFundamental(const GradedLieAlgebra& L, const std::vector<int>& mu)
{
  std::set<int> genW;
  for (int m : mu) genW.insert(-m);
  std::vector<int> gens;
  for (int i = 0; i < L.dim(); ++i)
    if (genW.count(L.weight[i])) gens.push_back(i);
  FundamentalReport rep;
  rep.total = L.dim();
  Span<Rational> span;
  std::vector<SparseRow<Rational>> frontier;
  for (int g : gens)
    if (span.insert(L.unit(g))) frontier.push_back(L.unit(g));
  while (!frontier.empty()) {
    std::vector<SparseRow<Rational>> next;
    for (auto& x : frontier)
      for (int g : gens) {
        auto y = L.bracket(L.unit(g), x);
        if (!y.empty() && span.insert(y)) next.push_back(y);
      }
    frontier = std::move(next);
  }
  rep.generated = span.dim();
  rep.fundamental = rep.generated == L.dim();
  // Y = sum y_k e_{gens[k]} with [Y, e_g] = 0 for all generators g
  std::map<std::pair<int, int>, std::map<int, Rational>> eq; // (g, coordinate) -> unknown k
  for (size_t k = 0; k < gens.size(); ++k)
    for (int g : gens)
      for (auto& [c, v] : L.bracketBasis(gens[k], g)) eq[{g, c}][int(k)] += v;
  std::vector<SparseRow<Rational>> sys;
  for (auto& kv : eq) sys.push_back(makeRow(kv.second));
  rep.nondegenerate = gens.empty() ? true : kernel(sys, int(gens.size())).empty();
  return rep;
}

struct PerturbedBound {
  int bound = 0;
  int total = 0;
  std::map<int, int> filtration; // nu -> dim of solutions with all components >= nu
};

/// Kernel of the truncated tangency identity for a perturbed germ over fields with components in [-m_q, bound].
inline PerturbedBound autUpperBoundPerturbed(const SurfaceSpec& M, int bound)
{
  int mq = M.ws.mTop();
  Weights wt = M.weights();
  std::vector<Poly> R = M.rhs();
  std::vector<long> limits;
  for (int b = 0; b < M.K(); ++b) limits.push_back(M.ws.w[b] + bound);
  PerturbedBound res;
  res.bound = bound;
  for (int from = bound; from >= -mq; --from) {
    std::vector<detail::Unknown> unk;
    for (int nu = from; nu <= bound; ++nu) {
      auto u = detail::candidateUnknowns(M.U, M.ws, nu);
      unk.insert(unk.end(), u.begin(), u.end());
    }
    int d = unk.empty() ? 0 : int(detail::tangencyKernel(R, unk, &wt, limits).size());
    res.filtration[from] = d;
  }
  res.total = res.filtration[-mq];
  return res;
}

} // namespace crmodel
