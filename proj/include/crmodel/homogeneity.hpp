#pragma once

#include "aut_solver.hpp"

namespace crmodel {

/// z -> a + Z(z, w), w -> w(xi) + W(z, w); maps the origin to the point and the surface into itself.
struct ShiftMap {
  SurfacePoint point;
  std::vector<Poly> z;
  std::vector<Poly> w;

  std::string str() const
  {
    std::string s;
    for (size_t j = 0; j < z.size(); ++j) s += "z" + std::to_string(j + 1) + " -> " + toString(z[j]) + "\n";
    for (size_t b = 0; b < w.size(); ++b) s += "w" + std::to_string(b + 1) + " -> " + toString(w[b]) + "\n";
    return s;
  }
};

struct ShiftResult {
  std::optional<ShiftMap> shift;
  TypeDescriptor typeAt;
  int failedDeficit = 0; // first deficit with no solution, 0 on success
};

/// The point (z, w) of Q as (a, Re w); throws when it does not lie on Q.
inline SurfacePoint pointOnSurface(const SurfaceSpec& Q, const std::vector<Gaussian>& z, const std::vector<Gaussian>& w)
{
  if (int(z.size()) != Q.n() || int(w.size()) != Q.K()) throw DimensionError("point has wrong dimension");
  SurfacePoint p;
  p.z = z;
  for (auto& x : w) p.u.push_back(x.re);
  auto R = Q.rhs();
  for (int b = 0; b < Q.K(); ++b)
    if (evaluate(R[b], p) != Gaussian(w[b].im)) throw std::invalid_argument("point is not on the surface");
  return p;
}

namespace detail {

/// Equations of the preimage under z -> z + f, w -> w + g of {v = R}.
inline std::vector<Poly> pullBack(const std::vector<Poly>& R, const HoloField& X)
{
  const Universe& U = R[0].universe();
  std::vector<Poly> V = R;
  for (int it = 0; it < 4 * U.K + 8; ++it) {
    std::vector<std::optional<Poly>> repl(U.slots());
    std::vector<Poly> G;
    for (int j = 0; j < U.n; ++j) {
      Poly F = substituteW(X.f[j], V);
      repl[U.z(j)] = Poly::z(U, j) + F;
      repl[U.zb(j)] = Poly::zb(U, j) + F.conjugate();
    }
    for (int b = 0; b < U.K; ++b) {
      G.push_back(substituteW(X.g[b], V));
      repl[U.u(b)] = Poly::u(U, b) + G.back().rePart();
    }
    Substitution S(U, repl);
    std::vector<Poly> next;
    for (int b = 0; b < U.K; ++b) next.push_back(S.apply(R[b]) - G[b].imPart());
    if (next == V) return V;
    V = std::move(next);
  }
  throw std::runtime_error("implicit equation for the new graph did not stabilize");
}

struct TangencySystem {
  std::vector<Unknown> unk;
  std::vector<SparseRow<Rational>> columns; // image of each unknown in real coordinates
  std::vector<RealIndex> idx;
  std::map<std::pair<int, int>, int> eqId;

  TangencySystem(const std::vector<Poly>& phi, std::vector<Unknown> u) : unk(std::move(u)), idx(phi[0].universe().K)
  {
    const Universe& U = phi[0].universe();
    for (auto& x : unk) {
      auto img = tangencyOperator(unitField(U, x), phi);
      columns.push_back(encode(img));
    }
  }
  SparseRow<Rational> encode(const std::vector<Poly>& v)
  {
    std::map<int, Rational> m;
    for (size_t b = 0; b < v.size(); ++b)
      for (auto& [key, val] : realCoords(v[b])) {
        int c = idx[b](key);
        auto it = eqId.emplace(std::make_pair(int(b), c), int(eqId.size())).first;
        m[it->second] += val;
      }
    return makeRow(m);
  }
  /// X with L(X) = target, free unknowns zero
  std::optional<HoloField> solve(const SparseRow<Rational>& target, const Universe& U) const
  {
    std::map<int, std::map<int, Rational>> rowsMap;
    for (size_t x = 0; x < columns.size(); ++x)
      for (auto& [e, v] : columns[x]) rowsMap[e][int(x)] = v;
    for (auto& [e, v] : target) rowsMap[e];
    std::vector<SparseRow<Rational>> rows;
    std::vector<Rational> rhs;
    for (auto& [e, m] : rowsMap) {
      rows.push_back(makeRow(m));
      rhs.push_back(entry(target, e));
    }
    auto sol = crmodel::solve(rows, rhs, int(columns.size()));
    if (!sol) return std::nullopt;
    HoloField X(U);
    for (size_t x = 0; x < unk.size(); ++x)
      if (sgn((*sol)[x]))
        X.at(unk[x].slot).addTerm(unk[x].m, unk[x].imag ? Gaussian(Rational(0), (*sol)[x]) : Gaussian((*sol)[x]));
    return X;
  }
};

inline std::vector<Unknown> shiftUnknowns(const SurfaceSpec& Q, int k)
{
  std::vector<Unknown> out;
  for (auto& x : candidateUnknowns(Q.U, Q.ws, -k))
    if (!x.m.isConstant()) out.push_back(x);
  return out;
}

/// T o (z + f, w + g)
inline void composeStep(std::vector<Poly>& Tz, std::vector<Poly>& Tw, const HoloField& X)
{
  const Universe& U = X.universe();
  std::vector<std::optional<Poly>> repl(U.slots());
  for (int j = 0; j < U.n; ++j) repl[U.z(j)] = Poly::z(U, j) + X.f[j];
  for (int b = 0; b < U.K; ++b) repl[U.w(b)] = Poly::w(U, b) + X.g[b];
  Substitution S(U, repl);
  for (auto& p : Tz) p = S.apply(p);
  for (auto& p : Tw) p = S.apply(p);
}

} // namespace detail

/// Substituting the shift into Q reproduces Q identically.
inline bool shiftReplayHolds(const SurfaceSpec& Q, const ShiftMap& S)
{
  const Universe& U = Q.U;
  std::vector<Poly> W;
  std::vector<std::optional<Poly>> repl(U.slots());
  for (int j = 0; j < U.n; ++j) {
    Poly Z = substituteW(S.z[j], Q.phi);
    repl[U.z(j)] = Z;
    repl[U.zb(j)] = Z.conjugate();
  }
  for (int b = 0; b < U.K; ++b) {
    W.push_back(substituteW(S.w[b], Q.phi));
    repl[U.u(b)] = W.back().rePart();
  }
  Substitution sub(U, repl);
  for (int b = 0; b < U.K; ++b)
    if (W[b].imPart() != sub.apply(Q.phi[b])) return false;
  return true;
}

/// Triangular shift of a model surface onto the point, or the type at the point when none exists.
inline ShiftResult buildShift(const SurfaceSpec& Q, const SurfacePoint& xi)
{
  if (!Q.isModel()) throw std::invalid_argument("model surface expected");
  const Universe& U = Q.U;
  ShiftResult res;
  std::vector<Poly> R = recenter(Q.phi, xi);
  Weights wt = Q.weights();
  std::vector<Poly> Tz, Tw;
  for (int j = 0; j < U.n; ++j) Tz.push_back(Poly::z(U, j));
  for (int b = 0; b < U.K; ++b) Tw.push_back(Poly::w(U, b));
  int mq = Q.ws.mTop();
  for (int k = 1; k <= mq; ++k) {
    std::vector<Poly> D;
    bool any = false;
    for (int b = 0; b < U.K; ++b) {
      D.push_back(gradedPart(R[b], wt, Q.ws.w[b] - k) * Gaussian(-1));
      any |= !D.back().isZero();
    }
    if (!any) continue;
    detail::TangencySystem sys(Q.phi, detail::shiftUnknowns(Q, k));
    auto target = sys.encode(D);
    auto X = sys.solve(target, U);
    if (!X) {
      // remove what the image can absorb, then read the type off the w-normal form
      Span<Rational> image;
      for (auto& c : sys.columns) image.insert(c);
      auto rest = image.reduce(target);
      SparseRow<Rational> part = target;
      axpy(part, Rational(-1), rest);
      if (auto Y = sys.solve(part, U)) R = detail::pullBack(R, *Y);
      res.failedDeficit = k;
      res.typeAt = computeAnalyticType(R, Q.ws.z, mq).type;
      return res;
    }
    R = detail::pullBack(R, *X);
    detail::composeStep(Tz, Tw, *X);
  }
  for (int b = 0; b < U.K; ++b)
    if (R[b] != Q.phi[b]) throw std::logic_error("shift construction left a residual");
  ShiftMap S;
  S.point = xi;
  auto wxi = wCoordinates(Q.phi, xi);
  for (int j = 0; j < U.n; ++j) S.z.push_back(Tz[j] + Poly::constant(U, xi.z[j]));
  for (int b = 0; b < U.K; ++b) S.w.push_back(Tw[b] + Poly::constant(U, wxi[b]));
  res.shift = S;
  res.typeAt = Q.type();
  return res;
}

inline TypeDescriptor typeAtPoint(const SurfaceSpec& Q, const SurfacePoint& xi) { return buildShift(Q, xi).typeAt; }

/// Deterministic sample: unit vectors with values in {1, -1, 1/2, -1/2, 2, -2} (and i multiples for z),
/// then seeded pseudo-random low-height points.
inline std::vector<SurfacePoint> samplePoints(const Universe& U, int randomCount, unsigned seed)
{
  std::vector<SurfacePoint> pts;
  const Rational vals[] = {Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 2), Rational(2), Rational(-2)};
  auto zero = [&] {
    SurfacePoint p;
    p.z.assign(U.n, Gaussian(0));
    p.u.assign(U.K, Rational(0));
    return p;
  };
  pts.push_back(zero());
  for (int j = 0; j < U.n; ++j)
    for (auto& v : vals) {
      auto p = zero();
      p.z[j] = Gaussian(v);
      pts.push_back(p);
      p.z[j] = Gaussian(Rational(0), v);
      pts.push_back(p);
    }
  for (int b = 0; b < U.K; ++b)
    for (auto& v : vals) {
      auto p = zero();
      p.u[b] = v;
      pts.push_back(p);
    }
  for (int r = 0; r < randomCount; ++r) pts.push_back(genericPoint(U, seed + unsigned(r) * 104729u));
  return pts;
}

struct HomogeneityReport {
  enum class Verdict { Homogeneous, SampledTrue, NotHomogeneous } verdict = Verdict::NotHomogeneous;
  std::string strategy;
  int dimGs = -1;
  std::optional<SurfacePoint> witness;
  TypeDescriptor witnessType;
  std::vector<std::pair<SurfacePoint, TypeDescriptor>> sampled;

  std::string verdictString() const
  {
    switch (verdict) {
    case Verdict::Homogeneous: return "homogeneous";
    case Verdict::SampledTrue: return "sampled-true";
    default: return "not homogeneous";
    }
  }
};

inline HomogeneityReport isHomogeneousAlgebraic(const SurfaceSpec& Q)
{
  HomogeneityReport rep;
  rep.strategy = "algebraic";
  GradedAlgebra A;
  for (int nu = -Q.ws.mTop(); nu < 0; ++nu) A.components[nu] = solveComponent(Q, nu);
  rep.dimGs = decompose(A).dimGs();
  rep.verdict = rep.dimGs == 2 * Q.n() + Q.K() ? HomogeneityReport::Verdict::Homogeneous
                                               : HomogeneityReport::Verdict::NotHomogeneous;
  return rep;
}

inline HomogeneityReport isHomogeneousSampling(const SurfaceSpec& Q, int randomCount = 8, unsigned seed = 1)
{
  HomogeneityReport rep;
  rep.strategy = "sampling";
  TypeDescriptor t0 = Q.type();
  rep.verdict = HomogeneityReport::Verdict::SampledTrue;
  for (auto& p : samplePoints(Q.U, randomCount, seed)) {
    auto r = buildShift(Q, p);
    rep.sampled.push_back({p, r.typeAt});
    if (!r.shift && !rep.witness) {
      rep.witness = p;
      rep.witnessType = r.typeAt;
      rep.verdict = HomogeneityReport::Verdict::NotHomogeneous;
    }
  }
  return rep;
}

} // namespace crmodel
