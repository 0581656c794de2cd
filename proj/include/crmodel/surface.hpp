#pragma once

#include "grading.hpp"

namespace crmodel {

/// {v_b = Phi_b(z, conj z, u) + F_b}, forms ordered by nondecreasing weight.
struct SurfaceSpec {
  Universe U;
  WeightSystem ws;
  std::vector<Poly> phi;
  std::vector<Poly> pert;
  bool reduced = false;

  SurfaceSpec() = default;
  SurfaceSpec(Universe u, WeightSystem w, std::vector<Poly> p, std::vector<Poly> f = {})
      : U(u), ws(std::move(w)), phi(std::move(p)), pert(std::move(f))
  {
    if (pert.empty())
      for (int b = 0; b < U.K; ++b) pert.emplace_back(U);
    if (int(phi.size()) != U.K || int(pert.size()) != U.K) throw DimensionError("need K forms");
    ws.slots(U);
  }

  int n() const { return U.n; }
  int K() const { return U.K; }
  Weights weights() const { return ws.slots(U); }
  bool isModel() const
  {
    for (auto& f : pert)
      if (!f.isZero()) return false;
    return true;
  }
  std::vector<Poly> rhs() const
  {
    std::vector<Poly> r;
    for (int b = 0; b < U.K; ++b) r.push_back(phi[b] + pert[b]);
    return r;
  }
  SurfaceSpec model() const { return SurfaceSpec(U, ws, phi); }
  TypeDescriptor type() const { return TypeDescriptor::fromWeights(ws.w); }
};

/// Point (a, b + i*Phi(a, conj a, b)) of a graph surface, stored by (a, b).
struct SurfacePoint {
  std::vector<Gaussian> z;
  std::vector<Rational> u;

  bool isOrigin() const
  {
    for (auto& a : z)
      if (!a.isZero()) return false;
    for (auto& b : u)
      if (sgn(b)) return false;
    return true;
  }
  std::string str() const
  {
    std::string s = "(";
    for (size_t j = 0; j < z.size(); ++j) s += (j ? "," : "") + z[j].str();
    s += ";";
    for (size_t b = 0; b < u.size(); ++b) s += (b ? "," : "") + u[b].get_str();
    return s + ")";
  }
};

inline Gaussian evaluate(const Poly& p, const std::vector<Gaussian>& z, const std::vector<Gaussian>& u,
                         const std::vector<Gaussian>& w = {})
{
  const Universe& U = p.universe();
  Gaussian s(0);
  for (auto& [m, c] : p.terms()) {
    Gaussian t = c;
    for (int j = 0; j < U.n; ++j) {
      for (int k = 0; k < m.e[U.z(j)]; ++k) t *= z[j];
      Gaussian zc = z[j].conj();
      for (int k = 0; k < m.e[U.zb(j)]; ++k) t *= zc;
    }
    for (int b = 0; b < U.K; ++b) {
      for (int k = 0; k < m.e[U.u(b)]; ++k) t *= u[b];
      for (int k = 0; k < m.e[U.w(b)]; ++k) t *= w.at(b);
    }
    s += t;
  }
  return s;
}

inline Gaussian evaluate(const Poly& p, const SurfacePoint& pt)
{
  std::vector<Gaussian> u(pt.u.begin(), pt.u.end());
  return evaluate(p, pt.z, u);
}

/// w coordinates of the point: b + i*Phi(a, conj a, b)
inline std::vector<Gaussian> wCoordinates(const std::vector<Poly>& rhs, const SurfacePoint& pt)
{
  std::vector<Gaussian> w;
  for (size_t b = 0; b < rhs.size(); ++b) w.push_back(Gaussian(pt.u[b]) + Gaussian::I() * evaluate(rhs[b], pt));
  return w;
}

/// R_b(z, conj z, u) = Phi_b(z + a, ..., u + b) - Phi_b(a, conj a, b)
inline std::vector<Poly> recenter(const std::vector<Poly>& rhs, const SurfacePoint& pt)
{
  if (rhs.empty()) return {};
  const Universe& U = rhs[0].universe();
  std::vector<std::optional<Poly>> repl(U.slots());
  for (int j = 0; j < U.n; ++j) {
    repl[U.z(j)] = Poly::z(U, j) + Poly::constant(U, pt.z[j]);
    repl[U.zb(j)] = Poly::zb(U, j) + Poly::constant(U, pt.z[j].conj());
  }
  for (int b = 0; b < U.K; ++b) repl[U.u(b)] = Poly::u(U, b) + Poly::constant(U, Gaussian(pt.u[b]));
  Substitution S(U, repl);
  std::vector<Poly> out;
  for (auto& p : rhs) {
    Poly r = S.apply(p);
    r.addTerm(Monomial(U.slots()), -r.coeff(Monomial(U.slots())));
    out.push_back(r);
  }
  return out;
}

} // namespace crmodel
