#pragma once

#include "newton_search.hpp"
#include "surface_file.hpp"

namespace crmodel {

/// Expected values of a corpus surface; basis says where each number comes from.
struct CorpusEntry {
  std::string name;
  SurfaceSpec surface; // as written, possibly not yet reduced
  std::string type;
  std::optional<int> autTotal;
  std::vector<int> autDims; // g_{-m_q} .. g_{last}, empty when not fixed
  std::optional<int> dimGs;
  std::optional<bool> homogeneous;
  bool nondegenerate = true;
  bool fullyNondegenerate = false;
  int autBound = 0; // explicit bound for aut; 0 means the automatic stop rule
  std::string basis;

  SurfaceSpec model() const { return reduce(surface).surface.model(); }
};

namespace detail {

inline SurfaceSpec corpusSurface(int n, std::vector<int> mu, std::vector<int> m, const std::vector<std::string>& eqs)
{
  Universe U{n, int(m.size())};
  std::vector<Poly> phi;
  for (auto& e : eqs) phi.push_back(parsePoly(e, U));
  return SurfaceSpec(U, WeightSystem(std::move(mu), std::move(m)), phi);
}

inline std::string hermitian(int n, int negative = 0)
{
  std::string s;
  for (int j = 1; j <= n; ++j) {
    std::string zj = "z" + std::to_string(j);
    s += (j > n - negative ? " - " : (j > 1 ? " + " : "")) + zj + "*conj(" + zj + ")";
  }
  return s;
}

} // namespace detail

/// Built-in suite: the homogeneous hypersurface families, the worked codimension-one example,
/// fully nondegenerate builds and a few degenerate or inhomogeneous controls.
inline std::vector<CorpusEntry> builtinCorpus()
{
  using detail::corpusSurface;
  std::vector<CorpusEntry> c;
  auto add = [&](CorpusEntry e) { c.push_back(std::move(e)); };

  add({.name = "heisenberg",
       .surface = corpusSurface(1, {1}, {2}, {"z1*conj(z1)"}),
       .type = "((2,1))",
       .autTotal = 8,
       .autDims = {1, 2, 2, 2, 1},
       .dimGs = 3,
       .homogeneous = true,
       .basis = "hyperquadric count (n+2)^2-1"});
  for (int n : {2, 3})
    add({.name = "hq" + std::to_string(n),
         .surface = corpusSurface(n, std::vector<int>(n, 1), {2}, {detail::hermitian(n)}),
         .type = "((2,1))",
         .autTotal = (n + 2) * (n + 2) - 1,
         .dimGs = 2 * n + 1,
         .homogeneous = true,
         .basis = "hyperquadric count (n+2)^2-1"});
  add({.name = "hq2-indefinite",
       .surface = corpusSurface(2, {1, 1}, {2}, {"2*Re(z1*conj(z2))"}),
       .type = "((2,1))",
       .autTotal = 15,
       .dimGs = 5,
       .homogeneous = true,
       .basis = "hyperquadric count (n+2)^2-1, any signature"});
  add({.name = "dq",
       .surface = corpusSurface(3, {2, 1, 1}, {3}, {"2*Re(z1*conj(z3) + z2*conj(z3)^2)"}),
       .type = "((3,1))",
       .autTotal = 16,
       .autDims = {1, 2, 5, 5, 3},
       .dimGs = 7,
       .homogeneous = true,
       .autBound = 6,
       .basis = "worked example with explicit field basis; z3 plays zeta"});
  add({.name = "al3",
       .surface = corpusSurface(4, {3, 2, 1, 1}, {4}, {"2*Re(z1*conj(z4) + z2*conj(z4)^2 + z3*conj(z4)^3)"}),
       .type = "((4,1))",
       .dimGs = 9,
       .homogeneous = true,
       .basis = "chain family generalizing the worked example; z4 plays zeta"});
  add({.name = "zs",
       .surface = corpusSurface(3, {2, 4, 2}, {6}, {"2*Re(z1*conj(z2) + z1^2*conj(z3))"}),
       .type = "((6,1))",
       .autTotal = 16,
       .dimGs = 7,
       .homogeneous = true,
       .basis = "2-nondegenerate family, dim aut n^2+7"});
  add({.name = "kr",
       .surface = corpusSurface(2, {1, 3}, {4}, {"2*Re(z1*conj(z2)) + z1^2*conj(z1)^2"}),
       .type = "((4,1))",
       .autTotal = 8,
       .dimGs = 5,
       .homogeneous = true,
       .basis = "submaximal Levi nondegenerate family, dim aut n^2+4"});
  add({.name = "lb3",
       .surface = corpusSurface(2, {1, 2}, {3}, {"2*Re(z1)*Re(z2) + Re(z1)^3"}),
       .type = "((3,1))",
       .dimGs = 5,
       .homogeneous = true,
       .basis = "tube family with m = 3, homogeneous"});
  add({.name = "fnd-1-q2",
       .surface = buildFullyNondegenerate({1}, 2),
       .type = "((2,1),(3,2))",
       .dimGs = 5,
       .homogeneous = true,
       .fullyNondegenerate = true,
       .basis = "fully nondegenerate build, reduced space dims 1, 2"});
  add({.name = "fnd-1-q3",
       .surface = buildFullyNondegenerate({1}, 3),
       .type = "((2,1),(3,2),(4,3))",
       .dimGs = 8,
       .homogeneous = true,
       .fullyNondegenerate = true,
       .basis = "fully nondegenerate build, reduced space dims 1, 2, 3"});
  add({.name = "fnd-12-q1",
       .surface = buildFullyNondegenerate({1, 2}, 1),
       .type = "((2,1))",
       .nondegenerate = false,
       .fullyNondegenerate = true,
       .autBound = 4,
       .basis = "fully nondegenerate build below the critical weight; z2 absent from the form"});
  add({.name = "monomial3",
       .surface = monomialSurface({1, 0, 1}, {0, 1, 0}),
       .type = "((3,1))",
       .nondegenerate = false,
       .autBound = 2,
       .basis = "pure monomial in three variables, degenerate"});
  add({.name = "inhom2",
       .surface = corpusSurface(1, {1}, {2, 4}, {"z1*conj(z1)", "z1^2*conj(z1)^2"}),
       .type = "((2,1),(4,1))",
       .dimGs = 2,
       .homogeneous = false,
       .basis = "two-codimension surface whose type jumps off the real line z = 0"});
  return c;
}

/// Reduced perturbations of corpus models for the perturbed aut bound.
inline std::vector<std::pair<std::string, SurfaceSpec>> perturbedCorpus()
{
  std::vector<std::pair<std::string, SurfaceSpec>> out;
  auto with = [&](const std::string& name, const SurfaceSpec& Q, const std::vector<std::string>& tail) {
    std::vector<Poly> f;
    for (auto& t : tail) f.push_back(parsePoly(t, Q.U));
    out.push_back({name, SurfaceSpec(Q.U, Q.ws, Q.phi, f)});
  };
  auto dq = detail::corpusSurface(3, {2, 1, 1}, {3}, {"2*Re(z1*conj(z3) + z2*conj(z3)^2)"});
  auto heis = detail::corpusSurface(1, {1}, {2}, {"z1*conj(z1)"});
  with("dq+|z3|^4", dq, {"z3^2*conj(z3)^2"});
  with("dq+2Re(z1*conj(z3)^3)", dq, {"2*Re(z1*conj(z3)^3)"});
  with("dq+2Re(z1*conj(z2)*conj(z3)^2)", dq, {"2*Re(z1*conj(z2)*conj(z3)^2)"});
  with("heisenberg+|z1|^4", heis, {"z1^2*conj(z1)^2"});
  with("heisenberg+2Re(z1^2*conj(z1))", heis, {"2*Re(z1^2*conj(z1))"});
  return out;
}

} // namespace crmodel
