#include "support.hpp"

#include <gtest/gtest.h>

using namespace crmodel;
using namespace crmodel::testing;

TEST(Conditions, PluriharmonicTermsViolateI)
{
  Universe U{1, 1};
  SurfaceSpec S(U, WeightSystem({1}, {2}), {parsePoly("z1*conj(z1) + Re(z1^2)", U)});
  auto rep = checkConditions(S);
  ASSERT_EQ(rep.violationsI.size(), 2u);
  EXPECT_TRUE(rep.violationsII.empty());
}

TEST(Conditions, LowerFormTimesUViolatesII)
{
  Universe U{1, 2};
  SurfaceSpec S(U, WeightSystem({1}, {2, 4}), {parsePoly("z1*conj(z1)", U), parsePoly("u1*z1*conj(z1)", U)});
  auto rep = checkConditions(S);
  EXPECT_TRUE(rep.violationsI.empty());
  ASSERT_EQ(rep.violationsII.size(), 1u);
  EXPECT_EQ(rep.violationsII[0].form, 1);
}

TEST(Conditions, DependentFormsAreReported)
{
  Universe U{2, 2};
  SurfaceSpec S(U, WeightSystem({1, 1}, {2, 2}), {parsePoly("z1*conj(z1)", U), parsePoly("2*z1*conj(z1)", U)});
  EXPECT_EQ(checkConditions(S).dependentForms, std::vector<int>{1});
}

TEST(Conditions, HermitianFormIsClean)
{
  Universe U{2, 1};
  SurfaceSpec S(U, WeightSystem({1, 1}, {2}), {parsePoly("2*Re(z1*conj(z2))", U)});
  EXPECT_TRUE(checkConditions(S).clean());
}

TEST(Reduce, RemovesPluriharmonicPart)
{
  Universe U{1, 1};
  SurfaceSpec S(U, WeightSystem({1}, {2}), {parsePoly("z1*conj(z1) + Re(z1^2)", U)});
  auto r = reduce(S);
  EXPECT_EQ(r.surface.phi[0], parsePoly("z1*conj(z1)", U));
  EXPECT_TRUE(checkConditions(r.surface).clean());
}

TEST(Reduce, TubeWithCubicTerm)
{
  Universe U{2, 1};
  SurfaceSpec S(U, WeightSystem({1, 2}, {3}), {parsePoly("2*Re(z1)*Re(z2) + Re(z1)^3", U)});
  auto r = reduce(S);
  // sympy expansion with pluriharmonic monomials dropped
  EXPECT_EQ(r.surface.phi[0],
            parsePoly("1/2*z2*conj(z1) + 1/2*z1*conj(z2) + 3/8*z1*conj(z1)^2 + 3/8*z1^2*conj(z1)", U));
}

TEST(Reduce, IdempotentOnCorpus)
{
  for (auto& e : builtinCorpus()) {
    auto once = reduce(e.surface);
    auto twice = reduce(once.surface);
    EXPECT_EQ(twice.surface.phi, once.surface.phi) << e.name;
    EXPECT_EQ(twice.surface.ws, once.surface.ws) << e.name;
    EXPECT_TRUE(twice.steps.empty()) << e.name;
  }
}

TEST(Reduce, CleanAfterReductionOnCorpus)
{
  for (auto& e : builtinCorpus()) {
    auto r = reduce(e.surface);
    ASSERT_TRUE(r.finite) << e.name;
    EXPECT_TRUE(checkConditions(r.surface.model()).clean()) << e.name;
    EXPECT_EQ(r.type.str(), e.type) << e.name;
    const auto& m = r.surface.ws.w;
    EXPECT_GE(m.front(), 2 * r.surface.ws.muMin()) << e.name;
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end())) << e.name;
  }
}

TEST(Reduce, ReplayReproducesTheReducedEquations)
{
  std::mt19937 rng(31);
  Universe U{2, 2};
  for (int t = 0; t < 6; ++t) {
    std::vector<Poly> eqs{parsePoly("z1*conj(z1) + 2*Re(z1*z2) + u1*z2*conj(z2)", U),
                          parsePoly("2*Re(z1^2*conj(z2)) + u1*z1*conj(z1) + 2*Re(z1^3)", U)};
    eqs[0] += randomReal(U, rng, 2, 2);
    eqs[1] += randomReal(U, rng, 2, 2);
    for (auto& p : eqs)
      p = p.filter([&](const Monomial& m) { return m.deg >= 2; });
    auto r = computeAnalyticType(eqs, {1, 1}, 6);
    if (!r.finite) continue;
    Weights wt = r.surface.weights();
    WMap G = composedReduction(r, wt);
    std::vector<int> where(U.K);
    for (int k = 0; k < U.K; ++k) where[r.order[k]] = k;
    std::vector<Poly> orig(U.K, Poly(U));
    for (int b = 0; b < U.K; ++b) orig[where[b]] = eqs[b].remap(U, where);
    EXPECT_TRUE(replayHolds(orig, G, r.surface.rhs(), wt, r.bound)) << t;
  }
}

TEST(Reduce, DependentFormsMoveToHigherWeight)
{
  Universe U{1, 2};
  auto r = computeAnalyticType({parsePoly("z1*conj(z1)", U), parsePoly("z1*conj(z1) + 2*Re(z1^2*conj(z1))", U)}, {1});
  EXPECT_EQ(r.type.str(), "((2,1),(3,1))");
}

TEST(Reduce, InfiniteTypeReportsDefect)
{
  Universe U{1, 2};
  auto r = computeAnalyticType({parsePoly("z1*conj(z1)", U), parsePoly("u1*z1*conj(z1)", U)}, {1}, 8);
  EXPECT_FALSE(r.finite);
  EXPECT_EQ(r.type.str(), "((2,1),(inf,1))");
}

TEST(AnalyticType, PaperExamples)
{
  EXPECT_EQ(reduce(dqSurface()).type.str(), "((3,1))");
  Universe U{3, 1};
  auto zs = computeAnalyticType({parsePoly("2*Re(z1*conj(z2) + z1^2*conj(z3))", U)}, {2, 4, 2});
  EXPECT_EQ(zs.type.str(), "((6,1))");
  Universe H{1, 1};
  EXPECT_EQ(computeAnalyticType({parsePoly("z1*conj(z1)", H)}, {1}).type.str(), "((2,1))");
}

TEST(AnalyticType, InvariantUnderQuasilinearChanges)
{
  // z1 -> z1 + 3 z2 (equal weights), w -> 2w, plus pluriharmonic and higher-weight terms
  for (auto& e : builtinCorpus()) {
    auto Q = e.model();
    if (Q.K() != 1 || Q.n() < 2 || Q.ws.z[0] != Q.ws.z[1]) continue;
    const Universe& U = Q.U;
    std::vector<std::optional<Poly>> repl(U.slots());
    repl[U.z(0)] = Poly::z(U, 0) + Poly::z(U, 1) * Gaussian(3);
    repl[U.zb(0)] = Poly::zb(U, 0) + Poly::zb(U, 1) * Gaussian(3);
    Poly phi = Substitution(U, repl).apply(Q.phi[0]) * Gaussian(2);
    phi += parsePoly("2*Re(z1^2*z2) + z1^3*conj(z1)^3", U);
    auto t = computeAnalyticType({phi}, Q.ws.z);
    EXPECT_EQ(t.type, Q.type()) << e.name;
  }
}

TEST(ReducedSpace, DimensionsForOneVariable)
{
  std::vector<Poly> forms;
  std::vector<int> w;
  std::vector<size_t> dims;
  for (int s = 2; s <= 5; ++s) {
    auto b = reducedSpaceBasis(s, {1}, forms, w);
    dims.push_back(b.size());
    Universe U{1, int(forms.size() + b.size())};
    for (auto& f : forms) f = f.extend(U);
    for (auto& f : b) forms.push_back(f.extend(U));
    w.resize(forms.size(), s);
  }
  // sympy rank counts
  EXPECT_EQ(dims, (std::vector<size_t>{1, 2, 3, 6}));
}

TEST(ReducedSpace, DimensionsForWeights12)
{
  std::vector<Poly> forms;
  std::vector<int> w;
  std::vector<size_t> dims;
  for (int s = 2; s <= 4; ++s) {
    auto b = reducedSpaceBasis(s, {1, 2}, forms, w);
    dims.push_back(b.size());
    Universe U{2, int(forms.size() + b.size())};
    for (auto& f : forms) f = f.extend(U);
    for (auto& f : b) forms.push_back(f.extend(U));
    w.resize(forms.size(), s);
  }
  // sympy rank counts
  EXPECT_EQ(dims, (std::vector<size_t>{1, 4, 8}));
}

TEST(ReducedSpace, HermitianFormsAtWeightTwo)
{
  for (int n = 1; n <= 3; ++n) EXPECT_EQ(reducedSpaceBasis(2, std::vector<int>(n, 1), {}, {}).size(), size_t(n * n));
}

TEST(ReducedSpace, BasisElementsSatisfyTheConditions)
{
  auto S = buildFullyNondegenerate({1}, 3);
  for (int s = 2; s <= 5; ++s) {
    auto [lower, lw] = lowerForms(S, s);
    Universe L{1, int(lower.size())};
    auto basis = reducedSpaceBasis(s, {1}, lower, lw);
    Weights wt(L.slots());
    wt[L.z(0)] = wt[L.zb(0)] = 1;
    for (int b = 0; b < L.K; ++b) wt[L.u(b)] = wt[L.w(b)] = lw[b];
    RealIndex idx;
    Span<Rational> span;
    for (auto& p : basis) {
      EXPECT_TRUE(p.isReal());
      EXPECT_EQ(minWeight(p, wt), s);
      EXPECT_EQ(maxWeight(p, wt), s);
      for (auto& [m, c] : p.terms()) EXPECT_FALSE(m.isPluriharmonic(L));
      EXPECT_TRUE(span.insert(idx.row(p)));
    }
  }
}

TEST(FullyNondegenerate, TypeRoundTrip)
{
  for (auto [mu, q] : std::vector<std::pair<std::vector<int>, int>>{{{1}, 1}, {{1}, 2}, {{1}, 3}, {{1, 1}, 1}, {{1, 2}, 2}, {{2, 1, 1}, 2}}) {
    auto S = buildFullyNondegenerate(mu, q);
    EXPECT_TRUE(checkConditions(S).clean());
    auto t = computeAnalyticType(S.phi, mu);
    ASSERT_TRUE(t.finite);
    EXPECT_EQ(t.type, S.type());
    EXPECT_EQ(buildFullyNondegenerate(mu, q).phi, S.phi);
  }
}

TEST(FullyNondegenerate, HeisenbergAndQuadricCarrier)
{
  auto H = buildFullyNondegenerate({1}, 1, 1);
  Universe U{1, 1};
  EXPECT_EQ(H.phi[0], parsePoly("z1*conj(z1)", U));
  EXPECT_EQ(buildFullyNondegenerate({1, 1}, 1).K(), 4);
  EXPECT_THROW(buildFullyNondegenerate({1}, 2, 3), std::out_of_range);
  EXPECT_THROW(buildFullyNondegenerate({1}, 0), std::invalid_argument);
}

TEST(FullyNondegenerate, MultiplicityBoundHoldsOnCorpus)
{
  for (auto& e : builtinCorpus()) {
    auto Q = e.model();
    for (auto& [m, k] : Q.ws.wGroups()) {
      auto [lower, lw] = lowerForms(Q, m);
      EXPECT_LE(k, int(reducedSpaceBasis(m, Q.ws.z, lower, lw).size())) << e.name << " weight " << m;
    }
  }
}

TEST(CriticalWeight, SmallWeightVectors)
{
  EXPECT_EQ(criticalWeight({1}, 3).value, 2);
  EXPECT_EQ(criticalWeight({1, 1}, 3).value, 2);
  auto c = criticalWeight({1, 2}, 5);
  EXPECT_EQ(c.value, 3);
  for (auto mu : std::vector<std::vector<int>>{{1}, {1, 2}, {2, 1, 1}, {1, 3}}) {
    int p = *std::max_element(mu.begin(), mu.end());
    EXPECT_LE(criticalWeight(mu, 2 * p + 1).value, 2 * p + 1);
  }
  EXPECT_THROW(criticalWeight({1, 2}, 3), std::invalid_argument);
}
