#include "support.hpp"

#include <gtest/gtest.h>

using namespace crmodel;
using namespace crmodel::testing;

namespace {

Germ germ(int n, const std::string& F)
{
  Universe U{n, 1};
  return Germ(parsePoly(F, U));
}

const char* krEquation = "2*Re(z1*conj(z2)) + z1^2*conj(z1)^2";
const char* lightCone = "Im(z1)^2/2 - Im(z1)^2*Im(z2)/2 + Im(z1)^2*Im(z2)^2/2 - Im(z1)^4/8";

} // namespace

TEST(Weights, CoprimeCandidates)
{
  auto c = weightCandidates(2, 3);
  EXPECT_EQ(c.size(), 7u);
  EXPECT_EQ(c.front(), (std::vector<int>{1, 1}));
  for (auto& mu : c) EXPECT_EQ(std::gcd(mu[0], mu[1]), 1);
  EXPECT_EQ(weightCandidates(1, 5).size(), 1u);
}

TEST(Weights, ProperWeightsOfKr)
{
  auto found = searchProperWeights(germ(2, krEquation), 3);
  std::set<std::vector<int>> mus;
  for (auto& p : found) {
    mus.insert(p.mu);
    EXPECT_TRUE(finiteNondegeneracyTest(p.model).nondegenerate);
  }
  EXPECT_TRUE(mus.count({1, 3}));
  EXPECT_TRUE(mus.count({1, 1}));
  for (auto& p : found)
    if (p.mu == std::vector<int>{1, 3}) EXPECT_EQ(p.dimAut, 8);
}

TEST(Weights, LightConeHasNoProperWeight)
{
  EXPECT_TRUE(searchProperWeights(germ(2, lightCone), 3, false).empty());
}

TEST(Descend, KrChain)
{
  auto g = germ(2, krEquation);
  for (auto s : {DescendStrategy::Simplest, DescendStrategy::Tightest}) {
    auto chain = descend(g, {1, 3}, s);
    ASSERT_FALSE(chain.links.empty());
    EXPECT_LE(int(chain.links.size()), 2 * g.n());
    EXPECT_EQ(chain.links.front().mu, (std::vector<int>{1, 3}));
    EXPECT_EQ(chain.links.front().dimAut, 8);
    for (size_t k = 1; k < chain.links.size(); ++k)
      EXPECT_LT(chain.links[k].monomials, chain.links[k - 1].monomials);
    for (auto& l : chain.links) EXPECT_TRUE(finiteNondegeneracyTest(l.model).nondegenerate);
    EXPECT_EQ(chain.terminal().mu, (std::vector<int>{1, 1}));
    EXPECT_EQ(chain.terminal().dimAut, 15);
  }
}

TEST(Descend, RejectsImproperStart)
{
  EXPECT_THROW(descend(germ(3, "2*Re(z1*conj(z2)*z3)"), {1, 1, 1}), NotProper);
  EXPECT_THROW(Germ(parsePoly("z1*conj(z1)", Universe{1, 2})), DimensionError);
}

TEST(Ascend, DegenerateMonomialIsExhausted)
{
  Universe U{3, 1};
  auto r = ascend(parsePoly("2*Re(z1*conj(z2)*z3)", U));
  EXPECT_TRUE(r.exhausted);
  EXPECT_FALSE(r.model);
}

TEST(Ascend, FindsAProperFace)
{
  Universe U{3, 1};
  auto r = ascend(parsePoly("2*Re(z1*conj(z2)*z3) + z1*conj(z1) + z2*conj(z2) + z3*conj(z3)", U));
  ASSERT_FALSE(r.exhausted);
  ASSERT_TRUE(r.model);
  EXPECT_TRUE(finiteNondegeneracyTest(*r.model).nondegenerate);
  EXPECT_GE(int(r.tried.front().size()), minimalMonomialCount(3));
}

TEST(Minimal, HermitianWithCrossTerm)
{
  Universe U{2, 1};
  SurfaceSpec Q(U, WeightSystem({1, 1}, {2}), {parsePoly("z1*conj(z1) + z2*conj(z2) + Re(z1*conj(z2))", U)});
  auto M = minimalModel(Q);
  EXPECT_TRUE(isOneMinimal(M));
  EXPECT_TRUE(properModel(M));
  auto full = supportClasses(Q.phi[0]), kept = supportClasses(M.phi[0]);
  EXPECT_LT(kept.size(), full.size());
  for (auto& m : kept) EXPECT_NE(std::find(full.begin(), full.end(), m), full.end());
  EXPECT_FALSE(isOneMinimal(Q));
}

TEST(Minimal, ModelsOfCorpusAreProper)
{
  for (auto& c : corpusModels()) {
    if (c.model.K() != 1 || !c.entry.nondegenerate) continue;
    auto M = minimalModel(c.model);
    EXPECT_TRUE(isOneMinimal(M)) << c.entry.name;
    EXPECT_GE(int(supportClasses(M.phi[0]).size()), minimalMonomialCount(c.model.n())) << c.entry.name;
  }
}

TEST(Minimal, RejectsDegenerateInput)
{
  EXPECT_THROW(minimalModel(monomialSurface({1, 0, 1}, {0, 1, 0})), std::invalid_argument);
}
