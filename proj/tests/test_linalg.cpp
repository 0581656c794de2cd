#include "support.hpp"

#include <gtest/gtest.h>

using namespace crmodel;
using namespace crmodel::testing;

namespace {

std::vector<SparseRow<Rational>> randomMatrix(std::mt19937& rng, int rows, int cols, int density)
{
  std::uniform_int_distribution<int> v(-3, 3), d(0, 9);
  std::vector<SparseRow<Rational>> m;
  for (int r = 0; r < rows; ++r) {
    std::map<int, Rational> row;
    for (int c = 0; c < cols; ++c)
      if (d(rng) < density) row[c] = v(rng);
    m.push_back(makeRow(row));
  }
  return m;
}

Rational dot(const SparseRow<Rational>& r, const std::vector<Rational>& x)
{
  Rational s = 0;
  for (auto& [c, a] : r) s += a * x[c];
  return s;
}

} // namespace

TEST(Linalg, KernelVectorsAreAnnihilatedAndIndependent)
{
  std::mt19937 rng(21);
  for (int t = 0; t < 30; ++t) {
    int rows = 1 + t % 6, cols = 2 + t % 7;
    auto A = randomMatrix(rng, rows, cols, 5);
    auto K = kernel(A, cols);
    EXPECT_EQ(int(K.size()) + rank(A), cols);
    for (auto& x : K)
      for (auto& r : A) EXPECT_EQ(dot(r, x), 0);
    std::vector<SparseRow<Rational>> kr;
    for (auto& x : K) {
      std::map<int, Rational> m;
      for (int c = 0; c < cols; ++c) m[c] = x[c];
      kr.push_back(makeRow(m));
    }
    EXPECT_EQ(rank(kr), int(K.size()));
  }
}

TEST(Linalg, SolveFindsConsistentSolutions)
{
  std::mt19937 rng(22);
  for (int t = 0; t < 30; ++t) {
    int rows = 2 + t % 5, cols = 2 + t % 4;
    auto A = randomMatrix(rng, rows, cols, 6);
    std::vector<Rational> x0(cols);
    for (int c = 0; c < cols; ++c) x0[c] = Rational(int(rng() % 7) - 3);
    std::vector<Rational> b;
    for (auto& r : A) b.push_back(dot(r, x0));
    auto x = solve(A, b, cols);
    ASSERT_TRUE(x.has_value());
    for (size_t k = 0; k < A.size(); ++k) EXPECT_EQ(dot(A[k], *x), b[k]);
  }
}

TEST(Linalg, InconsistentSystemHasNoSolution)
{
  std::vector<SparseRow<Rational>> A{{{0, Rational(1)}, {1, Rational(1)}}, {{0, Rational(2)}, {1, Rational(2)}}};
  EXPECT_FALSE(solve(A, {Rational(1), Rational(3)}, 2).has_value());
}

TEST(Linalg, SpanMembershipMatchesRank)
{
  std::mt19937 rng(23);
  for (int t = 0; t < 20; ++t) {
    auto A = randomMatrix(rng, 5, 6, 4);
    Span<Rational> s;
    std::vector<SparseRow<Rational>> accepted;
    for (auto& r : A) {
      int before = rank(accepted);
      accepted.push_back(r);
      EXPECT_EQ(s.insert(r), rank(accepted) > before);
      EXPECT_EQ(s.dim(), rank(accepted));
    }
    for (auto& r : A) EXPECT_TRUE(s.contains(r));
  }
}

TEST(Linalg, CoordinatesReproduceTheVector)
{
  std::vector<SparseRow<Rational>> basis{{{0, Rational(1)}, {2, Rational(1)}}, {{1, Rational(1)}, {2, Rational(-1)}}};
  SparseRow<Rational> v{{0, Rational(2)}, {1, Rational(3)}, {2, Rational(-1)}};
  auto c = coordinates(basis, v);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ((*c)[0], 2);
  EXPECT_EQ((*c)[1], 3);
  EXPECT_FALSE(coordinates(basis, SparseRow<Rational>{{2, Rational(1)}}).has_value());
}

TEST(Grading, GradedPartsSumToThePolynomial)
{
  std::mt19937 rng(24);
  Universe U{2, 1};
  WeightSystem ws({1, 2}, {3});
  Weights wt = ws.slots(U);
  for (int t = 0; t < 10; ++t) {
    Poly p = randomPoly(U, rng, 8, 3);
    Poly sum(U);
    for (auto& [nu, q] : gradedParts(p, wt)) {
      sum += q;
      for (auto& [m, c] : q.terms()) EXPECT_EQ(weightOf(m, wt), nu);
    }
    EXPECT_EQ(sum, p);
  }
}

TEST(Grading, WeightIsAdditiveUnderProducts)
{
  std::mt19937 rng(25);
  Universe U{2, 2};
  WeightSystem ws({1, 3}, {2, 5});
  Weights wt = ws.slots(U);
  for (int t = 0; t < 10; ++t) {
    Poly a = randomPoly(U, rng, 3, 2), b = randomPoly(U, rng, 3, 2);
    for (auto& [na, pa] : gradedParts(a, wt))
      for (auto& [nb, pb] : gradedParts(b, wt)) {
        Poly ab = pa * pb;
        if (!ab.isZero()) {
          EXPECT_EQ(minWeight(ab, wt), na + nb);
          EXPECT_EQ(maxWeight(ab, wt), na + nb);
        }
      }
  }
}

TEST(Grading, TypeDescriptorPrinting)
{
  EXPECT_EQ(TypeDescriptor::fromWeights({2, 3, 3}).str(), "((2,1),(3,2))");
  EXPECT_EQ(TypeDescriptor::fromWeights({2}, 1).str(), "((2,1),(inf,1))");
  EXPECT_EQ(TypeDescriptor::fromWeights({}, 2).str(), "((inf,2))");
  EXPECT_EQ(TypeDescriptor::fromWeights({4, 2}).codim(), 2);
}

TEST(Grading, InvalidWeightsAreRejected)
{
  EXPECT_THROW(WeightSystem({0, 1}, {2}), std::invalid_argument);
  Universe U{2, 1};
  EXPECT_THROW(WeightSystem({1}, {2}).slots(U), DimensionError);
}

TEST(Grading, FaceByWeightSelectsTheMinimizers)
{
  Universe U{2, 1};
  Poly F = parsePoly("2*Re(z1*conj(z2)) + z1^2*conj(z1)^2 + z2*conj(z2)", U);
  auto f = faceByWeight(support(F), {1, 3}, U);
  EXPECT_EQ(*f.value, 4);
  EXPECT_EQ(polyOf(f, U), parsePoly("2*Re(z1*conj(z2)) + z1^2*conj(z1)^2", U));
  auto g = faceByWeight(support(F), {1, 1}, U);
  EXPECT_EQ(polyOf(g, U), parsePoly("2*Re(z1*conj(z2)) + z2*conj(z2)", U));
}

TEST(Grading, RealCoordinatesRoundTrip)
{
  std::mt19937 rng(26);
  Universe U{2, 1};
  for (int t = 0; t < 10; ++t) {
    Poly p = randomReal(U, rng, 4, 2);
    RealIndex idx;
    EXPECT_EQ(idx.poly(idx.row(p), U), p);
  }
}
