#include "support.hpp"

#include <gtest/gtest.h>

using namespace crmodel;
using namespace crmodel::testing;

TEST(Gaussian, FieldOperations)
{
  Gaussian a = gauss(1, 2), b = gauss(-1, 3, 2);
  EXPECT_EQ(a * b, gauss(-7, 1, 2));
  EXPECT_EQ((a / b) * b, a);
  EXPECT_EQ(a.conj().conj(), a);
  EXPECT_EQ(a * a.conj(), Gaussian(Rational(5)));
  EXPECT_TRUE(Gaussian::I() * Gaussian::I() == Gaussian(-1));
}

TEST(Poly, RingLaws)
{
  std::mt19937 rng(11);
  Universe U{2, 1};
  for (int t = 0; t < 20; ++t) {
    Poly a = randomPoly(U, rng), b = randomPoly(U, rng), c = randomPoly(U, rng);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_TRUE((a - a).isZero());
    EXPECT_EQ(a * Poly::constant(U, Gaussian(1)), a);
  }
}

TEST(Poly, ConjugationIsAnInvolutiveRingMap)
{
  std::mt19937 rng(12);
  Universe U{2, 2};
  for (int t = 0; t < 20; ++t) {
    Poly a = randomPoly(U, rng, 4, 2, false), b = randomPoly(U, rng, 4, 2, false);
    EXPECT_EQ(a.conjugate().conjugate(), a);
    EXPECT_EQ((a * b).conjugate(), a.conjugate() * b.conjugate());
    EXPECT_TRUE(a.rePart().isReal());
    EXPECT_TRUE(a.imPart().isReal());
    EXPECT_EQ(a.rePart() + a.imPart() * Gaussian::I(), a);
  }
}

TEST(Poly, LeibnizRule)
{
  std::mt19937 rng(13);
  Universe U{2, 1};
  for (int t = 0; t < 20; ++t) {
    Poly a = randomPoly(U, rng), b = randomPoly(U, rng);
    for (Var v : {Var{VarKind::Z, 0}, Var{VarKind::ZB, 1}, Var{VarKind::U, 0}, Var{VarKind::W, 0}})
      EXPECT_EQ((a * b).derive(v), a.derive(v) * b + a * b.derive(v));
  }
}

TEST(Poly, SubstituteWIsARingHomomorphism)
{
  std::mt19937 rng(14);
  Universe U{2, 2};
  std::vector<Poly> phi{randomReal(U, rng), randomReal(U, rng)};
  for (int t = 0; t < 10; ++t) {
    Poly a = randomHolomorphic(U, rng, 6), b = randomHolomorphic(U, rng, 6);
    EXPECT_EQ(substituteW(a * b, phi), substituteW(a, phi) * substituteW(b, phi));
    EXPECT_EQ(substituteW(a + b, phi), substituteW(a, phi) + substituteW(b, phi));
    EXPECT_FALSE(substituteW(a, phi).hasW());
  }
}

TEST(Poly, SquareOfHermitianProduct)
{
  Universe U{2, 1};
  Poly p = parsePoly("(z1*conj(z2) + z2*conj(z1))^2", U);
  // sympy expansion
  EXPECT_EQ(p, parsePoly("z1^2*conj(z2)^2 + 2*z1*z2*conj(z1)*conj(z2) + z2^2*conj(z1)^2", U));
}

TEST(Poly, WSquaredOnHeisenberg)
{
  Universe U{1, 1};
  Poly h = parsePoly("w1^2", U);
  // sympy expansion of (u1 + i z1 conj(z1))^2
  EXPECT_EQ(substituteW(h, {parsePoly("z1*conj(z1)", U)}),
            parsePoly("u1^2 + 2*i*u1*z1*conj(z1) - z1^2*conj(z1)^2", U));
}

TEST(Expr, PrintParseRoundTrip)
{
  std::mt19937 rng(15);
  Universe U{3, 2};
  for (int t = 0; t < 50; ++t) {
    Poly p = randomPoly(U, rng, 6, 3);
    EXPECT_EQ(parsePoly(toString(p), U), p) << toString(p);
  }
}

TEST(Expr, ReAndImExpandAtParseTime)
{
  Universe U{1, 1};
  EXPECT_EQ(parsePoly("Re(z1)", U), parsePoly("1/2*z1 + 1/2*conj(z1)", U));
  EXPECT_EQ(parsePoly("Im(z1)", U), parsePoly("-1/2*i*z1 + 1/2*i*conj(z1)", U));
  EXPECT_EQ(parsePoly("2*Re(z1^2*conj(z1))", U), parsePoly("z1^2*conj(z1) + z1*conj(z1)^2", U));
}

TEST(Expr, ErrorsCarryColumns)
{
  Universe U{2, 1};
  try {
    parsePoly("z1 + * z2", U);
    FAIL();
  }
  catch (const ParseError& e) {
    EXPECT_EQ(e.column, 5);
  }
  EXPECT_THROW(parsePoly("z3", U), ParseError);
  EXPECT_THROW(parsePoly("w1 + (z1", U), ParseError);
}

TEST(Poly, EvaluateAgreesWithSubstitution)
{
  std::mt19937 rng(16);
  Universe U{2, 1};
  Poly p = randomPoly(U, rng, 5, 2, false);
  std::vector<Gaussian> z{gauss(1, -1), gauss(1, 2, 3)};
  std::vector<Gaussian> u{Gaussian(rat(-2, 5))};
  std::vector<std::optional<Poly>> repl(U.slots());
  repl[U.z(0)] = Poly::constant(U, z[0]);
  repl[U.z(1)] = Poly::constant(U, z[1]);
  repl[U.zb(0)] = Poly::constant(U, z[0].conj());
  repl[U.zb(1)] = Poly::constant(U, z[1].conj());
  repl[U.u(0)] = Poly::constant(U, u[0]);
  Poly c = Substitution(U, repl).apply(p);
  EXPECT_EQ(c, Poly::constant(U, evaluate(p, z, u)));
}
