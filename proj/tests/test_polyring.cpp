#include <random>

#include <gtest/gtest.h>

#include "acikit/parse.hpp"

using namespace acikit;
using Q = Polynomial<Rationals>;

namespace {

RingPtr<Rationals> xyz() { return Ring<Rationals>::make({}, {"x", "y", "z"}); }

}  // namespace

TEST(PolyArith, AddCancels) {
  auto R = xyz();
  auto x = Q::variable(R, 0), y = Q::variable(R, 1);
  EXPECT_EQ((x + y) + (x - y), x.scale(2));
  EXPECT_EQ(((x + y) + (x - y)).to_string(), "2*x");
}

TEST(PolyArith, DifferenceOfSquares) {
  auto R = xyz();
  auto x = Q::variable(R, 0), y = Q::variable(R, 1);
  EXPECT_EQ(((x + y) * (x - y)).to_string(), "x^2 - y^2");
}

TEST(PolyArith, ZeroAbsorbs) {
  auto R = xyz();
  auto f = parse_polynomial(R, "3*x^2*y - 1/2*z^3 + 7");
  EXPECT_TRUE((f * Q(R)).is_zero());
}

TEST(PolyArith, RingMismatch) {
  auto R = xyz();
  auto S = Ring<Rationals>::make({}, {"a", "b"});
  EXPECT_THROW(Q::variable(R, 0) + Q::variable(S, 0), RingMismatch);
}

TEST(PolyArith, PrimeFieldWraps) {
  auto R = Ring<PrimeField>::make(PrimeField(7), {"x"});
  auto f = parse_polynomial(R, "4*x + 3*x");
  EXPECT_TRUE(f.is_zero());
  EXPECT_EQ(parse_polynomial(R, "1/2*x").to_string(), "-3*x");
  EXPECT_THROW(PrimeField(8), InvalidArgument);
}

TEST(Multidegree, BigradedRees) {
  auto S = Ring<Rationals>::make({}, {"x1", "y1"}, {{1, 0}, {2, 1}});
  EXPECT_EQ(Q::variable(S, 1).multidegree(), (Degree{2, 1}));
  EXPECT_EQ(parse_polynomial(S, "x1^2*y1").multidegree(), (Degree{4, 1}));
}

TEST(Multidegree, StandardAndErrors) {
  auto R = Ring<Rationals>::make({}, {"x1", "x2"});
  EXPECT_EQ(parse_polynomial(R, "x1*x2").multidegree(), Degree{2});
  EXPECT_THROW(parse_polynomial(R, "x1 + x1^2").multidegree(), NotHomogeneous);
  EXPECT_THROW(Q(R).multidegree(), ZeroPolynomial);
}

TEST(MonoOrder, GrevlexDegreeTwo) {
  // Oracle: textbook grevlex on the six degree-2 monomials in x,y,z.
  // Sorted decreasing: x^2 > xy > y^2 > xz > yz > z^2.
  std::vector<std::vector<int>> expected = {{2, 0, 0}, {1, 1, 0}, {0, 2, 0},
                                            {1, 0, 1}, {0, 1, 1}, {0, 0, 2}};
  auto sorted = expected;
  std::shuffle(sorted.begin(), sorted.end(), std::mt19937(3));
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return mono_cmp(a, b, MonomialOrder::grevlex()) > 0;
  });
  EXPECT_EQ(sorted, expected);
  std::vector<int> xz = {1, 0, 1}, y2 = {0, 2, 0};
  EXPECT_LT(mono_cmp(xz, y2, MonomialOrder::grevlex()), 0);
}

TEST(MonoOrder, LexIgnoresDegree) {
  std::vector<int> x = {1, 0}, y100 = {0, 100};
  EXPECT_GT(mono_cmp(x, y100, MonomialOrder::lex()), 0);
  EXPECT_EQ(mono_cmp(x, x, MonomialOrder::lex()), 0);
  std::vector<int> bad = {1, 0, 0};
  EXPECT_THROW(mono_cmp(x, bad, MonomialOrder::lex()), InvalidArgument);
}

TEST(MonoOrder, EliminationComparesBlockFirst) {
  std::vector<int> t = {1, 0, 0}, y3 = {0, 3, 0};
  EXPECT_GT(mono_cmp(t, y3, MonomialOrder::elimination(1)), 0);
  EXPECT_LT(mono_cmp(t, y3, MonomialOrder::grevlex()), 0);
}

TEST(MonoOrder, WellOrderedAndMultiplicative) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(0, 4);
  const std::vector<int> w = {1, 2, 1, 3};
  for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::elimination(2)}) {
    for (int trial = 0; trial < 500; ++trial) {
      std::vector<int> a(4), b(4), n(4), one(4, 0), an(4), bn(4);
      for (int i = 0; i < 4; ++i) {
        a[i] = e(rng), b[i] = e(rng), n[i] = e(rng);
        an[i] = a[i] + n[i], bn[i] = b[i] + n[i];
      }
      EXPECT_LE(mono_cmp(one, a, order, w), 0);
      EXPECT_EQ(mono_cmp(a, b, order, w), mono_cmp(an, bn, order, w));
    }
  }
}

TEST(Parse, RoundTrip) {
  auto R = Ring<Rationals>::make({}, {"x1", "x2", "y2", "x3"});
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(0, 3), c(-9, 9), pick(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Term<Rationals>> ts;
    for (int k = 0; k < 6; ++k) {
      std::vector<int> ex(4);
      for (auto& v : ex) v = e(rng);
      mpq_class q(c(rng), 1 + pick(rng));
      q.canonicalize();
      ts.push_back({R->monomial(ex), q});
    }
    auto f = Q::from_terms(R, ts);
    auto g = parse_polynomial(R, f.to_string());
    EXPECT_EQ(f, g) << f.to_string();
    EXPECT_EQ(g.to_string(), f.to_string());
  }
}

TEST(Parse, SyntaxAndErrors) {
  auto R = Ring<Rationals>::make({}, {"x1", "x2", "y2", "x3"});
  auto f = parse_polynomial(R, "3*x1^2*y2 - 1/2*x3");
  EXPECT_EQ(f.to_string(), "3*x1^2*y2 - 1/2*x3");
  EXPECT_EQ(parse_polynomial(R, "(x1 + x2)^2").to_string(), "x1^2 + 2*x1*x2 + x2^2");
  EXPECT_EQ(parse_polynomial(R, "-x1^2").to_string(), "-x1^2");
  EXPECT_THROW(parse_polynomial(R, "x1 + w"), ParseError);
  EXPECT_THROW(parse_polynomial(R, "x1 +"), ParseError);
  EXPECT_THROW(parse_polynomial(R, "1/0"), ParseError);
}

TEST(Parse, IdealFile) {
  auto t = parse_ideal_text("# demo\nring: x1, x2 ,x3 over Fp:101 lex\nx1*x2 # first\n\nx3^2\n");
  EXPECT_EQ(t.header.variables, (std::vector<std::string>{"x1", "x2", "x3"}));
  EXPECT_EQ(t.header.prime, 101u);
  EXPECT_EQ(t.header.order, MonomialOrder::lex());
  EXPECT_EQ(t.generators, (std::vector<std::string>{"x1*x2", "x3^2"}));
  EXPECT_THROW(parse_ideal_text(""), ParseError);
  EXPECT_THROW(parse_ideal_text("ring: x over RR"), ParseError);
}

TEST(Multidegree, AdditiveUnderProducts) {
  auto S = Ring<Rationals>::make({}, {"x1", "x2", "y1"}, {{1, 0}, {1, 0}, {3, 1}});
  auto f = parse_polynomial(S, "x1^3 - 2*x1*x2^2");
  auto g = parse_polynomial(S, "x2*y1 - 5*x1*y1");
  auto df = f.multidegree(), dg = g.multidegree(), dfg = (f * g).multidegree();
  EXPECT_EQ(dfg, (Degree{df[0] + dg[0], df[1] + dg[1]}));
}
