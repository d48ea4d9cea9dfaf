#include <random>

#include <gtest/gtest.h>

#include "acikit/hilbert.hpp"
#include "acikit/linalg.hpp"
#include "acikit/parse.hpp"

using namespace acikit;
using Q = Polynomial<Rationals>;
using IdealQ = Ideal<Rationals>;

namespace {

RingPtr<Rationals> ring(std::vector<std::string> vars, std::vector<Degree> degs = {}) {
  return Ring<Rationals>::make({}, std::move(vars), std::move(degs));
}

IdealQ ideal(const RingPtr<Rationals>& R, std::initializer_list<const char*> gens) {
  std::vector<Q> g;
  for (auto s : gens) g.push_back(parse_polynomial(R, s));
  return IdealQ(R, g);
}

std::vector<std::string> strings(const std::vector<Q>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

// Ideal equality through the Macaulay-matrix oracle, degree by degree.
bool macaulay_equal(const IdealQ& I, const IdealQ& J) {
  for (const auto& g : I.gens())
    if (!macaulay_member(g, J.gens())) return false;
  for (const auto& g : J.gens())
    if (!macaulay_member(g, I.gens())) return false;
  return true;
}

}  // namespace

TEST(Groebner, MonomialIdealIsItsOwnBasis) {
  auto R = ring({"x", "y"});
  EXPECT_EQ(strings(ideal(R, {"y", "x"}).groebner()), (std::vector<std::string>{"y", "x"}));
}

TEST(Groebner, ThreeMonomials) {
  auto R = ring({"x1", "x2", "x3", "x4"});
  auto I = ideal(R, {"x1*x2", "x3*x4", "x2*x3"});
  auto G = I.groebner();
  ASSERT_EQ(G.size(), 3u);
  EXPECT_TRUE(gb::is_groebner_basis(G));
  // Oracle: every GB element lies in I and every generator in <G>, degreewise.
  EXPECT_TRUE(macaulay_equal(I, IdealQ(R, G)));
  for (int d = 2; d <= 4; ++d) EXPECT_EQ(macaulay_dimension(R, G, d), macaulay_dimension(R, I.gens(), d));
}

TEST(Groebner, DuplicateGenerators) {
  auto R = ring({"x", "y", "z"});
  auto a = ideal(R, {"x^2 - y*z", "x^2 - y*z"}).groebner();
  auto b = ideal(R, {"x^2 - y*z"}).groebner();
  EXPECT_EQ(a, b);
}

TEST(Groebner, ConfluenceOnRandomQuadrics) {
  auto R = ring({"a", "b", "c", "d"});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-3, 3);
  auto quads = monomials_of_degree(*R, 2);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Q> gens;
    for (int k = 0; k < 3; ++k) {
      std::vector<Term<Rationals>> ts;
      for (const auto& m : quads) ts.push_back({m, mpq_class(c(rng))});
      gens.push_back(Q::from_terms(R, ts));
    }
    IdealQ I(R, gens);
    const auto& G = I.groebner();
    EXPECT_TRUE(gb::is_groebner_basis(G));
    for (const auto& g : G) {
      EXPECT_TRUE(R->field().is_one(g.lead_coefficient()));
      EXPECT_TRUE(macaulay_member(g, gens));
    }
    // normal form is zero exactly on members, checked against the oracle in degree 3
    for (const auto& m : monomials_of_degree(*R, 3)) {
      auto f = Q::monomial(R, m, mpq_class(1)) + gens[0] * Q::variable(R, 0);
      EXPECT_EQ(I.contains(f), macaulay_member(f, gens));
    }
  }
}

TEST(Groebner, DegreeCapIsHardError) {
  auto R = ring({"x", "y", "z"});
  auto prev = default_degree_cap.exchange(3);
  auto I = ideal(R, {"x^2 - y*z", "x*y - z^2"});
  EXPECT_THROW(I.groebner(), Overflow);
  default_degree_cap = prev;
}

TEST(NormalForm, Basics) {
  auto R = ring({"x", "y", "z"});
  auto g = parse_polynomial(R, "x^2 - y*z");
  IdealQ I(R, {g});
  EXPECT_TRUE(I.normal_form(g).is_zero());
  auto J = ideal(R, {"x", "y"});
  EXPECT_EQ(J.normal_form(Q::constant(R, 1L)).to_string(), "1");
  auto K = ideal(R, {"x*y - z^2", "y^3 - x*z^2"});
  EXPECT_TRUE(K.normal_form(K.gens()[1] * parse_polynomial(R, "x + 3*z")).is_zero());
  auto r = K.normal_form(parse_polynomial(R, "x^2*y^2"));
  for (const auto& t : r.terms())
    for (const auto& G : K.groebner()) EXPECT_FALSE(divides(G.lead_monomial(), t.mono));
  EXPECT_TRUE(K.contains(parse_polynomial(R, "x^2*y^2") - r));
}

TEST(Power, Examples) {
  auto R = ring({"x", "y"});
  auto I = ideal(R, {"x", "y"});
  EXPECT_EQ(gb::power(I, 1).gens(), I.gens());
  EXPECT_EQ(strings(gb::power(I, 2).gens()), (std::vector<std::string>{"x^2", "x*y", "y^2"}));
  EXPECT_THROW(gb::power(I, 0), InvalidArgument);
  auto J = ideal(R, {"x", "y", "x + y", "x - y"});
  EXPECT_EQ(gb::power(J, 2).size(), 10u);
}

TEST(Colon, MonomialExample) {
  auto R = ring({"x1", "x2", "x3", "x4"});
  auto J = ideal(R, {"x1*x2", "x3*x4"});
  auto C = gb::colon(J, parse_polynomial(R, "x2*x3"));
  EXPECT_EQ(C, ideal(R, {"x1", "x4"}));
  EXPECT_EQ(gb::colon(J, Q::constant(R, 1L)), J);
  EXPECT_THROW(gb::colon(J, Q(R)), ZeroPolynomial);
}

TEST(Colon, CompleteIntersectionReesRelations) {
  // f = (x1^2, x2^2, x3^2) with deg y_j = (2, 1); g3 is the minor without index 3.
  auto S = ring({"x1", "x2", "x3", "y1", "y2", "y3"}, {{1, 0}, {1, 0}, {1, 0}, {2, 1}, {2, 1}, {2, 1}});
  auto g1 = parse_polynomial(S, "x1^2*y3 - x3^2*y1");
  auto g2 = parse_polynomial(S, "x2^2*y3 - x3^2*y2");
  auto g3 = parse_polynomial(S, "x1^2*y2 - x2^2*y1");
  auto C = gb::colon(IdealQ(S, {g1, g2}), g3);
  EXPECT_EQ(C, ideal(S, {"x3^2", "y3"}));
}

TEST(Colon, ContainmentProperty) {
  auto R = ring({"a", "b", "c", "d"});
  auto I = ideal(R, {"a*b - c^2", "b*d - c^2", "a^3"});
  auto f = parse_polynomial(R, "a*c + d^2");
  auto C = gb::colon(I, f);
  for (const auto& g : C.gens()) EXPECT_TRUE(I.contains(g * f));
  EXPECT_TRUE(C.contains(I));
}

TEST(Intersect, Examples) {
  auto R = ring({"x", "y", "z"});
  auto I = ideal(R, {"x^2 - y*z", "x*z"});
  EXPECT_EQ(gb::intersect(I, I), I);
  EXPECT_EQ(gb::intersect(ideal(R, {"x"}), ideal(R, {"y"})), ideal(R, {"x*y"}));
  auto J = ideal(R, {"y^2", "x + z"});
  auto K = gb::intersect(I, J);
  EXPECT_TRUE(I.contains(K));
  EXPECT_TRUE(J.contains(K));
  // products lie in the intersection
  for (const auto& a : I.gens())
    for (const auto& b : J.gens()) EXPECT_TRUE(K.contains(a * b));
}

TEST(Eliminate, Examples) {
  auto S = ring({"t", "x", "y"});
  EXPECT_TRUE(gb::eliminate(ideal(S, {"t*x - y^2"}), {0}).is_zero());
  EXPECT_THROW(ideal(S, {"t*x - 1"}), NotHomogeneous);

  // f1 = x1^2, f2 = x2^3, deg t = (0,1), deg y_j = (d_j, 1)
  auto T = ring({"t", "x1", "x2", "y1", "y2"}, {{0, 1}, {1, 0}, {1, 0}, {2, 1}, {3, 1}});
  auto E = gb::eliminate(ideal(T, {"y1 - t*x1^2", "y2 - t*x2^3"}), {0});
  auto rel = parse_polynomial(T, "x2^3*y1 - x1^2*y2");
  EXPECT_EQ(E, IdealQ(T, {rel}));
  // Oracle: rel vanishes under y_j -> t f_j.
  std::vector<Q> images = {Q::variable(T, 0), Q::variable(T, 1), Q::variable(T, 2),
                           parse_polynomial(T, "t*x1^2"), parse_polynomial(T, "t*x2^3")};
  EXPECT_TRUE(substitute(rel, T, images).is_zero());
}

TEST(Hilbert, Examples) {
  auto R = ring({"a", "b", "c", "d"});
  auto h0 = gb::hilbert(IdealQ(R));
  EXPECT_EQ(h0.dim, 4);
  EXPECT_EQ(h0.height, 0);
  auto ci = gb::hilbert(ideal(R, {"a^2 + b*c", "b^3 - d^3", "c*d"}));
  EXPECT_EQ(ci.height, 3);
  EXPECT_EQ(ci.dim, 1);
  // (1 - t^2)(1 - t^3)(1 - t^2) for a complete intersection of degrees 2, 3, 2
  EXPECT_EQ(ci.numerator, (std::vector<std::int64_t>{1, 0, -2, -1, 1, 2, 0, -1}));
  auto tw = gb::hilbert(ideal(R, {"a*c - b^2", "b*d - c^2", "a*d - b*c"}));
  EXPECT_EQ(tw.height, 2);
  EXPECT_EQ(tw.numerator, (std::vector<std::int64_t>{1, 0, -3, 2}));
}

TEST(MinimalGenerators, DropsRedundant) {
  auto R = ring({"x", "y"});
  auto I = ideal(R, {"x^2", "x*y", "x^2*y", "y^3", "x^2 + x*y"});
  EXPECT_EQ(strings(gb::minimal_generators(I)), (std::vector<std::string>{"x^2", "x*y", "y^3"}));
}

TEST(PrimeField, GroebnerAgreesWithRationalsOnSmallInput) {
  auto Rp = Ring<PrimeField>::make(PrimeField(32003), {"x", "y", "z"});
  auto R = ring({"x", "y", "z"});
  const char* gens[] = {"x^2 - 3*y*z", "x*y - z^2", "y^3 + 2*x*z^2"};
  std::vector<Polynomial<PrimeField>> gp;
  std::vector<Q> gq;
  for (auto s : gens) {
    gp.push_back(parse_polynomial(Rp, s));
    gq.push_back(parse_polynomial(R, s));
  }
  auto Gp = Ideal<PrimeField>(Rp, gp).groebner();
  auto Gq = IdealQ(R, gq).groebner();
  ASSERT_EQ(Gp.size(), Gq.size());
  for (std::size_t i = 0; i < Gp.size(); ++i) EXPECT_EQ(Gp[i].lead_monomial(), Gq[i].lead_monomial());
}
