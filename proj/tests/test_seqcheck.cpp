#include <gtest/gtest.h>

#include "acikit/parse.hpp"
#include "acikit/seqcheck.hpp"

using namespace acikit;
using Q = Polynomial<Rationals>;
using P = Polynomial<PrimeField>;
using IdealQ = Ideal<Rationals>;

namespace {

RingPtr<Rationals> ring(std::vector<std::string> vars) { return Ring<Rationals>::make({}, std::move(vars)); }

std::vector<Q> polys(const RingPtr<Rationals>& R, std::initializer_list<const char*> ss) {
  std::vector<Q> out;
  for (auto s : ss) out.push_back(parse_polynomial(R, s));
  return out;
}

const PowersCell* find(const PowersReport& r, int s, int i) {
  for (const auto& c : r.cells)
    if (c.s == s && c.i == i) return &c;
  return nullptr;
}

}  // namespace

TEST(RegularSequence, VariablesAndWitness) {
  auto R = ring({"a", "b", "c", "d"});
  EXPECT_TRUE(is_regular_sequence(polys(R, {"a", "b", "c"})));
  auto r = is_regular_sequence(polys(R, {"a*b", "c*d", "b*c"}));
  EXPECT_FALSE(r);
  EXPECT_EQ(r.index, 3u);
  ASSERT_TRUE(r.witness.has_value());
  Ideal<Rationals> J(R, polys(R, {"a*b", "c*d"}));
  EXPECT_FALSE(J.contains(*r.witness));
  EXPECT_TRUE(Ideal<Rationals>(R, polys(R, {"a", "d"})).contains(*r.witness));
  EXPECT_TRUE(J.contains(*r.witness * parse_polynomial(R, "b*c")));
  EXPECT_FALSE(is_regular_sequence(polys(R, {"a", "a*b"})));
  EXPECT_THROW(is_regular_sequence(polys(R, {"a + b^2"})), NotHomogeneous);
}

TEST(DSequence, RegularImpliesDSequence) {
  auto R = ring({"a", "b", "c", "d"});
  for (auto fs : {polys(R, {"a", "b", "c"}), polys(R, {"a^2", "b*c - d^2", "c^3"}), polys(R, {"a*b", "c*d"})}) {
    ASSERT_TRUE(is_regular_sequence(fs));
    EXPECT_TRUE(is_d_sequence(fs));
  }
}

TEST(DSequence, NonExamples) {
  auto R = ring({"a", "b"});
  // (0 : a^2) ∩ I = 0, then (a^2 : ab) = (a) meets I = (a^2, ab, b^2) in (a^2, ab)
  auto r = is_d_sequence(polys(R, {"a^2", "a*b", "b^2"}));
  EXPECT_FALSE(r);
  EXPECT_EQ(r.index, 2u);
  auto ok = is_d_sequence(polys(R, {"a", "b"}));
  EXPECT_TRUE(ok);
}

TEST(DSequence, PfaffianOrderingsWithRegularPrefix) {
  for (int t = 5; t <= 7; ++t) {
    auto g = aci_grade3_ideal<Rationals>(t);
    EXPECT_TRUE(is_d_sequence(g.fs)) << t;
    EXPECT_TRUE(is_regular_sequence(std::vector<Q>(g.fs.begin(), g.fs.end() - 1))) << t;
    EXPECT_FALSE(is_regular_sequence(g.fs)) << t;
  }
}

TEST(DSequence, CubicThirdOrderingIsADSequence) {
  auto g = cubic_third_ideal<Rationals>();
  EXPECT_TRUE(is_d_sequence(g.fs));
  auto st = powers_setup(g.fs);
  EXPECT_FALSE(st.max_last);
  EXPECT_FALSE(st.holds());
}

TEST(Identities, PfaffianT5UpToCube) {
  auto g = aci_grade3_ideal<Rationals>(5);
  auto rep = dseq_identities(g.fs, 3);
  EXPECT_EQ(rep.checks.size(), 3u + 4u * 3u);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.holds) << c.identity << " i=" << c.i << " s=" << c.s;
}

TEST(Identities, RegularSequenceReducesToColon) {
  auto R = ring({"a", "b", "c"});
  auto fs = polys(R, {"a^2", "b^2", "c^2"});
  EXPECT_TRUE(dseq_identities(fs, 3).all_hold());
  // on a non-d-sequence the first identity fails: (a^2 : (ab)^2) = (1) but (a^2 : ab) = (a)
  auto R2 = ring({"a", "b"});
  auto bad = dseq_identities(polys(R2, {"a^2", "a*b"}), 2);
  EXPECT_TRUE(bad.checks[0].holds);
  EXPECT_FALSE(bad.checks[1].holds);
}

TEST(PowersFormula, ValuesAndHypothesis) {
  EXPECT_EQ(powers_formula({1, 2, 2, 2}, 2, 0), 3);
  EXPECT_EQ(powers_formula({1, 2, 2, 2}, 3, 2), 5);
  EXPECT_EQ(powers_formula({2, 2, 2, 3}, 2, 0), 5);
  EXPECT_EQ(powers_formula({2, 2, 2, 3}, 3, 0), 8);
  EXPECT_THROW(powers_formula({2, 2, 3, 2}, 3, 0), HypothesisViolated);
  EXPECT_EQ(powers_formula({2, 2, 3, 2}, 3, 0, false), 7);
  EXPECT_THROW(powers_formula({1, 2}, 1, 0), InvalidArgument);
  EXPECT_THROW(powers_formula({1, 2}, 2, 2), InvalidArgument);
  // closed forms agree with the raw formula on every family degree vector
  for (int t = 5; t <= 12; ++t) {
    int r = t / 2;
    std::vector<int> d = t % 2 ? std::vector<int>{r - 1, r, r, r} : std::vector<int>{r - 1, r - 1, r - 1, r};
    for (int m = 2; m <= 6; ++m) EXPECT_EQ(pfaffian_powers_closed_form(t, m), powers_formula(d, m, 0)) << t << " " << m;
  }
}

TEST(VerifyPowers, PfaffianT5AllMatch) {
  auto g = aci_grade3_ideal<Rationals>(5);
  auto rep = verify_powers(g.fs, 3);
  EXPECT_TRUE(rep.setup.holds());
  EXPECT_EQ(rep.setup.reg_quotient, 1);
  EXPECT_EQ(rep.setup.reg_bound, 2);
  ASSERT_EQ(rep.cells.size(), 2u * 4u);
  for (const auto& c : rep.cells) {
    EXPECT_EQ(c.status, CellStatus::Match) << c.s << " " << c.i;
    EXPECT_EQ(c.computed, 2 * (c.s + 2) - 5);
  }
  for (const auto& c : rep.lemma) EXPECT_EQ(c.status, CellStatus::Match) << c.s;
  EXPECT_TRUE(rep.clean());
}

TEST(VerifyPowers, PfaffianT6SquareAndSkippedCell) {
  auto g = aci_grade3_ideal<Rationals>(6);
  auto rep = verify_powers(g.fs, 2, 0);
  EXPECT_TRUE(rep.setup.holds());
  EXPECT_EQ(rep.setup.reg_quotient, 2);
  EXPECT_EQ(rep.setup.reg_bound, 3);
  ASSERT_EQ(rep.cells.size(), 1u);
  EXPECT_EQ(rep.cells[0].computed, 5);
  EXPECT_EQ(rep.cells[0].status, CellStatus::Match);
  // a cap below the top shift is reported, never guessed
  auto tight = verify_powers(g.fs, 2, 0, 1);
  EXPECT_EQ(tight.cells[0].status, CellStatus::Skipped);
  EXPECT_FALSE(tight.cells[0].computed.has_value());
  EXPECT_TRUE(tight.clean());
}

TEST(VerifyPowers, PfaffianT7Square) {
  auto g = aci_grade3_ideal<PrimeField>(7, PrimeField(32003));
  auto rep = verify_powers(g.fs, 2);
  EXPECT_TRUE(rep.setup.holds());
  EXPECT_EQ(rep.setup.reg_quotient, 3);
  for (const auto& c : rep.cells) EXPECT_EQ(c.status, CellStatus::Match) << c.i;
  EXPECT_EQ(rep.cells[0].computed, pfaffian_powers_closed_form(7, 2));
}

TEST(Identities, PfaffianT6AndT7UpToCube) {
  for (int t = 6; t <= 7; ++t) {
    auto g = aci_grade3_ideal<PrimeField>(t, PrimeField(32003));
    EXPECT_TRUE(dseq_identities(g.fs, 3).all_hold()) << t;
  }
}

TEST(VerifyPowers, CubicThirdCounterexample) {
  auto g = cubic_third_ideal<Rationals>();
  auto rep = verify_powers(g.fs, 3, 0);
  EXPECT_FALSE(rep.setup.max_last);
  auto c2 = find(rep, 2, 0);
  ASSERT_NE(c2, nullptr);
  EXPECT_EQ(c2->formula, 5);
  EXPECT_EQ(c2->computed, 5);
  auto c3 = find(rep, 3, 0);
  ASSERT_NE(c3, nullptr);
  EXPECT_EQ(c3->formula, 7);
  EXPECT_EQ(c3->computed, 8);
  EXPECT_EQ(c3->status, CellStatus::HypothesisViolated);
  EXPECT_FALSE(rep.clean());
}

TEST(GenericDepth, AuslanderBuchsbaum) {
  auto R = ring({"a", "b", "c", "d"});
  EXPECT_EQ(generic_depth(IdealQ(R, polys(R, {"a^2", "b^3"}))), 2);
  EXPECT_EQ(generic_depth(IdealQ(R, polys(R, {"a^2", "a*b"}))), 2);
  EXPECT_EQ(generic_depth(IdealQ(R, polys(R, {"a*b", "c*d", "b*c"}))), 2);
  auto g = aci_grade3_ideal<Rationals>(5);
  EXPECT_EQ(generic_depth(g.ideal()), static_cast<int>(g.ring->nvars()) - 3);
  auto S = Ring<Rationals>::make({}, {"x", "y"}, {{1, 0}, {0, 1}});
  EXPECT_THROW(generic_depth(Ideal<Rationals>(S, {Q::variable(S, 0)})), GradeMismatch);
}
