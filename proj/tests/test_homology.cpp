#include <gtest/gtest.h>

#include "acikit/homology.hpp"
#include "acikit/linalg.hpp"
#include "acikit/parse.hpp"

using namespace acikit;
using Q = Polynomial<Rationals>;

namespace {

RingPtr<Rationals> ring(std::vector<std::string> vars, std::vector<Degree> degs = {}) {
  return Ring<Rationals>::make({}, std::move(vars), std::move(degs));
}

std::vector<Q> polys(const RingPtr<Rationals>& R, std::initializer_list<const char*> ss) {
  std::vector<Q> out;
  for (auto s : ss) out.push_back(parse_polynomial(R, s));
  return out;
}

std::string entry(const ModuleMap<Rationals>& A, std::size_t i, std::size_t j) {
  auto e = A.matrix.entry(i, j);
  return e ? e->to_string() : "0";
}

// Generic symbols: f_j of degree (1,0) and y_j of degree (1,1).
RingPtr<Rationals> symbol_ring(int l) {
  std::vector<std::string> v;
  std::vector<Degree> d;
  for (int j = 1; j <= l; ++j) {
    v.push_back("f" + std::to_string(j));
    d.push_back({1, 0});
  }
  for (int j = 1; j <= l; ++j) {
    v.push_back("y" + std::to_string(j));
    d.push_back({1, 1});
  }
  return ring(v, d);
}

BuchsbaumRim<Rationals> symbolic_br(const RingPtr<Rationals>& S, int l) {
  std::vector<Q> f, y;
  for (int j = 0; j < l; ++j) {
    f.push_back(Q::variable(S, static_cast<std::size_t>(j)));
    y.push_back(Q::variable(S, static_cast<std::size_t>(l + j)));
  }
  return buchsbaum_rim(f, y);
}

long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Degreewise homology dimension of a complex of free modules over a
// standard graded ring at position i, in degree D.
long homology_dim(const ChainComplex<Rationals>& C, std::size_t i, int D) {
  const auto& R = C.ring();
  auto block = [&](std::size_t pos) {
    std::vector<std::pair<std::size_t, Monomial>> basis;
    if (pos >= C.modules.size()) return basis;
    for (std::size_t b = 0; b < C.modules[pos].rank(); ++b)
      for (const auto& m : monomials_of_degree(*R, D - C.modules[pos].sort_shift(b))) basis.push_back({b, m});
    return basis;
  };
  auto rank_of = [&](std::size_t pos) -> long {
    if (pos == 0 || pos >= C.modules.size()) return 0;
    auto src = block(pos), tgt = block(pos - 1);
    std::map<std::pair<std::size_t, Monomial>, std::uint32_t, bool (*)(const std::pair<std::size_t, Monomial>&,
                                                                         const std::pair<std::size_t, Monomial>&)>
        idx([](const auto& a, const auto& b) { return a.first != b.first ? a.first < b.first : bytes_less(a.second, b.second); });
    for (std::uint32_t k = 0; k < tgt.size(); ++k) idx[tgt[k]] = k;
    std::vector<SparseRow<Rationals>> rows;
    for (const auto& [b, m] : src) {
      std::map<std::uint32_t, mpq_class> acc;
      for (const auto& [r, p] : C.d(pos).matrix.column(b))
        for (const auto& t : p.terms()) acc[idx.at({r, t.mono * m})] += t.coef;
      SparseRow<Rationals> row;
      for (auto& [c, v] : acc)
        if (v != 0) row.push_back({c, v});
      rows.push_back(row);
    }
    return static_cast<long>(linalg::rank(R->field(), rows));
  };
  return static_cast<long>(block(i).size()) - rank_of(i) - rank_of(i + 1);
}

}  // namespace

TEST(Koszul, ShapesAndDifferential) {
  auto R = ring({"a", "b", "c"});
  auto K = koszul_complex(polys(R, {"a^2", "b", "c^3"}));
  ASSERT_EQ(K.modules.size(), 4u);
  EXPECT_EQ(K.modules[1].shifts, (std::vector<Degree>{{2}, {1}, {3}}));
  EXPECT_EQ(K.modules[2].shifts, (std::vector<Degree>{{3}, {5}, {4}}));
  EXPECT_EQ(K.modules[3].shifts, (std::vector<Degree>{{6}}));
  EXPECT_TRUE(K.is_complex());
  K.validate();
  // d(e_{01}) = a^2 e_1 - b e_0
  EXPECT_EQ(entry(K.d(2), 1, 0), "a^2");
  EXPECT_EQ(entry(K.d(2), 0, 0), "-b");
}

TEST(Koszul, RegularSequenceIsExact) {
  auto R = ring({"a", "b", "c"});
  auto K = koszul_complex(polys(R, {"a^2 - b*c", "b^2"}));
  for (std::size_t i = 1; i <= 2; ++i)
    for (int D = 0; D <= 8; ++D) EXPECT_EQ(homology_dim(K, i, D), 0) << "i=" << i << " D=" << D;
  // not regular: a*b, a*c share a factor; H_1 is nonzero
  auto K2 = koszul_complex(polys(R, {"a*b", "a*c"}));
  long total = 0;
  for (int D = 0; D <= 5; ++D) total += homology_dim(K2, 1, D);
  EXPECT_GT(total, 0);
}

TEST(BuchsbaumRim, EpsilonForThreeGenerators) {
  auto S = symbol_ring(3);
  auto br = symbolic_br(S, 3);
  const auto& e = br.epsilon();
  ASSERT_EQ(e.matrix.cols(), 1u);
  EXPECT_EQ(e.source.shifts, (std::vector<Degree>{{3, 2}}));
  EXPECT_EQ(e.matrix.entry(0, 0).value(), parse_polynomial(S, "f2*y3 - f3*y2"));
  EXPECT_EQ(e.matrix.entry(1, 0).value(), parse_polynomial(S, "f3*y1 - f1*y3"));
  EXPECT_EQ(e.matrix.entry(2, 0).value(), parse_polynomial(S, "f1*y2 - f2*y1"));
}

TEST(BuchsbaumRim, FourGeneratorsMatchDisplayedMatrices) {
  auto S = symbol_ring(4);
  auto br = symbolic_br(S, 4);
  auto fij = [&](int i, int j) {
    return parse_polynomial(S, ("f" + std::to_string(i) + "*y" + std::to_string(j) + " - f" + std::to_string(j) +
                                "*y" + std::to_string(i)).c_str());
  };
  const auto& e = br.epsilon();
  Q zero(S);
  std::vector<std::vector<Q>> want = {{fij(2, 3), fij(2, 4), fij(3, 4), zero},
                                      {-fij(1, 3), -fij(1, 4), zero, fij(3, 4)},
                                      {fij(1, 2), zero, -fij(1, 4), -fij(2, 4)},
                                      {zero, fij(1, 2), fij(1, 3), fij(2, 3)}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      EXPECT_EQ(e.matrix.entry(i, j).value_or(zero), want[i][j]) << i << "," << j;
  const auto& s2 = br.sigma(2);
  std::vector<std::vector<const char*>> sw = {{"-f4", "-y4"}, {"f3", "y3"}, {"-f2", "-y2"}, {"f1", "y1"}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_EQ(s2.matrix.entry(i, j).value_or(zero), parse_polynomial(S, sw[i][j])) << i << "," << j;
  EXPECT_EQ(br.C(1).shifts, (std::vector<Degree>(4, Degree{3, 2})));
  EXPECT_EQ(br.C(2).shifts, (std::vector<Degree>{{4, 2}, {4, 3}}));
}

TEST(BuchsbaumRim, RanksShiftsAndComplexProperty) {
  for (int l = 3; l <= 6; ++l) {
    auto S = symbol_ring(l);
    auto br = symbolic_br(S, l);
    EXPECT_TRUE(br.complex.is_complex()) << l;
    br.complex.validate();
    for (int i = 1; i <= l - 2; ++i) {
      EXPECT_EQ(static_cast<long>(br.C(i).rank()), i * binom(l, i + 2)) << l << " " << i;
      for (std::size_t b = 0; b < br.C(i).rank(); ++b) {
        EXPECT_EQ(br.C(i).shifts[b][0], i + 2);
        EXPECT_GE(br.C(i).shifts[b][1], 2);
        EXPECT_LE(br.C(i).shifts[b][1], i + 1);
      }
    }
  }
}

TEST(BuchsbaumRim, RejectsBadInput) {
  auto S = symbol_ring(2);
  std::vector<Q> f{Q::variable(S, 0), Q::variable(S, 1)}, y{Q::variable(S, 2), Q::variable(S, 3)};
  EXPECT_THROW(buchsbaum_rim(f, y), InvalidArgument);
}

TEST(Lifter, SolvesAndRejects) {
  auto R = ring({"a", "b", "c"});
  FreeModule<Rationals> F1{R, {{1}, {1}}}, F0{R, {{0}}};
  ModuleMap<Rationals> phi(F1, F0);
  phi.matrix.set(0, 0, parse_polynomial(R, "a"));
  phi.matrix.set(0, 1, parse_polynomial(R, "b"));
  Lifter<Rationals> L(phi);
  auto x = L.lift({parse_polynomial(R, "a*c + b^2")});
  EXPECT_EQ(Q(parse_polynomial(R, "a")) * x[0] + parse_polynomial(R, "b") * x[1], parse_polynomial(R, "a*c + b^2"));
  EXPECT_THROW(L.lift({parse_polynomial(R, "c^2")}), LiftFailed);
}

TEST(ChainMap, KoszulIntoItself) {
  auto R = ring({"a", "b", "c"});
  auto K = koszul_complex(polys(R, {"a", "b^2", "c"}));
  auto nu = lift_chain_map(K, K);
  ASSERT_EQ(nu.size(), 4u);
  for (std::size_t i = 2; i < nu.size(); ++i) {
    auto lhs = compose(K.d(i), nu[i]);
    auto rhs = compose(nu[i - 1], K.d(i));
    EXPECT_TRUE(subtract(lhs, rhs).is_zero()) << i;
  }
}

TEST(Embedding, MapsByName) {
  auto B = ring({"x", "z"});
  auto S = ring({"z", "w", "x"});
  Embedding<Rationals> E(B, S);
  EXPECT_EQ(E(parse_polynomial(B, "x^2 - 3*z")), parse_polynomial(S, "x^2 - 3*z"));
  EXPECT_THROW(Embedding<Rationals>(S, B), RingMismatch);
}
